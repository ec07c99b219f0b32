// AWGN link simulation: deterministic parallel Monte Carlo BLER/BER points
// and SNR sweeps.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pcm/constellation.hpp"
#include "pcm/schemes.hpp"

namespace pcm {

/// Per-dimension SNR = E[x^2] / sigma_z^2 with E[x^2] = (4^m - 1)/3.
double snr_to_sigma(double snr_db, const PamConstellation& c);
double snr_to_sigma(double snr_db, int m);

/// Eb/N0 in dB for a scheme of rate R = k/(mN): SNR / (2 R m).
double ebn0_db(double snr_db, int m, double rate);

struct StopRule {
    long min_block_errors = 100;
    long max_trials = 100000;
};

struct SimResult {
    double snr_db = 0.0;
    double ebn0_db = 0.0;
    long trials = 0;
    long block_errors = 0;
    long bit_errors = 0;
    double bler = 0.0;
    double ber = 0.0;
    double bler_ci95 = 0.0;  // 95% half-width, normal approximation
    double ber_ci95 = 0.0;
    uint64_t seed = 0;
    std::string fingerprint;
};

/// Monte Carlo at one SNR point. Trials are processed in fixed-size batches
/// in trial-index order, so results are a pure function of (cfg, snr_db,
/// stop, seed) for any worker count. workers = 0 uses all hardware threads.
SimResult run_point(const SchemeConfig& cfg, double snr_db, const StopRule& stop,
                    uint64_t seed, int workers = 0);

/// run_point per SNR with per-point derived seeds, in the given order.
std::vector<SimResult> sweep(const SchemeConfig& cfg, std::span<const double> snrs,
                             const StopRule& stop, uint64_t seed, int workers = 0);

std::string sim_csv_header();
std::string sim_csv_row(const SchemeConfig& cfg, const SimResult& r);

}  // namespace pcm
