// Monte Carlo (genie-aided) code construction and information-set selection.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcm/schemes.hpp"

namespace pcm {

/// Per-position decision-error frequencies over a scheme's m*N-bit global
/// input index space (component-major, 0-based).
struct ReliabilityProfile {
    std::string fingerprint;  // construction fingerprint of the scheme
    double design_snr_db = 0.0;
    long trials = 0;
    uint64_t seed = 0;
    std::vector<double> err_est;
};

/// Genie-aided simulation at the design SNR: random data through the full
/// pipeline, every decision compared against truth then forced to it.
/// Deterministic in (cfg, design_snr_db, trials, seed) for any worker count.
ReliabilityProfile construct_monte_carlo(const SchemeConfig& cfg, double design_snr_db,
                                         long trials, uint64_t seed, int workers = 0);

/// Jointly picks the k_total most reliable positions (ties: lowest global
/// index) and partitions them into per-component information sets.
std::vector<std::vector<int>> select_info_sets(const ReliabilityProfile& profile,
                                               const SchemeConfig& cfg, int k_total);

void assign_info_sets(SchemeConfig& cfg, std::vector<std::vector<int>> info_sets);

/// Convenience: construct (or reuse a given profile) and assign info sets.
SchemeConfig constructed_scheme(SchemeConfig base, const ReliabilityProfile& profile,
                                int k_total);

void write_profile(const std::string& path, const ReliabilityProfile& profile);
ReliabilityProfile read_profile(const std::string& path);

}  // namespace pcm
