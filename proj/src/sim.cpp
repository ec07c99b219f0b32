#include "pcm/sim.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "pcm/parallel.hpp"
#include "pcm/random.hpp"

namespace pcm {

double snr_to_sigma(double snr_db, const PamConstellation& c) {
    return std::sqrt(c.average_energy() / std::pow(10.0, snr_db / 10.0));
}

double snr_to_sigma(double snr_db, int m) {
    const double energy = (static_cast<double>(1ull << (2 * m)) - 1.0) / 3.0;
    return std::sqrt(energy / std::pow(10.0, snr_db / 10.0));
}

double ebn0_db(double snr_db, int m, double rate) {
    return snr_db - 10.0 * std::log10(2.0 * rate * static_cast<double>(m));
}

namespace {

double ci95(double p, double n) {
    if (n <= 0.0) return 0.0;
    return 1.96 * std::sqrt(std::max(0.0, p * (1.0 - p)) / n);
}

}  // namespace

SimResult run_point(const SchemeConfig& cfg, double snr_db, const StopRule& stop,
                    uint64_t seed, int workers) {
    if (stop.max_trials < 1) throw std::invalid_argument("max_trials must be >= 1");
    const Scheme scheme(cfg);
    const double sigma = snr_to_sigma(snr_db, scheme.constellation());
    const int k = scheme.data_bits();
    const int w = resolve_workers(workers);

    // Fixed batch size keeps the stopping decision a function of the trial
    // sequence alone, independent of worker count.
    constexpr long kBatch = 256;
    std::vector<uint8_t> block_flag(kBatch);
    std::vector<long> bit_count(kBatch);

    long trials = 0, block_errors = 0, bit_errors = 0;
    for (long start = 0; start < stop.max_trials && block_errors < stop.min_block_errors;
         start += kBatch) {
        const long count = std::min(kBatch, stop.max_trials - start);
        parallel_chunks(count, w, [&](int, long b, long e) {
            std::vector<uint8_t> data(static_cast<size_t>(k));
            for (long t = b; t < e; ++t) {
                auto rng = trial_rng(seed, static_cast<uint64_t>(start + t));
                GaussianSampler gauss;
                uint64_t word = 0;
                for (size_t i = 0; i < data.size(); ++i) {
                    if (i % 64 == 0) word = rng();
                    data[i] = static_cast<uint8_t>(word >> (i % 64) & 1u);
                }
                std::vector<double> y = scheme.transmit(data);
                for (double& v : y) v += sigma * gauss(rng);
                const ReceiveResult res = scheme.receive(y, sigma);
                long bits = 0;
                for (size_t i = 0; i < data.size(); ++i) bits += res.data[i] != data[i];
                block_flag[static_cast<size_t>(t)] = bits > 0;
                bit_count[static_cast<size_t>(t)] = bits;
            }
        });
        for (long t = 0; t < count; ++t) {
            ++trials;
            block_errors += block_flag[static_cast<size_t>(t)];
            bit_errors += bit_count[static_cast<size_t>(t)];
            if (block_errors >= stop.min_block_errors) break;
        }
    }

    SimResult r;
    r.snr_db = snr_db;
    r.ebn0_db = k > 0 ? ebn0_db(snr_db, cfg.m, static_cast<double>(k) / cfg.total_bits())
                      : std::numeric_limits<double>::quiet_NaN();
    r.trials = trials;
    r.block_errors = block_errors;
    r.bit_errors = bit_errors;
    r.bler = static_cast<double>(block_errors) / static_cast<double>(trials);
    r.ber = k > 0 ? static_cast<double>(bit_errors) / (static_cast<double>(trials) * k) : 0.0;
    r.bler_ci95 = ci95(r.bler, static_cast<double>(trials));
    r.ber_ci95 = ci95(r.ber, static_cast<double>(trials) * k);
    r.seed = seed;
    r.fingerprint = fingerprint(cfg);
    return r;
}

std::vector<SimResult> sweep(const SchemeConfig& cfg, std::span<const double> snrs,
                             const StopRule& stop, uint64_t seed, int workers) {
    std::vector<SimResult> out;
    out.reserve(snrs.size());
    for (size_t i = 0; i < snrs.size(); ++i)
        out.push_back(run_point(cfg, snrs[i], stop, mix_seed(seed, i), workers));
    return out;
}

std::string sim_csv_header() {
    return "scheme,pam,n,k,s,snr_db,ebn0_db,trials,block_errors,bler,bler_ci95,ber,ber_ci95,seed,fingerprint";
}

std::string sim_csv_row(const SchemeConfig& cfg, const SimResult& r) {
    char buf[512];
    char split[16] = "";
    if (cfg.kind == SchemeKind::hybrid_pcm)
        std::snprintf(split, sizeof split, "%d", cfg.split);
    std::snprintf(buf, sizeof buf,
                  "%s,%d,%d,%d,%s,%.6g,%.6g,%ld,%ld,%.6g,%.6g,%.6g,%.6g,%llu,%s",
                  scheme_name(cfg.kind).c_str(), 1 << cfg.m, cfg.total_bits(),
                  cfg.data_bits(), split, r.snr_db, r.ebn0_db, r.trials, r.block_errors,
                  r.bler, r.bler_ci95, r.ber, r.ber_ci95,
                  static_cast<unsigned long long>(r.seed), r.fingerprint.c_str());
    return buf;
}

}  // namespace pcm
