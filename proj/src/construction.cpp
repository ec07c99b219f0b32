#include "pcm/construction.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "pcm/parallel.hpp"
#include "pcm/random.hpp"
#include "pcm/sim.hpp"

namespace pcm {

namespace {

// Domain-separates construction streams from sweep streams sharing a seed.
constexpr uint64_t kConstructionStream = 0x636f6e7374ull;

void fill_random_bits(std::mt19937_64& rng, std::vector<uint8_t>& bits) {
    uint64_t word = 0;
    for (size_t i = 0; i < bits.size(); ++i) {
        if (i % 64 == 0) word = rng();
        bits[i] = static_cast<uint8_t>(word >> (i % 64) & 1u);
    }
}

}  // namespace

ReliabilityProfile construct_monte_carlo(const SchemeConfig& cfg, double design_snr_db,
                                         long trials, uint64_t seed, int workers) {
    if (trials < 1) throw std::invalid_argument("construction trials must be >= 1");
    const Scheme scheme(cfg);
    const double sigma = snr_to_sigma(design_snr_db, scheme.constellation());
    const size_t total = static_cast<size_t>(cfg.total_bits());
    const int w = resolve_workers(workers);
    std::vector<std::vector<uint64_t>> counts(static_cast<size_t>(w),
                                              std::vector<uint64_t>(total, 0));

    parallel_chunks(trials, w, [&](int wi, long b, long e) {
        auto& local = counts[static_cast<size_t>(wi)];
        std::vector<uint8_t> u(total);
        std::vector<double> y;
        for (long t = b; t < e; ++t) {
            auto rng = trial_rng(seed ^ kConstructionStream, static_cast<uint64_t>(t));
            GaussianSampler gauss;
            fill_random_bits(rng, u);
            y = scheme.transmit_raw(u);
            for (double& v : y) v += sigma * gauss(rng);
            scheme.genie_trial(y, sigma, u, local);
        }
    });

    ReliabilityProfile profile;
    profile.fingerprint = construction_fingerprint(cfg);
    profile.design_snr_db = design_snr_db;
    profile.trials = trials;
    profile.seed = seed;
    profile.err_est.assign(total, 0.0);
    for (size_t i = 0; i < total; ++i) {
        uint64_t c = 0;
        for (int wi = 0; wi < w; ++wi) c += counts[static_cast<size_t>(wi)][i];
        profile.err_est[i] = static_cast<double>(c) / static_cast<double>(trials);
    }
    return profile;
}

std::vector<std::vector<int>> select_info_sets(const ReliabilityProfile& profile,
                                               const SchemeConfig& cfg, int k_total) {
    if (profile.fingerprint != construction_fingerprint(cfg))
        throw std::runtime_error("profile fingerprint does not match the scheme: " +
                                 profile.fingerprint + " vs " + construction_fingerprint(cfg));
    const int total = cfg.total_bits();
    if (static_cast<int>(profile.err_est.size()) != total)
        throw std::runtime_error("profile size does not match the scheme");
    if (k_total < 0 || k_total > total)
        throw std::invalid_argument("k_total must be in 0..m*N");

    std::vector<int> order(static_cast<size_t>(total));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return profile.err_est[static_cast<size_t>(a)] < profile.err_est[static_cast<size_t>(b)];
    });
    order.resize(static_cast<size_t>(k_total));
    std::sort(order.begin(), order.end());

    std::vector<std::vector<int>> sets(cfg.components.size());
    size_t comp = 0;
    int base = 0;
    for (int idx : order) {
        while (idx >= base + cfg.components[comp].length) {
            base += cfg.components[comp].length;
            ++comp;
        }
        sets[comp].push_back(idx - base);
    }
    return sets;
}

void assign_info_sets(SchemeConfig& cfg, std::vector<std::vector<int>> info_sets) {
    if (info_sets.size() != cfg.components.size())
        throw std::invalid_argument("one info set per component required");
    for (size_t j = 0; j < info_sets.size(); ++j)
        cfg.components[j].info_set = std::move(info_sets[j]);
    validate_scheme(cfg);
}

SchemeConfig constructed_scheme(SchemeConfig base, const ReliabilityProfile& profile,
                                int k_total) {
    assign_info_sets(base, select_info_sets(profile, base, k_total));
    return base;
}

void write_profile(const std::string& path, const ReliabilityProfile& profile) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open profile for writing: " + path);
    out << "fingerprint " << profile.fingerprint << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", profile.design_snr_db);
    out << "design_snr_db " << buf << '\n';
    out << "trials " << profile.trials << '\n';
    out << "seed " << profile.seed << '\n';
    for (size_t i = 0; i < profile.err_est.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu %.9g", i, profile.err_est[i]);
        out << buf << '\n';
    }
    if (!out) throw std::runtime_error("failed writing profile: " + path);
}

ReliabilityProfile read_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profile: " + path);
    ReliabilityProfile profile;
    std::string key;
    if (!(in >> key) || key != "fingerprint" || !(in >> profile.fingerprint))
        throw std::runtime_error("malformed profile header: " + path);
    if (!(in >> key) || key != "design_snr_db" || !(in >> profile.design_snr_db))
        throw std::runtime_error("malformed profile header: " + path);
    if (!(in >> key) || key != "trials" || !(in >> profile.trials))
        throw std::runtime_error("malformed profile header: " + path);
    if (!(in >> key) || key != "seed" || !(in >> profile.seed))
        throw std::runtime_error("malformed profile header: " + path);
    size_t idx;
    double err;
    while (in >> idx >> err) {
        if (idx != profile.err_est.size())
            throw std::runtime_error("profile indices must ascend from 0: " + path);
        profile.err_est.push_back(err);
    }
    return profile;
}

}  // namespace pcm
