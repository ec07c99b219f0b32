// Independent brute-force oracles used by the unit and acceptance suites.
// Everything here recomputes from definitions (probability-domain sums in
// long double, exhaustive codeword enumeration) without touching the
// library's log-sum-exp or SC recursion paths.

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "pcm/constellation.hpp"
#include "pcm/demod.hpp"
#include "pcm/kernel.hpp"
#include "pcm/polar.hpp"

namespace oracle {

inline double q_func(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

// --- Demodulator oracles: direct probability-domain label sums. ------------

inline long double label_prob(const pcm::SymbolLikelihoods& sl, uint32_t label) {
    return std::exp(static_cast<long double>(sl.loglik[label]));
}

inline double pbp_oracle(const pcm::SymbolLikelihoods& sl, int level) {
    long double p0 = 0, p1 = 0;
    for (uint32_t b = 0; b < (1u << sl.m); ++b)
        (b >> (level - 1) & 1u ? p1 : p0) += label_prob(sl, b);
    return static_cast<double>(std::log(p0) - std::log(p1));
}

inline double sbp_oracle(const pcm::SymbolLikelihoods& sl, int level,
                         std::span<const uint8_t> prefix) {
    long double p0 = 0, p1 = 0;
    for (uint32_t b = 0; b < (1u << sl.m); ++b) {
        bool match = true;
        for (int j = 0; j < level - 1; ++j)
            if ((b >> j & 1u) != (prefix[static_cast<size_t>(j)] & 1u)) match = false;
        if (!match) continue;
        (b >> (level - 1) & 1u ? p1 : p0) += label_prob(sl, b);
    }
    return static_cast<double>(std::log(p0) - std::log(p1));
}

inline double hbp_oracle(const pcm::SymbolLikelihoods& sl, int level, int split,
                         std::span<const uint8_t> prefix) {
    if (level <= split) return sbp_oracle(sl, level, prefix.first(static_cast<size_t>(level - 1)));
    long double p0 = 0, p1 = 0;
    for (uint32_t b = 0; b < (1u << sl.m); ++b) {
        bool match = true;
        for (int j = 0; j < split; ++j)
            if ((b >> j & 1u) != (prefix[static_cast<size_t>(j)] & 1u)) match = false;
        if (!match) continue;
        (b >> (level - 1) & 1u ? p1 : p0) += label_prob(sl, b);
    }
    return static_cast<double>(std::log(p0) - std::log(p1));
}

inline double kernel_oracle(const pcm::SymbolLikelihoods& sl, const pcm::Kernel& k, int level,
                            std::span<const uint8_t> prefix) {
    long double p0 = 0, p1 = 0;
    for (uint32_t v = 0; v < (1u << sl.m); ++v) {
        bool match = true;
        for (int j = 0; j < level - 1; ++j)
            if ((v >> j & 1u) != (prefix[static_cast<size_t>(j)] & 1u)) match = false;
        if (!match) continue;
        (v >> (level - 1) & 1u ? p1 : p0) += label_prob(sl, k.map(v));
    }
    return static_cast<double>(std::log(p0) - std::log(p1));
}

// --- SC decoding oracle: exhaustive suffix marginalization. -----------------
// For every u position i, the posterior LLR of u_i given the channel LLRs and
// the decoder's prefix u_hat[0..i), marginalizing uniformly over all
// 2^(n-i-1) suffixes. Built by pairwise reduction of the full 2^n table of
// log P(y | u), so the arithmetic route is independent of the SC recursion.
inline std::vector<double> sc_posterior_oracle(std::span<const double> channel_llrs,
                                               std::span<const uint8_t> u_hat) {
    const int n = static_cast<int>(channel_llrs.size());
    const size_t total = static_cast<size_t>(1) << n;
    std::vector<long double> table(total);
    std::vector<uint8_t> u(static_cast<size_t>(n));
    for (size_t word = 0; word < total; ++word) {
        // u index i at machine bit i
        for (int i = 0; i < n; ++i) u[static_cast<size_t>(i)] = word >> i & 1u;
        pcm::PolarCode::transform(u);
        long double lp = 0;
        for (int i = 0; i < n; ++i)
            lp += u[static_cast<size_t>(i)] ? -channel_llrs[static_cast<size_t>(i)] / 2
                                            : channel_llrs[static_cast<size_t>(i)] / 2;
        table[word] = lp;
    }

    auto lse = [](long double a, long double b) {
        const long double mx = std::max(a, b);
        if (std::isinf(mx)) return mx;
        return mx + std::log(std::exp(a - mx) + std::exp(b - mx));
    };

    std::vector<double> llr(static_cast<size_t>(n));
    // Reduce the suffix dimension one bit at a time: after step j the table
    // holds log-sums over u_{j+1..n-1} for each prefix u_{0..j}.
    for (int i = n - 1; i >= 0; --i) {
        const size_t rows = static_cast<size_t>(1) << (i + 1);
        size_t prefix = 0;
        for (int j = 0; j < i; ++j) prefix |= static_cast<size_t>(u_hat[static_cast<size_t>(j)] & 1u) << j;
        llr[static_cast<size_t>(i)] = static_cast<double>(
            table[prefix] - table[prefix | (static_cast<size_t>(1) << i)]);
        // fold bit i into the table for the next (shorter) position
        for (size_t r = 0; r < rows >> 1; ++r)
            table[r] = lse(table[r], table[r | (rows >> 1)]);
    }
    return llr;
}

}  // namespace oracle
