// Log-likelihood-ratio arithmetic shared by the demodulators and the SC decoder.
// Convention throughout: llr = log(P(bit = 0) / P(bit = 1)).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>

namespace pcm {

enum class LlrMethod { exact, maxlog };

inline const char* llr_method_name(LlrMethod m) {
    return m == LlrMethod::exact ? "exact" : "maxlog";
}

/// Max-shifted log(sum(exp(v))); -inf entries are allowed and drop out.
inline double log_sum_exp(std::span<const double> v, LlrMethod method = LlrMethod::exact) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double x : v) mx = std::max(mx, x);
    if (method == LlrMethod::maxlog || std::isinf(mx)) return mx;
    double acc = 0.0;
    for (double x : v) acc += std::exp(x - mx);
    return mx + std::log(acc);
}

/// Check-node combination 2*atanh(tanh(a/2)*tanh(b/2)), evaluated in the
/// stable sign-min + log1p form. Infinite inputs act as hard bits.
inline double boxplus(double a, double b, LlrMethod method = LlrMethod::exact) {
    const double sm = std::copysign(1.0, a) * std::copysign(1.0, b) *
                      std::min(std::fabs(a), std::fabs(b));
    if (method == LlrMethod::maxlog) return sm;
    if (std::isinf(a) || std::isinf(b)) return sm;
    return sm + std::log1p(std::exp(-std::fabs(a + b))) -
           std::log1p(std::exp(-std::fabs(a - b)));
}

/// Variable-node update b + (1-2*hard)*a. Conflicting certainties (inf - inf)
/// cancel to a full erasure.
inline double var_update(double a, double b, uint8_t hard) {
    const double t = hard ? b - a : b + a;
    if (std::isnan(t)) return 0.0;
    return t;
}

/// log2(1 + exp(t)) without overflow; used by the mutual-information estimators.
inline double log2_1p_exp(double t) {
    constexpr double inv_ln2 = 1.4426950408889634;
    if (t > 0.0) return (t + std::log1p(std::exp(-t))) * inv_ln2;
    return std::log1p(std::exp(t)) * inv_ln2;
}

}  // namespace pcm
