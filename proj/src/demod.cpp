#include "pcm/demod.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "pcm/random.hpp"

namespace pcm {

namespace {

void check_level(const SymbolLikelihoods& sl, int level) {
    if (level < 1 || level > sl.m) throw std::invalid_argument("bit level out of range");
}

uint32_t packed_prefix(std::span<const uint8_t> prefix) {
    uint32_t p = 0;
    for (size_t j = 0; j < prefix.size(); ++j) p |= static_cast<uint32_t>(prefix[j] & 1u) << j;
    return p;
}

// The uniform 1/2^k prefactors of the transition probabilities are dropped
// everywhere: they cancel in every ratio.
double ratio(std::span<const double> zeros, std::span<const double> ones, LlrMethod method) {
    return log_sum_exp(zeros, method) - log_sum_exp(ones, method);
}

}  // namespace

SymbolLikelihoods symbol_likelihoods(double y, double sigma, const PamConstellation& c) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    SymbolLikelihoods sl;
    sl.m = c.order_exponent();
    const double inv = 1.0 / (2.0 * sigma * sigma);
    for (int i = 0; i < c.size(); ++i) {
        const double d = y - c.point(i);
        sl.loglik[c.packed_label_of(i)] = -d * d * inv;
    }
    return sl;
}

SymbolLikelihoods symbol_likelihoods_noiseless(double y, const PamConstellation& c) {
    SymbolLikelihoods sl;
    sl.m = c.order_exponent();
    for (int i = 0; i < c.size(); ++i)
        sl.loglik[c.packed_label_of(i)] =
            y == c.point(i) ? 0.0 : -std::numeric_limits<double>::infinity();
    return sl;
}

double pbp_llr(const SymbolLikelihoods& sl, int level, LlrMethod method) {
    check_level(sl, level);
    const int j = level - 1;
    const uint32_t low_mask = (1u << j) - 1u;
    const int half = 1 << (sl.m - 1);
    double zeros[32], ones[32];
    for (int t = 0; t < half; ++t) {
        const uint32_t u = static_cast<uint32_t>(t);
        const uint32_t spread = (u & low_mask) | ((u & ~low_mask) << 1);
        zeros[t] = sl.loglik[spread];
        ones[t] = sl.loglik[spread | (1u << j)];
    }
    return ratio({zeros, static_cast<size_t>(half)}, {ones, static_cast<size_t>(half)}, method);
}

double sbp_llr(const SymbolLikelihoods& sl, int level, std::span<const uint8_t> prefix,
               LlrMethod method) {
    check_level(sl, level);
    if (static_cast<int>(prefix.size()) != level - 1)
        throw std::invalid_argument("prefix length must be level - 1");
    const int j = level - 1;
    const uint32_t base = packed_prefix(prefix);
    const int count = 1 << (sl.m - level);
    double zeros[32], ones[32];
    for (int t = 0; t < count; ++t) {
        const uint32_t suffix = static_cast<uint32_t>(t) << (j + 1);
        zeros[t] = sl.loglik[base | suffix];
        ones[t] = sl.loglik[base | (1u << j) | suffix];
    }
    return ratio({zeros, static_cast<size_t>(count)}, {ones, static_cast<size_t>(count)}, method);
}

double hbp_llr(const SymbolLikelihoods& sl, int level, int split,
               std::span<const uint8_t> prefix, LlrMethod method) {
    check_level(sl, level);
    if (split < 0 || split > sl.m) throw std::invalid_argument("split must be in 0..m");
    if (static_cast<int>(prefix.size()) < (level <= split ? level - 1 : split))
        throw std::invalid_argument("prefix too short");
    // The first s sub-channels coincide with SBP; s = 0 coincides with PBP.
    // Delegation keeps those identities bit-exact.
    if (level <= split) return sbp_llr(sl, level, prefix.first(static_cast<size_t>(level - 1)), method);
    if (split == 0) return pbp_llr(sl, level, method);

    const int j = level - 1;
    const uint32_t base = packed_prefix(prefix.first(static_cast<size_t>(split)));
    const int free_bits = sl.m - split - 1;  // post-split levels other than j
    const int count = 1 << free_bits;
    const uint32_t low_mask = (1u << (j - split)) - 1u;
    double zeros[32], ones[32];
    for (int t = 0; t < count; ++t) {
        const uint32_t u = static_cast<uint32_t>(t);
        const uint32_t spread = ((u & low_mask) | ((u & ~low_mask) << 1)) << split;
        zeros[t] = sl.loglik[base | spread];
        ones[t] = sl.loglik[base | spread | (1u << j)];
    }
    return ratio({zeros, static_cast<size_t>(count)}, {ones, static_cast<size_t>(count)}, method);
}

double kernel_llr(const SymbolLikelihoods& sl, const Kernel& kernel, int level,
                  std::span<const uint8_t> prefix, LlrMethod method) {
    check_level(sl, level);
    if (kernel.dim() != sl.m) throw std::invalid_argument("kernel dimension must equal m");
    if (static_cast<int>(prefix.size()) != level - 1)
        throw std::invalid_argument("prefix length must be level - 1");
    const int j = level - 1;
    const uint32_t base = packed_prefix(prefix);
    const int count = 1 << (sl.m - level);
    double zeros[32], ones[32];
    for (int t = 0; t < count; ++t) {
        const uint32_t suffix = static_cast<uint32_t>(t) << (j + 1);
        zeros[t] = sl.loglik[kernel.map(base | suffix)];
        ones[t] = sl.loglik[kernel.map(base | (1u << j) | suffix)];
    }
    return ratio({zeros, static_cast<size_t>(count)}, {ones, static_cast<size_t>(count)}, method);
}

SymbolLikelihoods pbp_product_likelihoods(const SymbolLikelihoods& sl, LlrMethod method) {
    SymbolLikelihoods out;
    out.m = sl.m;
    double lp0[8], lp1[8];
    for (int l = 0; l < sl.m; ++l) {
        const double llr = pbp_llr(sl, l + 1, method);
        // normalized bit posteriors; +-inf llrs stay exact
        if (std::isinf(llr)) {
            lp0[l] = llr > 0 ? 0.0 : -std::numeric_limits<double>::infinity();
            lp1[l] = llr > 0 ? -std::numeric_limits<double>::infinity() : 0.0;
        } else {
            lp0[l] = -std::log1p(std::exp(-llr));
            lp1[l] = -std::log1p(std::exp(llr));
        }
    }
    for (uint32_t b = 0; b < (1u << sl.m); ++b) {
        double acc = 0.0;
        for (int l = 0; l < sl.m; ++l) acc += (b >> l & 1u) ? lp1[l] : lp0[l];
        out.loglik[b] = acc;
    }
    return out;
}

std::string PartitionSpec::name() const {
    switch (kind) {
        case Kind::pbp: return "pbp";
        case Kind::sbp: return "sbp";
        case Kind::hbp: return "hbp" + std::to_string(split);
    }
    return "?";
}

namespace {

MiEstimate mi_from_samples(double sum, double sum_sq, long samples, double offset) {
    const double mean = sum / static_cast<double>(samples);
    const double var = std::max(0.0, sum_sq / static_cast<double>(samples) - mean * mean);
    return {offset - mean, std::sqrt(var / static_cast<double>(samples))};
}

}  // namespace

MiEstimate level_mutual_information(const PartitionSpec& partition, int level,
                                    const PamConstellation& c, double sigma,
                                    long samples, uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    const int m = c.order_exponent();
    if (level < 1 || level > m) throw std::invalid_argument("bit level out of range");
    auto rng = trial_rng(seed, 0);
    GaussianSampler gauss;
    double sum = 0.0, sum_sq = 0.0;
    uint8_t bits[8];
    for (long k = 0; k < samples; ++k) {
        const uint32_t packed = static_cast<uint32_t>(rng()) & ((1u << m) - 1u);
        const double x = c.amplitude_of_label(packed);
        const double y = x + sigma * gauss(rng);
        const SymbolLikelihoods sl = symbol_likelihoods(y, sigma, c);
        for (int j = 0; j < m; ++j) bits[j] = static_cast<uint8_t>(packed >> j & 1u);
        double llr = 0.0;
        switch (partition.kind) {
            case PartitionSpec::Kind::pbp:
                llr = pbp_llr(sl, level);
                break;
            case PartitionSpec::Kind::sbp:
                llr = sbp_llr(sl, level, {bits, static_cast<size_t>(level - 1)});
                break;
            case PartitionSpec::Kind::hbp: {
                const size_t plen = static_cast<size_t>(
                    level <= partition.split ? level - 1 : partition.split);
                llr = hbp_llr(sl, level, partition.split, {bits, plen});
                break;
            }
        }
        const double toward_true = (packed >> (level - 1) & 1u) ? -llr : llr;
        const double loss = log2_1p_exp(-toward_true);
        sum += loss;
        sum_sq += loss * loss;
    }
    return mi_from_samples(sum, sum_sq, samples, 1.0);
}

MiEstimate symbol_mutual_information(const PamConstellation& c, double sigma,
                                     long samples, uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    const int m = c.order_exponent();
    constexpr double inv_ln2 = 1.4426950408889634;
    auto rng = trial_rng(seed, 0);
    GaussianSampler gauss;
    double sum = 0.0, sum_sq = 0.0;
    for (long k = 0; k < samples; ++k) {
        const uint32_t packed = static_cast<uint32_t>(rng()) & ((1u << m) - 1u);
        const double x = c.amplitude_of_label(packed);
        const double y = x + sigma * gauss(rng);
        const SymbolLikelihoods sl = symbol_likelihoods(y, sigma, c);
        // log2( sum_x' W(y|x') / W(y|x) )
        const double loss = (log_sum_exp(sl.values()) - sl.loglik[packed]) * inv_ln2;
        sum += loss;
        sum_sq += loss * loss;
    }
    return mi_from_samples(sum, sum_sq, samples, static_cast<double>(m));
}

std::string mi_csv_header() {
    return "level,snr_db,mi_bits,stderr";
}

std::string mi_csv_row(int level, double snr_db, const MiEstimate& mi) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d,%.6g,%.6f,%.6f", level, snr_db, mi.bits, mi.std_error);
    return buf;
}

}  // namespace pcm
