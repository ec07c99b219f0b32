// Soft demodulation: per-level LLRs for the parallel (PBP), sequential (SBP),
// hybrid (HBP) and kernel-transformed binary partitions of a 2^m-ary channel,
// plus Monte Carlo mutual-information estimators.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "pcm/constellation.hpp"
#include "pcm/kernel.hpp"
#include "pcm/llr.hpp"

namespace pcm {

/// log W(y | L(b)) for every packed label b of one received amplitude y,
/// up to a common additive constant (constants cancel in every LLR).
struct SymbolLikelihoods {
    int m = 0;
    std::array<double, 64> loglik{};  // first 2^m entries, indexed by packed label

    int size() const { return 1 << m; }
    std::span<const double> values() const {
        return {loglik.data(), static_cast<size_t>(1) << m};
    }
};

/// Gaussian log-likelihoods -(y - x)^2 / (2 sigma^2). Throws if sigma <= 0.
SymbolLikelihoods symbol_likelihoods(double y, double sigma, const PamConstellation& c);

/// sigma = 0 variant: 0 for exact amplitude matches, -inf otherwise.
SymbolLikelihoods symbol_likelihoods_noiseless(double y, const PamConstellation& c);

// All level arguments are 1-based; prefixes hold bit levels 1..|prefix| in order.
// Returned LLRs follow the log(P(0)/P(1)) convention.

double pbp_llr(const SymbolLikelihoods& sl, int level, LlrMethod method = LlrMethod::exact);
double sbp_llr(const SymbolLikelihoods& sl, int level, std::span<const uint8_t> prefix,
               LlrMethod method = LlrMethod::exact);
double hbp_llr(const SymbolLikelihoods& sl, int level, int split,
               std::span<const uint8_t> prefix, LlrMethod method = LlrMethod::exact);
double kernel_llr(const SymbolLikelihoods& sl, const Kernel& kernel, int level,
                  std::span<const uint8_t> prefix, LlrMethod method = LlrMethod::exact);

/// Independent-per-level approximation: collapses a symbol's likelihoods to
/// the product of its m PBP bit posteriors. Feeding this table to kernel_llr
/// gives the compound receiver's view, in which the kernel polarizes m
/// separate binary channels rather than the joint symbol channel.
SymbolLikelihoods pbp_product_likelihoods(const SymbolLikelihoods& sl,
                                          LlrMethod method = LlrMethod::exact);

struct PartitionSpec {
    enum class Kind { pbp, sbp, hbp };
    Kind kind = Kind::pbp;
    int split = 0;  // hbp only

    std::string name() const;
};

struct MiEstimate {
    double bits = 0.0;
    double std_error = 0.0;
};

/// Monte Carlo estimate of the level-j sub-channel mutual information under
/// the given partition, from the LLR distribution with true-prefix conditioning.
MiEstimate level_mutual_information(const PartitionSpec& partition, int level,
                                    const PamConstellation& c, double sigma,
                                    long samples, uint64_t seed);

/// Symbol-wise I(X;Y) estimate for uniform inputs over the constellation.
MiEstimate symbol_mutual_information(const PamConstellation& c, double sigma,
                                     long samples, uint64_t seed);

std::string mi_csv_header();
std::string mi_csv_row(int level, double snr_db, const MiEstimate& mi);

}  // namespace pcm
