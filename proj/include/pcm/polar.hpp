// Polar encoding and exact-LLR successive cancellation decoding.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pcm/llr.hpp"

namespace pcm {

struct ScResult {
    std::vector<uint8_t> data;      // info-position decisions, ascending index
    std::vector<uint8_t> codeword;  // re-encoding of the full decision vector
};

/// Optional per-position record of an SC pass, for oracle checks.
struct ScTrace {
    std::vector<double> decision_llr;  // LLR seen at each u position
    std::vector<uint8_t> u_hat;        // decision at each u position
};

/// (n, k) polar code: c = u * K2^{ox log2 n} with data on the information set
/// and the remaining positions frozen to zero.
class PolarCode {
  public:
    PolarCode(int block_length, std::vector<int> info_set);

    int block_length() const { return n_; }
    int dimension() const { return static_cast<int>(info_set_.size()); }
    const std::vector<int>& info_set() const { return info_set_; }

    std::vector<uint8_t> encode(std::span<const uint8_t> data) const;

    /// Channel LLRs follow log(P(c=0)/P(c=1)); +-inf are hard bits, NaN throws.
    ScResult sc_decode(std::span<const double> channel_llrs,
                       LlrMethod method = LlrMethod::exact,
                       ScTrace* trace = nullptr) const;

    /// In-place polar transform c = u * G_n over the full input vector.
    static void transform(std::span<uint8_t> u);

    /// Genie-aided SC pass over a full-rank code: every decision is compared
    /// against true_u and then forced to it; err_counts[i] is incremented on a
    /// mismatch at position i.
    static void genie_decode(std::span<const double> channel_llrs,
                             std::span<const uint8_t> true_u,
                             std::span<uint64_t> err_counts,
                             LlrMethod method = LlrMethod::exact);

  private:
    int n_;
    std::vector<int> info_set_;
    std::vector<uint8_t> frozen_;  // 1 = frozen, by u position
};

}  // namespace pcm
