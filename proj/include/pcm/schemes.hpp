// End-to-end coded-modulation pipelines: plain BI-PCM, BI-PCM with a compound
// kernel, ML-PCM, and the hybrid scheme with splitting parameter s.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcm/constellation.hpp"
#include "pcm/demod.hpp"
#include "pcm/interleaver.hpp"
#include "pcm/kernel.hpp"
#include "pcm/polar.hpp"

namespace pcm {

enum class SchemeKind { plain_bicm, compound_bicm, mlpcm, hybrid_pcm };

std::string scheme_name(SchemeKind kind);
SchemeKind scheme_by_name(const std::string& name);

struct ComponentCode {
    int length = 0;
    std::vector<int> info_set;  // empty until construction assigns it
};

struct SchemeConfig {
    SchemeKind kind = SchemeKind::plain_bicm;
    int m = 1;        // constellation order exponent
    int n_uses = 1;   // N: PAM channel uses per block
    int split = 0;    // s, hybrid only
    Kernel kernel;    // compound only
    LabelingSpec labeling;
    InterleaverSpec interleaver;
    LlrMethod llr = LlrMethod::exact;
    std::vector<ComponentCode> components;

    int total_bits() const { return m * n_uses; }
    int data_bits() const;
};

/// Builds the component layout for a scheme kind and validates it. Info sets
/// start empty; labeling defaults to the kind's natural rule unless overridden.
SchemeConfig make_scheme(SchemeKind kind, int m, int n_uses, int split = 0,
                         Kernel kernel = {},
                         std::optional<LabelingSpec> labeling = std::nullopt,
                         InterleaverSpec interleaver = {});

void validate_scheme(const SchemeConfig& cfg);

/// Fingerprint of everything the Monte Carlo construction depends on
/// (kind, m, N, s, kernel, labeling, interleaver, llr method).
std::string construction_fingerprint(const SchemeConfig& cfg);

/// Construction fingerprint plus data size and an info-set hash.
std::string fingerprint(const SchemeConfig& cfg);

struct ReceiveResult {
    std::vector<uint8_t> data;
    int exchanges = 0;  // demodulator <-> decoder information exchanges
};

class Scheme {
  public:
    explicit Scheme(SchemeConfig cfg);

    const SchemeConfig& config() const { return cfg_; }
    const PamConstellation& constellation() const { return pam_; }
    int data_bits() const { return cfg_.data_bits(); }

    /// data -> N amplitudes.
    std::vector<double> transmit(std::span<const uint8_t> data) const;

    /// Dispatches on the configured kind; sigma = 0 means a noiseless channel.
    ReceiveResult receive(std::span<const double> y, double sigma) const;

    ReceiveResult receive_plain_bicm(std::span<const double> y, double sigma) const;
    ReceiveResult receive_mlpcm(std::span<const double> y, double sigma) const;
    ReceiveResult receive_compound(std::span<const double> y, double sigma) const;
    ReceiveResult receive_hybrid(std::span<const double> y, double sigma) const;

    // Construction support: encode all m*N input positions of a full-rank
    // version of the scheme (u_global is component-major), and run one
    // genie-aided trial tallying per-position decision errors.
    std::vector<double> transmit_raw(std::span<const uint8_t> u_global) const;
    void genie_trial(std::span<const double> y, double sigma,
                     std::span<const uint8_t> u_global,
                     std::span<uint64_t> err_counts) const;

  private:
    std::vector<SymbolLikelihoods> demod_tables(std::span<const double> y, double sigma) const;
    std::vector<std::vector<uint8_t>> codewords_from_data(std::span<const uint8_t> data) const;
    std::vector<std::vector<uint8_t>> codewords_raw(std::span<const uint8_t> u_global) const;
    std::vector<double> modulate(const std::vector<std::vector<uint8_t>>& codewords) const;

    SchemeConfig cfg_;
    PamConstellation pam_;
    std::vector<int> perm_;  // interleaver for the parallel component, if any
    std::vector<PolarCode> codes_;
};

}  // namespace pcm
