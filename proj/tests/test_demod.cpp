#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pcm/demod.hpp"
#include "pcm/random.hpp"
#include "pcm/sim.hpp"

using namespace pcm;

namespace {

constexpr double kRelTol = 1e-10;

void check_close(double got, double want, double rel = kRelTol) {
    CHECK(std::fabs(got - want) <= rel * std::max(1.0, std::fabs(want)));
}

}  // namespace

TEST_CASE("symbol likelihood basics") {
    PamConstellation c2(1, LabelingSpec::gray());
    SymbolLikelihoods sl = symbol_likelihoods(1.0, 1.0, c2);
    CHECK(sl.loglik[c2.packed_label_of(1)] - sl.loglik[c2.packed_label_of(0)] ==
          doctest::Approx(2.0));
    CHECK_THROWS_AS(symbol_likelihoods(1.0, 0.0, c2), std::invalid_argument);

    // y = 0 on a symmetric constellation: symmetric under x <-> -x
    PamConstellation c8(3, LabelingSpec::sp());
    SymbolLikelihoods s0 = symbol_likelihoods(0.0, 0.7, c8);
    for (int i = 0; i < 8; ++i)
        CHECK(s0.loglik[c8.packed_label_of(i)] ==
              doctest::Approx(s0.loglik[c8.packed_label_of(7 - i)]));

    // pairwise ratios match a direct Gaussian density evaluation
    PamConstellation c4(2, LabelingSpec::gray());
    const double y = 3.0, sigma = 0.5;
    SymbolLikelihoods s4 = symbol_likelihoods(y, sigma, c4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double direct =
                std::log(std::exp(-(y - c4.point(i)) * (y - c4.point(i)) / (2 * sigma * sigma)) /
                         std::exp(-(y - c4.point(j)) * (y - c4.point(j)) / (2 * sigma * sigma)));
            check_close(s4.loglik[c4.packed_label_of(i)] - s4.loglik[c4.packed_label_of(j)],
                        direct, 1e-9);
        }
}

TEST_CASE("pbp llr basics") {
    PamConstellation c2(1, LabelingSpec::gray());
    for (double y : {-1.5, 0.0, 0.3, 2.0}) {
        SymbolLikelihoods sl = symbol_likelihoods(y, 1.0, c2);
        CHECK(pbp_llr(sl, 1) == doctest::Approx(-2.0 * y));  // L(0) = -1
    }

    // level-2 symmetry axis of Gray 4-PAM is y = 0
    PamConstellation c4(2, LabelingSpec::gray());
    SymbolLikelihoods sl = symbol_likelihoods(0.0, 0.8, c4);
    CHECK(pbp_llr(sl, 2) == doctest::Approx(0.0));

    PamConstellation c16(4, LabelingSpec::gray());
    SymbolLikelihoods s16 = symbol_likelihoods(2.5, 1.0, c16);
    check_close(pbp_llr(s16, 3), oracle::pbp_oracle(s16, 3));
}

TEST_CASE("sbp llr basics") {
    PamConstellation c16(4, LabelingSpec::sp());
    SymbolLikelihoods sl = symbol_likelihoods(0.7, 0.9, c16);

    // j = 1: identical to pbp
    check_close(sbp_llr(sl, 1, {}), pbp_llr(sl, 1), 1e-15);

    // j = m with full prefix: two-term Gaussian ratio
    const uint8_t prefix[3] = {1, 0, 1};
    const double got = sbp_llr(sl, 4, {prefix, 3});
    const double want = sl.loglik[0b0101] - sl.loglik[0b1101];
    CHECK(got == doctest::Approx(want));

    const uint8_t p1[1] = {1};
    check_close(sbp_llr(sl, 2, {p1, 1}), oracle::sbp_oracle(sl, 2, {p1, 1}));
    CHECK_THROWS_AS(sbp_llr(sl, 3, {p1, 1}), std::invalid_argument);
}

TEST_CASE("hbp degenerations and the general case") {
    PamConstellation c16(4, LabelingSpec::hybrid(2));
    SymbolLikelihoods sl = symbol_likelihoods(-4.2, 1.2, c16);
    const uint8_t bits[4] = {1, 1, 0, 1};

    for (int j = 1; j <= 4; ++j)
        CHECK(hbp_llr(sl, j, 0, {}) == pbp_llr(sl, j));
    for (int j = 1; j <= 4; ++j)
        CHECK(hbp_llr(sl, j, 4, {bits, 4}) ==
              sbp_llr(sl, j, {bits, static_cast<size_t>(j - 1)}));

    // bit-identical prefix identity for j <= s
    for (int s = 1; s <= 4; ++s)
        for (int j = 1; j <= s; ++j)
            CHECK(hbp_llr(sl, j, s, {bits, static_cast<size_t>(s)}) ==
                  sbp_llr(sl, j, {bits, static_cast<size_t>(j - 1)}));

    check_close(hbp_llr(sl, 4, 2, {bits, 2}), oracle::hbp_oracle(sl, 4, 2, {bits, 2}));
    CHECK_THROWS_AS(hbp_llr(sl, 1, 7, {bits, 4}), std::invalid_argument);
}

TEST_CASE("kernel llr basics") {
    PamConstellation c4(2, LabelingSpec::gray());
    SymbolLikelihoods sl = symbol_likelihoods(0.4, 0.7, c4);

    // identity kernel reduces to sbp, bit-identically
    const Kernel id = Kernel::identity(2);
    const uint8_t one[1] = {1};
    CHECK(kernel_llr(sl, id, 1, {}) == sbp_llr(sl, 1, {}));
    CHECK(kernel_llr(sl, id, 2, {one, 1}) == sbp_llr(sl, 2, {one, 1}));

    // K2 on 4-PAM, j = 1: hand expansion over all four v vectors
    const Kernel k2 = Kernel::k2();
    const double p00 = std::exp(static_cast<long double>(sl.loglik[k2.map(0b00)]));
    const double p10 = std::exp(static_cast<long double>(sl.loglik[k2.map(0b10)]));
    const double p01 = std::exp(static_cast<long double>(sl.loglik[k2.map(0b01)]));
    const double p11 = std::exp(static_cast<long double>(sl.loglik[k2.map(0b11)]));
    check_close(kernel_llr(sl, k2, 1, {}), std::log((p00 + p10) / (p01 + p11)), 1e-9);

    PamConstellation c8(3, LabelingSpec::gray());  // LSB-BRGC
    SymbolLikelihoods s8 = symbol_likelihoods(-1.9, 0.8, c8);
    const uint8_t zero[1] = {0};
    check_close(kernel_llr(s8, Kernel::k3(), 2, {zero, 1}),
                oracle::kernel_oracle(s8, Kernel::k3(), 2, {zero, 1}));
    CHECK_THROWS_AS(kernel_llr(s8, k2, 1, {}), std::invalid_argument);
}

TEST_CASE("partition llrs equal their defining label sums on random cases") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> ydist(-20.0, 20.0);
    std::uniform_real_distribution<double> sdist(0.3, 3.0);
    const std::vector<LabelingSpec> labelings = {LabelingSpec::gray(), LabelingSpec::sp(),
                                                 LabelingSpec::hybrid(1), LabelingSpec::hybrid(2)};
    for (int it = 0; it < 400; ++it) {
        const int m = 1 + static_cast<int>(rng() % 4);
        const auto& lab = labelings[rng() % labelings.size()];
        PamConstellation c(m, lab.kind == LabelingSpec::Kind::hybrid && lab.split > m
                                  ? LabelingSpec::sp()
                                  : lab);
        SymbolLikelihoods sl = symbol_likelihoods(ydist(rng), sdist(rng), c);
        uint8_t bits[6];
        for (int j = 0; j < m; ++j) bits[j] = static_cast<uint8_t>(rng() & 1);
        const int j = 1 + static_cast<int>(rng() % m);
        const int s = static_cast<int>(rng() % (m + 1));

        check_close(pbp_llr(sl, j), oracle::pbp_oracle(sl, j));
        check_close(sbp_llr(sl, j, {bits, static_cast<size_t>(j - 1)}),
                    oracle::sbp_oracle(sl, j, {bits, static_cast<size_t>(j - 1)}));
        check_close(hbp_llr(sl, j, s, {bits, static_cast<size_t>(s)}),
                    oracle::hbp_oracle(sl, j, s, {bits, static_cast<size_t>(s)}));
        if (m <= 4 && m >= 2) {
            const Kernel k = m == 2 ? Kernel::k2() : (m == 3 ? Kernel::k3() : Kernel::k4());
            check_close(kernel_llr(sl, k, j, {bits, static_cast<size_t>(j - 1)}),
                        oracle::kernel_oracle(sl, k, j, {bits, static_cast<size_t>(j - 1)}));
        }
    }
}

TEST_CASE("llr sign flips under the sp label reflection") {
    PamConstellation c(4, LabelingSpec::sp());
    for (double y : {0.3, 1.7, -5.5}) {
        SymbolLikelihoods a = symbol_likelihoods(y, 1.1, c);
        SymbolLikelihoods b = symbol_likelihoods(-y, 1.1, c);
        CHECK(pbp_llr(a, 1) == doctest::Approx(-pbp_llr(b, 1)));
    }
}

TEST_CASE("maxlog llr picks the dominant terms") {
    PamConstellation c(2, LabelingSpec::gray());
    SymbolLikelihoods sl = symbol_likelihoods(1.3, 0.6, c);
    double best0 = -1e300, best1 = -1e300;
    for (uint32_t b = 0; b < 4; ++b)
        (b & 1u ? best1 : best0) = std::max(b & 1u ? best1 : best0, sl.loglik[b]);
    CHECK(pbp_llr(sl, 1, LlrMethod::maxlog) == doctest::Approx(best0 - best1));
}

TEST_CASE("mutual information extremes for 2-PAM") {
    PamConstellation c(1, LabelingSpec::gray());
    const PartitionSpec pbp{PartitionSpec::Kind::pbp, 0};
    MiEstimate clean = level_mutual_information(pbp, 1, c, 1e-4, 4000, 7);
    CHECK(clean.bits == doctest::Approx(1.0).epsilon(0.01));
    MiEstimate noisy = level_mutual_information(pbp, 1, c, 1e4, 4000, 7);
    CHECK(noisy.bits == doctest::Approx(0.0).epsilon(0.01));
}

TEST_CASE("sbp level MIs sum to the symbol MI") {
    PamConstellation c(3, LabelingSpec::sp());
    const double sigma = snr_to_sigma(14.0, c);
    const long samples = 40000;
    double sum = 0.0, var = 0.0;
    for (int j = 1; j <= 3; ++j) {
        MiEstimate mi = level_mutual_information({PartitionSpec::Kind::sbp, 0}, j, c, sigma,
                                                 samples, 100 + j);
        sum += mi.bits;
        var += mi.std_error * mi.std_error;
    }
    MiEstimate iw = symbol_mutual_information(c, sigma, samples, 200);
    var += iw.std_error * iw.std_error;
    CHECK(std::fabs(sum - iw.bits) <= 4.0 * std::sqrt(var));
}

TEST_CASE("mi csv formatting") {
    CHECK(mi_csv_header() == "level,snr_db,mi_bits,stderr");
    CHECK(mi_csv_row(2, 15.0, {0.5, 0.001}) == "2,15,0.500000,0.001000");
}
