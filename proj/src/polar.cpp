#include "pcm/polar.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace pcm {

namespace {

// Shared SC recursion. A node covering u[pos, pos+len) receives its channel
// LLRs in lam[0..len) and writes the subtree's re-encoded codeword into
// hard[0..len). Child LLR buffers are carved from a single arena: the node of
// size len uses arena[n - len, n - len/2), which is disjoint across the live
// recursion path.
struct ScEngine {
    int n = 0;
    LlrMethod method = LlrMethod::exact;
    const uint8_t* frozen = nullptr;   // decode mode
    const uint8_t* genie_u = nullptr;  // genie mode
    uint64_t* err_counts = nullptr;
    uint8_t* u_hat = nullptr;
    double* arena = nullptr;
    double* decision_llr = nullptr;  // optional trace

    void node(double* lam, uint8_t* hard, int len, int pos) {
        if (len == 1) {
            const double l = lam[0];
            if (decision_llr) decision_llr[pos] = l;
            uint8_t u;
            if (genie_u) {
                const uint8_t truth = genie_u[pos];
                if ((l < 0.0 ? 1 : 0) != truth) ++err_counts[pos];
                u = truth;
            } else if (frozen[pos]) {
                u = 0;
            } else {
                u = l < 0.0 ? 1 : 0;
            }
            if (u_hat) u_hat[pos] = u;
            hard[0] = u;
            return;
        }
        const int h = len / 2;
        double* child = arena + (n - len);
        for (int i = 0; i < h; ++i) child[i] = boxplus(lam[i], lam[i + h], method);
        node(child, hard, h, pos);
        for (int i = 0; i < h; ++i) child[i] = var_update(lam[i], lam[i + h], hard[i]);
        node(child, hard + h, h, pos + h);
        for (int i = 0; i < h; ++i) hard[i] ^= hard[i + h];
    }
};

void check_block_length(int n) {
    if (n < 1 || !std::has_single_bit(static_cast<unsigned>(n)))
        throw std::invalid_argument("block length must be a power of 2");
}

}  // namespace

PolarCode::PolarCode(int block_length, std::vector<int> info_set)
    : n_(block_length), info_set_(std::move(info_set)) {
    check_block_length(n_);
    frozen_.assign(static_cast<size_t>(n_), 1);
    int prev = -1;
    for (int idx : info_set_) {
        if (idx < 0 || idx >= n_) throw std::invalid_argument("info index out of range");
        if (idx <= prev) throw std::invalid_argument("info set must be strictly ascending");
        prev = idx;
        frozen_[static_cast<size_t>(idx)] = 0;
    }
}

void PolarCode::transform(std::span<uint8_t> u) {
    const int n = static_cast<int>(u.size());
    check_block_length(n);
    for (int half = n >> 1; half >= 1; half >>= 1)
        for (int i = 0; i < n; i += 2 * half)
            for (int j = i; j < i + half; ++j) u[j] ^= u[j + half];
}

std::vector<uint8_t> PolarCode::encode(std::span<const uint8_t> data) const {
    if (static_cast<int>(data.size()) != dimension())
        throw std::invalid_argument("data length must equal code dimension");
    std::vector<uint8_t> u(static_cast<size_t>(n_), 0);
    for (size_t i = 0; i < info_set_.size(); ++i)
        u[static_cast<size_t>(info_set_[i])] = data[i] & 1u;
    transform(u);
    return u;
}

ScResult PolarCode::sc_decode(std::span<const double> channel_llrs, LlrMethod method,
                              ScTrace* trace) const {
    if (static_cast<int>(channel_llrs.size()) != n_)
        throw std::invalid_argument("LLR vector length must equal block length");
    for (double l : channel_llrs)
        if (std::isnan(l)) throw std::domain_error("NaN channel LLR");

    std::vector<double> lam(channel_llrs.begin(), channel_llrs.end());
    std::vector<double> arena(static_cast<size_t>(n_));
    std::vector<uint8_t> u_hat(static_cast<size_t>(n_));
    ScResult res;
    res.codeword.assign(static_cast<size_t>(n_), 0);
    if (trace) {
        trace->decision_llr.assign(static_cast<size_t>(n_), 0.0);
        trace->u_hat.assign(static_cast<size_t>(n_), 0);
    }

    ScEngine eng;
    eng.n = n_;
    eng.method = method;
    eng.frozen = frozen_.data();
    eng.u_hat = u_hat.data();
    eng.arena = arena.data();
    eng.decision_llr = trace ? trace->decision_llr.data() : nullptr;
    eng.node(lam.data(), res.codeword.data(), n_, 0);

    res.data.resize(info_set_.size());
    for (size_t i = 0; i < info_set_.size(); ++i)
        res.data[i] = u_hat[static_cast<size_t>(info_set_[i])];
    if (trace) trace->u_hat = u_hat;
    return res;
}

void PolarCode::genie_decode(std::span<const double> channel_llrs,
                             std::span<const uint8_t> true_u,
                             std::span<uint64_t> err_counts, LlrMethod method) {
    const int n = static_cast<int>(channel_llrs.size());
    check_block_length(n);
    if (static_cast<int>(true_u.size()) != n || static_cast<int>(err_counts.size()) != n)
        throw std::invalid_argument("genie vectors must match block length");

    std::vector<double> lam(channel_llrs.begin(), channel_llrs.end());
    std::vector<double> arena(static_cast<size_t>(n));
    std::vector<uint8_t> hard(static_cast<size_t>(n));

    ScEngine eng;
    eng.n = n;
    eng.method = method;
    eng.genie_u = true_u.data();
    eng.err_counts = err_counts.data();
    eng.arena = arena.data();
    eng.node(lam.data(), hard.data(), n, 0);
}

}  // namespace pcm
