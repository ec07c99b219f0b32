#include "pcm/schemes.hpp"

#include <bit>
#include <cstdio>
#include <stdexcept>

namespace pcm {

namespace {

bool power_of_two(int x) {
    return x > 0 && std::has_single_bit(static_cast<unsigned>(x));
}

uint64_t fnv1a(uint64_t h, uint64_t v) {
    for (int b = 0; b < 8; ++b) {
        h ^= (v >> (8 * b)) & 0xffu;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace

std::string scheme_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::plain_bicm: return "bipcm";
        case SchemeKind::compound_bicm: return "compound";
        case SchemeKind::mlpcm: return "mlpcm";
        case SchemeKind::hybrid_pcm: return "hybrid";
    }
    return "?";
}

SchemeKind scheme_by_name(const std::string& name) {
    if (name == "bipcm") return SchemeKind::plain_bicm;
    if (name == "compound") return SchemeKind::compound_bicm;
    if (name == "mlpcm") return SchemeKind::mlpcm;
    if (name == "hybrid") return SchemeKind::hybrid_pcm;
    throw std::invalid_argument("unknown scheme: " + name);
}

int SchemeConfig::data_bits() const {
    int k = 0;
    for (const auto& c : components) k += static_cast<int>(c.info_set.size());
    return k;
}

SchemeConfig make_scheme(SchemeKind kind, int m, int n_uses, int split, Kernel kernel,
                         std::optional<LabelingSpec> labeling, InterleaverSpec interleaver) {
    SchemeConfig cfg;
    cfg.kind = kind;
    cfg.m = m;
    cfg.n_uses = n_uses;
    cfg.split = kind == SchemeKind::hybrid_pcm ? split : 0;
    cfg.kernel = kind == SchemeKind::compound_bicm ? kernel : Kernel{};
    cfg.interleaver = interleaver;
    switch (kind) {
        case SchemeKind::plain_bicm:
            cfg.labeling = labeling.value_or(LabelingSpec::gray());
            cfg.components = {{m * n_uses, {}}};
            break;
        case SchemeKind::compound_bicm:
            cfg.labeling = labeling.value_or(LabelingSpec::gray());  // LSB-BRGC
            cfg.components.assign(static_cast<size_t>(m), {n_uses, {}});
            break;
        case SchemeKind::mlpcm:
            cfg.labeling = labeling.value_or(LabelingSpec::sp());
            cfg.components.assign(static_cast<size_t>(m), {n_uses, {}});
            break;
        case SchemeKind::hybrid_pcm:
            cfg.labeling = labeling.value_or(LabelingSpec::hybrid(split));
            cfg.components.assign(static_cast<size_t>(split), {n_uses, {}});
            if (m > split) cfg.components.push_back({(m - split) * n_uses, {}});
            break;
    }
    validate_scheme(cfg);
    return cfg;
}

void validate_scheme(const SchemeConfig& cfg) {
    if (cfg.m < 1 || cfg.m > 6) throw std::invalid_argument("pam order exponent must be in 1..6");
    if (cfg.n_uses < 1) throw std::invalid_argument("channel uses must be >= 1");
    const int m = cfg.m, n = cfg.n_uses;
    switch (cfg.kind) {
        case SchemeKind::plain_bicm:
            if (cfg.components.size() != 1 || cfg.components[0].length != m * n)
                throw std::invalid_argument("plain BI-PCM needs one component of length m*N");
            break;
        case SchemeKind::compound_bicm:
            if (cfg.kernel.dim() != m)
                throw std::invalid_argument("compound kernel dimension must equal m");
            [[fallthrough]];
        case SchemeKind::mlpcm:
            if (cfg.components.size() != static_cast<size_t>(m))
                throw std::invalid_argument("scheme needs m components");
            for (const auto& c : cfg.components)
                if (c.length != n) throw std::invalid_argument("component length must equal N");
            break;
        case SchemeKind::hybrid_pcm: {
            const int s = cfg.split;
            if (s < 0 || s > m) throw std::invalid_argument("split must be in 0..m");
            const size_t expect = static_cast<size_t>(s) + (m > s ? 1 : 0);
            if (cfg.components.size() != expect)
                throw std::invalid_argument("hybrid needs s sequential components plus one parallel");
            for (int j = 0; j < s; ++j)
                if (cfg.components[static_cast<size_t>(j)].length != n)
                    throw std::invalid_argument("sequential component length must equal N");
            if (m > s && cfg.components.back().length != (m - s) * n)
                throw std::invalid_argument("parallel component length must equal (m-s)*N");
            break;
        }
    }
    for (const auto& c : cfg.components) {
        if (!power_of_two(c.length))
            throw std::invalid_argument("component length must be a power of 2");
        int prev = -1;
        for (int idx : c.info_set) {
            if (idx <= prev || idx >= c.length)
                throw std::invalid_argument("info set must be strictly ascending and in range");
            prev = idx;
        }
    }
}

std::string construction_fingerprint(const SchemeConfig& cfg) {
    std::string fp = scheme_name(cfg.kind);
    fp += "|m=" + std::to_string(cfg.m);
    fp += "|N=" + std::to_string(cfg.n_uses);
    if (cfg.kind == SchemeKind::hybrid_pcm) fp += "|s=" + std::to_string(cfg.split);
    if (cfg.kind == SchemeKind::compound_bicm) fp += "|kernel=" + cfg.kernel.name();
    fp += "|lab=" + cfg.labeling.name();
    fp += "|il=" + cfg.interleaver.name();
    fp += "|llr=" + std::string(llr_method_name(cfg.llr));
    return fp;
}

std::string fingerprint(const SchemeConfig& cfg) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (size_t j = 0; j < cfg.components.size(); ++j) {
        h = fnv1a(h, j + 1);
        for (int idx : cfg.components[j].info_set) h = fnv1a(h, static_cast<uint64_t>(idx) + 1);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return construction_fingerprint(cfg) + "|k=" + std::to_string(cfg.data_bits()) +
           "|info=" + buf;
}

Scheme::Scheme(SchemeConfig cfg)
    : cfg_(std::move(cfg)), pam_(cfg_.m, cfg_.labeling) {
    validate_scheme(cfg_);
    int parallel_len = 0;
    if (cfg_.kind == SchemeKind::plain_bicm) parallel_len = cfg_.m * cfg_.n_uses;
    if (cfg_.kind == SchemeKind::hybrid_pcm && cfg_.m > cfg_.split)
        parallel_len = (cfg_.m - cfg_.split) * cfg_.n_uses;
    perm_ = build_interleaver(cfg_.interleaver, parallel_len);
    codes_.reserve(cfg_.components.size());
    for (const auto& c : cfg_.components) codes_.emplace_back(c.length, c.info_set);
}

std::vector<std::vector<uint8_t>> Scheme::codewords_from_data(std::span<const uint8_t> data) const {
    if (static_cast<int>(data.size()) != cfg_.data_bits())
        throw std::invalid_argument("data length must equal the scheme's k");
    std::vector<std::vector<uint8_t>> cws;
    cws.reserve(codes_.size());
    size_t ofs = 0;
    for (const auto& code : codes_) {
        const size_t k = static_cast<size_t>(code.dimension());
        cws.push_back(code.encode(data.subspan(ofs, k)));
        ofs += k;
    }
    return cws;
}

std::vector<std::vector<uint8_t>> Scheme::codewords_raw(std::span<const uint8_t> u_global) const {
    if (static_cast<int>(u_global.size()) != cfg_.total_bits())
        throw std::invalid_argument("raw input length must equal m*N");
    std::vector<std::vector<uint8_t>> cws;
    cws.reserve(codes_.size());
    size_t ofs = 0;
    for (const auto& code : codes_) {
        const size_t n = static_cast<size_t>(code.block_length());
        std::vector<uint8_t> u(u_global.begin() + static_cast<long>(ofs),
                               u_global.begin() + static_cast<long>(ofs + n));
        PolarCode::transform(u);
        cws.push_back(std::move(u));
        ofs += n;
    }
    return cws;
}

std::vector<double> Scheme::modulate(const std::vector<std::vector<uint8_t>>& cws) const {
    const int m = cfg_.m, nsym = cfg_.n_uses;
    std::vector<uint32_t> labels(static_cast<size_t>(nsym), 0);
    switch (cfg_.kind) {
        case SchemeKind::plain_bicm:
            for (size_t p = 0; p < cws[0].size(); ++p) {
                const int slot = perm_[p];
                labels[static_cast<size_t>(slot / m)] |=
                    static_cast<uint32_t>(cws[0][p]) << (slot % m);
            }
            break;
        case SchemeKind::mlpcm:
        case SchemeKind::compound_bicm:
            for (int j = 0; j < m; ++j)
                for (int i = 0; i < nsym; ++i)
                    labels[static_cast<size_t>(i)] |=
                        static_cast<uint32_t>(cws[static_cast<size_t>(j)][static_cast<size_t>(i)]) << j;
            if (cfg_.kind == SchemeKind::compound_bicm)
                for (auto& v : labels) v = cfg_.kernel.map(v);
            break;
        case SchemeKind::hybrid_pcm: {
            const int s = cfg_.split, w = m - s;
            for (int j = 0; j < s; ++j)
                for (int i = 0; i < nsym; ++i)
                    labels[static_cast<size_t>(i)] |=
                        static_cast<uint32_t>(cws[static_cast<size_t>(j)][static_cast<size_t>(i)]) << j;
            if (w > 0) {
                const auto& par = cws.back();
                for (size_t p = 0; p < par.size(); ++p) {
                    const int slot = perm_[p];
                    labels[static_cast<size_t>(slot / w)] |=
                        static_cast<uint32_t>(par[p]) << (s + slot % w);
                }
            }
            break;
        }
    }
    std::vector<double> x(static_cast<size_t>(nsym));
    for (int i = 0; i < nsym; ++i)
        x[static_cast<size_t>(i)] = pam_.amplitude_of_label(labels[static_cast<size_t>(i)]);
    return x;
}

std::vector<double> Scheme::transmit(std::span<const uint8_t> data) const {
    return modulate(codewords_from_data(data));
}

std::vector<double> Scheme::transmit_raw(std::span<const uint8_t> u_global) const {
    return modulate(codewords_raw(u_global));
}

std::vector<SymbolLikelihoods> Scheme::demod_tables(std::span<const double> y,
                                                    double sigma) const {
    if (static_cast<int>(y.size()) != cfg_.n_uses)
        throw std::invalid_argument("received vector length must equal N");
    if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    std::vector<SymbolLikelihoods> tables(y.size());
    for (size_t i = 0; i < y.size(); ++i)
        tables[i] = sigma == 0.0 ? symbol_likelihoods_noiseless(y[i], pam_)
                                 : symbol_likelihoods(y[i], sigma, pam_);
    return tables;
}

ReceiveResult Scheme::receive(std::span<const double> y, double sigma) const {
    switch (cfg_.kind) {
        case SchemeKind::plain_bicm: return receive_plain_bicm(y, sigma);
        case SchemeKind::compound_bicm: return receive_compound(y, sigma);
        case SchemeKind::mlpcm: return receive_mlpcm(y, sigma);
        case SchemeKind::hybrid_pcm: return receive_hybrid(y, sigma);
    }
    throw std::invalid_argument("bad scheme kind");
}

ReceiveResult Scheme::receive_plain_bicm(std::span<const double> y, double sigma) const {
    if (cfg_.kind != SchemeKind::plain_bicm) throw std::domain_error("scheme is not plain BI-PCM");
    const auto tables = demod_tables(y, sigma);
    const int m = cfg_.m;
    std::vector<double> slot_llr(static_cast<size_t>(m) * y.size());
    for (size_t i = 0; i < y.size(); ++i)
        for (int l = 0; l < m; ++l)
            slot_llr[i * static_cast<size_t>(m) + static_cast<size_t>(l)] =
                pbp_llr(tables[i], l + 1, cfg_.llr);
    std::vector<double> llr(slot_llr.size());
    for (size_t p = 0; p < llr.size(); ++p) llr[p] = slot_llr[static_cast<size_t>(perm_[p])];
    ScResult dec = codes_[0].sc_decode(llr, cfg_.llr);
    return {std::move(dec.data), 1};
}

ReceiveResult Scheme::receive_mlpcm(std::span<const double> y, double sigma) const {
    if (cfg_.kind != SchemeKind::mlpcm) throw std::domain_error("scheme is not ML-PCM");
    const auto tables = demod_tables(y, sigma);
    const int m = cfg_.m, nsym = cfg_.n_uses;
    std::vector<std::array<uint8_t, 8>> hard(static_cast<size_t>(nsym));
    ReceiveResult out;
    std::vector<double> llr(static_cast<size_t>(nsym));
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < nsym; ++i)
            llr[static_cast<size_t>(i)] =
                sbp_llr(tables[static_cast<size_t>(i)], j + 1,
                        {hard[static_cast<size_t>(i)].data(), static_cast<size_t>(j)}, cfg_.llr);
        ScResult dec = codes_[static_cast<size_t>(j)].sc_decode(llr, cfg_.llr);
        out.data.insert(out.data.end(), dec.data.begin(), dec.data.end());
        for (int i = 0; i < nsym; ++i)
            hard[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                dec.codeword[static_cast<size_t>(i)];
        ++out.exchanges;
    }
    return out;
}

ReceiveResult Scheme::receive_compound(std::span<const double> y, double sigma) const {
    if (cfg_.kind != SchemeKind::compound_bicm)
        throw std::domain_error("scheme is not compound BI-PCM");
    // The kernel polarizes the m PBP sub-channels, so each symbol's joint
    // likelihoods collapse to the per-level product before the kernel stages.
    auto tables = demod_tables(y, sigma);
    for (auto& t : tables) t = pbp_product_likelihoods(t, cfg_.llr);
    const int m = cfg_.m, nsym = cfg_.n_uses;
    std::vector<std::array<uint8_t, 8>> vhard(static_cast<size_t>(nsym));
    ReceiveResult out;
    std::vector<double> llr(static_cast<size_t>(nsym));
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < nsym; ++i)
            llr[static_cast<size_t>(i)] =
                kernel_llr(tables[static_cast<size_t>(i)], cfg_.kernel, j + 1,
                           {vhard[static_cast<size_t>(i)].data(), static_cast<size_t>(j)}, cfg_.llr);
        ScResult dec = codes_[static_cast<size_t>(j)].sc_decode(llr, cfg_.llr);
        out.data.insert(out.data.end(), dec.data.begin(), dec.data.end());
        for (int i = 0; i < nsym; ++i)
            vhard[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                dec.codeword[static_cast<size_t>(i)];
        ++out.exchanges;
    }
    return out;
}

ReceiveResult Scheme::receive_hybrid(std::span<const double> y, double sigma) const {
    if (cfg_.kind != SchemeKind::hybrid_pcm) throw std::domain_error("scheme is not hybrid PCM");
    const auto tables = demod_tables(y, sigma);
    const int m = cfg_.m, s = cfg_.split, w = m - s, nsym = cfg_.n_uses;
    std::vector<std::array<uint8_t, 8>> hard(static_cast<size_t>(nsym));
    ReceiveResult out;
    std::vector<double> llr(static_cast<size_t>(nsym));
    for (int j = 0; j < s; ++j) {
        for (int i = 0; i < nsym; ++i)
            llr[static_cast<size_t>(i)] =
                hbp_llr(tables[static_cast<size_t>(i)], j + 1, s,
                        {hard[static_cast<size_t>(i)].data(), static_cast<size_t>(j)}, cfg_.llr);
        ScResult dec = codes_[static_cast<size_t>(j)].sc_decode(llr, cfg_.llr);
        out.data.insert(out.data.end(), dec.data.begin(), dec.data.end());
        for (int i = 0; i < nsym; ++i)
            hard[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                dec.codeword[static_cast<size_t>(i)];
        ++out.exchanges;
    }
    if (w > 0) {
        std::vector<double> slot_llr(static_cast<size_t>(w) * static_cast<size_t>(nsym));
        for (int i = 0; i < nsym; ++i)
            for (int off = 0; off < w; ++off)
                slot_llr[static_cast<size_t>(i) * static_cast<size_t>(w) + static_cast<size_t>(off)] =
                    hbp_llr(tables[static_cast<size_t>(i)], s + off + 1, s,
                            {hard[static_cast<size_t>(i)].data(), static_cast<size_t>(s)}, cfg_.llr);
        std::vector<double> cw_llr(slot_llr.size());
        for (size_t p = 0; p < cw_llr.size(); ++p)
            cw_llr[p] = slot_llr[static_cast<size_t>(perm_[p])];
        ScResult dec = codes_.back().sc_decode(cw_llr, cfg_.llr);
        out.data.insert(out.data.end(), dec.data.begin(), dec.data.end());
        ++out.exchanges;
    }
    return out;
}

void Scheme::genie_trial(std::span<const double> y, double sigma,
                         std::span<const uint8_t> u_global,
                         std::span<uint64_t> err_counts) const {
    if (static_cast<int>(u_global.size()) != cfg_.total_bits() ||
        err_counts.size() != u_global.size())
        throw std::invalid_argument("genie vectors must cover all m*N positions");
    auto tables = demod_tables(y, sigma);
    if (cfg_.kind == SchemeKind::compound_bicm)
        for (auto& t : tables) t = pbp_product_likelihoods(t, cfg_.llr);
    const auto cws = codewords_raw(u_global);  // true per-level bits for feedback
    const int m = cfg_.m, nsym = cfg_.n_uses;
    std::vector<double> llr;

    auto genie_component = [&](size_t comp, size_t u_ofs, std::span<const double> l) {
        const int n = codes_[comp].block_length();
        PolarCode::genie_decode(l, u_global.subspan(u_ofs, static_cast<size_t>(n)),
                                err_counts.subspan(u_ofs, static_cast<size_t>(n)), cfg_.llr);
    };

    switch (cfg_.kind) {
        case SchemeKind::plain_bicm: {
            std::vector<double> slot_llr(static_cast<size_t>(m) * static_cast<size_t>(nsym));
            for (int i = 0; i < nsym; ++i)
                for (int l = 0; l < m; ++l)
                    slot_llr[static_cast<size_t>(i * m + l)] =
                        pbp_llr(tables[static_cast<size_t>(i)], l + 1, cfg_.llr);
            llr.resize(slot_llr.size());
            for (size_t p = 0; p < llr.size(); ++p) llr[p] = slot_llr[static_cast<size_t>(perm_[p])];
            genie_component(0, 0, llr);
            break;
        }
        case SchemeKind::mlpcm:
        case SchemeKind::compound_bicm: {
            const bool compound = cfg_.kind == SchemeKind::compound_bicm;
            std::vector<std::array<uint8_t, 8>> pre(static_cast<size_t>(nsym));
            llr.resize(static_cast<size_t>(nsym));
            size_t ofs = 0;
            for (int j = 0; j < m; ++j) {
                for (int i = 0; i < nsym; ++i) {
                    const auto& p = pre[static_cast<size_t>(i)];
                    llr[static_cast<size_t>(i)] =
                        compound ? kernel_llr(tables[static_cast<size_t>(i)], cfg_.kernel, j + 1,
                                              {p.data(), static_cast<size_t>(j)}, cfg_.llr)
                                 : sbp_llr(tables[static_cast<size_t>(i)], j + 1,
                                           {p.data(), static_cast<size_t>(j)}, cfg_.llr);
                }
                genie_component(static_cast<size_t>(j), ofs, llr);
                for (int i = 0; i < nsym; ++i)
                    pre[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                        cws[static_cast<size_t>(j)][static_cast<size_t>(i)];
                ofs += static_cast<size_t>(nsym);
            }
            break;
        }
        case SchemeKind::hybrid_pcm: {
            const int s = cfg_.split, w = m - s;
            std::vector<std::array<uint8_t, 8>> pre(static_cast<size_t>(nsym));
            llr.resize(static_cast<size_t>(nsym));
            size_t ofs = 0;
            for (int j = 0; j < s; ++j) {
                for (int i = 0; i < nsym; ++i)
                    llr[static_cast<size_t>(i)] =
                        hbp_llr(tables[static_cast<size_t>(i)], j + 1, s,
                                {pre[static_cast<size_t>(i)].data(), static_cast<size_t>(j)},
                                cfg_.llr);
                genie_component(static_cast<size_t>(j), ofs, llr);
                for (int i = 0; i < nsym; ++i)
                    pre[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                        cws[static_cast<size_t>(j)][static_cast<size_t>(i)];
                ofs += static_cast<size_t>(nsym);
            }
            if (w > 0) {
                std::vector<double> slot_llr(static_cast<size_t>(w) * static_cast<size_t>(nsym));
                for (int i = 0; i < nsym; ++i)
                    for (int off = 0; off < w; ++off)
                        slot_llr[static_cast<size_t>(i * w + off)] =
                            hbp_llr(tables[static_cast<size_t>(i)], s + off + 1, s,
                                    {pre[static_cast<size_t>(i)].data(), static_cast<size_t>(s)},
                                    cfg_.llr);
                std::vector<double> cw_llr(slot_llr.size());
                for (size_t p = 0; p < cw_llr.size(); ++p)
                    cw_llr[p] = slot_llr[static_cast<size_t>(perm_[p])];
                genie_component(codes_.size() - 1, ofs, cw_llr);
            }
            break;
        }
    }
}

}  // namespace pcm
