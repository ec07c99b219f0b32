#include "pcm/constellation.hpp"

#include <cstdio>
#include <stdexcept>

namespace pcm {

namespace {

void check_index(int index, int m) {
    if (m < 1 || m > 6) throw std::invalid_argument("constellation order exponent must be in 1..6");
    if (index < 0 || index >= (1 << m)) throw std::invalid_argument("symbol index out of range");
}

Label bits_from_packed(uint32_t packed, int m) {
    Label bits(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) bits[static_cast<size_t>(j)] = static_cast<uint8_t>(packed >> j & 1u);
    return bits;
}

}  // namespace

LabelingSpec LabelingSpec::by_name(const std::string& name, int split) {
    if (name == "gray") return gray();
    if (name == "gray-msb") return gray_msb();
    if (name == "sp") return sp();
    if (name == "hybrid") return hybrid(split);
    throw std::invalid_argument("unknown labeling: " + name);
}

std::string LabelingSpec::name() const {
    switch (kind) {
        case Kind::gray_lsb: return "gray";
        case Kind::gray_msb: return "gray-msb";
        case Kind::set_partition: return "sp";
        case Kind::hybrid: return "hybrid" + std::to_string(split);
    }
    return "?";
}

Label gray_label(int index, int m, BitOrder order) {
    check_index(index, m);
    const uint32_t g = static_cast<uint32_t>(index) ^ (static_cast<uint32_t>(index) >> 1);
    Label bits(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) {
        const int src = order == BitOrder::lsb_first ? j : m - 1 - j;
        bits[static_cast<size_t>(j)] = static_cast<uint8_t>(g >> src & 1u);
    }
    return bits;
}

Label sp_label(int index, int m) {
    check_index(index, m);
    return bits_from_packed(static_cast<uint32_t>(index), m);
}

Label hybrid_label(int index, int m, int split) {
    check_index(index, m);
    if (split < 0 || split > m) throw std::invalid_argument("hybrid split must be in 0..m");
    // First s levels follow set partitioning; the remaining levels Gray-label
    // the amplitude-ordered subset sharing the same first-s prefix. Symbols
    // with index residue p mod 2^s form that subset, at position index >> s.
    Label bits(static_cast<size_t>(m));
    for (int j = 0; j < split; ++j) bits[static_cast<size_t>(j)] = static_cast<uint8_t>(index >> j & 1);
    const uint32_t t = static_cast<uint32_t>(index) >> split;
    const uint32_t g = t ^ (t >> 1);
    for (int j = split; j < m; ++j)
        bits[static_cast<size_t>(j)] = static_cast<uint8_t>(g >> (j - split) & 1u);
    return bits;
}

Label label_for(int index, int m, const LabelingSpec& spec) {
    switch (spec.kind) {
        case LabelingSpec::Kind::gray_lsb: return gray_label(index, m, BitOrder::lsb_first);
        case LabelingSpec::Kind::gray_msb: return gray_label(index, m, BitOrder::msb_first);
        case LabelingSpec::Kind::set_partition: return sp_label(index, m);
        case LabelingSpec::Kind::hybrid: return hybrid_label(index, m, spec.split);
    }
    throw std::invalid_argument("bad labeling kind");
}

uint32_t pack_label(const Label& bits) {
    uint32_t packed = 0;
    for (size_t j = 0; j < bits.size(); ++j) packed |= static_cast<uint32_t>(bits[j] & 1u) << j;
    return packed;
}

Label unpack_label(uint32_t packed, int m) {
    return bits_from_packed(packed, m);
}

PamConstellation::PamConstellation(int m, const LabelingSpec& labeling)
    : m_(m), labeling_(labeling) {
    if (m < 1 || m > 6) throw std::invalid_argument("constellation order exponent must be in 1..6");
    const int n = 1 << m;
    points_.resize(static_cast<size_t>(n));
    packed_.resize(static_cast<size_t>(n));
    index_of_.assign(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        points_[static_cast<size_t>(i)] = static_cast<double>(2 * i - (n - 1));
        const uint32_t packed = pack_label(label_for(i, m, labeling));
        packed_[static_cast<size_t>(i)] = packed;
        if (index_of_[packed] != -1) throw std::logic_error("labeling is not a bijection");
        index_of_[packed] = i;
    }
}

Label PamConstellation::label_of(int index) const {
    return unpack_label(packed_[static_cast<size_t>(index)], m_);
}

double PamConstellation::average_energy() const {
    const double fourm = static_cast<double>(1ull << (2 * m_));
    return (fourm - 1.0) / 3.0;
}

PamConstellation build_pam(int m, const LabelingSpec& labeling) {
    return PamConstellation(m, labeling);
}

std::string labeling_table(const PamConstellation& c) {
    std::string out;
    for (int i = 0; i < c.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%d ", static_cast<int>(c.point(i)));
        out += buf;
        const Label bits = c.label_of(i);
        for (uint8_t b : bits) out += static_cast<char>('0' + b);
        out += '\n';
    }
    return out;
}

}  // namespace pcm
