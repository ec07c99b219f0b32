// PAM constellations and the Gray / set-partition / hybrid bit labelings.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pcm {

// Bit levels are 1-based to match the usual figure convention: level 1 is the
// leftmost bit of a printed label. Label[0] holds bit level 1.
using Label = std::vector<uint8_t>;

enum class BitOrder { lsb_first, msb_first };

struct LabelingSpec {
    enum class Kind { gray_lsb, gray_msb, set_partition, hybrid };
    Kind kind = Kind::gray_lsb;
    int split = 0;  // hybrid only: number of set-partition levels

    static LabelingSpec gray() { return {Kind::gray_lsb, 0}; }
    static LabelingSpec gray_msb() { return {Kind::gray_msb, 0}; }
    static LabelingSpec sp() { return {Kind::set_partition, 0}; }
    static LabelingSpec hybrid(int s) { return {Kind::hybrid, s}; }
    static LabelingSpec by_name(const std::string& name, int split = 0);

    std::string name() const;
    bool operator==(const LabelingSpec&) const = default;
};

// Labels of the 2^m-point PAM constellation with points in ascending
// amplitude order; index i corresponds to amplitude 2*i - (2^m - 1).
Label gray_label(int index, int m, BitOrder order = BitOrder::lsb_first);
Label sp_label(int index, int m);
Label hybrid_label(int index, int m, int split);
Label label_for(int index, int m, const LabelingSpec& spec);

// Packed form: bit level j sits at machine bit (j-1).
uint32_t pack_label(const Label& bits);
Label unpack_label(uint32_t packed, int m);

/// 2^m-point PAM constellation {+-1, +-3, ..., +-(2^m-1)} with a bijective
/// m-bit labeling. Immutable after construction.
class PamConstellation {
  public:
    PamConstellation(int m, const LabelingSpec& labeling);

    int order_exponent() const { return m_; }
    int size() const { return 1 << m_; }
    const LabelingSpec& labeling() const { return labeling_; }

    double point(int index) const { return points_[static_cast<size_t>(index)]; }
    const std::vector<double>& points() const { return points_; }

    Label label_of(int index) const;
    uint32_t packed_label_of(int index) const { return packed_[static_cast<size_t>(index)]; }
    int index_of(uint32_t packed) const { return index_of_[packed]; }
    double amplitude_of_label(uint32_t packed) const { return points_[static_cast<size_t>(index_of_[packed])]; }

    /// Average symbol energy (4^m - 1)/3.
    double average_energy() const;

  private:
    int m_;
    LabelingSpec labeling_;
    std::vector<double> points_;
    std::vector<uint32_t> packed_;    // by symbol index
    std::vector<int> index_of_;       // by packed label
};

PamConstellation build_pam(int m, const LabelingSpec& labeling);

/// One line per point, ascending amplitude: "<amplitude> <bits level-1-first>".
std::string labeling_table(const PamConstellation& c);

}  // namespace pcm
