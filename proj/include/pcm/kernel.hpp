// Small binary polarization matrices applied across the bit levels of one
// symbol: the transmitted label is b = v*K (mod 2) for kernel input v.

#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>

namespace pcm {

class Kernel {
  public:
    Kernel() = default;  // empty: no kernel

    /// Row masks with column j at machine bit j. Throws if singular over GF(2).
    Kernel(std::initializer_list<uint32_t> row_masks, std::string name);

    static Kernel identity(int dim);
    static Kernel k2() { return Kernel({0b01u, 0b11u}, "k2"); }
    static Kernel k3() { return Kernel({0b001u, 0b011u, 0b110u}, "k3"); }
    static Kernel k4() { return Kernel({0b0001u, 0b0011u, 0b0110u, 0b1100u}, "k4"); }
    static Kernel by_name(const std::string& name);

    int dim() const { return dim_; }
    bool empty() const { return dim_ == 0; }
    const std::string& name() const { return name_; }
    uint32_t row(int i) const { return rows_[static_cast<size_t>(i)]; }

    /// b = v*K over GF(2), both packed with level j at bit j-1.
    uint32_t map(uint32_t v) const {
        uint32_t b = 0;
        for (int i = 0; i < dim_; ++i)
            if (v >> i & 1u) b ^= rows_[static_cast<size_t>(i)];
        return b;
    }

    bool operator==(const Kernel&) const = default;

  private:
    int dim_ = 0;
    std::array<uint32_t, 8> rows_{};
    std::string name_ = "none";
};

}  // namespace pcm
