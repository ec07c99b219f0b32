#include "pcm/kernel.hpp"

#include <stdexcept>

namespace pcm {

namespace {

bool invertible_gf2(const std::array<uint32_t, 8>& rows, int dim) {
    std::array<uint32_t, 8> r = rows;
    for (int col = 0; col < dim; ++col) {
        int pivot = -1;
        for (int i = col; i < dim; ++i)
            if (r[static_cast<size_t>(i)] >> col & 1u) { pivot = i; break; }
        if (pivot < 0) return false;
        std::swap(r[static_cast<size_t>(col)], r[static_cast<size_t>(pivot)]);
        for (int i = 0; i < dim; ++i)
            if (i != col && (r[static_cast<size_t>(i)] >> col & 1u))
                r[static_cast<size_t>(i)] ^= r[static_cast<size_t>(col)];
    }
    return true;
}

}  // namespace

Kernel::Kernel(std::initializer_list<uint32_t> row_masks, std::string name)
    : dim_(static_cast<int>(row_masks.size())), name_(std::move(name)) {
    if (dim_ < 1 || dim_ > 8) throw std::invalid_argument("kernel dimension must be in 1..8");
    size_t i = 0;
    for (uint32_t r : row_masks) rows_[i++] = r;
    if (!invertible_gf2(rows_, dim_)) throw std::invalid_argument("singular kernel");
}

Kernel Kernel::identity(int dim) {
    if (dim < 1 || dim > 8) throw std::invalid_argument("kernel dimension must be in 1..8");
    Kernel k;
    k.dim_ = dim;
    k.name_ = "identity";
    for (int i = 0; i < dim; ++i) k.rows_[static_cast<size_t>(i)] = 1u << i;
    return k;
}

Kernel Kernel::by_name(const std::string& name) {
    if (name == "k2") return k2();
    if (name == "k3") return k3();
    if (name == "k4") return k4();
    throw std::invalid_argument("unknown kernel: " + name);
}

}  // namespace pcm
