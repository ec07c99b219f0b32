#include "pcm/interleaver.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "pcm/random.hpp"

namespace pcm {

std::string InterleaverSpec::name() const {
    if (kind == Kind::block) return "block";
    return "rand" + std::to_string(seed);
}

std::vector<int> build_interleaver(const InterleaverSpec& spec, int length) {
    if (length < 0) throw std::invalid_argument("interleaver length must be >= 0");
    std::vector<int> perm(static_cast<size_t>(length));
    std::iota(perm.begin(), perm.end(), 0);
    if (spec.kind == InterleaverSpec::Kind::seeded) {
        auto rng = trial_rng(spec.seed, 0x1eaf);
        std::shuffle(perm.begin(), perm.end(), rng);
    }
    return perm;
}

}  // namespace pcm
