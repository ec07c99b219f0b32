#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pcm {

/// Permutation between codeword positions and (symbol, level-offset) slots.
/// slot q addresses symbol q / width, level offset q % width (symbol-major).
struct InterleaverSpec {
    enum class Kind { block, seeded };
    Kind kind = Kind::block;
    uint64_t seed = 0;

    static InterleaverSpec block() { return {Kind::block, 0}; }
    static InterleaverSpec seeded(uint64_t seed) { return {Kind::seeded, seed}; }

    std::string name() const;
    bool operator==(const InterleaverSpec&) const = default;
};

/// perm[p] = slot of codeword position p. Block is the identity layout;
/// seeded is a reproducible uniform shuffle.
std::vector<int> build_interleaver(const InterleaverSpec& spec, int length);

}  // namespace pcm
