#pragma once

#include <cstdint>
#include <random>

namespace cellaoi::sim {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of sub-stream `index` of `master`. Realization i of a run always gets
/// derive_seed(master, i), whatever thread executes it.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace cellaoi::sim
