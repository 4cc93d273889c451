#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rankclose {

/// The generator behind every stochastic operation. Always constructed from an explicit seed.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Mixes a master seed with a tuple of integers (alpha, trial index, stream tag, ...).
/// Distinct tuples give statistically independent streams.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts) noexcept;

} // namespace rankclose
