#pragma once

#include <cstdint>
#include <random>

namespace stccpm {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Independent stream keyed by (master seed, a, b); order of creation does not matter.
Rng make_stream(std::uint64_t master_seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace stccpm
