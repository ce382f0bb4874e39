#pragma once

#include "stccpm/cpm/params.hpp"
#include "stccpm/receiver/metrics.hpp"
#include "stccpm/stc/scheme.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace stccpm {

inline constexpr std::uint64_t kExhaustiveLimit = std::uint64_t{1} << 20;

struct ExhaustiveResult {
    std::vector<int> symbols;
    double distance = 0.0;  // summed joint distance of the winner
};

// Brute-force minimizer of the summed joint distance over every symbol sequence
// of the frame, re-encoding each candidate from scratch. Sequences are visited
// in lexicographic order and the first minimum wins. Throws ParameterError when
// there are more than kExhaustiveLimit candidates.
ExhaustiveResult exhaustive_ml(const CodeScheme& scheme, const CpmParams& params,
                               std::span<const ReceivedBlock> blocks);

}  // namespace stccpm
