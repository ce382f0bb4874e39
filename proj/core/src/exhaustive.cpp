#include "stccpm/receiver/exhaustive.hpp"

#include "stccpm/error.hpp"
#include "stccpm/stc/encoder.hpp"

#include <limits>

namespace stccpm {

ExhaustiveResult exhaustive_ml(const CodeScheme& scheme, const CpmParams& params,
                               std::span<const ReceivedBlock> blocks) {
    const std::size_t n = 2 * blocks.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= static_cast<std::uint64_t>(params.M);
        if (total > kExhaustiveLimit) {
            throw ParameterError("exhaustive_ml: frame has more than 2^20 candidate sequences");
        }
    }
    ExhaustiveResult best;
    best.distance = std::numeric_limits<double>::infinity();
    std::vector<int> symbols(n, 0);
    const double dt = params.dt();
    for (std::uint64_t c = 0; c < total; ++c) {
        std::uint64_t rest = c;
        for (std::size_t i = n; i-- > 0;) {
            symbols[i] = static_cast<int>(rest % static_cast<std::uint64_t>(params.M));
            rest /= static_cast<std::uint64_t>(params.M);
        }
        const auto encoded = encode_frame(scheme, params, symbols);
        double d = 0.0;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const auto y = blocks[b].views();
            std::vector<std::span<const cplx>> s;
            for (int m = 0; m < scheme.n_tx(); ++m) s.emplace_back(encoded[b].samples[static_cast<std::size_t>(m)]);
            d += joint_distance(y, blocks[b].ch, s, dt);
        }
        if (d < best.distance) {
            best.distance = d;
            best.symbols = symbols;
        }
    }
    return best;
}

}  // namespace stccpm
