#include "stccpm/channel/channel.hpp"
#include "stccpm/channel/rng.hpp"

#include "stccpm/error.hpp"

#include <cmath>
#include <limits>

namespace stccpm {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng make_stream(std::uint64_t master_seed, std::uint64_t a, std::uint64_t b) {
    const std::uint64_t key = mix64(mix64(mix64(master_seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                      static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
    return Rng(seq);
}

ChannelRealization ChannelRealization::identity(int n_tx, int n_rx) {
    ChannelRealization ch;
    ch.n_tx = n_tx;
    ch.n_rx = n_rx;
    ch.alpha.assign(static_cast<std::size_t>(n_tx * n_rx), cplx(0.0, 0.0));
    for (int i = 0; i < std::min(n_tx, n_rx); ++i) ch(i, i) = 1.0;
    return ch;
}

NoiseParams NoiseParams::from_ebn0(const CpmParams& params, double ebn0_db) {
    NoiseParams n;
    n.ebn0_db = ebn0_db;
    if (std::isinf(ebn0_db) && ebn0_db > 0) return n;
    const double eb = params.Es / params.bits_per_symbol();
    n.n0 = eb / std::pow(10.0, ebn0_db / 10.0);
    n.variance = n.n0 / params.dt();
    return n;
}

NoiseParams NoiseParams::off() {
    NoiseParams n;
    n.ebn0_db = std::numeric_limits<double>::infinity();
    return n;
}

ChannelRealization draw_channel(Rng& rng, int n_tx, int n_rx) {
    std::normal_distribution<double> g(0.0, 1.0);
    ChannelRealization ch;
    ch.n_tx = n_tx;
    ch.n_rx = n_rx;
    ch.alpha.resize(static_cast<std::size_t>(n_tx * n_rx));
    const double s = 1.0 / std::sqrt(2.0);
    for (auto& a : ch.alpha) {
        const double re = g(rng);
        const double im = g(rng);
        a = cplx(s * re, s * im);
    }
    return ch;
}

void transmit_into(std::span<const std::span<const cplx>> tx, const ChannelRealization& ch,
                   const NoiseParams& noise, Rng& rng, std::span<const std::span<cplx>> rx) {
    if (static_cast<int>(tx.size()) != ch.n_tx || static_cast<int>(rx.size()) != ch.n_rx) {
        throw ParameterError("transmit: antenna count does not match the channel");
    }
    const std::size_t len = tx.empty() ? 0 : tx[0].size();
    for (const auto& s : tx) {
        if (s.size() != len) throw ParameterError("transmit: antenna signals differ in length");
    }
    std::normal_distribution<double> g(0.0, 1.0);
    const double sigma = std::sqrt(noise.variance / 2.0);
    for (int n = 0; n < ch.n_rx; ++n) {
        auto y = rx[static_cast<std::size_t>(n)];
        if (y.size() != len) throw ParameterError("transmit: receive buffer has the wrong length");
        for (std::size_t k = 0; k < len; ++k) {
            cplx acc(0.0, 0.0);
            for (int m = 0; m < ch.n_tx; ++m) acc += ch(m, n) * tx[static_cast<std::size_t>(m)][k];
            if (noise.enabled()) {
                const double re = g(rng);
                const double im = g(rng);
                acc += cplx(sigma * re, sigma * im);
            }
            y[k] = acc;
        }
    }
}

std::vector<std::vector<cplx>> transmit(std::span<const std::span<const cplx>> tx, const ChannelRealization& ch,
                                        const NoiseParams& noise, Rng& rng) {
    const std::size_t len = tx.empty() ? 0 : tx[0].size();
    std::vector<std::vector<cplx>> rx(static_cast<std::size_t>(ch.n_rx), std::vector<cplx>(len));
    std::vector<std::span<cplx>> views(rx.begin(), rx.end());
    transmit_into(tx, ch, noise, rng, views);
    return rx;
}

}  // namespace stccpm
