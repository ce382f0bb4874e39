#pragma once

#include "stccpm/channel/rng.hpp"
#include "stccpm/cpm/params.hpp"
#include "stccpm/cpm/waveform.hpp"

#include <span>
#include <vector>

namespace stccpm {

// Flat block-fading gains alpha(m, n) from Tx m to Rx n, constant over one code block.
struct ChannelRealization {
    int n_tx = 1;
    int n_rx = 1;
    std::vector<cplx> alpha;  // row-major [m * n_rx + n]

    cplx operator()(int m, int n) const { return alpha[static_cast<std::size_t>(m * n_rx + n)]; }
    cplx& operator()(int m, int n) { return alpha[static_cast<std::size_t>(m * n_rx + n)]; }

    static ChannelRealization identity(int n_tx, int n_rx);
};

// Complex AWGN calibrated from Eb/N0 with Eb = Es / log2(M).
struct NoiseParams {
    double ebn0_db = 0.0;
    double n0 = 0.0;
    double variance = 0.0;  // per complex sample, N0 / dt

    bool enabled() const { return variance > 0.0; }

    static NoiseParams from_ebn0(const CpmParams& params, double ebn0_db);
    static NoiseParams off();
};

// alpha = (g1 + j g2) / sqrt(2), g standard normal, independent per antenna pair.
ChannelRealization draw_channel(Rng& rng, int n_tx, int n_rx);

// y_n[k] = sum_m alpha(m, n) s_m[k] + w_n[k]. tx holds one span per Tx antenna,
// all of the same length. Throws ParameterError on dimension mismatch.
std::vector<std::vector<cplx>> transmit(std::span<const std::span<const cplx>> tx, const ChannelRealization& ch,
                                        const NoiseParams& noise, Rng& rng);

// Allocation-free variant used inside the Monte Carlo loop; rx must hold n_rx spans.
void transmit_into(std::span<const std::span<const cplx>> tx, const ChannelRealization& ch,
                   const NoiseParams& noise, Rng& rng, std::span<const std::span<cplx>> rx);

}  // namespace stccpm
