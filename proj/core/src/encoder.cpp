#include "stccpm/stc/encoder.hpp"

#include "stccpm/cpm/alphabet.hpp"
#include "stccpm/error.hpp"

#include <algorithm>
#include <cmath>

namespace stccpm {

EncoderState EncoderState::initial(const CpmParams& params) {
    EncoderState s;
    s.tail.assign(static_cast<std::size_t>(params.gamma - 1), Rational(0));
    return s;
}

std::pair<EncodedBlock, EncoderState> encode_block(const CodeScheme& scheme, const CpmParams& params,
                                                   const EncoderState& state, const Rational& first,
                                                   const Rational& second) {
    const int g = params.gamma;
    if (static_cast<int>(state.tail.size()) != g - 1) {
        throw ParameterError("encoder state tail does not match gamma");
    }
    std::vector<Rational> ctx(state.tail);
    ctx.push_back(first);
    ctx.push_back(second);

    EncodedBlock out;
    out.n_tx = scheme.n_tx();
    out.dt = params.dt();
    out.data = map_block(scheme, params, ctx, state.block);
    const double amplitude = antenna_amplitude(params, out.n_tx);
    const auto L = static_cast<std::size_t>(params.samples_per_symbol);

    EncoderState next;
    next.block = state.block + 1;
    next.tail.assign(ctx.end() - (g - 1), ctx.end());

    for (int m = 0; m < out.n_tx; ++m) {
        out.samples[m].resize(2 * L);
        Rational theta = state.theta[m];
        for (int r = 0; r < 2; ++r) {
            out.phase[m][r] = slot_phase(scheme, params, out.data, m, r);
            out.theta[m][r] = theta;
            out.xi[m][r] = xi(scheme, params, out.data, m, r);
            const auto base = slot_base(out.phase[m][r], params, amplitude);
            rotate_into(phasor(theta), base, std::span(out.samples[m]).subspan(r * L, L));
            theta = update_theta(theta, out.xi[m][r]);
        }
        next.theta[m] = theta;
    }
    return {std::move(out), std::move(next)};
}

std::vector<EncodedBlock> encode_frame(const CodeScheme& scheme, const CpmParams& params,
                                       std::span<const int> symbol_indices) {
    if (symbol_indices.size() % 2 != 0) throw ParameterError("encode_frame: odd number of symbols");
    const Alphabet alphabet = Alphabet::standard(params.M);
    std::vector<EncodedBlock> blocks;
    blocks.reserve(symbol_indices.size() / 2);
    EncoderState state = EncoderState::initial(params);
    for (std::size_t i = 0; i < symbol_indices.size(); i += 2) {
        auto [block, next] = encode_block(scheme, params, state, alphabet[symbol_indices[i]],
                                          alphabet[symbol_indices[i + 1]]);
        blocks.push_back(std::move(block));
        state = std::move(next);
    }
    return blocks;
}

Waveform antenna_waveform(std::span<const EncodedBlock> blocks, int antenna) {
    Waveform w;
    if (blocks.empty()) return w;
    w.dt = blocks.front().dt;
    for (const auto& b : blocks) {
        const auto& s = b.samples[antenna];
        w.samples.insert(w.samples.end(), s.begin(), s.end());
    }
    return w;
}

std::vector<double> antenna_phase(std::span<const EncodedBlock> blocks, int antenna, const CpmParams& params) {
    std::vector<double> out;
    out.reserve(blocks.size() * 2 * static_cast<std::size_t>(params.samples_per_symbol));
    for (const auto& b : blocks) {
        for (int r = 0; r < 2; ++r) {
            auto track = sample_slot(b.phase[antenna][r], b.theta[antenna][r], params);
            out.insert(out.end(), track.samples.begin(), track.samples.end());
        }
    }
    return out;
}

double max_phase_jump(std::span<const EncodedBlock> blocks, const CpmParams& params) {
    double worst = 0.0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        for (int m = 0; m < b.n_tx; ++m) {
            for (int r = 0; r < 2; ++r) {
                const double end = b.theta[m][r].to_double() + b.phase[m][r](params.T);
                double start = 0.0;
                if (r == 0) {
                    start = b.theta[m][1].to_double() + b.phase[m][1](0.0);
                } else if (i + 1 < blocks.size()) {
                    const auto& n = blocks[i + 1];
                    start = n.theta[m][0].to_double() + n.phase[m][0](0.0);
                } else {
                    continue;
                }
                worst = std::max(worst, std::abs(wrap_cycles(end - start)));
            }
        }
    }
    return worst;
}

}  // namespace stccpm
