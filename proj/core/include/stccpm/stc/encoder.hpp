#pragma once

#include "stccpm/cpm/params.hpp"
#include "stccpm/cpm/phase.hpp"
#include "stccpm/cpm/waveform.hpp"
#include "stccpm/stc/scheme.hpp"

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace stccpm {

// Threaded explicitly through encode_block.
struct EncoderState {
    std::array<Rational, 2> theta{};  // phase memory per antenna at the next block start, in [0, 1)
    std::vector<Rational> tail;       // last gamma - 1 source symbols, oldest first
    long block = 0;

    static EncoderState initial(const CpmParams& params);
};

// One code block [2lT, (2l+2)T] of the sending matrix S(t).
struct EncodedBlock {
    DataBlock data;
    int n_tx = 1;
    std::array<std::array<SlotPhase, 2>, 2> phase;  // [antenna][slot]
    std::array<std::array<Rational, 2>, 2> theta;   // phase memory at each slot start
    std::array<std::array<Rational, 2>, 2> xi;      // increment applied at each slot end
    std::array<std::vector<cplx>, 2> samples;       // per antenna, 2L samples
    double dt = 0.0;
};

std::pair<EncodedBlock, EncoderState> encode_block(const CodeScheme& scheme, const CpmParams& params,
                                                   const EncoderState& state, const Rational& first,
                                                   const Rational& second);

// Encodes symbol indices (into the standard alphabet) pairwise from the initial state.
// Throws ParameterError on odd length.
std::vector<EncodedBlock> encode_frame(const CodeScheme& scheme, const CpmParams& params,
                                       std::span<const int> symbol_indices);

// Concatenated signal of one antenna.
Waveform antenna_waveform(std::span<const EncodedBlock> blocks, int antenna);

// Phase track (cycles) of one antenna as it is sampled into the waveform.
std::vector<double> antenna_phase(std::span<const EncodedBlock> blocks, int antenna, const CpmParams& params);

// Largest |phi(t-) - phi(t+)| mod 1 over the symbol boundaries inside and between the
// given consecutive blocks, over all antennas.
double max_phase_jump(std::span<const EncodedBlock> blocks, const CpmParams& params);

}  // namespace stccpm
