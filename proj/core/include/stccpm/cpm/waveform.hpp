#pragma once

#include "stccpm/cpm/params.hpp"
#include "stccpm/cpm/phase.hpp"
#include "stccpm/rational.hpp"

#include <complex>
#include <span>
#include <vector>

namespace stccpm {

using cplx = std::complex<double>;

// Uniformly sampled complex baseband signal.
struct Waveform {
    std::vector<cplx> samples;
    double dt = 0.0;
};

// samples[k] = sqrt(Es_antenna / T) exp(j 2 pi track[k]); the amplitude follows
// the power split for n_tx transmitting antennas.
Waveform synthesize(const PhaseTrack& track, const CpmParams& params, int n_tx = 1);

// exp(j 2 pi theta).
cplx phasor(double cycles);
cplx phasor(const Rational& cycles);

// amplitude * exp(j 2 pi phase(tau_k)) over one slot: the phase-memory-free
// part of a slot signal. Encoder and candidate bank both build slot signals as
// phasor(theta) * slot_base(...), so the two agree bit for bit.
std::vector<cplx> slot_base(const SlotPhase& phase, const CpmParams& params, double amplitude);

void rotate_into(cplx rotation, std::span<const cplx> base, std::span<cplx> out);

}  // namespace stccpm
