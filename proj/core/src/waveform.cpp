#include "stccpm/cpm/waveform.hpp"

#include <cmath>
#include <numbers>

namespace stccpm {

Waveform synthesize(const PhaseTrack& track, const CpmParams& params, int n_tx) {
    const double a = antenna_amplitude(params, n_tx);
    Waveform w;
    w.dt = params.dt();
    w.samples.reserve(track.samples.size());
    for (double phi : track.samples) w.samples.push_back(a * phasor(phi));
    return w;
}

cplx phasor(double cycles) {
    const double arg = 2.0 * std::numbers::pi * cycles;
    return {std::cos(arg), std::sin(arg)};
}

cplx phasor(const Rational& cycles) {
    // Exact for the quarter-cycle grid that dominates in practice.
    const Rational r = cycles.mod1();
    if (r.num() == 0) return {1.0, 0.0};
    if (r == Rational(1, 4)) return {0.0, 1.0};
    if (r == Rational(1, 2)) return {-1.0, 0.0};
    if (r == Rational(3, 4)) return {0.0, -1.0};
    return phasor(r.to_double());
}

std::vector<cplx> slot_base(const SlotPhase& phase, const CpmParams& params, double amplitude) {
    const int L = params.samples_per_symbol;
    std::vector<cplx> out(static_cast<std::size_t>(L));
    for (int k = 0; k < L; ++k) out[static_cast<std::size_t>(k)] = amplitude * phasor(phase(k * params.dt()));
    return out;
}

void rotate_into(cplx rotation, std::span<const cplx> base, std::span<cplx> out) {
    for (std::size_t k = 0; k < base.size(); ++k) out[k] = rotation * base[k];
}

}  // namespace stccpm
