#pragma once

#include "stccpm/rational.hpp"

#include <string>

namespace stccpm {

enum class PulseShape {
    lrec,  // linear ramp, q(t) = t / (2 gamma T)
    lrc,   // raised cosine phase function
};

// How the symbol energy is shared between transmit antennas.
enum class PowerSplit {
    total,        // each of n_tx antennas radiates Es / n_tx
    per_antenna,  // every antenna radiates Es
};

// Modulation index h = 2 m0 / p with gcd(m0, p) = 1.
struct CpmParams {
    int m0 = 1;
    int p = 4;
    int M = 8;
    int gamma = 2;
    PulseShape pulse = PulseShape::lrec;
    int samples_per_symbol = 16;
    double Es = 1.0;
    double T = 1.0;
    PowerSplit power = PowerSplit::total;

    Rational h() const { return Rational(2 * m0, p); }
    double h_value() const { return h().to_double(); }
    int bits_per_symbol() const;
    double dt() const { return T / samples_per_symbol; }

    // Throws ParameterError.
    void validate() const;

    // h given as a reduced or unreduced fraction, e.g. 1/2 -> m0 = 1, p = 4.
    static CpmParams with_h(const Rational& h, int M, int gamma);
};

// Per-antenna envelope sqrt(Es_antenna / T) for n_tx transmitting antennas.
double antenna_amplitude(const CpmParams& params, int n_tx);

std::string to_string(PulseShape shape);
PulseShape parse_pulse_shape(const std::string& name);

}  // namespace stccpm
