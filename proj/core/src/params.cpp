#include "stccpm/cpm/params.hpp"

#include "stccpm/error.hpp"

#include <cmath>
#include <numeric>

namespace stccpm {

int CpmParams::bits_per_symbol() const {
    int bits = 0;
    while ((1 << bits) < M) ++bits;
    return bits;
}

void CpmParams::validate() const {
    if (m0 <= 0 || p <= 0) throw ParameterError("m0 and p must be positive");
    if (std::gcd(m0, p) != 1) throw ParameterError("m0 and p must be relatively prime");
    if (M < 2 || (M & (M - 1)) != 0) throw ParameterError("M must be a power of two >= 2");
    if (gamma < 1) throw ParameterError("gamma must be >= 1");
    if (samples_per_symbol < 8) throw ParameterError("samples_per_symbol must be >= 8");
    if (!(Es > 0.0) || !(T > 0.0)) throw ParameterError("Es and T must be positive");
}

CpmParams CpmParams::with_h(const Rational& h, int M, int gamma) {
    if (!(Rational(0) < h)) throw ParameterError("modulation index must be positive");
    CpmParams params;
    // h = a/b reduced; 2 m0 / p = a / b.
    if (h.num() % 2 == 0) {
        params.m0 = static_cast<int>(h.num() / 2);
        params.p = static_cast<int>(h.den());
    } else {
        params.m0 = static_cast<int>(h.num());
        params.p = static_cast<int>(2 * h.den());
    }
    params.M = M;
    params.gamma = gamma;
    params.validate();
    return params;
}

double antenna_amplitude(const CpmParams& params, int n_tx) {
    double es = params.Es;
    if (params.power == PowerSplit::total) es /= n_tx;
    return std::sqrt(es / params.T);
}

std::string to_string(PulseShape shape) {
    switch (shape) {
        case PulseShape::lrec: return "lrec";
        case PulseShape::lrc: return "lrc";
    }
    return "?";
}

PulseShape parse_pulse_shape(const std::string& name) {
    if (name == "lrec" || name == "rec") return PulseShape::lrec;
    if (name == "lrc" || name == "rc") return PulseShape::lrc;
    throw ParameterError("unknown pulse shape '" + name + "'");
}

}  // namespace stccpm
