#include "stccpm/cpm/pulse.hpp"

#include "stccpm/error.hpp"

#include <cmath>
#include <numbers>

namespace stccpm {

double q_rec(double t, int gamma, double T) {
    const double span = gamma * T;
    if (t <= 0.0) return 0.0;
    if (t >= span) return 0.5;
    return t / (2.0 * span);
}

double q_rc(double t, int gamma, double T) {
    const double span = gamma * T;
    if (t <= 0.0) return 0.0;
    if (t >= span) return 0.5;
    return t / (2.0 * span) - std::sin(2.0 * std::numbers::pi * t / span) / (4.0 * std::numbers::pi);
}

PhaseSmoothing::PhaseSmoothing(PulseShape shape, int length, double T)
    : shape_(shape), length_(length), T_(T) {
    if (length < 1) throw ParameterError("pulse length must be >= 1");
}

double PhaseSmoothing::operator()(double t) const {
    return shape_ == PulseShape::lrec ? q_rec(t, length_, T_) : q_rc(t, length_, T_);
}

std::optional<Rational> PhaseSmoothing::at_multiple(int k) const {
    if (k <= 0) return Rational(0);
    if (k >= length_) return Rational(1, 2);
    if (shape_ == PulseShape::lrec) return Rational(k, 2 * length_);
    // sin(2 pi k / length) vanishes only when 2k is a multiple of length.
    if ((2 * k) % length_ == 0) return Rational(k, 2 * length_);
    return std::nullopt;
}

}  // namespace stccpm
