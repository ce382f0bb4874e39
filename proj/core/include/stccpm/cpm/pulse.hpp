#pragma once

#include "stccpm/cpm/params.hpp"
#include "stccpm/rational.hpp"

#include <optional>

namespace stccpm {

// LREC phase smoothing function: 0 for t <= 0, t/(2 gamma T) on the ramp, 1/2 after gamma T.
double q_rec(double t, int gamma, double T = 1.0);

// LRC phase smoothing function (integral of a raised-cosine frequency pulse).
double q_rc(double t, int gamma, double T = 1.0);

// A phase smoothing function of a given shape and length in symbol periods.
class PhaseSmoothing {
public:
    PhaseSmoothing(PulseShape shape, int length, double T = 1.0);

    double operator()(double t) const;

    // Exact value at t = k T when it is rational, which is what keeps the phase
    // memory on a finite grid.
    std::optional<Rational> at_multiple(int k) const;

    // Linear on every interval [kT, (k+1)T].
    bool piecewise_linear() const { return shape_ == PulseShape::lrec; }

    PulseShape shape() const { return shape_; }
    int length() const { return length_; }
    double T() const { return T_; }

    friend bool operator==(const PhaseSmoothing&, const PhaseSmoothing&) = default;

private:
    PulseShape shape_;
    int length_;
    double T_;
};

}  // namespace stccpm
