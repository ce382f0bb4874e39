#pragma once

#include "stccpm/cpm/params.hpp"
#include "stccpm/cpm/pulse.hpp"
#include "stccpm/rational.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace stccpm {

// coef * pulse(tau + lag T) on the slot-local time tau in [0, T].
// Data terms carry coef = h d; correction terms carry their own coefficient.
struct PhaseTerm {
    Rational coef;
    PhaseSmoothing pulse;
    int lag = 0;
};

// Phase of one antenna over one symbol slot, excluding the phase memory theta.
class SlotPhase {
public:
    SlotPhase() = default;

    void add(const Rational& coef, const PhaseSmoothing& pulse, int lag);
    void append(const SlotPhase& other);

    double operator()(double tau) const;

    // Exact value at tau = 0 (start) or tau = T (end), if every pulse is rational there.
    std::optional<Rational> exact_start() const { return exact_at(0); }
    std::optional<Rational> exact_end() const { return exact_at(1); }

    bool linear() const;
    const std::vector<PhaseTerm>& terms() const { return terms_; }

private:
    std::optional<Rational> exact_at(int slot_offset) const;

    std::vector<PhaseTerm> terms_;
    std::vector<double> coef_;
};

// Sampled phase of one slot, in cycles, at tau_k = k T / L for k < L.
struct PhaseTrack {
    std::vector<double> samples;
    double theta = 0.0;  // phase memory of the slot, reduced mod 1
    double end = 0.0;    // phase at tau = T, for continuity checks
};

// Phase of one slot from its symbol window. window[j] is the symbol whose pulse
// started (gamma - 1 - j) slots before this one, so window.back() is the newest.
// correction is slot-local and may be empty. Throws ParameterError if the
// window is shorter than gamma.
PhaseTrack accumulate_phase(const CpmParams& params, std::span<const double> window,
                            const std::function<double(double)>& correction, double theta0);

// Samples a SlotPhase on the slot grid.
PhaseTrack sample_slot(const SlotPhase& phase, const Rational& theta, const CpmParams& params);

// theta + xi reduced mod 1.
Rational update_theta(const Rational& theta, const Rational& xi);
double update_theta(double theta, double xi);

// Wraps a phase difference in cycles to [-1/2, 1/2).
double wrap_cycles(double x);

}  // namespace stccpm
