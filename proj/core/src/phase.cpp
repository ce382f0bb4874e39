#include "stccpm/cpm/phase.hpp"

#include "stccpm/error.hpp"

#include <cmath>

namespace stccpm {

void SlotPhase::add(const Rational& coef, const PhaseSmoothing& pulse, int lag) {
    terms_.push_back(PhaseTerm{coef, pulse, lag});
    coef_.push_back(coef.to_double());
}

void SlotPhase::append(const SlotPhase& other) {
    for (const auto& t : other.terms_) add(t.coef, t.pulse, t.lag);
}

double SlotPhase::operator()(double tau) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto& t = terms_[i];
        sum += coef_[i] * t.pulse(tau + t.lag * t.pulse.T());
    }
    return sum;
}

std::optional<Rational> SlotPhase::exact_at(int slot_offset) const {
    Rational sum(0);
    for (const auto& t : terms_) {
        if (t.coef.num() == 0) continue;
        auto v = t.pulse.at_multiple(t.lag + slot_offset);
        if (!v) return std::nullopt;
        sum += t.coef * *v;
    }
    return sum;
}

bool SlotPhase::linear() const {
    for (const auto& t : terms_) {
        if (!t.pulse.piecewise_linear()) return false;
    }
    return true;
}

PhaseTrack accumulate_phase(const CpmParams& params, std::span<const double> window,
                            const std::function<double(double)>& correction, double theta0) {
    if (static_cast<int>(window.size()) < params.gamma) {
        throw ParameterError("accumulate_phase: symbol window shorter than gamma");
    }
    const PhaseSmoothing q(params.pulse, params.gamma, params.T);
    const double h = params.h_value();
    const int L = params.samples_per_symbol;
    const auto newest = window.size() - 1;

    auto phase_at = [&](double tau) {
        double phi = theta0;
        for (int lag = 0; lag < params.gamma; ++lag) {
            phi += h * window[newest - static_cast<std::size_t>(lag)] * q(tau + lag * params.T);
        }
        if (correction) phi += correction(tau);
        return phi;
    };

    PhaseTrack track;
    track.theta = update_theta(theta0, 0.0);
    track.samples.resize(static_cast<std::size_t>(L));
    for (int k = 0; k < L; ++k) track.samples[static_cast<std::size_t>(k)] = phase_at(k * params.dt());
    track.end = phase_at(params.T);
    return track;
}

PhaseTrack sample_slot(const SlotPhase& phase, const Rational& theta, const CpmParams& params) {
    const int L = params.samples_per_symbol;
    const double th = theta.to_double();
    PhaseTrack track;
    track.theta = theta.mod1().to_double();
    track.samples.resize(static_cast<std::size_t>(L));
    for (int k = 0; k < L; ++k) track.samples[static_cast<std::size_t>(k)] = th + phase(k * params.dt());
    track.end = th + phase(params.T);
    return track;
}

Rational update_theta(const Rational& theta, const Rational& xi) { return (theta + xi).mod1(); }

double update_theta(double theta, double xi) {
    double r = std::fmod(theta + xi, 1.0);
    if (r < 0.0) r += 1.0;
    if (r >= 1.0) r -= 1.0;
    return r;
}

double wrap_cycles(double x) { return x - std::floor(x + 0.5); }

}  // namespace stccpm
