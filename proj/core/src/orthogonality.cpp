#include "stccpm/stc/orthogonality.hpp"

#include "stccpm/error.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>

namespace stccpm {

cplx slot_cross_integral(const SlotPhase& a, const Rational& theta_a, const SlotPhase& b,
                         const Rational& theta_b, const CpmParams& params) {
    const double T = params.T;
    const double offset = (theta_a - theta_b).mod1().to_double();
    if (a.linear() && b.linear()) {
        const double start = offset + a(0.0) - b(0.0);
        const double slope = (a(T) - b(T)) - (a(0.0) - b(0.0));  // cycles per slot
        const double x = std::numbers::pi * slope;
        const double sinc = std::abs(x) < 1e-12 ? 1.0 : std::sin(x) / x;
        return T * sinc * phasor(start + 0.5 * slope);
    }
    using boost::math::quadrature::gauss;
    constexpr int panels = 4;
    const double width = T / panels;
    auto integrand = [&](double tau) { return phasor(offset + a(tau) - b(tau)); };
    cplx sum{0.0, 0.0};
    for (int i = 0; i < panels; ++i) {
        auto re = [&](double tau) { return integrand(tau).real(); };
        auto im = [&](double tau) { return integrand(tau).imag(); };
        const double lo = i * width;
        sum += cplx(gauss<double, 30>::integrate(re, lo, lo + width),
                    gauss<double, 30>::integrate(im, lo, lo + width));
    }
    return sum;
}

double l2_residual(const EncodedBlock& block, const CpmParams& params) {
    if (block.n_tx != 2) throw ParameterError("l2_residual needs a two-antenna block");
    cplx total{0.0, 0.0};
    for (int r = 0; r < 2; ++r) {
        total += slot_cross_integral(block.phase[0][r], block.theta[0][r], block.phase[1][r], block.theta[1][r],
                                     params);
    }
    return params.Es / params.T * std::abs(total);
}

Rational xi_difference(const CodeScheme& scheme, const CpmParams& params, const DataBlock& block) {
    return (xi(scheme, params, block, 0, 0) - xi(scheme, params, block, 1, 0)).mod1();
}

bool check_xi_condition(const CodeScheme& scheme, const CpmParams& params, const DataBlock& block) {
    if (scheme.n_tx() != 2) return false;
    return xi_difference(scheme, params, block) == Rational(1, 2);
}

}  // namespace stccpm
