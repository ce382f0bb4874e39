#pragma once

#include "stccpm/cpm/params.hpp"
#include "stccpm/cpm/waveform.hpp"
#include "stccpm/stc/encoder.hpp"
#include "stccpm/stc/scheme.hpp"

namespace stccpm {

// int_0^T exp(j 2 pi [theta_a + phase_a(tau) - theta_b - phase_b(tau)]) dtau.
// Closed form when both phases are linear on the slot, Gauss-Legendre otherwise.
cplx slot_cross_integral(const SlotPhase& a, const Rational& theta_a, const SlotPhase& b,
                         const Rational& theta_b, const CpmParams& params);

// |int over the block of s_1r(t) s_2r*(t) dt| for the sending matrix with
// per-antenna amplitude sqrt(Es/T). Throws ParameterError for single-antenna blocks.
double l2_residual(const EncodedBlock& block, const CpmParams& params);

// xi_1(2l+1) - xi_2(2l+1) == 1/2 (mod 1), in exact arithmetic.
bool check_xi_condition(const CodeScheme& scheme, const CpmParams& params, const DataBlock& block);

// xi_1(2l+1) - xi_2(2l+1) reduced mod 1.
Rational xi_difference(const CodeScheme& scheme, const CpmParams& params, const DataBlock& block);

}  // namespace stccpm
