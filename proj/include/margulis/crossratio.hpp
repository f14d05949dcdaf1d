#pragma once

#include <vector>

#include "margulis/rep.hpp"

namespace margulis {

struct GapSequence {
  std::vector<double> values;  // d_n or a_n, n = 1..n_stable
  double target = 0.0;         // log cross-ratio limit, resp. axis pairing
  int n_stable = 0;            // last n before the trace overflow guard
  // geometric-mean ratio of successive |values[n] - target| while above the
  // rounding plateau; < 1 signals empirically exponential convergence
  double decay_ratio = 0.0;
};

double fitted_decay_ratio(const std::vector<double>& values, double target);

// d_n = l(g^n e^n) - l(g^n) - l(e^n) against the squared-cross-ratio limit
// log b(eta^-, gamma^-, gamma^+, eta^+)^2.
GapSequence length_gap_sequence(const Representation& rho, const Word& gamma,
                                const Word& eta, int n_max);

// a_n = alpha(g^n e^n) - alpha(g^n) - alpha(e^n) against
// <X_gamma - X_eta | nu(eta^-, gamma^+) + nu(eta^+, gamma^-)>.
GapSequence alpha_gap_sequence(const DeformedRep& rho, const Word& gamma,
                               const Word& eta, int n_max);

// The pairing target above, evaluated from axis points; gauge independent.
double axis_pairing_target(const DeformedRep& rho, const Word& gamma, const Word& eta);

struct DerivativeCheck {
  double fd = 0.0;     // 5-point central difference
  double exact = 0.0;  // closed-form value from the induced cocycle
};

// d/dt l_t(gamma) at 0 against the Margulis invariant of (rho_0, rho_dot_0).
DerivativeCheck goldman_margulis_check(const Representation& rho,
                                       const std::vector<Mat3>& linear_variation,
                                       const Word& gamma, double step);

// d/dt log b_t(eta^-, gamma^-, gamma^+, eta^+)^2 at 0 against the axis
// pairing.
DerivativeCheck dcr_check(const Representation& rho,
                          const std::vector<Mat3>& linear_variation,
                          const Word& gamma, const Word& eta, double step);

// The affine deformation (rho_0, rho_dot_0) induced by a linear path.
DeformedRep induced_deformation(const Representation& rho,
                                const std::vector<Mat3>& linear_variation);

// Word power helper: w repeated n times (letter concatenation).
Word word_power(const Word& w, int n);

}  // namespace margulis
