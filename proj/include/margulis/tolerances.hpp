#pragma once

#include <string>

namespace margulis {

// Central tolerance/knob block. Every check in the library and the verify
// campaigns reads from one of these; config files may override any field
// through the optional "tolerances" object.
struct Tolerances {
  // membership checks
  double eps_orth = 1e-10;    // Lorentz / so(2,1) defect, scaled by matrix size
  double eps_null = 1e-10;    // null-ness and boundary-pair degeneracy
  double eps_hyp = 1e-8;      // hyperbolicity margin on the trace

  // identity suite
  double identity_tol = 1e-9;
  double min_separation = 0.05;  // admissibility gap for random boundary tuples

  // axis solve
  double axis_residual = 1e-8;
  double kappa_max = 1e12;

  // spectra / entropy
  int entropy_min_entries = 50;
  int entropy_grid = 64;
  double entropy_window_frac = 0.5;  // default window [frac*CB, CB]
  double zero_alpha_tol = 1e-12;     // sign-partition threshold

  // J / pressure
  double eps_trunc = 0.05;         // soft J >= 1 - eps_trunc
  double pressure_step = 1e-3;
  double richardson_max = 0.20;    // step vs step/2 disagreement bound
  double pressure_zero_tol = 1e-6; // |scale-direction eigenvalue| bound
  double pressure_lambda_min = 1e-7;
  double j_scaling_tol = 1e-9;

  // variational checks
  double fd_step = 1e-4;
  double gm_tol = 1e-6;   // |fd - exact| <= gm_tol * (1 + |exact|)
  double dcr_tol = 1e-5;
  double gap_tol_length = 1e-6;
  double gap_tol_alpha = 1e-5;
  double gauge_tol = 1e-10;
  int gap_n_max = 12;

  // scaling laws
  double scale_tol_exact = 1e-12;
  double scale_tol_entropy = 1e-9;

  // ping-pong certification
  int cert_samples = 128;
  int cert_radii = 64;
};

}  // namespace margulis
