#pragma once

#include <memory>
#include <vector>

#include "margulis/rep.hpp"

namespace margulis {

struct SpectrumEntry {
  Word cls;         // necklace representative
  int word_length;  // cyclically reduced length
  double alpha;     // Margulis invariant
  double ell;       // translation length of the linear part
};

// Sign of a spectrum: +1 / -1 if uniformly signed, 0 if mixed (properness
// violated) or some alpha vanishes.
struct SpectrumTable {
  int rank = 0;
  int max_len = 0;
  std::vector<SpectrumEntry> entries;  // sorted by alpha ascending
  double complete_below = 0.0;         // max_len * min(|alpha| / word_length)
  int sign = 0;

  bool proper() const { return sign != 0; }
  // |alpha|, usable as a positive length spectrum when proper.
  double magnitude(size_t i) const { return sign * entries[i].alpha; }
  // Number of classes with |alpha| <= t.
  std::size_t count_below(double t) const;
};

// One entry per conjugacy class with cyclically reduced length <= max_len.
// A precomputed class list (from enumerate_classes) may be supplied to avoid
// re-enumeration; threads <= 0 means hardware concurrency.
SpectrumTable build_spectrum(const DeformedRep& rho, int max_len, int threads = 1,
                             const std::vector<Word>* classes = nullptr);

struct EntropyOptions {
  double window_lo = 0.0;  // 0,0 selects the default window [frac*CB, CB]
  double window_hi = 0.0;
  int grid_points = 0;     // <= 0 selects the configured default
  int min_entries = 0;     // <= 0 selects the configured default
};

struct EntropyEstimate {
  double h = 0.0;
  double stderr_ = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double r_squared = 0.0;
  double complete_below = 0.0;
  std::size_t entries_used = 0;
  std::vector<std::pair<double, double>> count_curve;  // (T, log N(T))
};

// Least-squares slope of log N(T) over an evenly spaced grid inside
// (0, complete_below].
EntropyEstimate entropy(const SpectrumTable& table, const Tolerances& tol = {},
                        const EntropyOptions& opts = {});

// Orbit average of alpha_2 / alpha_1 over the classes of table1 with
// alpha_1 <= complete_below.
double intersection(const SpectrumTable& table1, const DeformedRep& rho2,
                    int threads = 1);

struct JResult {
  double j = 0.0;
  double intersection_value = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
};

// J_{rho1}(rho2) = I(rho1, rho2) * h2 / h1 at matched enumeration depth.
JResult j_functional(const DeformedRep& rho1, const DeformedRep& rho2, int max_len,
                     const Tolerances& tol = {}, int threads = 1);

struct PressureResult {
  double value = 0.0;
  double value_half_step = 0.0;
  double rel_change = 0.0;  // |value - value_half_step| / scale
};

// Shared base data for pressure evaluations at one (rho, max_len).
//
// Along a path the counting regression jumps whenever a class crosses a
// grid threshold, so J is evaluated with a smooth surrogate for the
// entropy: the root s of sum_W exp(-s alpha_i(t)) = C over the fixed base
// window W, with C calibrated so the base root equals the base counting
// estimate. The root is analytic in t, scales exactly reciprocally under
// cocycle scaling, and its t-derivatives carry the e^{-s alpha}-weighted
// moments of the invariant field.
class PressureContext {
 public:
  PressureContext(const DeformedRep& rho, int max_len, const Tolerances& tol,
                  int threads = 1);

  // J along t -> path_point(rho, v, t) with the series entropy; J(0) = 1
  // exactly.
  double j_smooth(const TangentVector& v, double t) const;
  // 5-point second difference of j_smooth at 0, with a step/2 consistency
  // probe. Throws StepTooSmall when the two estimates disagree badly.
  PressureResult second_derivative(const TangentVector& v, double step) const;

  const DeformedRep& rho() const { return rho_; }
  int max_len() const { return max_len_; }
  double base_entropy() const { return base_h_; }

 private:
  double series_root(const std::vector<double>& alphas, double guess) const;
  std::vector<double> alphas_for(const DeformedRep& r) const;

  DeformedRep rho_;
  int max_len_;
  Tolerances tol_;
  int threads_;
  std::vector<Word> classes_;
  std::vector<double> base_alpha_;
  std::vector<std::size_t> base_window_;  // indices with alpha_0 <= CB
  double base_cb_ = 0.0;
  double base_h_ = 0.0;    // counting-regression entropy of the base table
  double series_c_ = 0.0;  // sum_W exp(-base_h alpha_i(0))
};

// P(v,v) by the 5-point second difference of J; P(v,w) by polarization.
double pressure_form(const PressureContext& ctx, const TangentVector& v,
                     const TangentVector& w, double step);

// Symmetric k x k Jacobi eigenvalues, ascending.
std::vector<double> symmetric_eigenvalues(const std::vector<std::vector<double>>& gram);

}  // namespace margulis
