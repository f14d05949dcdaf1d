#include "margulis/crossratio.hpp"

#include <cmath>
#include <sstream>

namespace margulis {

double fitted_decay_ratio(const std::vector<double>& values, double target) {
  const double plateau = 1e-13;
  double log_sum = 0.0;
  int count = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    double prev = std::abs(values[i - 1] - target);
    double cur = std::abs(values[i] - target);
    if (prev < plateau || cur < plateau) break;
    log_sum += std::log(cur / prev);
    ++count;
  }
  return count > 0 ? std::exp(log_sum / count) : 0.0;
}

Word word_power(const Word& w, int n) {
  Word r;
  r.reserve(w.size() * n);
  for (int i = 0; i < n; ++i) r.insert(r.end(), w.begin(), w.end());
  return r;
}

namespace {

void require_coprime_hyperbolic(const Representation& rho, const Word& gamma,
                                const Word& eta) {
  if (reduce(gamma).empty() || reduce(eta).empty())
    raise(errc::empty_word, "gap sequences need nontrivial words");
  if (!coprime(gamma, eta)) {
    std::ostringstream os;
    os << word_to_string(gamma) << " and " << word_to_string(eta)
       << " share a primitive root";
    raise(errc::not_coprime, os.str());
  }
  if (!is_hyperbolic(rho.evaluate(reduce(gamma)), rho.tol()))
    raise(errc::not_hyperbolic, "gamma is not hyperbolic");
  if (!is_hyperbolic(rho.evaluate(reduce(eta)), rho.tol()))
    raise(errc::not_hyperbolic, "eta is not hyperbolic");
}

// Largest n with trace(g^n e^n) safely below overflow.
int stable_power_bound(double ell_sum, int n_max) {
  const double log_cap = 640.0;  // trace ~ e^640 < 1e300
  int n = n_max;
  if (ell_sum > 0.0) n = std::min(n_max, static_cast<int>(log_cap / ell_sum));
  return std::max(n, 1);
}

}  // namespace

GapSequence length_gap_sequence(const Representation& rho, const Word& gamma,
                                const Word& eta, int n_max) {
  require_coprime_hyperbolic(rho, gamma, eta);
  const Tolerances& tol = rho.tol();
  FixedPoints fg = fixed_points(rho.evaluate(gamma), tol);
  FixedPoints fe = fixed_points(rho.evaluate(eta), tol);

  GapSequence out;
  // b(eta^-, gamma^-, gamma^+, eta^+) = (1 + <nu(eta), nu(gamma)>)/2. The
  // boundary acts through the square of the SL2 eigenvalue, so the length
  // gap converges to log b^2. The constant is pinned by the crossing-axes
  // closed form cosh(l(ab)/2) = cosh(l_a/2)cosh(l_b/2) + cos(t) sinh sinh
  // with b = (1+cos t)/2; for unlinked axes b = (1 - cosh d)/2 < 0 and the
  // same law holds with |b|.
  double b = cross_ratio(fe.minus, fg.minus, fg.plus, fe.plus, tol);
  if (b == 0.0)
    raise(errc::degenerate_boundary_pair, "vanishing cross-ratio, no log limit");
  out.target = std::log(b * b);
  out.n_stable = stable_power_bound(fg.ell + fe.ell, n_max);
  for (int n = 1; n <= out.n_stable; ++n) {
    Word gn = word_power(gamma, n), en = word_power(eta, n);
    Word prod = gn;
    prod.insert(prod.end(), en.begin(), en.end());
    // free reduction keeps the matrix product clear of cancellation spikes
    double d = translation_length(rho.evaluate(reduce(prod)), tol) - n * fg.ell -
               n * fe.ell;
    out.values.push_back(d);
  }
  out.decay_ratio = fitted_decay_ratio(out.values, out.target);
  return out;
}

double axis_pairing_target(const DeformedRep& rho, const Word& gamma, const Word& eta) {
  const Tolerances& tol = rho.tol();
  FixedPoints fg = fixed_points(rho.linear().evaluate(gamma), tol);
  FixedPoints fe = fixed_points(rho.linear().evaluate(eta), tol);
  Vec3 xg = axis_point(rho, gamma);
  Vec3 xe = axis_point(rho, eta);
  Vec3 mixed = neutral_vector(fe.minus, fg.plus, tol) +
               neutral_vector(fe.plus, fg.minus, tol);
  return pairing(xg - xe, mixed);
}

GapSequence alpha_gap_sequence(const DeformedRep& rho, const Word& gamma,
                               const Word& eta, int n_max) {
  require_coprime_hyperbolic(rho.linear(), gamma, eta);
  const Tolerances& tol = rho.tol();
  double ell_g = translation_length(rho.linear().evaluate(reduce(gamma)), tol);
  double ell_e = translation_length(rho.linear().evaluate(reduce(eta)), tol);

  GapSequence out;
  out.target = axis_pairing_target(rho, gamma, eta);
  out.n_stable = stable_power_bound(ell_g + ell_e, n_max);
  double ag = margulis_invariant(rho, gamma);
  double ae = margulis_invariant(rho, eta);
  for (int n = 1; n <= out.n_stable; ++n) {
    Word gn = word_power(gamma, n), en = word_power(eta, n);
    Word prod = gn;
    prod.insert(prod.end(), en.begin(), en.end());
    double a = margulis_invariant(rho, prod) - n * ag - n * ae;
    out.values.push_back(a);
  }
  out.decay_ratio = fitted_decay_ratio(out.values, out.target);
  return out;
}

DeformedRep induced_deformation(const Representation& rho,
                                const std::vector<Mat3>& linear_variation) {
  if (static_cast<int>(linear_variation.size()) != rho.rank())
    raise(errc::bad_argument, "one variation matrix per generator required");
  std::vector<Vec3> trans;
  trans.reserve(rho.rank());
  for (const Mat3& a : linear_variation) trans.push_back(so21_to_mink(a, rho.tol()));
  std::vector<Mat3> gens;
  gens.reserve(rho.rank());
  for (int i = 0; i < rho.rank(); ++i) gens.push_back(rho.generator(i));
  return DeformedRep(Representation(std::move(gens), rho.tol()), std::move(trans));
}

namespace {

// 5-point central first derivative.
template <typename Fn>
double central_derivative(const Fn& f, double step) {
  return (f(-2.0 * step) - 8.0 * f(-step) + 8.0 * f(step) - f(2.0 * step)) /
         (12.0 * step);
}

}  // namespace

DerivativeCheck goldman_margulis_check(const Representation& rho,
                                       const std::vector<Mat3>& linear_variation,
                                       const Word& gamma, double step) {
  if (reduce(gamma).empty()) raise(errc::empty_word, "derivative of the identity length");
  DerivativeCheck r;
  r.fd = central_derivative(
      [&](double t) {
        Representation rt = path_point_linear(rho, linear_variation, t);
        return translation_length(rt.evaluate(gamma), rho.tol());
      },
      step);
  r.exact = margulis_invariant(induced_deformation(rho, linear_variation), gamma);
  return r;
}

DerivativeCheck dcr_check(const Representation& rho,
                          const std::vector<Mat3>& linear_variation,
                          const Word& gamma, const Word& eta, double step) {
  require_coprime_hyperbolic(rho, gamma, eta);
  const Tolerances& tol = rho.tol();
  DerivativeCheck r;
  r.fd = central_derivative(
      [&](double t) {
        Representation rt = path_point_linear(rho, linear_variation, t);
        FixedPoints fg = fixed_points(rt.evaluate(gamma), tol);
        FixedPoints fe = fixed_points(rt.evaluate(eta), tol);
        double b = cross_ratio(fe.minus, fg.minus, fg.plus, fe.plus, tol);
        if (b == 0.0)
          raise(errc::degenerate_boundary_pair, "vanishing cross-ratio");
        // same normalization as the length-gap limit
        return std::log(b * b);
      },
      step);
  r.exact = axis_pairing_target(induced_deformation(rho, linear_variation), gamma, eta);
  return r;
}

}  // namespace margulis
