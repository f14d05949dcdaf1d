#include "margulis/rep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace margulis {

bool is_hyperbolic(const Mat3& g, const Tolerances& tol) {
  return trace(g) > 3.0 + tol.eps_hyp;
}

namespace {

void require_hyperbolic(const Mat3& g, const Tolerances& tol, const std::string& where) {
  if (!is_hyperbolic(g, tol)) {
    std::ostringstream os;
    os << where << ": trace " << trace(g) << " is not hyperbolic";
    raise(errc::not_hyperbolic, os.str());
  }
}

// Null eigendirection for the top eigenvalue lam = e^l of g: columns of
// adj(g - lam I) span the kernel and carry no catastrophic cancellation for
// the extreme eigenvalue. One power-iteration polish.
Vec3 attracting_null(const Mat3& g, double lam) {
  Mat3 m = g;
  m.m[0][0] -= lam;
  m.m[1][1] -= lam;
  m.m[2][2] -= lam;
  Mat3 a = adjugate(m);
  Vec3 best;
  double bn = -1.0;
  for (int j = 0; j < 3; ++j) {
    Vec3 col{a.m[0][j], a.m[1][j], a.m[2][j]};
    double n = euclid_norm(col);
    if (n > bn) {
      bn = n;
      best = col;
    }
  }
  best = (1.0 / bn) * best;
  Vec3 polished = g * best;
  double pn = euclid_norm(polished);
  if (std::isfinite(pn) && pn > 0.0) best = (1.0 / pn) * polished;
  if (best[2] < 0.0) best = -best;
  return best;
}

}  // namespace

double translation_length(const Mat3& g, const Tolerances& tol) {
  require_hyperbolic(g, tol, "translation_length");
  double c = 0.5 * (trace(g) - 1.0);
  return std::acosh(c);
}

FixedPoints fixed_points(const Mat3& g, const Tolerances& tol) {
  require_hyperbolic(g, tol, "fixed_points");
  double c = 0.5 * (trace(g) - 1.0);
  if (c > 1e300) raise(errc::not_hyperbolic, "trace overflow");
  double ell = std::acosh(c);
  double lam = c + std::sqrt((c - 1.0) * (c + 1.0));  // e^ell

  FixedPoints fp;
  fp.ell = ell;
  fp.plus = BoundaryPoint::from_null(attracting_null(g, lam), tol);
  fp.minus = BoundaryPoint::from_null(attracting_null(lorentz_inverse(g), lam), tol);
  fp.nu = neutral_vector(fp.minus, fp.plus, tol);
  return fp;
}

Representation::Representation(std::vector<Mat3> gens, const Tolerances& tol)
    : gens_(std::move(gens)), tol_(tol) {
  if (gens_.empty()) raise(errc::bad_argument, "representation needs at least one generator");
  letters_.reserve(2 * gens_.size());
  for (size_t i = 0; i < gens_.size(); ++i) {
    std::ostringstream os;
    os << "generator " << i + 1;
    require_lorentz(gens_[i], tol_, os.str());
    require_hyperbolic(gens_[i], tol_, os.str());
    letters_.push_back(gens_[i]);
    letters_.push_back(lorentz_inverse(gens_[i]));
  }
}

Mat3 Representation::evaluate(const Word& w) const {
  Mat3 r = Mat3::identity();
  for (Letter l : w) r = r * letters_[l];
  return r;
}

TangentVector operator+(const TangentVector& a, const TangentVector& b) {
  TangentVector r = a;
  for (size_t i = 0; i < r.linear_variation.size(); ++i) {
    r.linear_variation[i] = r.linear_variation[i] + b.linear_variation[i];
    r.translation_variation[i] = r.translation_variation[i] + b.translation_variation[i];
  }
  r.label = a.label + "+" + b.label;
  return r;
}

TangentVector operator-(const TangentVector& a, const TangentVector& b) {
  TangentVector r = a;
  for (size_t i = 0; i < r.linear_variation.size(); ++i) {
    r.linear_variation[i] = r.linear_variation[i] - b.linear_variation[i];
    r.translation_variation[i] = r.translation_variation[i] - b.translation_variation[i];
  }
  r.label = a.label + "-" + b.label;
  return r;
}

DeformedRep::DeformedRep(Representation linear, std::vector<Vec3> translations)
    : linear_(std::move(linear)), trans_(std::move(translations)) {
  if (static_cast<int>(trans_.size()) != linear_.rank())
    raise(errc::bad_argument, "one translation vector per generator required");
  letter_trans_.reserve(2 * trans_.size());
  for (size_t i = 0; i < trans_.size(); ++i) {
    letter_trans_.push_back(trans_[i]);
    // u(g^-1) = -L(g)^-1 u(g)
    letter_trans_.push_back(-(lorentz_inverse(linear_.generator(static_cast<int>(i))) *
                              trans_[i]));
  }
}

AffineMap DeformedRep::evaluate(const Word& w) const {
  AffineMap r;
  for (Letter l : w) {
    r.trans = r.trans + r.linear * letter_trans_[l];
    r.linear = r.linear * linear_.letter(l);
  }
  return r;
}

double margulis_invariant(const DeformedRep& rho, const Word& w) {
  // Cyclic reduction is exact letter algebra and the invariant is a class
  // function; it also keeps every rotation product free of the cancellation
  // blow-up that conjugator padding would cause.
  Word core = cyclic_reduce(w).second;
  if (core.empty()) return 0.0;
  size_t m = core.size();
  const Representation& lin = rho.linear();

  // Suffix products S_k = M[x_k] ... M[x_m-1] and prefixes R_k = M[x_0] ... M[x_k];
  // rotation k is S_k * R_{k-1}, a fresh two-factor product per k.
  std::vector<Mat3> suffix(m), prefix(m);
  suffix[m - 1] = lin.letter(core[m - 1]);
  for (size_t k = m - 1; k-- > 0;) suffix[k] = lin.letter(core[k]) * suffix[k + 1];
  prefix[0] = lin.letter(core[0]);
  for (size_t k = 1; k < m; ++k) prefix[k] = prefix[k - 1] * lin.letter(core[k]);

  double alpha = 0.0;
  for (size_t k = 0; k < m; ++k) {
    Mat3 rot = (k == 0) ? suffix[0] : suffix[k] * prefix[k - 1];
    FixedPoints fp = fixed_points(rot, rho.tol());
    alpha += pairing(rho.letter_translation(core[k]), fp.nu);
  }
  return alpha;
}

Vec3 axis_point(const DeformedRep& rho, const Word& w) {
  const Tolerances& tol = rho.tol();
  AffineMap g = rho.evaluate(reduce(w));
  require_hyperbolic(g.linear, tol, "axis_point");
  FixedPoints fp = fixed_points(g.linear, tol);
  double alpha = margulis_invariant(rho, w);

  // Solve (L - I)X = alpha nu - u on the span of the null eigenvectors.
  Vec3 nplus = fp.plus.lift(), nminus = fp.minus.lift();
  double cross_pair = pairing(nplus, nminus);
  double lam = std::exp(fp.ell), lam_inv = std::exp(-fp.ell);
  double cond = (1.0 + 1.0 / std::abs(cross_pair)) * (1.0 + 1.0 / (lam - 1.0));
  if (!(std::abs(cross_pair) > 0.0) || cond > tol.kappa_max)
    raise(errc::singular_system, "axis solve ill-conditioned");

  const Vec3& u = g.trans;
  double c_plus = pairing(u, nminus) / cross_pair;
  double c_minus = pairing(u, nplus) / cross_pair;
  Vec3 x = (-c_plus / (lam - 1.0)) * nplus + (-c_minus / (lam_inv - 1.0)) * nminus;

  // Euclidean-orthogonal gauge against nu.
  x = x - (euclid_dot(x, fp.nu) / euclid_dot(fp.nu, fp.nu)) * fp.nu;

  Vec3 residual = g.linear * x + u - x - alpha * fp.nu;
  if (max_abs(residual) > tol.axis_residual * (1.0 + euclid_norm(x)))
    raise(errc::singular_system, "axis equation residual too large");
  return x;
}

Mat3 boost_about_axis(const BoundaryPoint& backward, const BoundaryPoint& forward,
                      double length, const Tolerances& tol) {
  if (!(length > 0.0)) raise(errc::invalid_axis, "translation length must be positive");
  if (chordal(backward, forward) < tol.eps_null)
    raise(errc::invalid_axis, "axis endpoints coincide");

  Vec3 nm = backward.lift(), np = forward.lift();
  Vec3 nu = neutral_vector(backward, forward, tol);
  // Frame map R: (nu0, n0-, n0+) -> (nu, s nm, s np) with s fixed by the
  // Gram condition <s nm, s np> = -2; R is then Lorentzian.
  double s = std::sqrt(-2.0 / pairing(nm, np));
  Mat3 frame;  // columns nu, s*nm, s*np
  for (int i = 0; i < 3; ++i) {
    frame.m[i][0] = nu[i];
    frame.m[i][1] = s * nm[i];
    frame.m[i][2] = s * np[i];
  }
  // Inverse of the model frame [(1,0,0) | (0,-1,1) | (0,1,1)].
  Mat3 model_inv;
  model_inv.m[0][0] = 1.0;
  model_inv.m[1][1] = -0.5;
  model_inv.m[1][2] = 0.5;
  model_inv.m[2][1] = 0.5;
  model_inv.m[2][2] = 0.5;
  Mat3 r = frame * model_inv;
  return r * flow_matrix(length) * lorentz_inverse(r);
}

Representation schottky_builder(const std::vector<AxisSpec>& axes, const Tolerances& tol) {
  std::vector<BoundaryPoint> endpoints;
  for (const AxisSpec& a : axes) {
    endpoints.push_back(BoundaryPoint::from_angle(a.theta_minus));
    endpoints.push_back(BoundaryPoint::from_angle(a.theta_plus));
  }
  for (size_t i = 0; i < endpoints.size(); ++i)
    for (size_t j = i + 1; j < endpoints.size(); ++j)
      if (chordal(endpoints[i], endpoints[j]) < tol.eps_null)
        raise(errc::invalid_axis, "axis endpoints must be pairwise distinct");

  std::vector<Mat3> gens;
  gens.reserve(axes.size());
  for (size_t i = 0; i < axes.size(); ++i)
    gens.push_back(boost_about_axis(endpoints[2 * i], endpoints[2 * i + 1],
                                    axes[i].length, tol));
  return Representation(std::move(gens), tol);
}

namespace {

double wrap_angle(double t) {
  t = std::fmod(t, 2.0 * M_PI);
  if (t < 0.0) t += 2.0 * M_PI;
  return t;
}

// Signed angular distance from arc center, in (-pi, pi].
double center_offset(double theta, double center) {
  double d = wrap_angle(theta - center + M_PI) - M_PI;
  return d;
}

}  // namespace

PingPongCertificate certify_ping_pong(const Representation& rho) {
  const Tolerances& tol = rho.tol();
  int n = rho.rank();
  int nletters = 2 * n;

  // Arc centers: attracting fixed point of each letter.
  std::vector<double> center(nletters);
  for (Letter l = 0; l < nletters; ++l)
    center[l] = fixed_points(rho.letter(l), tol).plus.angle();

  double min_gap = 2.0 * M_PI;
  for (int i = 0; i < nletters; ++i)
    for (int j = i + 1; j < nletters; ++j)
      min_gap = std::min(min_gap, std::abs(center_offset(center[i], center[j])));

  PingPongCertificate best;
  if (min_gap <= 0.0) {
    best.detail = "coincident fixed points";
    return best;
  }

  for (int ri = tol.cert_radii; ri >= 1; --ri) {
    double radius = 0.5 * min_gap * ri / (tol.cert_radii + 1);
    double margin = radius;  // worst clearance so far
    bool ok = true;
    for (Letter l = 0; l < nletters && ok; ++l) {
      double src = center[inverse_letter(l)];
      double dst = center[l];
      const Mat3& g = rho.letter(l);
      // Complement of the source arc, traversed from src+radius to
      // src+2pi-radius; endpoint images and interior samples must land in
      // the target arc.
      for (int s = 0; s <= tol.cert_samples && ok; ++s) {
        double t = src + radius +
                   (2.0 * M_PI - 2.0 * radius) * s / tol.cert_samples;
        double img = act(g, BoundaryPoint::from_angle(t), tol).angle();
        double clearance = radius - std::abs(center_offset(img, dst));
        if (clearance < 0.0)
          ok = false;
        else
          margin = std::min(margin, clearance);
      }
    }
    if (ok) {
      best.certified = true;
      best.radius = radius;
      best.margin = margin;
      std::ostringstream os;
      os << nletters << " disjoint arcs of radius " << radius;
      best.detail = os.str();
      return best;
    }
  }
  best.detail = "no admissible arc radius found";
  return best;
}

DeformedRep path_point(const DeformedRep& rho, const TangentVector& v, double t) {
  const Tolerances& tol = rho.tol();
  int n = rho.rank();
  if (static_cast<int>(v.linear_variation.size()) != n ||
      static_cast<int>(v.translation_variation.size()) != n)
    raise(errc::bad_argument, "tangent vector rank mismatch");
  std::vector<Mat3> gens;
  std::vector<Vec3> trans;
  gens.reserve(n);
  trans.reserve(n);
  for (int i = 0; i < n; ++i) {
    Mat3 g = so21_exp(t * v.linear_variation[i], tol) * rho.linear().generator(i);
    if (!is_hyperbolic(g, tol)) {
      std::ostringstream os;
      os << "generator " << i + 1 << " left the hyperbolic regime at t = " << t;
      raise(errc::left_hyperbolic_regime, os.str());
    }
    gens.push_back(g);
    trans.push_back(rho.translation(i) + t * v.translation_variation[i]);
  }
  return DeformedRep(Representation(std::move(gens), tol), std::move(trans));
}

Representation path_point_linear(const Representation& rho,
                                 const std::vector<Mat3>& linear_variation, double t) {
  const Tolerances& tol = rho.tol();
  if (static_cast<int>(linear_variation.size()) != rho.rank())
    raise(errc::bad_argument, "tangent vector rank mismatch");
  std::vector<Mat3> gens;
  gens.reserve(rho.rank());
  for (int i = 0; i < rho.rank(); ++i) {
    Mat3 g = so21_exp(t * linear_variation[i], tol) * rho.generator(i);
    if (!is_hyperbolic(g, tol)) {
      std::ostringstream os;
      os << "generator " << i + 1 << " left the hyperbolic regime at t = " << t;
      raise(errc::left_hyperbolic_regime, os.str());
    }
    gens.push_back(g);
  }
  return Representation(std::move(gens), tol);
}

}  // namespace margulis
