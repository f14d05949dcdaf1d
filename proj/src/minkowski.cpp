#include "margulis/minkowski.hpp"

#include <sstream>

namespace margulis {

const char* errc_name(errc c) {
  switch (c) {
    case errc::ok: return "Ok";
    case errc::config_error: return "ConfigError";
    case errc::not_hyperbolic: return "NotHyperbolic";
    case errc::insufficient_data: return "InsufficientData";
    case errc::degenerate_boundary_pair: return "DegenerateBoundaryPair";
    case errc::not_in_lie_algebra: return "NotInLieAlgebra";
    case errc::not_coprime: return "NotCoprime";
    case errc::left_hyperbolic_regime: return "LeftHyperbolicRegime";
    case errc::singular_system: return "SingularSystem";
    case errc::step_too_small: return "StepTooSmall";
    case errc::invalid_axis: return "InvalidAxis";
    case errc::sign_mismatch: return "SignMismatch";
    case errc::empty_word: return "EmptyWord";
    case errc::bad_argument: return "BadArgument";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j] + a.m[i][2] * b.m[2][j];
  return r;
}

Vec3 operator*(const Mat3& a, const Vec3& x) {
  Vec3 r;
  for (int i = 0; i < 3; ++i)
    r[i] = a.m[i][0] * x[0] + a.m[i][1] * x[1] + a.m[i][2] * x[2];
  return r;
}

Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
  return r;
}

Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
  return r;
}

Mat3 operator*(double s, const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = s * a.m[i][j];
  return r;
}

Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[j][i];
  return r;
}

double det(const Mat3& a) {
  return a.m[0][0] * (a.m[1][1] * a.m[2][2] - a.m[1][2] * a.m[2][1]) -
         a.m[0][1] * (a.m[1][0] * a.m[2][2] - a.m[1][2] * a.m[2][0]) +
         a.m[0][2] * (a.m[1][0] * a.m[2][1] - a.m[1][1] * a.m[2][0]);
}

double trace(const Mat3& a) { return a.m[0][0] + a.m[1][1] + a.m[2][2]; }

Mat3 adjugate(const Mat3& a) {
  Mat3 r;
  r.m[0][0] = a.m[1][1] * a.m[2][2] - a.m[1][2] * a.m[2][1];
  r.m[0][1] = a.m[0][2] * a.m[2][1] - a.m[0][1] * a.m[2][2];
  r.m[0][2] = a.m[0][1] * a.m[1][2] - a.m[0][2] * a.m[1][1];
  r.m[1][0] = a.m[1][2] * a.m[2][0] - a.m[1][0] * a.m[2][2];
  r.m[1][1] = a.m[0][0] * a.m[2][2] - a.m[0][2] * a.m[2][0];
  r.m[1][2] = a.m[0][2] * a.m[1][0] - a.m[0][0] * a.m[1][2];
  r.m[2][0] = a.m[1][0] * a.m[2][1] - a.m[1][1] * a.m[2][0];
  r.m[2][1] = a.m[0][1] * a.m[2][0] - a.m[0][0] * a.m[2][1];
  r.m[2][2] = a.m[0][0] * a.m[1][1] - a.m[0][1] * a.m[1][0];
  return r;
}

double frobenius(const Mat3& a) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a.m[i][j] * a.m[i][j];
  return std::sqrt(s);
}

double max_abs(const Mat3& a) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s = std::max(s, std::abs(a.m[i][j]));
  return s;
}

double det_cols(const Vec3& x, const Vec3& y, const Vec3& z) {
  Mat3 a;
  for (int i = 0; i < 3; ++i) {
    a.m[i][0] = x[i];
    a.m[i][1] = y[i];
    a.m[i][2] = z[i];
  }
  return det(a);
}

namespace {
Mat3 q_conjugate(const Mat3& a) {
  // Q a Q with Q = diag(1,1,-1): flips the sign of the (i,2) and (2,j) strips.
  Mat3 r = a;
  r.m[0][2] = -r.m[0][2];
  r.m[1][2] = -r.m[1][2];
  r.m[2][0] = -r.m[2][0];
  r.m[2][1] = -r.m[2][1];
  return r;
}
}  // namespace

Mat3 lorentz_inverse(const Mat3& g) { return q_conjugate(transpose(g)); }

double lorentz_defect(const Mat3& g) {
  // g^T Q g - Q
  Mat3 gt = transpose(g);
  Mat3 qg = g;
  for (int j = 0; j < 3; ++j) qg.m[2][j] = -qg.m[2][j];
  Mat3 d = gt * qg;
  d.m[0][0] -= 1.0;
  d.m[1][1] -= 1.0;
  d.m[2][2] += 1.0;
  return max_abs(d);
}

double so21_defect(const Mat3& a) {
  // A^T Q + Q A
  Mat3 at = transpose(a);
  Mat3 atq = at, qa = a;
  for (int i = 0; i < 3; ++i) atq.m[i][2] = -atq.m[i][2];
  for (int j = 0; j < 3; ++j) qa.m[2][j] = -qa.m[2][j];
  return max_abs(atq + qa);
}

bool is_lorentz(const Mat3& g, const Tolerances& tol) {
  double scale = 1.0 + frobenius(g) * frobenius(g);
  if (lorentz_defect(g) > tol.eps_orth * scale) return false;
  if (std::abs(det(g) - 1.0) > tol.eps_orth * scale) return false;
  return g.m[2][2] > 0.0;
}

void require_lorentz(const Mat3& g, const Tolerances& tol, const std::string& where) {
  if (!is_lorentz(g, tol)) {
    std::ostringstream os;
    os << where << ": matrix is not in SO^0(2,1) (defect " << lorentz_defect(g)
       << ", det " << det(g) << ", m33 " << g.m[2][2] << ")";
    raise(errc::config_error, os.str());
  }
}

Mat3 flow_matrix(double t) {
  Mat3 r = Mat3::identity();
  double ch = std::cosh(t), sh = std::sinh(t);
  r.m[1][1] = ch;
  r.m[1][2] = sh;
  r.m[2][1] = sh;
  r.m[2][2] = ch;
  return r;
}

Mat3 rotation_matrix(double theta) {
  Mat3 r = Mat3::identity();
  double c = std::cos(theta), s = std::sin(theta);
  r.m[0][0] = c;
  r.m[0][1] = -s;
  r.m[1][0] = s;
  r.m[1][1] = c;
  return r;
}

BoundaryPoint BoundaryPoint::from_null(const Vec3& x, const Tolerances& tol) {
  double scale = euclid_dot(x, x);
  if (x[2] <= 0.0 || scale == 0.0)
    raise(errc::degenerate_boundary_pair, "vector is not a future null direction");
  if (std::abs(pairing(x, x)) > std::max(tol.eps_null, 1e-8) * scale)
    raise(errc::degenerate_boundary_pair, "vector is not null within tolerance");
  double c = x[0] / x[2], s = x[1] / x[2];
  double r = std::sqrt(c * c + s * s);
  if (!(r > 0.0) || !std::isfinite(r))
    raise(errc::degenerate_boundary_pair, "degenerate null direction");
  return {c / r, s / r};
}

BoundaryPoint act(const Mat3& g, const BoundaryPoint& p, const Tolerances& tol) {
  return BoundaryPoint::from_null(g * p.lift(), tol);
}

Vec3 neutral_vector(const BoundaryPoint& a, const BoundaryPoint& b,
                    const Tolerances& tol) {
  if (chordal(a, b) < tol.eps_null)
    raise(errc::degenerate_boundary_pair, "neutral vector of coincident boundary points");
  Vec3 c = mink_cross(a.lift(), b.lift());
  double n2 = pairing(c, c);  // = 4 sin^4(dtheta/2) > 0
  if (!(n2 > 0.0))
    raise(errc::degenerate_boundary_pair, "neutral vector normalization failed");
  return (-1.0 / std::sqrt(n2)) * c;
}

double cross_ratio(const BoundaryPoint& a, const BoundaryPoint& b,
                   const BoundaryPoint& c, const BoundaryPoint& d,
                   const Tolerances& tol) {
  if (chordal(a, d) < tol.eps_null)
    raise(errc::degenerate_boundary_pair, "cross_ratio requires a != d");
  if (chordal(b, c) < tol.eps_null)
    raise(errc::degenerate_boundary_pair, "cross_ratio requires b != c");
  return 0.5 * (1.0 + pairing(neutral_vector(a, d, tol), neutral_vector(b, c, tol)));
}

Vec3 so21_to_mink(const Mat3& a, const Tolerances& tol) {
  double scale = 1.0 + frobenius(a);
  if (so21_defect(a) > tol.eps_orth * scale)
    raise(errc::not_in_lie_algebra, "matrix does not satisfy A^T Q + Q A = 0");
  // A w = mink_cross(w, v); the boost generator maps to +(1,0,0).
  return {a.m[2][1], -a.m[0][2], -a.m[1][0]};
}

Mat3 mink_to_so21(const Vec3& v) {
  Mat3 a;
  a.m[0][1] = v[2];
  a.m[1][0] = -v[2];
  a.m[0][2] = -v[1];
  a.m[2][0] = -v[1];
  a.m[1][2] = v[0];
  a.m[2][1] = v[0];
  return a;
}

Mat3 so21_exp(const Mat3& a, const Tolerances& tol) {
  Vec3 v = so21_to_mink(a, tol);
  double k = pairing(v, v);  // A^3 = k A
  Mat3 a2 = a * a;
  double c1, c2;  // exp(A) = I + c1 A + c2 A^2
  if (std::abs(k) < 1e-8) {
    // series in k, accurate to ~1e-24 at the cutoff
    c1 = 1.0 + k / 6.0 + k * k / 120.0;
    c2 = 0.5 + k / 24.0 + k * k / 720.0;
  } else if (k > 0.0) {
    double s = std::sqrt(k);
    c1 = std::sinh(s) / s;
    c2 = (std::cosh(s) - 1.0) / k;
  } else {
    double s = std::sqrt(-k);
    c1 = std::sin(s) / s;
    c2 = (1.0 - std::cos(s)) / (-k);
  }
  return Mat3::identity() + c1 * a + c2 * a2;
}

}  // namespace margulis
