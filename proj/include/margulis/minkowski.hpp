#pragma once

#include <array>
#include <cmath>

#include "margulis/error.hpp"
#include "margulis/tolerances.hpp"

// Linear algebra in R^{2,1}: signature (+,+,-), Q = diag(1,1,-1).
//
// Conventions frozen here and relied on everywhere else:
//  * pairing(u, mink_cross(v, w)) = det[u v w]  (columns u, v, w),
//    so mink_cross(v, w) = Q (v x w) with x the Euclidean cross product.
//  * neutral_vector(a, b) is the unit spacelike vector orthogonal to both
//    x3=1 null lifts, signed so that det[nu | a | b] < 0. On the model axis
//    a = (0,-1,1), b = (0,1,1) this gives nu = (1,0,0).
//  * so21_to_mink(A) is the v with A w = mink_cross(w, v) for all w; the
//    orientation is the one that makes the boost generator d/dt flow(t)|_0
//    correspond to +(1,0,0).

namespace margulis {

struct Vec3 {
  double v[3]{0.0, 0.0, 0.0};

  double& operator[](int i) { return v[i]; }
  double operator[](int i) const { return v[i]; }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) {
  return {s * a[0], s * a[1], s * a[2]};
}
inline Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }

inline double pairing(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
}

inline double euclid_dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double euclid_norm(const Vec3& a) { return std::sqrt(euclid_dot(a, a)); }

inline double max_abs(const Vec3& a) {
  return std::max(std::abs(a[0]), std::max(std::abs(a[1]), std::abs(a[2])));
}

// Lorentzian cross product: pairing(x, mink_cross(v,w)) = det[x v w].
inline Vec3 mink_cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1],
          a[2] * b[0] - a[0] * b[2],
          -(a[0] * b[1] - a[1] * b[0])};
}

struct Mat3 {
  double m[3][3]{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};

  static Mat3 identity() {
    Mat3 r;
    r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
    return r;
  }
  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }
};

Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& x);
Mat3 operator+(const Mat3& a, const Mat3& b);
Mat3 operator-(const Mat3& a, const Mat3& b);
Mat3 operator*(double s, const Mat3& a);

Mat3 transpose(const Mat3& a);
double det(const Mat3& a);
double trace(const Mat3& a);
// adj(M) with M * adj(M) = det(M) I.
Mat3 adjugate(const Mat3& a);
double frobenius(const Mat3& a);
double max_abs(const Mat3& a);

// det of the matrix with columns x, y, z.
double det_cols(const Vec3& x, const Vec3& y, const Vec3& z);

// Exact inverse of a Lorentz matrix: g^{-1} = Q g^T Q.
Mat3 lorentz_inverse(const Mat3& g);

// Defect |g^T Q g - Q|, used for SO(2,1) membership tests.
double lorentz_defect(const Mat3& g);
// Defect |A^T Q + Q A|, used for so(2,1) membership tests.
double so21_defect(const Mat3& a);

bool is_lorentz(const Mat3& g, const Tolerances& tol = {});
void require_lorentz(const Mat3& g, const Tolerances& tol, const std::string& where);

// One-parameter boost along the model axis with endpoints (0,-1,1), (0,1,1):
// [[1,0,0],[0,cosh t, sinh t],[0,sinh t,cosh t]].
Mat3 flow_matrix(double t);

// Rotation about the timelike axis by theta.
Mat3 rotation_matrix(double theta);

// A future null ray stored on the x3 = 1 slice as a unit circle point.
struct BoundaryPoint {
  double c = 1.0;  // x1
  double s = 0.0;  // x2

  static BoundaryPoint from_angle(double theta) {
    return {std::cos(theta), std::sin(theta)};
  }
  // Normalizes a future null vector onto the slice; rejects non-null input.
  static BoundaryPoint from_null(const Vec3& x, const Tolerances& tol = {});

  Vec3 lift() const { return {c, s, 1.0}; }
  double angle() const { return std::atan2(s, c); }
};

inline double chordal(const BoundaryPoint& a, const BoundaryPoint& b) {
  double dc = a.c - b.c, ds = a.s - b.s;
  return std::sqrt(dc * dc + ds * ds);
}

// Image of a boundary point under g in SO^0(2,1).
BoundaryPoint act(const Mat3& g, const BoundaryPoint& p, const Tolerances& tol = {});

// Unit spacelike vector orthogonal to both lifts, det[nu | a | b] < 0.
Vec3 neutral_vector(const BoundaryPoint& a, const BoundaryPoint& b,
                    const Tolerances& tol = {});

// (1/2)(1 + <nu(a,d) | nu(b,c)>); requires a != d and b != c.
double cross_ratio(const BoundaryPoint& a, const BoundaryPoint& b,
                   const BoundaryPoint& c, const BoundaryPoint& d,
                   const Tolerances& tol = {});

// so(2,1) <-> R^{2,1}, Ad-equivariant: so21_to_mink(g A g^{-1}) = g so21_to_mink(A).
Vec3 so21_to_mink(const Mat3& a, const Tolerances& tol = {});
Mat3 mink_to_so21(const Vec3& v);

// exp(A) for A in so(2,1) via the closed form with A^3 = <v,v> A.
Mat3 so21_exp(const Mat3& a, const Tolerances& tol = {});

}  // namespace margulis
