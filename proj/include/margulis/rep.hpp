#pragma once

#include <optional>
#include <vector>

#include "margulis/freegroup.hpp"
#include "margulis/minkowski.hpp"

namespace margulis {

// Affine map x -> L x + u.
struct AffineMap {
  Mat3 linear = Mat3::identity();
  Vec3 trans;
};

inline AffineMap compose(const AffineMap& a, const AffineMap& b) {
  return {a.linear * b.linear, a.linear * b.trans + a.trans};
}

// Eigendata of a hyperbolic element: repelling/attracting boundary fixed
// points, the unit eigenvalue-1 vector nu(g^-,g^+), and the translation
// length l with eigenvalues e^l, 1, e^-l.
struct FixedPoints {
  BoundaryPoint minus;
  BoundaryPoint plus;
  Vec3 nu;
  double ell = 0.0;
};

bool is_hyperbolic(const Mat3& g, const Tolerances& tol = {});
double translation_length(const Mat3& g, const Tolerances& tol = {});
FixedPoints fixed_points(const Mat3& g, const Tolerances& tol = {});

// Generator images in SO^0(2,1), all hyperbolic.
class Representation {
 public:
  Representation(std::vector<Mat3> gens, const Tolerances& tol = {});

  int rank() const { return static_cast<int>(gens_.size()); }
  const Mat3& generator(int i) const { return gens_[i]; }
  // Image of a single letter (generator or inverse).
  const Mat3& letter(Letter l) const { return letters_[l]; }
  Mat3 evaluate(const Word& w) const;
  const Tolerances& tol() const { return tol_; }

 private:
  std::vector<Mat3> gens_;
  std::vector<Mat3> letters_;
  Tolerances tol_;
};

// Tangent direction at a representation: right-translated derivatives of the
// generator images (so(2,1) matrices, d/dt g_i(t) = A_i g_i), plus the
// derivative of the translation cocycle on generators.
struct TangentVector {
  std::vector<Mat3> linear_variation;
  std::vector<Vec3> translation_variation;
  std::string label;
};

TangentVector operator+(const TangentVector& a, const TangentVector& b);
TangentVector operator-(const TangentVector& a, const TangentVector& b);

// Affine deformation: linear part plus translation cocycle values on the
// generators, extended to all words by u(xy) = L(x)u(y) + u(x).
class DeformedRep {
 public:
  DeformedRep(Representation linear, std::vector<Vec3> translations);

  int rank() const { return linear_.rank(); }
  const Representation& linear() const { return linear_; }
  const Vec3& translation(int i) const { return trans_[i]; }
  const Vec3& letter_translation(Letter l) const { return letter_trans_[l]; }
  const Tolerances& tol() const { return linear_.tol(); }

  AffineMap evaluate(const Word& w) const;

 private:
  Representation linear_;
  std::vector<Vec3> trans_;
  std::vector<Vec3> letter_trans_;
};

// <u(w) | nu(w)>, evaluated as the cyclic period sum
// sum_k <u(x_k), nu(L(w^(k)))> which is exact for any letter sequence and
// avoids the e^l cancellation of the direct pairing.
double margulis_invariant(const DeformedRep& rho, const Word& w);

// A point on the unique affine line fixed by rho(w), gauged Euclidean-
// orthogonal to nu(w).
Vec3 axis_point(const DeformedRep& rho, const Word& w);

// Geometric generator: conjugate of flow_matrix(length) carrying the model
// axis endpoints (0,-1,1),(0,1,1) to the requested boundary pair.
Mat3 boost_about_axis(const BoundaryPoint& backward, const BoundaryPoint& forward,
                      double length, const Tolerances& tol = {});

struct AxisSpec {
  double theta_minus = 0.0;
  double theta_plus = 0.0;
  double length = 0.0;
};

struct PingPongCertificate {
  bool certified = false;
  double radius = 0.0;  // common angular arc radius
  double margin = 0.0;  // worst angular clearance inside the target arcs
  std::string detail;
};

Representation schottky_builder(const std::vector<AxisSpec>& axes,
                                const Tolerances& tol = {});

// Tries to exhibit 2n disjoint arcs around the generator fixed points with
// g(complement of source arc) inside the target arc; sampled containment
// plus endpoint checks.
PingPongCertificate certify_ping_pong(const Representation& rho);

// Generator i -> (exp(t A_i) L_i, u_i + t w_i). Throws LeftHyperbolicRegime
// if a perturbed generator stops being hyperbolic.
DeformedRep path_point(const DeformedRep& rho, const TangentVector& v, double t);
Representation path_point_linear(const Representation& rho,
                                 const std::vector<Mat3>& linear_variation, double t);

}  // namespace margulis
