#pragma once

#include "margulis/rep.hpp"

namespace fixtures {

using namespace margulis;

// Rank-2 Schottky pair: perpendicular crossing axes through the hyperboloid
// base point, both translation lengths 4.
inline Representation standard_linear() {
  std::vector<AxisSpec> axes = {{-M_PI / 2.0, M_PI / 2.0, 4.0},
                                {M_PI, 0.0, 4.0}};
  return schottky_builder(axes);
}

// Proper cocycle: translations along the generator axes (the derivative of
// lengthening both generators), alpha(a) = alpha(b) = 1.
inline DeformedRep standard_pair() {
  Representation lin = standard_linear();
  std::vector<Vec3> trans;
  for (int i = 0; i < lin.rank(); ++i)
    trans.push_back(fixed_points(lin.generator(i)).nu);
  return DeformedRep(std::move(lin), std::move(trans));
}

inline DeformedRep scaled_pair(const DeformedRep& rho, double c) {
  std::vector<Mat3> gens;
  std::vector<Vec3> trans;
  for (int i = 0; i < rho.rank(); ++i) {
    gens.push_back(rho.linear().generator(i));
    trans.push_back(c * rho.translation(i));
  }
  return DeformedRep(Representation(std::move(gens), rho.tol()), std::move(trans));
}

// alpha(a) = +1 but alpha(b) = -1.
inline DeformedRep mixed_sign_pair() {
  Representation lin = standard_linear();
  std::vector<Vec3> trans;
  trans.push_back(fixed_points(lin.generator(0)).nu);
  trans.push_back(-fixed_points(lin.generator(1)).nu);
  return DeformedRep(std::move(lin), std::move(trans));
}

}  // namespace fixtures
