#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "margulis/minkowski.hpp"
#include "oracles.hpp"

using namespace margulis;

TEST_CASE("pairing basics") {
  CHECK(pairing({1, 0, 0}, {1, 0, 0}) == 1.0);
  CHECK(pairing({0, 1, 1}, {0, 1, 1}) == 0.0);
  CHECK(pairing({0, 0, 1}, {0, 0, 1}) == -1.0);
  oracle::Rand rnd(11);
  for (int i = 0; i < 100; ++i) {
    Vec3 v = rnd.vec(), w = rnd.vec();
    CHECK(pairing(v, w) == doctest::Approx(pairing(w, v)));
  }
}

TEST_CASE("mink_cross solves the orthogonality system") {
  // Hand solve for v=(0,-1,1), w=(0,1,1): result must be a nonzero multiple
  // of (1,0,0); the determinant convention fixes it to (-2,0,0).
  Vec3 c = mink_cross({0, -1, 1}, {0, 1, 1});
  CHECK(c[0] == doctest::Approx(-2.0));
  CHECK(c[1] == doctest::Approx(0.0));
  CHECK(c[2] == doctest::Approx(0.0));
  CHECK(pairing(c, {0, -1, 1}) == doctest::Approx(0.0));
  CHECK(pairing(c, {0, 1, 1}) == doctest::Approx(0.0));

  oracle::Rand rnd(12);
  for (int i = 0; i < 200; ++i) {
    Vec3 v = rnd.vec(), w = rnd.vec();
    Vec3 x = mink_cross(v, w);
    Vec3 anti = mink_cross(w, v);
    CHECK(max_abs(x + anti) < 1e-14);
    Vec3 u = rnd.vec();
    CHECK(pairing(u, x) == doctest::Approx(det_cols(u, v, w)).epsilon(1e-12));
  }
  CHECK(max_abs(mink_cross({0.3, 0.4, 0.5}, {0.3, 0.4, 0.5})) == 0.0);
}

TEST_CASE("neutral vector base case and identities") {
  BoundaryPoint a{0, -1}, b{0, 1};  // angles -pi/2, pi/2
  Vec3 nu = neutral_vector(a, b);
  CHECK(nu[0] == doctest::Approx(1.0));
  CHECK(nu[1] == doctest::Approx(0.0));
  CHECK(nu[2] == doctest::Approx(0.0));

  oracle::Rand rnd(13);
  for (int i = 0; i < 500; ++i) {
    BoundaryPoint p = rnd.boundary(), q = rnd.boundary(), r = rnd.boundary();
    if (chordal(p, q) < 0.05 || chordal(p, r) < 0.05 || chordal(q, r) < 0.05) continue;
    Vec3 n1 = neutral_vector(p, q);
    CHECK(pairing(n1, n1) == doctest::Approx(1.0));
    CHECK(max_abs(n1 + neutral_vector(q, p)) < 1e-12);
    CHECK(pairing(n1, neutral_vector(p, r)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(pairing(n1, p.lift())) < 1e-12);
    CHECK(std::abs(pairing(n1, q.lift())) < 1e-12);
    // orientation convention
    CHECK(det_cols(n1, p.lift(), q.lift()) < 0.0);
  }
}

TEST_CASE("neutral vector equivariance") {
  oracle::Rand rnd(14);
  for (int i = 0; i < 300; ++i) {
    BoundaryPoint p = rnd.boundary(), q = rnd.boundary();
    if (chordal(p, q) < 0.05) continue;
    Mat3 g = rnd.so21_element();
    if (chordal(act(g, p), act(g, q)) < 0.05) continue;  // image admissible too
    Vec3 lhs = neutral_vector(act(g, p), act(g, q));
    Vec3 rhs = g * neutral_vector(p, q);
    // conditioning bound at separation 0.05: |nu|^2 |g| eps ~ 1e-11
    CHECK(max_abs(lhs - rhs) < 2e-10);
  }
}

TEST_CASE("degenerate boundary pair is rejected") {
  BoundaryPoint a{1, 0};
  CHECK_THROWS_AS(neutral_vector(a, a), Error);
  CHECK_THROWS_AS(cross_ratio(a, a, a, a), Error);
  try {
    neutral_vector(a, a);
  } catch (const Error& e) {
    CHECK(e.code() == errc::degenerate_boundary_pair);
  }
}

TEST_CASE("cross ratio identities") {
  oracle::Rand rnd(15);
  BoundaryPoint a{0, -1}, d{0, 1};
  CHECK(cross_ratio(a, a, d, d) == doctest::Approx(1.0));

  int done = 0;
  while (done < 300) {
    BoundaryPoint p = rnd.boundary(), q = rnd.boundary(), r = rnd.boundary(),
                  s = rnd.boundary(), w = rnd.boundary();
    BoundaryPoint pts[5] = {p, q, r, s, w};
    bool ok = true;
    for (int i = 0; i < 5 && ok; ++i)
      for (int j = i + 1; j < 5 && ok; ++j)
        if (chordal(pts[i], pts[j]) < 0.05) ok = false;
    if (!ok) continue;
    ++done;
    double b = cross_ratio(p, q, r, s);
    CHECK(b + cross_ratio(s, q, r, p) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(cross_ratio(p, w, r, s) * cross_ratio(w, q, r, s) ==
          doctest::Approx(b).epsilon(1e-9));
    CHECK(cross_ratio(q, p, s, r) == doctest::Approx(b).epsilon(1e-10));
    CHECK(cross_ratio(s, r, q, p) == doctest::Approx(b).epsilon(1e-10));
    // vector decomposition along the first argument
    Vec3 lhs = cross_ratio(s, q, r, p) * neutral_vector(p, q) +
               b * neutral_vector(p, r);
    CHECK(max_abs(lhs - neutral_vector(p, s)) < 1e-9);
    // diagonal invariance, on admissible images
    Mat3 g = rnd.so21_element();
    BoundaryPoint gp = act(g, p), gq = act(g, q), gr = act(g, r), gs = act(g, s);
    BoundaryPoint imgs[4] = {gp, gq, gr, gs};
    bool img_ok = true;
    for (int i = 0; i < 4 && img_ok; ++i)
      for (int j = i + 1; j < 4 && img_ok; ++j)
        if (chordal(imgs[i], imgs[j]) < 0.05) img_ok = false;
    if (img_ok)
      CHECK(cross_ratio(gp, gq, gr, gs) == doctest::Approx(b).epsilon(1e-9));
  }
}

TEST_CASE("flow matrix") {
  Mat3 f0 = flow_matrix(0.0);
  CHECK(max_abs(f0 - Mat3::identity()) == 0.0);

  // eigenvalues of flow(1): roots of (1-x)(x^2 - 2cosh(1)x + 1) = e, 1, 1/e
  Mat3 f1 = flow_matrix(1.0);
  for (double lam : {std::exp(1.0), 1.0, std::exp(-1.0)}) {
    Mat3 m = f1;
    m.m[0][0] -= lam;
    m.m[1][1] -= lam;
    m.m[2][2] -= lam;
    CHECK(std::abs(det(m)) < 1e-12);
  }

  oracle::Rand rnd(16);
  for (int i = 0; i < 50; ++i) {
    double s = rnd.uniform(-3, 3), t = rnd.uniform(-3, 3);
    CHECK(max_abs(flow_matrix(s) * flow_matrix(t) - flow_matrix(s + t)) < 1e-12);
  }
  CHECK(is_lorentz(f1));
}

TEST_CASE("so(2,1) identification") {
  // d/dt flow(t) at 0
  Mat3 boost;
  boost.m[1][2] = 1.0;
  boost.m[2][1] = 1.0;
  Vec3 v = so21_to_mink(boost);
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[1] == doctest::Approx(0.0));
  CHECK(v[2] == doctest::Approx(0.0));

  CHECK(max_abs(so21_to_mink(Mat3{})) == 0.0);

  oracle::Rand rnd(17);
  for (int i = 0; i < 200; ++i) {
    Vec3 w = rnd.vec(-2, 2);
    Mat3 a = mink_to_so21(w);
    CHECK(so21_defect(a) < 1e-14);
    CHECK(max_abs(so21_to_mink(a) - w) < 1e-14);
    // defining relation A x = mink_cross(x, w)
    Vec3 x = rnd.vec();
    CHECK(max_abs(a * x - mink_cross(x, w)) < 1e-13);
    // equivariance
    Mat3 g = rnd.so21_element();
    Vec3 lhs = so21_to_mink(g * a * lorentz_inverse(g));
    CHECK(max_abs(lhs - g * w) < 1e-10);
  }

  Mat3 bad;
  bad.m[0][1] = 1.0;  // not Q-antisymmetric
  CHECK_THROWS_AS(so21_to_mink(bad), Error);
}

TEST_CASE("so(2,1) exponential matches the series oracle") {
  oracle::Rand rnd(18);
  for (int i = 0; i < 200; ++i) {
    Vec3 w = rnd.vec(-2, 2);
    Mat3 a = mink_to_so21(w);
    Mat3 e1 = so21_exp(a);
    Mat3 e2 = oracle::series_exp(a);
    CHECK(max_abs(e1 - e2) < 1e-12 * (1.0 + frobenius(e2)));
    CHECK(is_lorentz(e1));
  }
  // boost direction reproduces the flow
  Mat3 a = mink_to_so21({1, 0, 0});
  CHECK(max_abs(so21_exp(2.0 * a) - flow_matrix(2.0)) < 1e-13 * std::cosh(2.0));
  // tiny and zero arguments
  CHECK(max_abs(so21_exp(Mat3{}) - Mat3::identity()) == 0.0);
  Mat3 small = mink_to_so21({1e-6, -2e-6, 0.5e-6});
  CHECK(max_abs(so21_exp(small) - oracle::series_exp(small)) < 1e-15);
}

TEST_CASE("lorentz inverse is exact") {
  oracle::Rand rnd(19);
  for (int i = 0; i < 100; ++i) {
    Mat3 g = rnd.so21_element();
    CHECK(max_abs(g * lorentz_inverse(g) - Mat3::identity()) < 1e-13);
  }
}

TEST_CASE("boundary point normalization") {
  BoundaryPoint p = BoundaryPoint::from_null({0, 2, 2});
  CHECK(p.c == doctest::Approx(0.0));
  CHECK(p.s == doctest::Approx(1.0));
  CHECK_THROWS_AS(BoundaryPoint::from_null({1, 0, 0}), Error);   // spacelike
  CHECK_THROWS_AS(BoundaryPoint::from_null({0, 1, -1}), Error);  // past cone
}
