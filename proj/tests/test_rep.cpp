#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "margulis/rep.hpp"
#include "oracles.hpp"

using namespace margulis;

namespace {

Word W(const std::string& s) { return word_from_string(s, 2); }

// Direct route for cross-checks on short words: pairing of the folded
// translation part with the neutral eigenvector.
double alpha_direct(const DeformedRep& rho, const Word& w) {
  AffineMap g = rho.evaluate(w);
  return pairing(g.trans, fixed_points(g.linear).nu);
}

Mat3 mat_power(const Mat3& g, int n) {
  Mat3 r = Mat3::identity();
  for (int i = 0; i < n; ++i) r = r * g;
  return r;
}

}  // namespace

TEST_CASE("cocycle evaluation") {
  DeformedRep rho = fixtures::standard_pair();
  AffineMap e = rho.evaluate({});
  CHECK(max_abs(e.linear - Mat3::identity()) == 0.0);
  CHECK(max_abs(e.trans) == 0.0);

  // u(g^2) = (L(g) + I) u(g)
  for (int i = 0; i < 2; ++i) {
    Word g2{static_cast<Letter>(2 * i), static_cast<Letter>(2 * i)};
    Vec3 expected = rho.linear().generator(i) * rho.translation(i) + rho.translation(i);
    CHECK(max_abs(rho.evaluate(g2).trans - expected) < 1e-14);
  }

  // u(g g^-1) = 0
  for (const char* s : {"aA", "bB", "Aa"}) {
    AffineMap r = rho.evaluate(W(s));
    CHECK(max_abs(r.linear - Mat3::identity()) < 1e-12);
    CHECK(max_abs(r.trans) < 1e-12);
  }

  // evaluate is a homomorphism under concatenation; when the junction
  // cancels, intermediate products overshoot the final scale, so the error
  // bound follows the product of letter norms rather than the result norm
  oracle::Rand rnd(31);
  double letter_norm = 0.0;
  for (int l = 0; l < 4; ++l)
    letter_norm = std::max(letter_norm, frobenius(rho.linear().letter(static_cast<Letter>(l))));
  for (int i = 0; i < 100; ++i) {
    Word w = rnd.reduced_word(2, 1 + static_cast<int>(rnd.rng() % 5));
    Word v = rnd.reduced_word(2, 1 + static_cast<int>(rnd.rng() % 5));
    Word wv = w;
    wv.insert(wv.end(), v.begin(), v.end());
    AffineMap lhs = rho.evaluate(wv);
    AffineMap rhs = compose(rho.evaluate(w), rho.evaluate(v));
    bool cancelling = v.front() == inverse_letter(w.back());
    double scale = cancelling ? std::pow(letter_norm, static_cast<double>(wv.size()))
                              : 1.0 + frobenius(rhs.linear) + euclid_norm(rhs.trans);
    CHECK(max_abs(lhs.linear - rhs.linear) < 1e-12 * scale);
    CHECK(max_abs(lhs.trans - rhs.trans) < 1e-12 * scale);
  }
}

TEST_CASE("fixed points of the model boost") {
  FixedPoints fp = fixed_points(flow_matrix(2.0));
  CHECK(fp.ell == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fp.nu[0] == doctest::Approx(1.0));
  CHECK(std::abs(fp.nu[1]) < 1e-14);
  CHECK(std::abs(fp.nu[2]) < 1e-14);
  CHECK(fp.plus.c == doctest::Approx(0.0));
  CHECK(fp.plus.s == doctest::Approx(1.0));
  CHECK(fp.minus.c == doctest::Approx(0.0));
  CHECK(fp.minus.s == doctest::Approx(-1.0));
}

TEST_CASE("fixed point structure on random words") {
  DeformedRep rho = fixtures::standard_pair();
  const Representation& lin = rho.linear();
  oracle::Rand rnd(32);
  for (int i = 0; i < 60; ++i) {
    Word w = rnd.cyc_reduced_word(2, 1 + static_cast<int>(rnd.rng() % 5));
    Mat3 g = lin.evaluate(w);
    FixedPoints fp = fixed_points(g);

    // l(g^n) = n l(g)
    for (int n : {2, 3}) {
      double ln = translation_length(mat_power(g, n));
      CHECK(std::abs(ln - n * fp.ell) < 1e-11 * (1.0 + n * fp.ell));
    }

    // L(w) nu = nu, backward-relative residual
    Vec3 resid = g * fp.nu - fp.nu;
    CHECK(max_abs(resid) < 1e-11 * (1.0 + frobenius(g)));

    // inversion swaps fixed points and flips nu
    FixedPoints fpi = fixed_points(lorentz_inverse(g));
    CHECK(chordal(fpi.plus, fp.minus) < 1e-10);
    CHECK(chordal(fpi.minus, fp.plus) < 1e-10);
    CHECK(max_abs(fpi.nu + fp.nu) < 1e-10);
    CHECK(fpi.ell == doctest::Approx(fp.ell).epsilon(1e-13));

    // eigenvector checks for the null directions
    Vec3 np = fp.plus.lift();
    double lam = std::exp(fp.ell);
    CHECK(max_abs(g * np - lam * np) < 1e-11 * (1.0 + frobenius(g)));
  }
}

TEST_CASE("non-hyperbolic inputs are rejected") {
  CHECK_THROWS_AS(fixed_points(Mat3::identity()), Error);
  CHECK_THROWS_AS(fixed_points(rotation_matrix(0.5)), Error);
  CHECK_THROWS_AS(fixed_points(flow_matrix(1e-10)), Error);
  try {
    fixed_points(rotation_matrix(1.0));
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_hyperbolic);
  }
}

TEST_CASE("margulis invariant on the model axis") {
  double s = 0.7;
  std::vector<Mat3> gens{flow_matrix(2.0), fixtures::standard_linear().generator(1)};
  std::vector<Vec3> trans{{s, 0, 0}, {0, 0, 0}};
  DeformedRep rho(Representation(std::move(gens), {}), std::move(trans));
  CHECK(margulis_invariant(rho, W("a")) == doctest::Approx(s).epsilon(1e-14));
  CHECK(margulis_invariant(rho, {}) == 0.0);
}

TEST_CASE("margulis invariant algebra") {
  DeformedRep rho = fixtures::standard_pair();
  oracle::Rand rnd(33);
  for (int i = 0; i < 40; ++i) {
    Word w = rnd.cyc_reduced_word(2, 1 + static_cast<int>(rnd.rng() % 4));
    double a1 = margulis_invariant(rho, w);

    // cross-check against the direct pairing route on short words
    CHECK(a1 == doctest::Approx(alpha_direct(rho, w)).epsilon(1e-9));

    // alpha(w^n) = n alpha(w)
    for (int n : {2, 3}) {
      Word wn = w;
      for (int k = 1; k < n; ++k) wn.insert(wn.end(), w.begin(), w.end());
      CHECK(margulis_invariant(rho, wn) == doctest::Approx(n * a1).epsilon(1e-11));
    }

    // alpha(w^-1) = alpha(w)
    CHECK(margulis_invariant(rho, inverse(w)) == doctest::Approx(a1).epsilon(1e-11));

    // conjugacy invariance, including unreduced letter sequences
    Word c = rnd.reduced_word(2, 1 + static_cast<int>(rnd.rng() % 3));
    Word conj = c;
    conj.insert(conj.end(), w.begin(), w.end());
    Word cinv = inverse(c);
    conj.insert(conj.end(), cinv.begin(), cinv.end());
    CHECK(margulis_invariant(rho, conj) == doctest::Approx(a1).epsilon(1e-10));
  }
}

TEST_CASE("axis point") {
  double s = 1.3;
  std::vector<Mat3> gens{flow_matrix(2.0), fixtures::standard_linear().generator(1)};
  std::vector<Vec3> trans{{s, 0, 0}, {0, -1, 0}};
  DeformedRep rho(Representation(std::move(gens), {}), std::move(trans));

  // the axis of the model boost is the nu-line through the origin
  Vec3 x = axis_point(rho, W("a"));
  CHECK(euclid_norm(x) < 1e-12);

  DeformedRep std_pair = fixtures::standard_pair();
  oracle::Rand rnd(34);
  for (int i = 0; i < 30; ++i) {
    Word w = rnd.cyc_reduced_word(2, 1 + static_cast<int>(rnd.rng() % 3));
    Vec3 xw = axis_point(std_pair, w);
    AffineMap g = std_pair.evaluate(w);
    FixedPoints fp = fixed_points(g.linear);
    double alpha = margulis_invariant(std_pair, w);
    Vec3 moved = g.linear * xw + g.trans - xw;
    CHECK(max_abs(moved - alpha * fp.nu) < 1e-9 * (1.0 + euclid_norm(xw)));
    // gauge: Euclidean-orthogonal to nu
    CHECK(std::abs(euclid_dot(xw, fp.nu)) < 1e-9);

  }

  // conjugation covariance modulo the nu-line; milder boosts keep the
  // conjugated fixed points separated enough for a well-conditioned solve
  std::vector<AxisSpec> mild_axes = {{-M_PI / 2.0, M_PI / 2.0, 1.5}, {M_PI, 0.0, 1.5}};
  Representation mild_lin = schottky_builder(mild_axes);
  std::vector<Vec3> mild_trans{fixed_points(mild_lin.generator(0)).nu,
                               fixed_points(mild_lin.generator(1)).nu};
  DeformedRep mild(std::move(mild_lin), std::move(mild_trans));
  for (int i = 0; i < 30; ++i) {
    Word w = rnd.cyc_reduced_word(2, 1 + static_cast<int>(rnd.rng() % 3));
    Word c = rnd.reduced_word(2, 1);
    Word conj = c;
    conj.insert(conj.end(), w.begin(), w.end());
    Word cinv = inverse(c);
    conj.insert(conj.end(), cinv.begin(), cinv.end());
    Vec3 xw = axis_point(mild, w);
    Vec3 xc = axis_point(mild, conj);
    AffineMap gc = mild.evaluate(c);
    Vec3 expect = gc.linear * xw + gc.trans;
    Vec3 nu_c = fixed_points(mild.evaluate(conj).linear).nu;
    // difference must be parallel to nu of the conjugate
    Vec3 diff = xc - expect;
    Vec3 crossv = mink_cross(diff, nu_c);
    CHECK(max_abs(crossv) < 1e-7 * (1.0 + euclid_norm(diff)));
  }
}

TEST_CASE("ill-conditioned axis solves are reported") {
  // conjugation by a length-4 boost crunches the fixed points together;
  // the solve detects it instead of returning garbage
  DeformedRep rho = fixtures::standard_pair();
  CHECK_THROWS_AS(axis_point(rho, word_from_string("BBaab", 2)), Error);
  try {
    axis_point(rho, word_from_string("BBaab", 2));
  } catch (const Error& e) {
    CHECK(e.code() == errc::singular_system);
  }
}

TEST_CASE("schottky builder") {
  // model axis reproduces the flow exactly
  std::vector<AxisSpec> one = {{-M_PI / 2.0, M_PI / 2.0, 2.0}};
  Representation r1 = schottky_builder(one);
  CHECK(max_abs(r1.generator(0) - flow_matrix(2.0)) < 1e-13);

  // requested lengths are realized
  oracle::Rand rnd(35);
  for (int i = 0; i < 20; ++i) {
    double t1 = rnd.uniform(0, 2 * M_PI);
    double dt = rnd.uniform(0.5, M_PI);
    double len = rnd.uniform(0.5, 5.0);
    std::vector<AxisSpec> ax = {{t1, t1 + dt, len}};
    Representation r = schottky_builder(ax);
    CHECK(translation_length(r.generator(0)) == doctest::Approx(len).epsilon(1e-10));
    CHECK(is_lorentz(r.generator(0)));
    FixedPoints fp = fixed_points(r.generator(0));
    CHECK(chordal(fp.minus, BoundaryPoint::from_angle(t1)) < 1e-9);
    CHECK(chordal(fp.plus, BoundaryPoint::from_angle(t1 + dt)) < 1e-9);
  }

  // the standard pair certifies
  Representation std_lin = fixtures::standard_linear();
  PingPongCertificate cert = certify_ping_pong(std_lin);
  CHECK(cert.certified);
  CHECK(cert.radius > 0.0);
  CHECK(cert.margin > 0.0);

  // degenerate axes are rejected
  std::vector<AxisSpec> bad = {{0.0, 0.0, 1.0}};
  CHECK_THROWS_AS(schottky_builder(bad), Error);
  std::vector<AxisSpec> bad2 = {{0.0, 1.0, -1.0}};
  CHECK_THROWS_AS(schottky_builder(bad2), Error);
  std::vector<AxisSpec> bad3 = {{0.0, 1.0, 1.0}, {1.0, 2.0, 1.0}};
  CHECK_THROWS_AS(schottky_builder(bad3), Error);
}

TEST_CASE("weak generators fail certification") {
  // crossing perpendicular axes with length 1.2: the commutator is elliptic,
  // so no ping-pong configuration can exist
  std::vector<AxisSpec> axes = {{-M_PI / 2.0, M_PI / 2.0, 1.2}, {M_PI, 0.0, 1.2}};
  Representation weak = schottky_builder(axes);
  CHECK(!certify_ping_pong(weak).certified);
}

TEST_CASE("path point") {
  DeformedRep rho = fixtures::standard_pair();
  TangentVector v;
  v.label = "test";
  v.linear_variation = {mink_to_so21({0.2, -0.1, 0.3}), mink_to_so21({-0.3, 0.2, 0.1})};
  v.translation_variation = {{0.1, 0.2, 0.3}, {-0.2, 0.1, 0.0}};

  DeformedRep r0 = path_point(rho, v, 0.0);
  for (int i = 0; i < 2; ++i) {
    CHECK(max_abs(r0.linear().generator(i) - rho.linear().generator(i)) == 0.0);
    CHECK(max_abs(r0.translation(i) - rho.translation(i)) == 0.0);
  }

  // frozen linear part: alpha is affine in t
  TangentVector vt = v;
  vt.linear_variation = {Mat3{}, Mat3{}};
  Word w = word_from_string("abAB", 2);
  double a0 = margulis_invariant(rho, w);
  double a1 = margulis_invariant(path_point(rho, vt, 0.5), w);
  double a2 = margulis_invariant(path_point(rho, vt, 1.0), w);
  CHECK(a2 - a1 == doctest::Approx(a1 - a0).epsilon(1e-9));

  // scaling path multiplies alpha exactly
  TangentVector vs;
  vs.linear_variation = {Mat3{}, Mat3{}};
  vs.translation_variation = {rho.translation(0), rho.translation(1)};
  for (double t : {0.25, 1.0, 2.0}) {
    DeformedRep rt = path_point(rho, vs, t);
    CHECK(margulis_invariant(rt, w) ==
          doctest::Approx((1.0 + t) * a0).epsilon(1e-13));
  }

  // leaving the hyperbolic regime is reported: a half-turn makes the
  // trace of rotation * boost drop below 3
  TangentVector big;
  big.linear_variation = {mink_to_so21({0, 0, 1}), Mat3{}};  // elliptic direction
  big.translation_variation = {{0, 0, 0}, {0, 0, 0}};
  CHECK_THROWS_AS(path_point(rho, big, M_PI), Error);
}
