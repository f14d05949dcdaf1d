#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "fixtures.hpp"
#include "margulis/verify.hpp"

using namespace margulis;
using nlohmann::ordered_json;

namespace {
const std::string kConfigDir = MARGULIS_CONFIG_DIR;
}

TEST_CASE("identity suite passes and is deterministic") {
  Tolerances tol;
  SuiteReport r1 = run_identity_suite(2000, 7, tol);
  SuiteReport r2 = run_identity_suite(2000, 7, tol);
  CHECK(r1.pass);
  CHECK(r1.json == r2.json);

  SuiteReport r3 = run_identity_suite(2000, 8, tol);
  CHECK(r3.json != r1.json);  // seed matters

  ordered_json j = ordered_json::parse(r1.json);
  for (const auto& [name, entry] : j.at("identities").items()) {
    INFO(name);
    CHECK(entry.at("max_dev").get<double>() < 1e-9);
  }
}

TEST_CASE("opposite sign check") {
  DeformedRep rho = fixtures::standard_pair();
  SuiteReport pos = run_opposite_sign_check(rho, 6, 2);
  CHECK(pos.pass);
  ordered_json jp = ordered_json::parse(pos.json);
  CHECK(jp.at("sign") == "positive");
  CHECK(jp.at("negative").get<int>() == 0);

  SuiteReport neg = run_opposite_sign_check(fixtures::scaled_pair(rho, -1.0), 6, 2);
  CHECK(neg.pass);
  CHECK(ordered_json::parse(neg.json).at("sign") == "negative");

  SuiteReport mixed = run_opposite_sign_check(fixtures::mixed_sign_pair(), 6, 2);
  CHECK(!mixed.pass);
  ordered_json jm = ordered_json::parse(mixed.json);
  CHECK(jm.at("positive").get<int>() > 0);
  CHECK(jm.at("negative").get<int>() > 0);
  CHECK(!jm.at("positive_witnesses").empty());
  CHECK(!jm.at("negative_witnesses").empty());
}

TEST_CASE("variational suite") {
  DeformedRep rho = fixtures::standard_pair();
  Tolerances tol;

  // empty campaign
  SuiteReport empty = run_variational_suite(rho, {}, {}, {}, tol.fd_step, tol);
  CHECK(empty.pass);
  CHECK(ordered_json::parse(empty.json).at("cases_run").get<int>() == 0);

  // default campaign with a nontrivial linear path
  TangentVector boost;
  boost.label = "boost_a";
  boost.linear_variation = {mink_to_so21({1, 0, 0}), Mat3{}};
  boost.translation_variation = {{0, 0, 0}, {0, 0, 0}};
  TangentVector generic;
  generic.label = "generic";
  generic.linear_variation = {mink_to_so21({0.3, -0.2, 0.25}),
                              mink_to_so21({-0.15, 0.4, 0.1})};
  generic.translation_variation = {{0, 0, 0}, {0, 0, 0}};

  SuiteReport r = run_variational_suite(rho, {boost, generic},
                                        default_variational_words(2),
                                        default_coprime_pairs(2), tol.fd_step, tol);
  CHECK(r.pass);
  ordered_json j = ordered_json::parse(r.json);
  CHECK(j.at("cases_run").get<int>() >= 40);
  for (const auto& c : j.at("cases")) {
    INFO(c.dump());
    CHECK(c.at("pass").get<bool>());
  }
}

TEST_CASE("pressure suite") {
  DeformedRep rho = fixtures::standard_pair();
  Tolerances tol;

  TangentVector vs;
  vs.label = "scale";
  vs.linear_variation = {Mat3{}, Mat3{}};
  vs.translation_variation = {rho.translation(0), rho.translation(1)};

  // 1x1 gram on the scaling direction alone
  SuiteReport solo = run_pressure_suite(rho, {vs}, 6, 1e-3, tol, 2);
  ordered_json js = ordered_json::parse(solo.json);
  CHECK(std::abs(js.at("gram")[0][0].get<double>()) < 1e-6);

  // the first basis vector must be the scaling direction
  TangentVector vt;
  vt.label = "trans";
  vt.linear_variation = {Mat3{}, Mat3{}};
  vt.translation_variation = {{0.3, 0.5, -0.2}, {0.4, -0.1, 0.25}};
  CHECK_THROWS_AS(run_pressure_suite(rho, {vt, vs}, 6, 1e-3, tol, 2), Error);

  TangentVector vb;
  vb.label = "boost_a";
  vb.linear_variation = {mink_to_so21({1, 0, 0}), Mat3{}};
  vb.translation_variation = {{0, 0, 0}, {0, 0, 0}};

  SuiteReport full = run_pressure_suite(rho, {vs, vt, vb}, 8, 1e-3, tol, 2);
  ordered_json jf = ordered_json::parse(full.json);
  INFO(jf.dump(2));
  CHECK(full.pass);
  auto gram = jf.at("gram");
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      CHECK(gram[i][k].get<double>() == gram[k][i].get<double>());  // exact mirror
  auto ev = jf.at("eigenvalues");
  CHECK(std::abs(ev[0].get<double>()) < 1e-6);
  CHECK(ev[1].get<double>() > 0.0);
  CHECK(ev[2].get<double>() > 0.0);
}

TEST_CASE("scorecard composition and determinism") {
  LoadedConfig cfg = load_config_file(kConfigDir + "/standard_pair.json");
  VerifyOptions opts;
  opts.suite = "all";
  opts.samples = 1000;
  opts.max_len = 6;
  opts.threads = 2;
  Scorecard c1 = run_verify(cfg, opts);
  Scorecard c2 = run_verify(cfg, opts);
  CHECK(c1.all_pass);
  CHECK(c1.json == c2.json);  // bitwise identical

  ordered_json j = ordered_json::parse(c1.json);
  CHECK(j.at("type") == "scorecard");
  CHECK(j.at("all_pass").get<bool>());
  CHECK(j.at("suites").contains("identities"));
  CHECK(j.at("suites").contains("signs"));
  CHECK(j.at("suites").contains("variational"));
  CHECK(j.at("suites").contains("pressure"));
  CHECK(j.at("config_echo").at("rank").get<int>() == 2);

  // report schema round-trips
  CHECK(ordered_json::parse(j.dump()) == j);

  // single-suite runs
  VerifyOptions ident;
  ident.suite = "identities";
  ident.samples = 500;
  Scorecard ci = run_verify(cfg, ident);
  CHECK(ci.all_pass);
  CHECK(!ordered_json::parse(ci.json).at("suites").contains("signs"));

  VerifyOptions bad;
  bad.suite = "nonsense";
  CHECK_THROWS_AS(run_verify(cfg, bad), Error);
}

TEST_CASE("rank-3 representations run end to end") {
  // three disjoint axes, translations along them
  std::vector<AxisSpec> axes = {{0.0, M_PI / 3.0, 4.0},
                                {2.0 * M_PI / 3.0, M_PI, 4.0},
                                {4.0 * M_PI / 3.0, 5.0 * M_PI / 3.0, 4.0}};
  Representation lin = schottky_builder(axes);
  CHECK(certify_ping_pong(lin).certified);
  std::vector<Vec3> trans;
  for (int i = 0; i < 3; ++i) trans.push_back(fixed_points(lin.generator(i)).nu);
  DeformedRep rho(std::move(lin), std::move(trans));

  SpectrumTable table = build_spectrum(rho, 5, 2);
  CHECK(table.proper());
  CHECK(table.rank == 3);
  EntropyEstimate est = entropy(table);
  CHECK(est.h > 0.0);

  SuiteReport signs = run_opposite_sign_check(rho, 5, 2);
  CHECK(signs.pass);

  Tolerances tol;
  TangentVector boost;
  boost.label = "boost";
  boost.linear_variation = {mink_to_so21(fixed_points(rho.linear().generator(0)).nu),
                            Mat3{}, Mat3{}};
  boost.translation_variation = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  SuiteReport var = run_variational_suite(rho, {boost}, default_variational_words(3),
                                          default_coprime_pairs(3), tol.fd_step, tol);
  CHECK(var.pass);
}

TEST_CASE("mixed config fails the sign suite through the campaign") {
  LoadedConfig cfg = load_config_file(kConfigDir + "/mixed_sign.json");
  VerifyOptions opts;
  opts.suite = "signs";
  opts.max_len = 5;
  Scorecard card = run_verify(cfg, opts);
  CHECK(!card.all_pass);
  CHECK(!card.signs_pass);
  CHECK(card.identities_pass);  // untouched suites stay green
}
