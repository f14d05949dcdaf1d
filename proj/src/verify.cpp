#include "margulis/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "margulis/crossratio.hpp"

namespace margulis {

using nlohmann::ordered_json;

namespace {

// Portable deterministic uniforms: identical streams for identical seeds.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  // xorshift* variant; full 64-bit state walk.
  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

struct MaxDev {
  double value = 0.0;
  void update(double d) { value = std::max(value, std::abs(d)); }
};

ordered_json dev_entry(const MaxDev& d, double tol) {
  ordered_json j;
  j["max_dev"] = d.value;
  j["tol"] = tol;
  j["pass"] = d.value < tol;
  return j;
}

}  // namespace

SuiteReport run_identity_suite(int samples, std::uint64_t seed, const Tolerances& tol) {
  Rng rng(seed);
  auto separated = [&](const std::vector<BoundaryPoint>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        if (chordal(pts[i], pts[j]) < tol.min_separation) return false;
    return true;
  };
  // Admissible sample: the tuple is separated and stays separated under the
  // test isometry, so every neutral vector in play is well conditioned.
  auto sample_case = [&](std::vector<BoundaryPoint>& pts, Mat3& g) {
    for (;;) {
      pts.clear();
      for (int i = 0; i < 5; ++i)
        pts.push_back(BoundaryPoint::from_angle(rng.uniform(0.0, 2.0 * M_PI)));
      if (!separated(pts)) continue;
      g = rotation_matrix(rng.uniform(0.0, 2.0 * M_PI)) *
          flow_matrix(rng.uniform(-2.0, 2.0)) *
          rotation_matrix(rng.uniform(0.0, 2.0 * M_PI));
      std::vector<BoundaryPoint> image;
      for (const BoundaryPoint& q : pts) image.push_back(act(g, q, tol));
      if (separated(image)) return;
    }
  };

  MaxDev eq7, eq8, eq9, eq10, eq11, eq12, equi_nu, equi_b;
  std::vector<BoundaryPoint> p;
  Mat3 g;
  for (int s = 0; s < samples; ++s) {
    sample_case(p, g);
    const BoundaryPoint &a = p[0], &b = p[1], &c = p[2], &d = p[3], &w = p[4];

    eq7.update(max_abs(neutral_vector(a, b, tol) + neutral_vector(b, a, tol)));
    eq8.update(pairing(neutral_vector(a, b, tol), neutral_vector(a, c, tol)) - 1.0);
    {
      Vec3 lhs = cross_ratio(d, b, c, a, tol) * neutral_vector(a, b, tol) +
                 cross_ratio(a, b, c, d, tol) * neutral_vector(a, c, tol);
      eq9.update(max_abs(lhs - neutral_vector(a, d, tol)));
    }
    double babcd = cross_ratio(a, b, c, d, tol);
    eq10.update(babcd - cross_ratio(b, a, d, c, tol));
    eq10.update(babcd - cross_ratio(d, c, b, a, tol));
    eq11.update(babcd + cross_ratio(d, b, c, a, tol) - 1.0);
    eq12.update(cross_ratio(a, w, c, d, tol) * cross_ratio(w, b, c, d, tol) - babcd);

    BoundaryPoint ga = act(g, a, tol), gb = act(g, b, tol), gc = act(g, c, tol),
                  gd = act(g, d, tol);
    equi_nu.update(max_abs(neutral_vector(ga, gb, tol) - g * neutral_vector(a, b, tol)));
    equi_b.update(cross_ratio(ga, gb, gc, gd, tol) - babcd);
  }

  ordered_json j;
  j["suite"] = "identities";
  j["samples"] = samples;
  j["seed"] = seed;
  ordered_json ids;
  ids["antisymmetry"] = dev_entry(eq7, tol.identity_tol);
  ids["shared_endpoint_pairing"] = dev_entry(eq8, tol.identity_tol);
  ids["vector_decomposition"] = dev_entry(eq9, tol.identity_tol);
  ids["argument_symmetries"] = dev_entry(eq10, tol.identity_tol);
  ids["complement_sum"] = dev_entry(eq11, tol.identity_tol);
  ids["multiplicativity"] = dev_entry(eq12, tol.identity_tol);
  ids["equivariance_neutral"] = dev_entry(equi_nu, tol.identity_tol);
  ids["invariance_cross_ratio"] = dev_entry(equi_b, tol.identity_tol);
  j["identities"] = ids;
  bool pass = true;
  for (const auto& [k, v] : ids.items()) pass = pass && v.at("pass").get<bool>();
  j["pass"] = pass;
  return {pass, j.dump(2)};
}

SuiteReport run_opposite_sign_check(const DeformedRep& rho, int max_len, int threads) {
  SpectrumTable table = build_spectrum(rho, max_len, threads);
  const double zero_tol = rho.tol().zero_alpha_tol;
  std::size_t n_pos = 0, n_neg = 0, n_zero = 0;
  std::vector<std::string> pos_witness, neg_witness, zero_witness;
  for (const SpectrumEntry& e : table.entries) {
    if (e.alpha > zero_tol) {
      if (++n_pos <= 5) pos_witness.push_back(word_to_string(e.cls));
    } else if (e.alpha < -zero_tol) {
      if (++n_neg <= 5) neg_witness.push_back(word_to_string(e.cls));
    } else {
      if (++n_zero <= 5) zero_witness.push_back(word_to_string(e.cls));
    }
  }
  bool pass = n_zero == 0 && (n_pos == 0 || n_neg == 0);

  ordered_json j;
  j["suite"] = "signs";
  j["max_len"] = max_len;
  j["classes"] = table.entries.size();
  j["positive"] = n_pos;
  j["negative"] = n_neg;
  j["zero"] = n_zero;
  j["sign"] = pass ? (n_pos > 0 ? "positive" : "negative") : "mixed";
  j["positive_witnesses"] = pos_witness;
  j["negative_witnesses"] = neg_witness;
  j["zero_witnesses"] = zero_witness;
  j["complete_below"] = table.complete_below;
  j["pass"] = pass;
  return {pass, j.dump(2)};
}

std::vector<Word> default_variational_words(int rank) {
  return enumerate_classes(rank, 2);
}

std::vector<std::pair<Word, Word>> default_coprime_pairs(int rank) {
  std::vector<Word> classes = enumerate_classes(rank, 2);
  std::vector<std::pair<Word, Word>> pairs;
  for (std::size_t i = 0; i < classes.size() && pairs.size() < 12; ++i)
    for (std::size_t j = i + 1; j < classes.size() && pairs.size() < 12; ++j)
      if (coprime(classes[i], classes[j])) pairs.emplace_back(classes[i], classes[j]);
  return pairs;
}

SuiteReport run_variational_suite(const DeformedRep& rho,
                                  const std::vector<TangentVector>& paths,
                                  const std::vector<Word>& words,
                                  const std::vector<std::pair<Word, Word>>& pairs,
                                  double step, const Tolerances& tol) {
  ordered_json cases = ordered_json::array();
  bool pass = true;
  int n_cases = 0;

  // asymptotic gap laws, one record per coprime pair
  for (const auto& [gamma, eta] : pairs) {
    for (bool length_law : {true, false}) {
      ordered_json c;
      c["check"] = length_law ? "length_gap" : "alpha_gap";
      c["pair"] = word_to_string(gamma) + "," + word_to_string(eta);
      try {
        GapSequence seq = length_law
                              ? length_gap_sequence(rho.linear(), gamma, eta, tol.gap_n_max)
                              : alpha_gap_sequence(rho, gamma, eta, tol.gap_n_max);
        double final_gap = std::abs(seq.values.back() - seq.target);
        double bound = length_law ? tol.gap_tol_length : tol.gap_tol_alpha;
        c["target"] = seq.target;
        c["sequence"] = seq.values;
        c["n_stable"] = seq.n_stable;
        c["final_gap"] = final_gap;
        c["decay_ratio"] = seq.decay_ratio;
        c["tol"] = bound;
        c["pass"] = final_gap < bound;
      } catch (const Error& e) {
        c["error"] = e.what();
        c["pass"] = false;
      }
      pass = pass && c.at("pass").get<bool>();
      cases.push_back(c);
      ++n_cases;
    }
  }

  for (const TangentVector& path : paths) {
    for (const Word& w : words) {
      ordered_json c;
      c["check"] = "length_derivative";
      c["path"] = path.label;
      c["word"] = word_to_string(w);
      try {
        DerivativeCheck r =
            goldman_margulis_check(rho.linear(), path.linear_variation, w, step);
        double bound = tol.gm_tol * (1.0 + std::abs(r.exact));
        c["fd"] = r.fd;
        c["exact"] = r.exact;
        c["abs_err"] = std::abs(r.fd - r.exact);
        c["tol"] = bound;
        c["pass"] = std::abs(r.fd - r.exact) < bound;
      } catch (const Error& e) {
        c["error"] = e.what();
        c["pass"] = false;
      }
      pass = pass && c.at("pass").get<bool>();
      cases.push_back(c);
      ++n_cases;
    }
    for (const auto& [gamma, eta] : pairs) {
      ordered_json c;
      c["check"] = "log_cross_ratio_derivative";
      c["path"] = path.label;
      c["pair"] = word_to_string(gamma) + "," + word_to_string(eta);
      try {
        DerivativeCheck r = dcr_check(rho.linear(), path.linear_variation, gamma, eta, step);
        double bound = tol.dcr_tol * (1.0 + std::abs(r.exact));
        c["fd"] = r.fd;
        c["exact"] = r.exact;
        c["abs_err"] = std::abs(r.fd - r.exact);
        c["tol"] = bound;
        c["pass"] = std::abs(r.fd - r.exact) < bound;
      } catch (const Error& e) {
        c["error"] = e.what();
        c["pass"] = false;
      }
      pass = pass && c.at("pass").get<bool>();
      cases.push_back(c);
      ++n_cases;
    }
  }

  ordered_json j;
  j["suite"] = "variational";
  j["step"] = step;
  j["cases_run"] = n_cases;
  j["cases"] = cases;
  j["pass"] = pass;
  return {pass, j.dump(2)};
}

SuiteReport run_pressure_suite(const DeformedRep& rho,
                               const std::vector<TangentVector>& basis, int max_len,
                               double step, const Tolerances& tol, int threads) {
  if (basis.empty())
    raise(errc::bad_argument, "pressure suite needs a tangent basis");
  if (!is_scaling_direction(rho, basis[0], 1e-9))
    raise(errc::bad_argument,
          "the first basis direction must be the cocycle-scaling direction");

  ordered_json j;
  j["schema_version"] = 1;
  j["type"] = "pressure";
  j["suite"] = "pressure";
  j["max_len"] = max_len;
  j["step"] = step;
  ordered_json labels = ordered_json::array();
  for (const TangentVector& v : basis) labels.push_back(v.label);
  j["basis"] = labels;

  bool pass = true;
  PressureContext ctx(rho, max_len, tol, threads);
  std::size_t k = basis.size();
  std::vector<std::vector<double>> gram(k, std::vector<double>(k, 0.0));
  double max_rel_change = 0.0;
  ordered_json case_errors = ordered_json::array();

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t jx = i; jx < k; ++jx) {
      try {
        double value;
        if (i == jx) {
          PressureResult r = ctx.second_derivative(basis[i], step);
          value = r.value;
          max_rel_change = std::max(max_rel_change, r.rel_change);
        } else {
          PressureResult rp = ctx.second_derivative(basis[i] + basis[jx], step);
          PressureResult rm = ctx.second_derivative(basis[i] - basis[jx], step);
          value = 0.25 * (rp.value - rm.value);
          max_rel_change = std::max({max_rel_change, rp.rel_change, rm.rel_change});
        }
        gram[i][jx] = value;
        gram[jx][i] = value;
      } catch (const Error& e) {
        ordered_json c;
        c["entry"] = {i, jx};
        c["error"] = e.what();
        case_errors.push_back(c);
        pass = false;
      }
    }
  }

  j["gram"] = gram;
  j["richardson_max_rel_change"] = max_rel_change;
  if (!case_errors.empty()) j["errors"] = case_errors;

  std::vector<double> ev = symmetric_eigenvalues(gram);
  j["eigenvalues"] = ev;

  double scale_row = 0.0;
  for (std::size_t jx = 0; jx < k; ++jx) scale_row = std::max(scale_row, std::abs(gram[0][jx]));
  j["scale_row_max_abs"] = scale_row;

  // Signature checks: one near-zero eigenvalue, strictly positive rest.
  double min_abs = std::abs(ev[0]);
  std::size_t zero_idx = 0;
  for (std::size_t i = 1; i < k; ++i)
    if (std::abs(ev[i]) < min_abs) {
      min_abs = std::abs(ev[i]);
      zero_idx = i;
    }
  bool zero_ok = min_abs < tol.pressure_zero_tol;
  bool rest_ok = true;
  for (std::size_t i = 0; i < k; ++i)
    if (i != zero_idx && !(ev[i] > tol.pressure_lambda_min)) rest_ok = false;
  bool scale_ok = scale_row < tol.pressure_zero_tol;
  bool min_ok = ev[0] > -tol.pressure_zero_tol;

  // J == 1 along the scaling path.
  ordered_json jscaling = ordered_json::array();
  bool jpath_ok = true;
  for (double t : {-0.2, -0.1, 0.1, 0.2}) {
    ordered_json c;
    c["t"] = t;
    try {
      DeformedRep rt = path_point(rho, basis[0], t);
      JResult jr = j_functional(rho, rt, max_len, tol, threads);
      c["J"] = jr.j;
      c["dev"] = std::abs(jr.j - 1.0);
      c["pass"] = std::abs(jr.j - 1.0) < tol.j_scaling_tol;
    } catch (const Error& e) {
      c["error"] = e.what();
      c["pass"] = false;
    }
    jpath_ok = jpath_ok && c.at("pass").get<bool>();
    jscaling.push_back(c);
  }

  ordered_json checks;
  checks["scale_row_near_zero"] = scale_ok;
  checks["one_near_zero_eigenvalue"] = zero_ok;
  checks["rest_strictly_positive"] = rest_ok;
  checks["min_eigenvalue_above_negative_floor"] = min_ok;
  checks["richardson_within_bound"] = max_rel_change <= tol.richardson_max;
  checks["j_scaling_path"] = jpath_ok;
  j["scaling_path"] = jscaling;
  j["checks"] = checks;
  pass = pass && scale_ok && zero_ok && rest_ok && min_ok && jpath_ok &&
         max_rel_change <= tol.richardson_max;
  j["pass"] = pass;
  return {pass, j.dump(2)};
}

Scorecard run_verify(const LoadedConfig& cfg, const VerifyOptions& opts) {
  const Tolerances& tol = cfg.tol;
  bool want_ident = opts.suite == "identities" || opts.suite == "all";
  bool want_signs = opts.suite == "signs" || opts.suite == "all";
  bool want_var = opts.suite == "variational" || opts.suite == "all";
  bool want_press = opts.suite == "pressure" || opts.suite == "all";
  if (!want_ident && !want_signs && !want_var && !want_press)
    raise(errc::bad_argument, "unknown suite '" + opts.suite + "'");

  double var_step = opts.variational_step > 0.0 ? opts.variational_step : tol.fd_step;
  double press_step = opts.pressure_step > 0.0 ? opts.pressure_step : tol.pressure_step;

  ordered_json j;
  j["schema_version"] = 1;
  j["type"] = "scorecard";
  j["suite"] = opts.suite;
  j["seed"] = opts.seed;
  j["deterministic"] = opts.deterministic;
  ordered_json params;
  params["samples"] = opts.samples;
  params["max_len"] = opts.max_len;
  params["variational_step"] = var_step;
  params["pressure_step"] = press_step;
  j["parameters"] = params;
  j["certified_schottky"] = cfg.certificate.certified;
  j["config_echo"] = ordered_json::parse(dump_config(cfg));

  Scorecard card;
  ordered_json suites;
  if (want_ident) {
    SuiteReport r = run_identity_suite(opts.samples, opts.seed, tol);
    card.identities_pass = r.pass;
    suites["identities"] = ordered_json::parse(r.json);
  }
  if (want_signs) {
    SuiteReport r = run_opposite_sign_check(cfg.rep, opts.max_len, opts.threads);
    card.signs_pass = r.pass;
    suites["signs"] = ordered_json::parse(r.json);
  }
  if (want_var) {
    SuiteReport r = run_variational_suite(cfg.rep, cfg.paths,
                                          default_variational_words(cfg.rep.rank()),
                                          default_coprime_pairs(cfg.rep.rank()),
                                          var_step, tol);
    card.variational_pass = r.pass;
    suites["variational"] = ordered_json::parse(r.json);
  }
  if (want_press) {
    if (cfg.paths.empty())
      raise(errc::config_error, "the pressure suite needs a 'paths' block in the config");
    SuiteReport r = run_pressure_suite(cfg.rep, cfg.paths, opts.max_len, press_step,
                                       tol, opts.threads);
    card.pressure_pass = r.pass;
    suites["pressure"] = ordered_json::parse(r.json);
  }
  j["suites"] = suites;
  card.all_pass = card.identities_pass && card.signs_pass && card.variational_pass &&
                  card.pressure_pass;
  j["all_pass"] = card.all_pass;
  card.json = j.dump(2) + "\n";
  return card;
}

}  // namespace margulis
