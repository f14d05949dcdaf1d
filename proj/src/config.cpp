#include "margulis/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace margulis {

using nlohmann::ordered_json;

namespace {

Mat3 mat_from_row_major(const std::vector<double>& v) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.m[i][j] = v[3 * i + j];
  return m;
}

std::vector<double> mat_to_row_major(const Mat3& m) {
  std::vector<double> v(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v[3 * i + j] = m.m[i][j];
  return v;
}

std::vector<double> require_array(const ordered_json& j, size_t len,
                                  const std::string& where) {
  if (!j.is_array() || j.size() != len) {
    std::ostringstream os;
    os << where << " must be an array of " << len << " numbers";
    raise(errc::config_error, os.str());
  }
  std::vector<double> v;
  v.reserve(len);
  for (const auto& x : j) {
    if (!x.is_number()) raise(errc::config_error, where + " must contain numbers only");
    v.push_back(x.get<double>());
  }
  return v;
}

void apply_tolerances(const ordered_json& j, Tolerances& tol) {
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("eps_orth", tol.eps_orth);
  get("eps_null", tol.eps_null);
  get("eps_hyp", tol.eps_hyp);
  get("identity_tol", tol.identity_tol);
  get("min_separation", tol.min_separation);
  get("axis_residual", tol.axis_residual);
  get("kappa_max", tol.kappa_max);
  get("entropy_min_entries", tol.entropy_min_entries);
  get("entropy_grid", tol.entropy_grid);
  get("entropy_window_frac", tol.entropy_window_frac);
  get("zero_alpha_tol", tol.zero_alpha_tol);
  get("eps_trunc", tol.eps_trunc);
  get("pressure_step", tol.pressure_step);
  get("richardson_max", tol.richardson_max);
  get("pressure_zero_tol", tol.pressure_zero_tol);
  get("pressure_lambda_min", tol.pressure_lambda_min);
  get("j_scaling_tol", tol.j_scaling_tol);
  get("fd_step", tol.fd_step);
  get("gm_tol", tol.gm_tol);
  get("dcr_tol", tol.dcr_tol);
  get("gap_tol_length", tol.gap_tol_length);
  get("gap_tol_alpha", tol.gap_tol_alpha);
  get("gauge_tol", tol.gauge_tol);
  get("gap_n_max", tol.gap_n_max);
  get("scale_tol_exact", tol.scale_tol_exact);
  get("scale_tol_entropy", tol.scale_tol_entropy);
  get("cert_samples", tol.cert_samples);
  get("cert_radii", tol.cert_radii);
}

ordered_json tolerances_to_json(const Tolerances& t) {
  ordered_json j;
  j["eps_orth"] = t.eps_orth;
  j["eps_null"] = t.eps_null;
  j["eps_hyp"] = t.eps_hyp;
  j["identity_tol"] = t.identity_tol;
  j["min_separation"] = t.min_separation;
  j["axis_residual"] = t.axis_residual;
  j["kappa_max"] = t.kappa_max;
  j["entropy_min_entries"] = t.entropy_min_entries;
  j["entropy_grid"] = t.entropy_grid;
  j["entropy_window_frac"] = t.entropy_window_frac;
  j["zero_alpha_tol"] = t.zero_alpha_tol;
  j["eps_trunc"] = t.eps_trunc;
  j["pressure_step"] = t.pressure_step;
  j["richardson_max"] = t.richardson_max;
  j["pressure_zero_tol"] = t.pressure_zero_tol;
  j["pressure_lambda_min"] = t.pressure_lambda_min;
  j["j_scaling_tol"] = t.j_scaling_tol;
  j["fd_step"] = t.fd_step;
  j["gm_tol"] = t.gm_tol;
  j["dcr_tol"] = t.dcr_tol;
  j["gap_tol_length"] = t.gap_tol_length;
  j["gap_tol_alpha"] = t.gap_tol_alpha;
  j["gauge_tol"] = t.gauge_tol;
  j["gap_n_max"] = t.gap_n_max;
  j["scale_tol_exact"] = t.scale_tol_exact;
  j["scale_tol_entropy"] = t.scale_tol_entropy;
  j["cert_samples"] = t.cert_samples;
  j["cert_radii"] = t.cert_radii;
  return j;
}

}  // namespace

const TangentVector& LoadedConfig::path(int i) const {
  if (i < 0 || i >= static_cast<int>(paths.size()))
    raise(errc::bad_argument, "path index out of range");
  return paths[i];
}

LoadedConfig load_config_json(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    raise(errc::config_error, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) raise(errc::config_error, "top level must be an object");

  Tolerances tol;
  if (j.contains("tolerances")) {
    if (!j.at("tolerances").is_object())
      raise(errc::config_error, "the 'tolerances' block must be an object");
    try {
      apply_tolerances(j.at("tolerances"), tol);
    } catch (const std::exception& e) {
      raise(errc::config_error, std::string("bad 'tolerances' block: ") + e.what());
    }
  }

  if (!j.contains("rank") || !j.at("rank").is_number_integer())
    raise(errc::config_error, "missing integer field 'rank'");
  int rank = j.at("rank").get<int>();
  if (rank < 1 || rank > 26) raise(errc::config_error, "rank must be in 1..26");

  if (!j.contains("generators") || !j.at("generators").is_array() ||
      static_cast<int>(j.at("generators").size()) != rank)
    raise(errc::config_error, "'generators' must be an array of length rank");
  if (!j.contains("translations") || !j.at("translations").is_array() ||
      static_cast<int>(j.at("translations").size()) != rank)
    raise(errc::config_error, "'translations' must be an array of length rank");

  std::vector<Mat3> gens;
  for (int i = 0; i < rank; ++i) {
    const auto& g = j.at("generators").at(i);
    std::ostringstream where;
    where << "generator " << i + 1;
    if (!g.is_object()) raise(errc::config_error, where.str() + " must be an object");
    if (g.contains("matrix")) {
      Mat3 m = mat_from_row_major(require_array(g.at("matrix"), 9, where.str() + ".matrix"));
      require_lorentz(m, tol, where.str());
      gens.push_back(m);
    } else if (g.contains("axis")) {
      std::vector<double> ax = require_array(g.at("axis"), 2, where.str() + ".axis");
      if (!g.contains("length") || !g.at("length").is_number())
        raise(errc::config_error, where.str() + " with 'axis' needs a numeric 'length'");
      AxisSpec spec{ax[0], ax[1], g.at("length").get<double>()};
      gens.push_back(boost_about_axis(BoundaryPoint::from_angle(spec.theta_minus),
                                      BoundaryPoint::from_angle(spec.theta_plus),
                                      spec.length, tol));
    } else {
      raise(errc::config_error, where.str() + " needs either 'matrix' or 'axis'+'length'");
    }
  }

  std::vector<Vec3> trans;
  for (int i = 0; i < rank; ++i) {
    std::ostringstream where;
    where << "translations[" << i << "]";
    std::vector<double> v = require_array(j.at("translations").at(i), 3, where.str());
    trans.push_back({v[0], v[1], v[2]});
  }

  std::vector<TangentVector> paths;
  if (j.contains("paths")) {
    if (!j.at("paths").is_array())
      raise(errc::config_error, "the 'paths' block must be an array");
    int pi = 0;
    for (const auto& p : j.at("paths")) {
      std::ostringstream where;
      where << "paths[" << pi << "]";
      TangentVector v;
      v.label = p.contains("label") ? p.at("label").get<std::string>()
                                    : "path" + std::to_string(pi);
      if (!p.contains("linear_variation") || !p.contains("translation_variation"))
        raise(errc::config_error,
              where.str() + " needs 'linear_variation' and 'translation_variation'");
      const auto& lv = p.at("linear_variation");
      const auto& tv = p.at("translation_variation");
      if (!lv.is_array() || static_cast<int>(lv.size()) != rank ||
          !tv.is_array() || static_cast<int>(tv.size()) != rank)
        raise(errc::config_error, where.str() + " variation arrays must have length rank");
      for (int i = 0; i < rank; ++i) {
        Mat3 a = mat_from_row_major(
            require_array(lv.at(i), 9, where.str() + ".linear_variation"));
        if (so21_defect(a) > tol.eps_orth * (1.0 + frobenius(a)))
          raise(errc::config_error,
                where.str() + ": linear variation is not in so(2,1) for generator " +
                    std::to_string(i + 1));
        v.linear_variation.push_back(a);
        std::vector<double> w =
            require_array(tv.at(i), 3, where.str() + ".translation_variation");
        v.translation_variation.push_back({w[0], w[1], w[2]});
      }
      paths.push_back(std::move(v));
      ++pi;
    }
  }

  DeformedRep rep(Representation(std::move(gens), tol), std::move(trans));
  PingPongCertificate cert = certify_ping_pong(rep.linear());
  int version = j.contains("schema_version") ? j.at("schema_version").get<int>() : 1;
  return LoadedConfig{version, std::move(rep), std::move(paths), tol, std::move(cert)};
}

LoadedConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io_error, "cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config_json(ss.str());
}

std::string dump_config(const LoadedConfig& cfg, int indent) {
  ordered_json j;
  j["schema_version"] = cfg.schema_version;
  j["rank"] = cfg.rep.rank();
  ordered_json gens = ordered_json::array();
  for (int i = 0; i < cfg.rep.rank(); ++i)
    gens.push_back({{"matrix", mat_to_row_major(cfg.rep.linear().generator(i))}});
  j["generators"] = gens;
  ordered_json trans = ordered_json::array();
  for (int i = 0; i < cfg.rep.rank(); ++i) {
    const Vec3& u = cfg.rep.translation(i);
    trans.push_back({u[0], u[1], u[2]});
  }
  j["translations"] = trans;
  if (!cfg.paths.empty()) {
    ordered_json paths = ordered_json::array();
    for (const TangentVector& v : cfg.paths) {
      ordered_json p;
      p["label"] = v.label;
      ordered_json lv = ordered_json::array(), tv = ordered_json::array();
      for (size_t i = 0; i < v.linear_variation.size(); ++i) {
        lv.push_back(mat_to_row_major(v.linear_variation[i]));
        const Vec3& w = v.translation_variation[i];
        tv.push_back({w[0], w[1], w[2]});
      }
      p["linear_variation"] = lv;
      p["translation_variation"] = tv;
      paths.push_back(p);
    }
    j["paths"] = paths;
  }
  j["tolerances"] = tolerances_to_json(cfg.tol);
  return j.dump(indent) + "\n";
}

TangentVector scaling_direction(const DeformedRep& rep) {
  TangentVector v;
  v.label = "scale";
  for (int i = 0; i < rep.rank(); ++i) {
    v.linear_variation.push_back(Mat3{});
    v.translation_variation.push_back(rep.translation(i));
  }
  return v;
}

bool is_scaling_direction(const DeformedRep& rep, const TangentVector& v, double tol) {
  double c = 0.0;
  bool have_c = false;
  for (int i = 0; i < rep.rank(); ++i) {
    if (max_abs(v.linear_variation[i]) > tol) return false;
    const Vec3& u = rep.translation(i);
    const Vec3& w = v.translation_variation[i];
    double un = euclid_norm(u);
    if (un == 0.0) {
      if (euclid_norm(w) > tol) return false;
      continue;
    }
    double ci = euclid_dot(w, u) / (un * un);
    Vec3 resid = w - ci * u;
    if (euclid_norm(resid) > tol * (1.0 + euclid_norm(w))) return false;
    if (have_c && std::abs(ci - c) > tol * (1.0 + std::abs(c))) return false;
    c = ci;
    have_c = true;
  }
  return have_c && std::abs(c) > tol;
}

}  // namespace margulis
