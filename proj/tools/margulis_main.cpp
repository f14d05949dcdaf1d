// Command-line front end. All computation goes through the shared-library
// C API (margulis.h); this file only handles flags, files and exit codes.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "margulis.h"

namespace {

using nlohmann::ordered_json;

struct RepHandle {
  mgl_rep* rep = nullptr;
  ~RepHandle() { mgl_rep_free(rep); }
};

struct SpectrumHandle {
  mgl_spectrum* s = nullptr;
  ~SpectrumHandle() { mgl_spectrum_free(s); }
};

struct ApiString {
  char* s = nullptr;
  ~ApiString() { mgl_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

int exit_code_for(int api_code) {
  switch (api_code) {
    case MGL_OK: return 0;
    case MGL_ERR_CONFIG:
    case MGL_ERR_INVALID_AXIS:
    case MGL_ERR_NOT_IN_LIE_ALGEBRA:
    case MGL_ERR_IO:
    case MGL_ERR_BAD_ARGUMENT: return 2;
    case MGL_ERR_NOT_HYPERBOLIC: return 3;
    case MGL_ERR_INSUFFICIENT_DATA: return 4;
    default: return 1;
  }
}

[[noreturn]] void fail(int api_code, const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(exit_code_for(api_code));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(MGL_ERR_IO, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(MGL_ERR_IO, "cannot write " + path);
  out << text;
}

// Merges --tolerance overrides and the optional override file into the
// config's "tolerances" block before it reaches the library.
std::string prepare_config(const std::string& path,
                           const std::vector<std::string>& overrides) {
  std::string text = read_file(path);
  const char* tol_file = std::getenv("MARGULIS_TOLERANCE_FILE");
  if (overrides.empty() && !tol_file) return text;

  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(MGL_ERR_CONFIG, std::string("invalid JSON in ") + path + ": " + e.what());
  }
  if (!j.contains("tolerances")) j["tolerances"] = ordered_json::object();
  if (tol_file) {
    ordered_json defaults;
    try {
      defaults = ordered_json::parse(read_file(tol_file));
    } catch (const std::exception& e) {
      fail(MGL_ERR_CONFIG, std::string("invalid tolerance file: ") + e.what());
    }
    for (auto& [k, v] : defaults.items())
      if (!j["tolerances"].contains(k)) j["tolerances"][k] = v;
  }
  for (const std::string& kv : overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      fail(MGL_ERR_BAD_ARGUMENT, "--tolerance expects name=value, got '" + kv + "'");
    std::string key = kv.substr(0, eq);
    try {
      j["tolerances"][key] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      fail(MGL_ERR_BAD_ARGUMENT, "--tolerance value for '" + key + "' is not numeric");
    }
  }
  return j.dump(2);
}

RepHandle load_rep(const std::string& config_path,
                   const std::vector<std::string>& tol_overrides,
                   bool allow_uncertified) {
  std::string text = prepare_config(config_path, tol_overrides);
  RepHandle h;
  char err[512];
  int rc = mgl_rep_from_json(text.c_str(), &h.rep, err, sizeof(err));
  if (rc != MGL_OK) fail(rc, err);
  if (!mgl_rep_is_certified(h.rep)) {
    std::cerr << "warning: linear part is not ping-pong certified";
    if (!allow_uncertified) std::cerr << " (results may not describe a Schottky group)";
    std::cerr << "\n";
  }
  return h;
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("MARGULIS_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 0;  // library default: all cores
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical invariants of Margulis spacetimes"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config_path, output_path, format = "csv", suite = "all", window_arg;
  std::vector<std::string> tol_overrides;
  std::vector<int> path_indices;
  int max_len = 8, threads_flag = 0, grid = 0, samples = 10000;
  std::uint64_t seed = 7;
  double step = 0.0;
  bool deterministic = false, basis_from_config = false, allow_uncertified = false;

  app.add_option("--threads", threads_flag, "worker threads (default: all cores)");
  app.add_flag("--deterministic", deterministic,
               "ordered reductions and stable output (always on; flag is echoed)");
  app.add_option("--tolerance", tol_overrides, "override a tolerance, name=value")
      ->take_all();
  app.add_flag("--allow-uncertified", allow_uncertified,
               "proceed without a ping-pong certificate");

  auto* inv = app.add_subcommand("invariants", "Margulis invariant spectrum as CSV/JSON");
  inv->add_option("--config", config_path, "representation config")->required();
  inv->add_option("--max-word-length", max_len, "census depth")->required();
  inv->add_option("--output", output_path, "output file (default stdout)");
  inv->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  auto* ent = app.add_subcommand("entropy", "orbit-counting entropy estimate");
  ent->add_option("--config", config_path, "representation config")->required();
  ent->add_option("--max-word-length", max_len, "census depth")->required();
  ent->add_option("--window", window_arg, "regression window 'lo,hi'");
  ent->add_option("--grid", grid, "regression grid points");
  ent->add_option("--output", output_path, "output file (default stdout)");

  auto* press = app.add_subcommand("pressure", "pressure-form Gram matrix");
  press->add_option("--config", config_path, "representation config")->required();
  press->add_flag("--basis-from-config", basis_from_config,
                  "use the config 'paths' block as the tangent basis")
      ->required();
  press->add_option("--step", step, "finite-difference step");
  press->add_option("--max-word-length", max_len, "census depth")->required();
  press->add_option("--paths", path_indices, "basis path indices (default: all)");
  press->add_option("--output", output_path, "output file (default stdout)");

  auto* ver = app.add_subcommand("verify", "verification campaigns");
  ver->add_option("--config", config_path, "representation config")->required();
  ver->add_option("--suite", suite, "identities|signs|variational|pressure|all")
      ->check(CLI::IsMember({"identities", "signs", "variational", "pressure", "all"}));
  ver->add_option("--seed", seed, "random seed for sampled campaigns");
  ver->add_option("--samples", samples, "identity-suite sample count");
  ver->add_option("--max-word-length", max_len, "census depth for sign/pressure suites");
  ver->add_option("--step", step, "finite-difference step override");
  ver->add_option("--output", output_path, "scorecard file (default stdout)");

  CLI11_PARSE(app, argc, argv);
  int threads = resolve_threads(threads_flag);
  char err[512];

  if (inv->parsed()) {
    RepHandle rep = load_rep(config_path, tol_overrides, allow_uncertified);
    SpectrumHandle spec;
    int rc = mgl_spectrum_build(rep.rep, max_len, threads, &spec.s, err, sizeof(err));
    if (rc != MGL_OK) fail(rc, err);
    ApiString text;
    rc = format == "csv" ? mgl_spectrum_csv(spec.s, &text.s)
                         : mgl_spectrum_json(spec.s, &text.s);
    if (rc != MGL_OK) fail(rc, mgl_strerror(rc));
    write_output(output_path, text.str());
    return 0;
  }

  if (ent->parsed()) {
    RepHandle rep = load_rep(config_path, tol_overrides, allow_uncertified);
    SpectrumHandle spec;
    int rc = mgl_spectrum_build(rep.rep, max_len, threads, &spec.s, err, sizeof(err));
    if (rc != MGL_OK) fail(rc, err);
    double lo = 0.0, hi = 0.0;
    if (!window_arg.empty()) {
      auto comma = window_arg.find(',');
      if (comma == std::string::npos)
        fail(MGL_ERR_BAD_ARGUMENT, "--window expects 'lo,hi'");
      try {
        lo = std::stod(window_arg.substr(0, comma));
        hi = std::stod(window_arg.substr(comma + 1));
      } catch (const std::exception&) {
        fail(MGL_ERR_BAD_ARGUMENT, "--window bounds must be numeric");
      }
    }
    ApiString text;
    rc = mgl_entropy_json(spec.s, lo, hi, grid, &text.s, err, sizeof(err));
    if (rc != MGL_OK) fail(rc, err);
    write_output(output_path, text.str());
    return 0;
  }

  if (press->parsed()) {
    RepHandle rep = load_rep(config_path, tol_overrides, allow_uncertified);
    ApiString text;
    const int* idx = path_indices.empty() ? nullptr : path_indices.data();
    int rc = mgl_pressure_json(rep.rep, max_len, step, idx,
                               static_cast<int>(path_indices.size()), threads,
                               &text.s, err, sizeof(err));
    if (rc != MGL_OK) fail(rc, err);
    write_output(output_path, text.str());
    return 0;
  }

  if (ver->parsed()) {
    RepHandle rep = load_rep(config_path, tol_overrides, allow_uncertified);
    ApiString text;
    int all_pass = 0, fail_mask = 0;
    int rc = mgl_verify_json(rep.rep, suite.c_str(), seed, samples, max_len, step,
                             threads, 1, &text.s, &all_pass, &fail_mask, err,
                             sizeof(err));
    if (rc != MGL_OK) fail(rc, err);
    write_output(output_path, text.str());
    if (all_pass) return 0;
    if (fail_mask & MGL_SUITE_IDENTITIES) return 10;
    if (fail_mask & MGL_SUITE_SIGNS) return 11;
    if (fail_mask & MGL_SUITE_VARIATIONAL) return 12;
    if (fail_mask & MGL_SUITE_PRESSURE) return 13;
    return 1;
  }

  return 0;
}
