#include "margulis.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "margulis/config.hpp"
#include "margulis/io.hpp"
#include "margulis/thermo.hpp"
#include "margulis/verify.hpp"

using namespace margulis;

struct mgl_rep {
  LoadedConfig cfg;
};

struct mgl_spectrum {
  SpectrumTable table;
  Tolerances tol;
};

namespace {

int code_of(errc c) {
  switch (c) {
    case errc::ok: return MGL_OK;
    case errc::config_error: return MGL_ERR_CONFIG;
    case errc::not_hyperbolic: return MGL_ERR_NOT_HYPERBOLIC;
    case errc::insufficient_data: return MGL_ERR_INSUFFICIENT_DATA;
    case errc::degenerate_boundary_pair: return MGL_ERR_DEGENERATE_PAIR;
    case errc::not_in_lie_algebra: return MGL_ERR_NOT_IN_LIE_ALGEBRA;
    case errc::not_coprime: return MGL_ERR_NOT_COPRIME;
    case errc::left_hyperbolic_regime: return MGL_ERR_LEFT_HYPERBOLIC_REGIME;
    case errc::singular_system: return MGL_ERR_SINGULAR_SYSTEM;
    case errc::step_too_small: return MGL_ERR_STEP_TOO_SMALL;
    case errc::invalid_axis: return MGL_ERR_INVALID_AXIS;
    case errc::sign_mismatch: return MGL_ERR_SIGN_MISMATCH;
    case errc::empty_word: return MGL_ERR_EMPTY_WORD;
    case errc::bad_argument: return MGL_ERR_BAD_ARGUMENT;
    case errc::io_error: return MGL_ERR_IO;
  }
  return MGL_ERR_INTERNAL;
}

void put_message(char* buf, size_t cap, const char* msg) {
  if (!buf || cap == 0) return;
  std::strncpy(buf, msg, cap - 1);
  buf[cap - 1] = '\0';
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
int guarded(char* errmsg, size_t cap, const Fn& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    put_message(errmsg, cap, e.what());
    return code_of(e.code());
  } catch (const std::bad_alloc&) {
    put_message(errmsg, cap, "out of memory");
    return MGL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    put_message(errmsg, cap, e.what());
    return MGL_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* mgl_version(void) { return "1.0.0"; }

const char* mgl_strerror(int code) {
  switch (code) {
    case MGL_OK: return "ok";
    case MGL_ERR_CONFIG: return "configuration error";
    case MGL_ERR_NOT_HYPERBOLIC: return "element is not hyperbolic";
    case MGL_ERR_INSUFFICIENT_DATA: return "insufficient data";
    case MGL_ERR_DEGENERATE_PAIR: return "degenerate boundary pair";
    case MGL_ERR_NOT_IN_LIE_ALGEBRA: return "matrix is not in so(2,1)";
    case MGL_ERR_NOT_COPRIME: return "words are not coprime";
    case MGL_ERR_LEFT_HYPERBOLIC_REGIME: return "path left the hyperbolic regime";
    case MGL_ERR_SINGULAR_SYSTEM: return "singular or ill-conditioned system";
    case MGL_ERR_STEP_TOO_SMALL: return "finite-difference step too small";
    case MGL_ERR_INVALID_AXIS: return "invalid axis";
    case MGL_ERR_SIGN_MISMATCH: return "sign mismatch in spectrum";
    case MGL_ERR_EMPTY_WORD: return "empty word";
    case MGL_ERR_BAD_ARGUMENT: return "bad argument";
    case MGL_ERR_IO: return "i/o error";
    default: return "internal error";
  }
}

void mgl_string_free(char* s) { std::free(s); }

int mgl_rep_from_json(const char* json_text, mgl_rep** out, char* errmsg,
                      size_t errmsg_cap) {
  if (!json_text || !out) {
    put_message(errmsg, errmsg_cap, "null argument");
    return MGL_ERR_BAD_ARGUMENT;
  }
  return guarded(errmsg, errmsg_cap, [&]() {
    *out = new mgl_rep{load_config_json(json_text)};
    return MGL_OK;
  });
}

int mgl_rep_from_file(const char* path, mgl_rep** out, char* errmsg,
                      size_t errmsg_cap) {
  if (!path || !out) {
    put_message(errmsg, errmsg_cap, "null argument");
    return MGL_ERR_BAD_ARGUMENT;
  }
  return guarded(errmsg, errmsg_cap, [&]() {
    *out = new mgl_rep{load_config_file(path)};
    return MGL_OK;
  });
}

void mgl_rep_free(mgl_rep* rep) { delete rep; }

int mgl_rep_rank(const mgl_rep* rep) { return rep ? rep->cfg.rep.rank() : 0; }

int mgl_rep_is_certified(const mgl_rep* rep) {
  return rep && rep->cfg.certificate.certified ? 1 : 0;
}

int mgl_rep_path_count(const mgl_rep* rep) {
  return rep ? static_cast<int>(rep->cfg.paths.size()) : 0;
}

int mgl_rep_normalized_json(const mgl_rep* rep, char** out_json) {
  if (!rep || !out_json) return MGL_ERR_BAD_ARGUMENT;
  return guarded(nullptr, 0, [&]() {
    *out_json = dup_string(dump_config(rep->cfg));
    return *out_json ? MGL_OK : MGL_ERR_INTERNAL;
  });
}

int mgl_spectrum_build(const mgl_rep* rep, int max_word_length, int threads,
                       mgl_spectrum** out, char* errmsg, size_t errmsg_cap) {
  if (!rep || !out) {
    put_message(errmsg, errmsg_cap, "null argument");
    return MGL_ERR_BAD_ARGUMENT;
  }
  return guarded(errmsg, errmsg_cap, [&]() {
    SpectrumTable t = build_spectrum(rep->cfg.rep, max_word_length, threads);
    *out = new mgl_spectrum{std::move(t), rep->cfg.tol};
    return MGL_OK;
  });
}

void mgl_spectrum_free(mgl_spectrum* s) { delete s; }

long long mgl_spectrum_count(const mgl_spectrum* s) {
  return s ? static_cast<long long>(s->table.entries.size()) : 0;
}

double mgl_spectrum_complete_below(const mgl_spectrum* s) {
  return s ? s->table.complete_below : 0.0;
}

int mgl_spectrum_sign(const mgl_spectrum* s) { return s ? s->table.sign : 0; }

int mgl_spectrum_csv(const mgl_spectrum* s, char** out_text) {
  if (!s || !out_text) return MGL_ERR_BAD_ARGUMENT;
  return guarded(nullptr, 0, [&]() {
    *out_text = dup_string(spectrum_to_csv(s->table));
    return *out_text ? MGL_OK : MGL_ERR_INTERNAL;
  });
}

int mgl_spectrum_json(const mgl_spectrum* s, char** out_text) {
  if (!s || !out_text) return MGL_ERR_BAD_ARGUMENT;
  return guarded(nullptr, 0, [&]() {
    *out_text = dup_string(spectrum_to_json(s->table));
    return *out_text ? MGL_OK : MGL_ERR_INTERNAL;
  });
}

int mgl_entropy_json(const mgl_spectrum* s, double window_lo, double window_hi,
                     int grid_points, char** out_json, char* errmsg,
                     size_t errmsg_cap) {
  if (!s || !out_json) {
    put_message(errmsg, errmsg_cap, "null argument");
    return MGL_ERR_BAD_ARGUMENT;
  }
  return guarded(errmsg, errmsg_cap, [&]() {
    EntropyOptions opts;
    opts.window_lo = window_lo;
    opts.window_hi = window_hi;
    opts.grid_points = grid_points;
    EntropyEstimate est = entropy(s->table, s->tol, opts);
    *out_json = dup_string(entropy_to_json(est));
    return *out_json ? MGL_OK : MGL_ERR_INTERNAL;
  });
}

int mgl_pressure_json(const mgl_rep* rep, int max_word_length, double step,
                      const int* path_indices, int n_paths, int threads,
                      char** out_json, char* errmsg, size_t errmsg_cap) {
  if (!rep || !out_json) {
    put_message(errmsg, errmsg_cap, "null argument");
    return MGL_ERR_BAD_ARGUMENT;
  }
  return guarded(errmsg, errmsg_cap, [&]() {
    if (rep->cfg.paths.empty())
      raise(errc::config_error, "the configuration has no 'paths' block");
    std::vector<TangentVector> basis;
    if (path_indices && n_paths > 0) {
      for (int i = 0; i < n_paths; ++i) basis.push_back(rep->cfg.path(path_indices[i]));
    } else {
      basis = rep->cfg.paths;
    }
    double eff_step = step > 0.0 ? step : rep->cfg.tol.pressure_step;
    SuiteReport r = run_pressure_suite(rep->cfg.rep, basis, max_word_length, eff_step,
                                       rep->cfg.tol, threads);
    *out_json = dup_string(r.json + "\n");
    return *out_json ? MGL_OK : MGL_ERR_INTERNAL;
  });
}

int mgl_verify_json(const mgl_rep* rep, const char* suite, uint64_t seed, int samples,
                    int max_word_length, double step, int threads, int deterministic,
                    char** out_json, int* all_pass, int* fail_mask,
                    char* errmsg, size_t errmsg_cap) {
  if (!rep || !suite || !out_json || !all_pass) {
    put_message(errmsg, errmsg_cap, "null argument");
    return MGL_ERR_BAD_ARGUMENT;
  }
  return guarded(errmsg, errmsg_cap, [&]() {
    VerifyOptions opts;
    opts.suite = suite;
    opts.seed = seed;
    if (samples > 0) opts.samples = samples;
    if (max_word_length > 0) opts.max_len = max_word_length;
    if (step > 0.0) {
      opts.variational_step = step;
      opts.pressure_step = step;
    }
    opts.threads = threads;
    opts.deterministic = deterministic != 0;
    Scorecard card = run_verify(rep->cfg, opts);
    *all_pass = card.all_pass ? 1 : 0;
    if (fail_mask) {
      *fail_mask = (card.identities_pass ? 0 : MGL_SUITE_IDENTITIES) |
                   (card.signs_pass ? 0 : MGL_SUITE_SIGNS) |
                   (card.variational_pass ? 0 : MGL_SUITE_VARIATIONAL) |
                   (card.pressure_pass ? 0 : MGL_SUITE_PRESSURE);
    }
    *out_json = dup_string(card.json);
    return *out_json ? MGL_OK : MGL_ERR_INTERNAL;
  });
}

}  // extern "C"
