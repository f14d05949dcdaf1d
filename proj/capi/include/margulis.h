/* C interface to the Margulis spacetime invariant library.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return MGL_OK (0) on success or a nonzero error code; when an
 * error message buffer is supplied it receives a NUL-terminated description.
 * Strings returned through char** out-parameters are heap-allocated and must
 * be released with mgl_string_free.
 */

#ifndef MARGULIS_H
#define MARGULIS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MGL_API __declspec(dllexport)
#else
#define MGL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum {
  MGL_OK = 0,
  MGL_ERR_CONFIG = 2,
  MGL_ERR_NOT_HYPERBOLIC = 3,
  MGL_ERR_INSUFFICIENT_DATA = 4,
  MGL_ERR_DEGENERATE_PAIR = 5,
  MGL_ERR_NOT_IN_LIE_ALGEBRA = 6,
  MGL_ERR_NOT_COPRIME = 7,
  MGL_ERR_LEFT_HYPERBOLIC_REGIME = 8,
  MGL_ERR_SINGULAR_SYSTEM = 9,
  MGL_ERR_STEP_TOO_SMALL = 16,
  MGL_ERR_INVALID_AXIS = 17,
  MGL_ERR_SIGN_MISMATCH = 18,
  MGL_ERR_EMPTY_WORD = 19,
  MGL_ERR_BAD_ARGUMENT = 20,
  MGL_ERR_IO = 21,
  MGL_ERR_INTERNAL = 22
};

typedef struct mgl_rep mgl_rep;
typedef struct mgl_spectrum mgl_spectrum;

MGL_API const char* mgl_version(void);
MGL_API const char* mgl_strerror(int code);
MGL_API void mgl_string_free(char* s);

/* Representation handles: parse + validate a JSON configuration. */
MGL_API int mgl_rep_from_json(const char* json_text, mgl_rep** out,
                              char* errmsg, size_t errmsg_cap);
MGL_API int mgl_rep_from_file(const char* path, mgl_rep** out,
                              char* errmsg, size_t errmsg_cap);
MGL_API void mgl_rep_free(mgl_rep* rep);
MGL_API int mgl_rep_rank(const mgl_rep* rep);
MGL_API int mgl_rep_is_certified(const mgl_rep* rep);
MGL_API int mgl_rep_path_count(const mgl_rep* rep);
/* Normalized configuration (generators materialized as matrices). */
MGL_API int mgl_rep_normalized_json(const mgl_rep* rep, char** out_json);

/* Margulis invariant spectrum over all conjugacy classes with cyclically
 * reduced length <= max_word_length. threads <= 0 uses all cores. */
MGL_API int mgl_spectrum_build(const mgl_rep* rep, int max_word_length, int threads,
                               mgl_spectrum** out, char* errmsg, size_t errmsg_cap);
MGL_API void mgl_spectrum_free(mgl_spectrum* s);
MGL_API long long mgl_spectrum_count(const mgl_spectrum* s);
MGL_API double mgl_spectrum_complete_below(const mgl_spectrum* s);
/* +1 / -1 for uniformly signed spectra, 0 when mixed. */
MGL_API int mgl_spectrum_sign(const mgl_spectrum* s);
MGL_API int mgl_spectrum_csv(const mgl_spectrum* s, char** out_text);
MGL_API int mgl_spectrum_json(const mgl_spectrum* s, char** out_text);

/* Orbit-counting entropy over [window_lo, window_hi]; pass 0,0 for the
 * default window and grid_points <= 0 for the default grid. */
MGL_API int mgl_entropy_json(const mgl_spectrum* s, double window_lo, double window_hi,
                             int grid_points, char** out_json,
                             char* errmsg, size_t errmsg_cap);

/* Pressure-form Gram matrix over the configured tangent paths.
 * path_indices may be NULL to use every path; step <= 0 uses the default. */
MGL_API int mgl_pressure_json(const mgl_rep* rep, int max_word_length, double step,
                              const int* path_indices, int n_paths, int threads,
                              char** out_json, char* errmsg, size_t errmsg_cap);

/* Suite failure bits reported by mgl_verify_json. */
enum {
  MGL_SUITE_IDENTITIES = 1,
  MGL_SUITE_SIGNS = 2,
  MGL_SUITE_VARIATIONAL = 4,
  MGL_SUITE_PRESSURE = 8
};

/* Verification campaigns. suite is one of "identities", "signs",
 * "variational", "pressure", "all". On success *all_pass reports the
 * campaign verdict, *fail_mask (nullable) the failing suites as
 * MGL_SUITE_* bits, and *out_json the scorecard. */
MGL_API int mgl_verify_json(const mgl_rep* rep, const char* suite, uint64_t seed,
                            int samples, int max_word_length, double step,
                            int threads, int deterministic,
                            char** out_json, int* all_pass, int* fail_mask,
                            char* errmsg, size_t errmsg_cap);

#ifdef __cplusplus
}
#endif

#endif /* MARGULIS_H */
