#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "margulis/config.hpp"
#include "margulis/thermo.hpp"

namespace margulis {

struct SuiteReport {
  bool pass = false;
  std::string json;  // suite subtree, stable key order
};

// Boundary identity campaign on seeded random admissible tuples; reports the
// maximum deviation per identity.
SuiteReport run_identity_suite(int samples, std::uint64_t seed, const Tolerances& tol);

// Partitions enumerated classes by the sign of the Margulis invariant.
// PASS iff one strict sign class is empty and no invariant vanishes.
SuiteReport run_opposite_sign_check(const DeformedRep& rho, int max_len, int threads);

// Length-derivative and log-cross-ratio-derivative checks over a grid of
// (path, word) and (path, pair) cases; per-case failures never abort the
// campaign.
SuiteReport run_variational_suite(const DeformedRep& rho,
                                  const std::vector<TangentVector>& paths,
                                  const std::vector<Word>& words,
                                  const std::vector<std::pair<Word, Word>>& pairs,
                                  double step, const Tolerances& tol);

// Gram matrix of the pressure form over the basis (first element must be the
// scaling direction), eigenvalue signature checks, and the J == 1 scaling-path
// probe.
SuiteReport run_pressure_suite(const DeformedRep& rho,
                               const std::vector<TangentVector>& basis, int max_len,
                               double step, const Tolerances& tol, int threads);

struct VerifyOptions {
  std::string suite = "all";  // identities|signs|variational|pressure|all
  std::uint64_t seed = 7;
  int samples = 10000;
  int max_len = 8;
  double variational_step = 0.0;  // 0 selects the configured default
  double pressure_step = 0.0;
  int threads = 1;
  bool deterministic = true;
};

struct Scorecard {
  bool all_pass = false;
  bool identities_pass = true;
  bool signs_pass = true;
  bool variational_pass = true;
  bool pressure_pass = true;
  std::string json;  // full scorecard document
};

// Default word list and coprime pair list for the variational campaign.
std::vector<Word> default_variational_words(int rank);
std::vector<std::pair<Word, Word>> default_coprime_pairs(int rank);

Scorecard run_verify(const LoadedConfig& cfg, const VerifyOptions& opts);

}  // namespace margulis
