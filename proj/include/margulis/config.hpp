#pragma once

#include <optional>
#include <string>
#include <vector>

#include "margulis/rep.hpp"

namespace margulis {

// Parsed and validated configuration: a deformed representation plus optional
// tangent paths and tolerance overrides. The JSON schema is:
//
// {
//   "schema_version": 1,
//   "rank": n,
//   "generators": [ {"matrix": [9 reals, row-major]}
//                 | {"axis": [theta_minus, theta_plus], "length": l}, ... ],
//   "translations": [[3 reals], ...],
//   "paths": [ {"label": str,
//               "linear_variation": [[9 reals], ... one per generator],
//               "translation_variation": [[3 reals], ...]}, ... ],
//   "tolerances": { field: value, ... }          // optional overrides
// }
struct LoadedConfig {
  int schema_version = 1;
  DeformedRep rep;
  std::vector<TangentVector> paths;
  Tolerances tol;
  PingPongCertificate certificate;

  const TangentVector& path(int i) const;
};

LoadedConfig load_config_json(const std::string& json_text);
LoadedConfig load_config_file(const std::string& path);

// Normalized form: generators materialized as matrices. Reloading the dump
// yields an equivalent representation.
std::string dump_config(const LoadedConfig& cfg, int indent = 2);

// The scaling direction: zero linear variation, translation variation equal
// to the configured translations.
TangentVector scaling_direction(const DeformedRep& rep);

// True when v is a scaling direction: no linear part and translation
// variation proportional to the configured translations.
bool is_scaling_direction(const DeformedRep& rep, const TangentVector& v, double tol);

}  // namespace margulis
