#pragma once

#include <stdexcept>
#include <string>

namespace margulis {

enum class errc {
  ok = 0,
  config_error,
  not_hyperbolic,
  insufficient_data,
  degenerate_boundary_pair,
  not_in_lie_algebra,
  not_coprime,
  left_hyperbolic_regime,
  singular_system,
  step_too_small,
  invalid_axis,
  sign_mismatch,
  empty_word,
  bad_argument,
  io_error,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
  throw Error(code, std::string(errc_name(code)) + ": " + what);
}

}  // namespace margulis
