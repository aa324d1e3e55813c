#pragma once

#include <stdexcept>
#include <string>

namespace latq {

enum class Errc {
  invalid_argument = 1,
  unknown_lattice,
  no_generator,
  no_decoder,
  singular_matrix,
  dimension_mismatch,
  search_budget,
  parse_error,
  io_error,
  inconsistent_moments,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace latq
