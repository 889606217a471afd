// Copyright hardylab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace hardylab {

enum class ErrorCode {
  invalid_argument = 1,
  parse = 2,
  undecidable = 3,
  ill_conditioned = 4,
  incompatible_spaces = 5,
  io = 6,
  unknown_suite = 7,
};

/// Every failure raised by the library carries one of the codes above; the C
/// layer maps them onto hl_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

/// Short decimal rendering for diagnostics ("1.5e-07" rather than "0.000000").
inline std::string format_number(double x, int digits = 3) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::invalid_argument, what);
}

}  // namespace hardylab
