#pragma once

#include <stdexcept>
#include <string>

namespace matchlab {

// Relative tolerance for coincidence detection on scores and distances.
// Equality within this tolerance is reported as a suspected tie, never
// resolved silently.
inline constexpr double kEpsTie = 1e-12;

enum class Err {
  InvalidWindow,
  OriginOccupied,
  InvalidParameter,
  InvalidLength,
  WrongKind,
  InvalidPair,
  InvalidMatching,
  TooLarge,
  DegenerateDistances,
  WindowTooSmall,
  InvalidInput,
  OutOfRange,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

// |a-b| <= eps * max(1, |a|, |b|).  The absolute floor keeps costs that
// straddle zero (log costs) comparable.
bool nearly_equal(double a, double b, double eps = kEpsTie);

}  // namespace matchlab
