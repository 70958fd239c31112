#include "matchlab/common.hpp"

#include <algorithm>
#include <cmath>

namespace matchlab {

const char* err_name(Err e) {
  switch (e) {
    case Err::InvalidWindow: return "InvalidWindow";
    case Err::OriginOccupied: return "OriginOccupied";
    case Err::InvalidParameter: return "InvalidParameter";
    case Err::InvalidLength: return "InvalidLength";
    case Err::WrongKind: return "WrongKind";
    case Err::InvalidPair: return "InvalidPair";
    case Err::InvalidMatching: return "InvalidMatching";
    case Err::TooLarge: return "TooLarge";
    case Err::DegenerateDistances: return "DegenerateDistances";
    case Err::WindowTooSmall: return "WindowTooSmall";
    case Err::InvalidInput: return "InvalidInput";
    case Err::OutOfRange: return "OutOfRange";
  }
  return "Error";
}

bool nearly_equal(double a, double b, double eps) {
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= eps * scale;
}

}  // namespace matchlab
