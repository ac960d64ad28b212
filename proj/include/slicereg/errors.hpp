#pragma once

#include <stdexcept>
#include <string>

namespace slicereg {

/// Zero tests across the library default to this threshold; every operation
/// that performs one also takes an explicit override.
inline constexpr double kDefaultEpsilon = 1e-10;

enum class ErrorCode {
  kParse,            // malformed input file / JSON
  kDomain,           // point outside the domain of the series
  kZeroDivisor,      // inverse of a (near) zero quaternion
  kRadiusMismatch,   // binary series op with different radii
  kNonInvertible,    // regular reciprocal with a_0 ~ 0
  kNonzeroRemainder, // linear *-division by a non-root
  kRealPoint,        // spherical derivative requested at a real point
  kPole,             // Moebius denominator vanishes
  kZeroSet,          // evaluation on the zero set of f^s
  kDegenerate,       // series vanishes identically on a sphere
  kHypothesis,       // theorem hypotheses not met by the input
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace slicereg
