#pragma once

#include <cstddef>

#include "slicereg/series.hpp"

namespace slicereg {

inline constexpr std::size_t kDefaultMoebiusOrder = 128;

enum class MoebiusKind { kClassical, kRegular };

/// Moebius self-map of the unit ball: center q0 (|q0| < 1) and right unit u.
struct MoebiusSpec {
  Quaternion center;
  Quaternion right_unit{1.0};
  MoebiusKind kind = MoebiusKind::kRegular;

  /// Throws kDomain unless |center| < 1 - eps and ||u| - 1| < 1e-13.
  void validate(double eps = kDefaultEpsilon) const;
};

/// M_a(q) = (1 - q conj(a))^{-1} (q - a). Throws kPole if the denominator is <= eps.
Quaternion classical_eval(const Quaternion& a, const Quaternion& q, double eps = kDefaultEpsilon);

/// Pointwise value of the regular transformation M_{q0}(q) u, computed exactly from
/// the two linear factors (no series truncation).
Quaternion regular_moebius_eval(const Quaternion& center, const Quaternion& q,
                                const Quaternion& right_unit = 1.0);

/// Bound on the dropped terms of the order-N regular Moebius series on the unit ball.
double regular_moebius_tail(double center_norm, std::size_t order);

/// Series of M_{q0}(q) u: c_0 = -q0 u, c_n = (conj(q0)^{n-1} - conj(q0)^n q0) u.
/// Radius 1, tail bound attached.
SliceSeries regular_moebius_series(const MoebiusSpec& spec, std::size_t order = kDefaultMoebiusOrder);

struct MoebiusBound {
  double lower;
  double value;
  double upper;
};

/// ((|b|-|q|)/(1-|b||q|), |M_b(q)|, (|q|+|b|)/(1+|b||q|)).
MoebiusBound moebius_bound(const Quaternion& b, const Quaternion& q);

/// |M_{-a}(M_a(q)) - q| for real a in (0, 1).
double moebius_inverse_identity_check(double a, const Quaternion& q);

}  // namespace slicereg
