#include "slicereg/moebius.hpp"

#include <algorithm>
#include <cmath>

namespace slicereg {

void MoebiusSpec::validate(double eps) const {
  if (!(center.norm() < 1.0 - eps)) throw Error(ErrorCode::kDomain, "Moebius center must lie in the unit ball");
  if (std::abs(right_unit.norm() - 1.0) >= 1e-13) {
    throw Error(ErrorCode::kDomain, "Moebius right unit must have modulus 1");
  }
}

Quaternion classical_eval(const Quaternion& a, const Quaternion& q, double eps) {
  const Quaternion denom = Quaternion(1.0) - q * a.conj();
  if (denom.norm() <= eps) throw Error(ErrorCode::kPole, "Moebius pole: 1 - q conj(a) vanishes");
  return inverse(denom, 0.0) * (q - a);
}

Quaternion regular_moebius_eval(const Quaternion& center, const Quaternion& q,
                                const Quaternion& right_unit) {
  // (1 - q conj(q0))^{-*} * (q - q0) evaluated as F(T(q))^{-1} G(T(q)) with
  // F = 1 - q conj(q0), F^c = 1 - q q0, T(q) = F^c(q)^{-1} q F^c(q).
  const Quaternion fc = Quaternion(1.0) - q * center;
  const Quaternion t = inverse(fc, 0.0) * q * fc;
  const Quaternion ft = Quaternion(1.0) - t * center.conj();
  return inverse(ft, 0.0) * (t - center) * right_unit;
}

double regular_moebius_tail(double center_norm, std::size_t order) {
  const double r = center_norm;
  if (r == 0.0) return 0.0;
  // Exact sum of |c_n| for n > N is r^N (1 + r); the looser geometric form
  // r^{N+1}(1+r)/(1-r) dominates it for r > 1/2. Report the larger of the two.
  const double n = static_cast<double>(order);
  const double exact = std::pow(r, n) * (1.0 + r);
  const double geometric = std::pow(r, n + 1.0) * (1.0 + r) / (1.0 - r);
  return std::max(exact, geometric);
}

SliceSeries regular_moebius_series(const MoebiusSpec& spec, std::size_t order) {
  if (spec.kind != MoebiusKind::kRegular) {
    throw Error(ErrorCode::kDomain, "regular_moebius_series needs a regular MoebiusSpec");
  }
  spec.validate();
  const Quaternion& q0 = spec.center;
  const Quaternion& u = spec.right_unit;
  const Quaternion q0bar = q0.conj();
  std::vector<Quaternion> c(order + 1);
  c[0] = -q0 * u;
  Quaternion power(1.0);  // conj(q0)^{n-1}
  for (std::size_t n = 1; n <= order; ++n) {
    c[n] = (power - power * q0bar * q0) * u;
    power = power * q0bar;
  }
  SliceSeries out(std::move(c), 1.0);
  const double tail = regular_moebius_tail(q0.norm(), order);
  return tail > 0.0 ? out.with_tail(tail) : out;
}

MoebiusBound moebius_bound(const Quaternion& b, const Quaternion& q) {
  const double nb = b.norm();
  const double nq = q.norm();
  return {(nb - nq) / (1.0 - nb * nq), classical_eval(b, q, 0.0).norm(), (nq + nb) / (1.0 + nb * nq)};
}

double moebius_inverse_identity_check(double a, const Quaternion& q) {
  return (classical_eval(Quaternion(-a), classical_eval(Quaternion(a), q)) - q).norm();
}

}  // namespace slicereg
