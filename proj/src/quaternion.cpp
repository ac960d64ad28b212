#include "slicereg/quaternion.hpp"

#include <sstream>

namespace slicereg {

Quaternion inverse(const Quaternion& q, double eps) {
  const double n2 = q.norm2();
  if (std::sqrt(n2) <= eps) {
    std::ostringstream msg;
    msg << "inverse of near-zero quaternion (|q| = " << std::sqrt(n2) << ")";
    throw Error(ErrorCode::kZeroDivisor, msg.str());
  }
  return q.conj() / n2;
}

Quaternion pow(const Quaternion& q, unsigned n) {
  Quaternion result(1.0);
  Quaternion base = q;
  while (n > 0) {
    if (n & 1U) result = result * base;
    base = base * base;
    n >>= 1U;
  }
  return result;
}

ImaginaryUnit::ImaginaryUnit(const Quaternion& q, double eps) {
  const double n = q.imag_norm();
  if (n <= eps) throw Error(ErrorCode::kDomain, "imaginary unit from a real quaternion");
  unit_ = q.imag() / n;
}

SphereRef::SphereRef(double x_, double y_) : x(x_), y(y_) {
  if (y_ < 0.0) throw Error(ErrorCode::kDomain, "sphere radius y must be nonnegative");
}

SliceCoordinates slice_decompose(const Quaternion& q, double eps) {
  SliceCoordinates out;
  out.x = q.w;
  out.y = q.imag_norm();
  if (out.y > eps && out.y > 0.0) out.unit.emplace(q);
  return out;
}

SphereRef sphere_of(const Quaternion& q) { return SphereRef(q.w, q.imag_norm()); }

bool same_sphere(const Quaternion& p, const Quaternion& q, double tol) {
  return std::abs(p.w - q.w) <= tol && std::abs(p.imag_norm() - q.imag_norm()) <= tol;
}

ImaginaryUnit orthogonal_unit(const ImaginaryUnit& unit) {
  // Cross with the basis vector least aligned with the unit.
  const Quaternion& u = unit.value();
  Quaternion e = Quaternion::i();
  if (std::abs(u.x) > std::abs(u.y) && std::abs(u.x) > std::abs(u.z)) e = Quaternion::j();
  // Imaginary part of u*e is the cross product when both are pure imaginary.
  return ImaginaryUnit((u * e).imag());
}

}  // namespace slicereg
