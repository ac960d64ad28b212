#pragma once

#include <cmath>
#include <optional>

#include "slicereg/errors.hpp"

namespace slicereg {

/// Real quaternion w + x i + y j + z k. Value type, all operations pure.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_) : w(w_) {}  // NOLINT: reals embed implicitly
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  constexpr double real() const { return w; }
  constexpr Quaternion imag() const { return {0, x, y, z}; }
  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  double imag_norm() const { return std::sqrt(x * x + y * y + z * z); }

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

/// Hamilton product.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

inline Quaternion mul(const Quaternion& p, const Quaternion& q) { return p * q; }

inline double abs(const Quaternion& q) { return q.norm(); }
inline double distance(const Quaternion& p, const Quaternion& q) { return (p - q).norm(); }

/// conj(q)/|q|^2. Throws kZeroDivisor when |q| <= eps.
Quaternion inverse(const Quaternion& q, double eps = kDefaultEpsilon);

/// Integer power by repeated squaring.
Quaternion pow(const Quaternion& q, unsigned n);

/// Unit quaternion with zero real part; I*I = -1. Renormalized on construction.
class ImaginaryUnit {
 public:
  /// Projects onto the imaginary part and normalizes. Throws kDomain if the
  /// imaginary part has norm <= eps.
  explicit ImaginaryUnit(const Quaternion& q, double eps = kDefaultEpsilon);

  const Quaternion& value() const { return unit_; }
  operator const Quaternion&() const { return unit_; }  // NOLINT

  static ImaginaryUnit i() { return ImaginaryUnit(Quaternion::i()); }

 private:
  Quaternion unit_;
};

/// The 2-sphere x + y S (y > 0) or the real point x (y == 0).
struct SphereRef {
  double x = 0.0;
  double y = 0.0;

  bool is_real() const { return y == 0.0; }
  /// Representative point x + y I.
  Quaternion point(const ImaginaryUnit& unit) const { return Quaternion(x) + y * unit.value(); }
  SphereRef() = default;
  SphereRef(double x_, double y_);
};

struct SliceCoordinates {
  double x = 0.0;
  double y = 0.0;
  std::optional<ImaginaryUnit> unit;  // empty for real q
};

/// q = x + y I with y = |Im q| >= 0. I is omitted when |Im q| <= eps.
SliceCoordinates slice_decompose(const Quaternion& q, double eps = 0.0);

SphereRef sphere_of(const Quaternion& q);

/// |Re p - Re q| <= tol and ||Im p| - |Im q|| <= tol.
bool same_sphere(const Quaternion& p, const Quaternion& q, double tol = kDefaultEpsilon);

/// Any imaginary unit orthogonal to `unit`.
ImaginaryUnit orthogonal_unit(const ImaginaryUnit& unit);

}  // namespace slicereg
