#pragma once

#include <optional>

#include <Eigen/Dense>

#include "slicereg/series.hpp"

namespace slicereg {

using Vector4 = Eigen::Vector4d;
using Matrix4 = Eigen::Matrix4d;

inline Vector4 to_vector(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }
inline Quaternion to_quaternion(const Vector4& v) { return {v[0], v[1], v[2], v[3]}; }

/// T_f(q) = f^c(q)^{-1} q f^c(q). Throws kZeroDivisor when |f^c(q)| <= eps.
Quaternion t_map(const SliceSeries& f, const Quaternion& q, double eps = kDefaultEpsilon);

/// f^s(q) evaluated pointwise as (f * f^c)(q).
Quaternion symmetrization_at(const SliceSeries& f, const Quaternion& q);

/// (f^{-*} * g)(q) = f(T_f(q))^{-1} g(T_f(q)). Throws kZeroSet when |f^s(q)| <= eps.
Quaternion quotient_eval(const SliceSeries& f, const SliceSeries& g, const Quaternion& q,
                         double eps = kDefaultEpsilon);

/// Real differential of f at q as a 4x4 matrix over the basis (1, i, j, k).
struct RealDifferential {
  Matrix4 matrix;
  Quaternion cullen_part;
  std::optional<Quaternion> spherical_part;  // empty at real points

  double determinant() const { return matrix.determinant(); }
  Quaternion apply(const Quaternion& v) const { return to_quaternion(matrix * to_vector(v)); }
};

/// Acts by right multiplication by the Cullen derivative on L_I and by the
/// spherical derivative on its orthogonal complement (Cullen everywhere at real q).
RealDifferential real_differential(const SliceSeries& f, const Quaternion& q,
                                   double eps = kDefaultEpsilon);

/// |det| threshold used by `is_singular` when no tolerance is given.
double default_singular_tolerance(const Quaternion& cullen_part);

bool is_singular(const SliceSeries& f, const Quaternion& q, std::optional<double> tol = std::nullopt);

/// f(x + yI) = b + I c for every imaginary unit I.
struct SphereAffine {
  Quaternion b;
  Quaternion c;
};
SphereAffine sphere_affine(const SliceSeries& f, double x, double y);

/// Zeros of f on one sphere: f = [(q-x)^2+y^2]^m (q-p_1)*...*(q-p_n)*h.
struct MultiplicityReport {
  SphereRef sphere;
  int spherical = 0;  // 2m
  int isolated = 0;   // n
  std::optional<Quaternion> point;
  /// Smallest |h| sampled on the sphere; a numerical witness that h has no zero there.
  double quotient_min_modulus = 0.0;

  int total() const { return spherical + isolated; }
};

/// Throws kDomain if s.y <= 0 or the sphere leaves the domain, kDegenerate if
/// f vanishes identically to working order.
MultiplicityReport find_zero_on_sphere(const SliceSeries& f, const SphereRef& s, double tol = 1e-8);

struct RecenterResult {
  SliceSeries series;
  bool aliasing_warning = false;
  double top_coefficient = 0.0;  // |c_M| r^M relative to the sampled maximum
};

/// f_p: the series on B(0, R - |p|) agreeing with z -> f(p + z) on the slice of p,
/// computed from 4M samples on a circle of radius 0.8 (R - |p|).
/// `unit` selects the slice when p is real.
RecenterResult recenter_slice(const SliceSeries& f, const Quaternion& p, std::size_t order,
                              std::optional<ImaginaryUnit> unit = std::nullopt);

}  // namespace slicereg
