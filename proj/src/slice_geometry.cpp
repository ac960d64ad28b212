#include "slicereg/slice_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace slicereg {

namespace {

// f^c(q) without materializing the conjugate series.
Quaternion eval_conjugate(const SliceSeries& f, const Quaternion& q) {
  if (q.norm() >= f.radius()) throw Error(ErrorCode::kDomain, "point outside series domain");
  const auto& a = f.coeffs();
  Quaternion acc = a.back().conj();
  for (std::size_t n = a.size() - 1; n-- > 0;) acc = a[n].conj() + q * acc;
  return acc;
}

double max_coefficient(const SliceSeries& f) {
  double m = 0.0;
  for (const auto& c : f.coeffs()) m = std::max(m, c.norm());
  return m;
}

// Right multiplication v -> v c as a matrix.
Matrix4 right_multiplication(const Quaternion& c) {
  Matrix4 m;
  const Quaternion basis[4] = {1.0, Quaternion::i(), Quaternion::j(), Quaternion::k()};
  for (int col = 0; col < 4; ++col) m.col(col) = to_vector(basis[col] * c);
  return m;
}

}  // namespace

Quaternion t_map(const SliceSeries& f, const Quaternion& q, double eps) {
  const Quaternion fc = eval_conjugate(f, q);
  if (fc.norm() <= eps) throw Error(ErrorCode::kZeroDivisor, "T_f undefined: f^c(q) vanishes");
  return inverse(fc, 0.0) * q * fc;
}

Quaternion symmetrization_at(const SliceSeries& f, const Quaternion& q) {
  const Quaternion fq = eval(f, q);
  if (fq.norm() == 0.0) return {};
  return fq * eval_conjugate(f, inverse(fq, 0.0) * q * fq);
}

Quaternion quotient_eval(const SliceSeries& f, const SliceSeries& g, const Quaternion& q,
                         double eps) {
  if (symmetrization_at(f, q).norm() <= eps) {
    throw Error(ErrorCode::kZeroSet, "quotient evaluated on the zero set of f^s");
  }
  const Quaternion t = t_map(f, q, 0.0);
  return inverse(eval(f, t), 0.0) * eval(g, t);
}

RealDifferential real_differential(const SliceSeries& f, const Quaternion& q, double eps) {
  RealDifferential d;
  d.cullen_part = eval_cullen_derivative(f, q);
  if (q.imag_norm() <= eps) {
    d.matrix = right_multiplication(d.cullen_part);
    return d;
  }
  d.spherical_part = spherical_derivative_at(f, q, 0.0);
  const Quaternion unit = ImaginaryUnit(q).value();
  const Vector4 e_real = to_vector(1.0);
  const Vector4 e_unit = to_vector(unit);
  // Projector onto L_I = span(1, I) and its complement.
  const Matrix4 proj = e_real * e_real.transpose() + e_unit * e_unit.transpose();
  d.matrix = right_multiplication(d.cullen_part) * proj +
             right_multiplication(*d.spherical_part) * (Matrix4::Identity() - proj);
  return d;
}

double default_singular_tolerance(const Quaternion& cullen_part) {
  return 1e-8 * (1.0 + std::pow(cullen_part.norm(), 4));
}

bool is_singular(const SliceSeries& f, const Quaternion& q, std::optional<double> tol) {
  const RealDifferential d = real_differential(f, q);
  return std::abs(d.determinant()) < tol.value_or(default_singular_tolerance(d.cullen_part));
}

SphereAffine sphere_affine(const SliceSeries& f, double x, double y) {
  const Quaternion probe = Quaternion::i();
  const Quaternion q = Quaternion(x) + y * probe;
  const Quaternion fq = eval(f, q);
  const Quaternion fqbar = eval(f, q.conj());
  return {(fq + fqbar) * 0.5, -probe * (fq - fqbar) * 0.5};
}

MultiplicityReport find_zero_on_sphere(const SliceSeries& f, const SphereRef& s, double tol) {
  if (!(s.y > 0.0)) throw Error(ErrorCode::kDomain, "find_zero_on_sphere needs y > 0");
  if (std::hypot(s.x, s.y) >= f.radius()) throw Error(ErrorCode::kDomain, "sphere leaves the series domain");

  MultiplicityReport report;
  report.sphere = s;
  SliceSeries g = f;
  const double scale = std::max(1.0, max_coefficient(f));
  const double zero_tol = tol * scale;

  // Spherical factors [(q-x)^2 + y^2].
  for (std::size_t guard = 0; guard <= f.order(); ++guard) {
    if (max_coefficient(g) <= zero_tol) {
      throw Error(ErrorCode::kDegenerate, "series vanishes identically to working order");
    }
    const SphereAffine bc = sphere_affine(g, s.x, s.y);
    if (bc.b.norm() > zero_tol || bc.c.norm() > zero_tol) break;
    g = divide_real_quadratic(g, s.x, s.y).quotient;
    report.spherical += 2;
  }

  // Isolated chain (q - p_1) * (q - p_2) * ...
  const double unit_tol = std::sqrt(tol);
  for (std::size_t guard = 0; guard <= f.order(); ++guard) {
    if (max_coefficient(g) <= zero_tol) break;
    const SphereAffine bc = sphere_affine(g, s.x, s.y);
    if (bc.c.norm() <= zero_tol) break;  // b != 0 alone: no zero on this sphere
    const Quaternion candidate = -bc.b * inverse(bc.c, 0.0);
    if ((candidate * candidate + Quaternion(1.0)).norm() >= unit_tol) break;
    const Quaternion p = Quaternion(s.x) + s.y * ImaginaryUnit(candidate).value();
    if (!report.point) report.point = p;
    g = star_divide_linear(g, p, unit_tol * scale);
    ++report.isolated;
  }

  // Residual witness: |h| sampled over the sphere.
  double min_mod = std::numeric_limits<double>::infinity();
  const SphereAffine bc = sphere_affine(g, s.x, s.y);
  constexpr int kSamples = 64;
  for (int k = 0; k < kSamples; ++k) {
    // Fibonacci points on S^2.
    const double zc = 1.0 - 2.0 * (k + 0.5) / kSamples;
    const double rad = std::sqrt(std::max(0.0, 1.0 - zc * zc));
    const double phi = k * std::numbers::pi * (3.0 - std::sqrt(5.0));
    const Quaternion unit(0.0, rad * std::cos(phi), rad * std::sin(phi), zc);
    min_mod = std::min(min_mod, (bc.b + unit * bc.c).norm());
  }
  report.quotient_min_modulus = min_mod;
  return report;
}

RecenterResult recenter_slice(const SliceSeries& f, const Quaternion& p, std::size_t order,
                              std::optional<ImaginaryUnit> unit) {
  const double new_radius = f.radius() - p.norm();
  if (!(new_radius > 0.0)) throw Error(ErrorCode::kDomain, "recenter point outside the series domain");
  const ImaginaryUnit slice =
      p.imag_norm() > 0.0 ? ImaginaryUnit(p, 0.0) : unit.value_or(ImaginaryUnit::i());
  const Quaternion I = slice.value();

  const std::size_t samples = 4 * std::max<std::size_t>(order, 1);
  const double r = 0.8 * new_radius;
  std::vector<Quaternion> values(samples);
  double max_value = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
    const Quaternion z = r * (Quaternion(std::cos(theta)) + std::sin(theta) * I);
    values[k] = eval(f, p + z);
    max_value = std::max(max_value, values[k].norm());
  }

  // c_m = (1 / (K r^m)) sum_k e^{-I m theta_k} f(p + z_k); the phase sits on the
  // left, where it commutes with z_k^n.
  std::vector<Quaternion> c(order + 1);
  for (std::size_t m = 0; m <= order; ++m) {
    Quaternion acc;
    for (std::size_t k = 0; k < samples; ++k) {
      const std::size_t idx = (m * k) % samples;
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(idx) / static_cast<double>(samples);
      acc += (Quaternion(std::cos(theta)) - std::sin(theta) * I) * values[k];
    }
    c[m] = acc / (static_cast<double>(samples) * std::pow(r, static_cast<double>(m)));
  }

  RecenterResult result{SliceSeries(std::move(c), new_radius).with_tail(std::numeric_limits<double>::infinity()),
                        false, 0.0};
  result.top_coefficient =
      result.series[order].norm() * std::pow(r, static_cast<double>(order)) / std::max(1.0, max_value);
  result.aliasing_warning = result.top_coefficient > 1e-12;
  return result;
}

}  // namespace slicereg
