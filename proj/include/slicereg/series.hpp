#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "slicereg/quaternion.hpp"

namespace slicereg {

inline constexpr std::size_t kDefaultMaxOrder = 256;

/// Truncated slice regular power series f(q) = sum_n q^n a_n on B(0, R).
///
/// Coefficients multiply on the right. `tail()` is an upper bound on
/// |f_exact(q) - f_truncated(q)| for |q| <= 1 (zero for exact polynomials,
/// +inf when unknown); `truncated()` marks series that lost terms either at
/// construction or through the product cap.
class SliceSeries {
 public:
  SliceSeries(std::vector<Quaternion> coeffs, double radius);

  static SliceSeries constant(const Quaternion& c, double radius);
  /// f(q) = q.
  static SliceSeries identity(double radius);
  /// f(q) = q^n c.
  static SliceSeries monomial(std::size_t n, const Quaternion& c, double radius);

  const std::vector<Quaternion>& coeffs() const { return coeffs_; }
  std::size_t order() const { return coeffs_.size() - 1; }
  double radius() const { return radius_; }
  bool truncated() const { return truncated_; }
  double tail() const { return tail_; }

  /// Coefficient a_n, zero past the truncation order.
  Quaternion operator[](std::size_t n) const {
    return n < coeffs_.size() ? coeffs_[n] : Quaternion{};
  }

  SliceSeries with_tail(double tail, bool truncated = true) const;
  SliceSeries with_radius(double radius) const;
  SliceSeries resized(std::size_t order) const;

  /// Sum of |a_n|; bounds |f| on the closed unit ball.
  double coefficient_l1() const;

 private:
  std::vector<Quaternion> coeffs_;
  double radius_;
  bool truncated_ = false;
  double tail_ = 0.0;
};

/// Horner evaluation a_0 + q(a_1 + q(a_2 + ...)). Throws kDomain if |q| >= radius.
Quaternion eval(const SliceSeries& f, const Quaternion& q);

/// Horner evaluation of the Cullen derivative without building the series.
Quaternion eval_cullen_derivative(const SliceSeries& f, const Quaternion& q);

SliceSeries operator+(const SliceSeries& f, const SliceSeries& g);
SliceSeries operator-(const SliceSeries& f, const SliceSeries& g);
/// Constant on the left: c * f has coefficients c a_n.
SliceSeries left_scale(const Quaternion& c, const SliceSeries& f);
/// Constant on the right: f * c has coefficients a_n c (also the pointwise product f(q) c).
SliceSeries right_scale(const SliceSeries& f, const Quaternion& c);
/// f(qs) for real s: coefficients a_n s^n, radius R/s.
SliceSeries dilate(const SliceSeries& f, double s);

/// Regular product, c_n = sum_k a_k b_{n-k}, order capped at `max_order`.
SliceSeries star_mul(const SliceSeries& f, const SliceSeries& g,
                     std::size_t max_order = kDefaultMaxOrder);

/// (f*g)(q) computed pointwise as f(q) g(f(q)^{-1} q f(q)), or 0 when f(q) = 0.
Quaternion star_eval_formula(const SliceSeries& f, const SliceSeries& g, const Quaternion& q,
                             double eps = kDefaultEpsilon);

/// Regular conjugate f^c: coefficientwise quaternion conjugation.
SliceSeries conjugate(const SliceSeries& f);

/// Symmetrization f * f^c, projected onto real coefficients.
SliceSeries symmetrize(const SliceSeries& f, std::size_t max_order = kDefaultMaxOrder);

/// Imaginary magnitude discarded by the projection in `symmetrize`.
double symmetrize_residual(const SliceSeries& f, std::size_t max_order = kDefaultMaxOrder);

/// Regular reciprocal f^{-*} = (f^s)^{-1} f^c through `order` (defaults to f's order).
/// Throws kNonInvertible when |a_0| <= eps.
SliceSeries reciprocal(const SliceSeries& f, std::optional<std::size_t> order = std::nullopt,
                       double eps = kDefaultEpsilon);

/// Term-by-term derivative: coefficients (n+1) a_{n+1}.
SliceSeries cullen_derivative(const SliceSeries& f);

/// (q - conj q)^{-1} (f(q) - f(conj q)). Throws kRealPoint when |Im q| <= eps.
Quaternion spherical_derivative_at(const SliceSeries& f, const Quaternion& q,
                                   double eps = kDefaultEpsilon);

/// h with (q - q0) * h = f. Throws kNonzeroRemainder when |f(q0)| > eps.
SliceSeries star_divide_linear(const SliceSeries& f, const Quaternion& q0,
                               double eps = kDefaultEpsilon);

/// Quotient of f by the real quadratic (q - x)^2 + y^2, and the remainder norm
/// (the size of the linear remainder's coefficients).
struct QuadraticDivision {
  SliceSeries quotient;
  double remainder;
};
QuadraticDivision divide_real_quadratic(const SliceSeries& f, double x, double y);

/// Estimated truncation error of `f` on the closed ball of radius r: the
/// carried tail bound when finite, otherwise a root-test extrapolation from
/// the last coefficients. Zero for untruncated series.
double truncation_tail(const SliceSeries& f, double r);

}  // namespace slicereg
