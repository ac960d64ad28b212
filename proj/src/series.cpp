#include "slicereg/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace slicereg {

namespace {

void require_same_radius(const SliceSeries& f, const SliceSeries& g) {
  if (f.radius() != g.radius()) {
    std::ostringstream msg;
    msg << "radius mismatch: " << f.radius() << " vs " << g.radius();
    throw Error(ErrorCode::kRadiusMismatch, msg.str());
  }
}

// Tail of a product of two series whose tails are tf, tg and whose l1 sums are sf, sg.
double product_tail(double tf, double sf, double tg, double sg) {
  double t = 0.0;
  if (tf > 0.0) t += tf * sg;
  if (tg > 0.0) t += tg * sf;
  if (tf > 0.0 && tg > 0.0) t += tf * tg;
  return t;
}

}  // namespace

SliceSeries::SliceSeries(std::vector<Quaternion> coeffs, double radius)
    : coeffs_(std::move(coeffs)), radius_(radius) {
  if (coeffs_.empty()) coeffs_.emplace_back();
  if (!(radius_ > 0.0)) throw Error(ErrorCode::kDomain, "series radius must be positive");
}

SliceSeries SliceSeries::constant(const Quaternion& c, double radius) { return SliceSeries({c}, radius); }

SliceSeries SliceSeries::identity(double radius) { return SliceSeries({0.0, 1.0}, radius); }

SliceSeries SliceSeries::monomial(std::size_t n, const Quaternion& c, double radius) {
  std::vector<Quaternion> a(n + 1);
  a[n] = c;
  return SliceSeries(std::move(a), radius);
}

SliceSeries SliceSeries::with_tail(double tail, bool truncated) const {
  SliceSeries out = *this;
  out.tail_ = tail;
  out.truncated_ = truncated;
  return out;
}

SliceSeries SliceSeries::with_radius(double radius) const {
  SliceSeries out = *this;
  if (!(radius > 0.0)) throw Error(ErrorCode::kDomain, "series radius must be positive");
  out.radius_ = radius;
  return out;
}

SliceSeries SliceSeries::resized(std::size_t order) const {
  SliceSeries out = *this;
  if (order + 1 < coeffs_.size()) {
    double dropped = 0.0;
    for (std::size_t n = order + 1; n < coeffs_.size(); ++n) dropped += coeffs_[n].norm();
    out.coeffs_.resize(order + 1);
    out.tail_ += dropped;
    out.truncated_ = true;
  } else {
    out.coeffs_.resize(order + 1);
  }
  return out;
}

double SliceSeries::coefficient_l1() const {
  double s = 0.0;
  for (const auto& a : coeffs_) s += a.norm();
  return s;
}

Quaternion eval(const SliceSeries& f, const Quaternion& q) {
  if (q.norm() >= f.radius()) {
    std::ostringstream msg;
    msg << "|q| = " << q.norm() << " outside series domain of radius " << f.radius();
    throw Error(ErrorCode::kDomain, msg.str());
  }
  const auto& a = f.coeffs();
  Quaternion acc = a.back();
  for (std::size_t n = a.size() - 1; n-- > 0;) acc = a[n] + q * acc;
  return acc;
}

Quaternion eval_cullen_derivative(const SliceSeries& f, const Quaternion& q) {
  if (q.norm() >= f.radius()) throw Error(ErrorCode::kDomain, "point outside series domain");
  const auto& a = f.coeffs();
  if (a.size() < 2) return {};
  Quaternion acc = static_cast<double>(a.size() - 1) * a.back();
  for (std::size_t n = a.size() - 1; n-- > 1;) acc = static_cast<double>(n) * a[n] + q * acc;
  return acc;
}

SliceSeries operator+(const SliceSeries& f, const SliceSeries& g) {
  require_same_radius(f, g);
  std::vector<Quaternion> c(std::max(f.coeffs().size(), g.coeffs().size()));
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = f[n] + g[n];
  SliceSeries out(std::move(c), f.radius());
  if (f.truncated() || g.truncated()) out = out.with_tail(f.tail() + g.tail());
  return out;
}

SliceSeries operator-(const SliceSeries& f, const SliceSeries& g) {
  return f + left_scale(-1.0, g);
}

SliceSeries left_scale(const Quaternion& c, const SliceSeries& f) {
  std::vector<Quaternion> out(f.coeffs().size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = c * f[n];
  SliceSeries s(std::move(out), f.radius());
  return f.truncated() ? s.with_tail(f.tail() * c.norm()) : s;
}

SliceSeries right_scale(const SliceSeries& f, const Quaternion& c) {
  std::vector<Quaternion> out(f.coeffs().size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = f[n] * c;
  SliceSeries s(std::move(out), f.radius());
  return f.truncated() ? s.with_tail(f.tail() * c.norm()) : s;
}

SliceSeries dilate(const SliceSeries& f, double s) {
  if (!(s > 0.0)) throw Error(ErrorCode::kDomain, "dilation factor must be positive");
  std::vector<Quaternion> out(f.coeffs().size());
  double p = 1.0;
  for (std::size_t n = 0; n < out.size(); ++n, p *= s) out[n] = f[n] * p;
  SliceSeries g(std::move(out), f.radius() / s);
  // The carried tail is a bound on the unit ball; after dilation it is no longer
  // attached to that ball, so it is only kept when s <= 1.
  if (f.truncated()) {
    g = g.with_tail(s <= 1.0 ? f.tail() : std::numeric_limits<double>::infinity());
  }
  return g;
}

SliceSeries star_mul(const SliceSeries& f, const SliceSeries& g, std::size_t max_order) {
  require_same_radius(f, g);
  const std::size_t full = f.order() + g.order();
  const std::size_t order = std::min(full, max_order);
  std::vector<Quaternion> c(order + 1);
  double dropped = 0.0;
  for (std::size_t n = 0; n <= full; ++n) {
    Quaternion acc;
    const std::size_t k0 = n > g.order() ? n - g.order() : 0;
    const std::size_t k1 = std::min(n, f.order());
    for (std::size_t k = k0; k <= k1; ++k) acc += f[k] * g[n - k];
    if (n <= order) {
      c[n] = acc;
    } else {
      dropped += acc.norm();
    }
  }
  SliceSeries out(std::move(c), f.radius());
  const bool truncated = f.truncated() || g.truncated() || full > order;
  if (truncated) {
    double tail = product_tail(f.tail(), f.coefficient_l1(), g.tail(), g.coefficient_l1());
    out = out.with_tail(tail + dropped);
  }
  return out;
}

Quaternion star_eval_formula(const SliceSeries& f, const SliceSeries& g, const Quaternion& q,
                             double eps) {
  const Quaternion fq = eval(f, q);
  if (fq.norm() <= eps) return {};
  const Quaternion moved = inverse(fq, 0.0) * q * fq;
  return fq * eval(g, moved);
}

SliceSeries conjugate(const SliceSeries& f) {
  std::vector<Quaternion> c(f.coeffs().size());
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = f[n].conj();
  SliceSeries out(std::move(c), f.radius());
  return f.truncated() ? out.with_tail(f.tail()) : out;
}

SliceSeries symmetrize(const SliceSeries& f, std::size_t max_order) {
  SliceSeries s = star_mul(f, conjugate(f), max_order);
  std::vector<Quaternion> c(s.coeffs().size());
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = Quaternion(s[n].w);
  SliceSeries out(std::move(c), f.radius());
  return s.truncated() ? out.with_tail(s.tail()) : out;
}

double symmetrize_residual(const SliceSeries& f, std::size_t max_order) {
  SliceSeries s = star_mul(f, conjugate(f), max_order);
  double worst = 0.0;
  for (const auto& c : s.coeffs()) worst = std::max(worst, c.imag_norm());
  return worst;
}

SliceSeries reciprocal(const SliceSeries& f, std::optional<std::size_t> order, double eps) {
  if (f[0].norm() <= eps) {
    throw Error(ErrorCode::kNonInvertible, "regular reciprocal needs |a_0| > eps");
  }
  const std::size_t n_out = order.value_or(f.order());
  // Real coefficients of f^s through n_out.
  std::vector<double> s(n_out + 1, 0.0);
  for (std::size_t n = 0; n <= n_out; ++n) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= n; ++k) acc += (f[k] * f[n - k].conj()).w;
    s[n] = acc;
  }
  // Commutative inversion of the real series: b_0 = 1/s_0, b_n = -(1/s_0) sum s_k b_{n-k}.
  std::vector<double> b(n_out + 1, 0.0);
  b[0] = 1.0 / s[0];
  for (std::size_t n = 1; n <= n_out; ++n) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) acc += s[k] * b[n - k];
    b[n] = -acc * b[0];
  }
  std::vector<Quaternion> c(n_out + 1);
  for (std::size_t n = 0; n <= n_out; ++n) {
    Quaternion acc;
    for (std::size_t k = 0; k <= n; ++k) acc += b[k] * f[n - k].conj();
    c[n] = acc;
  }
  SliceSeries out(std::move(c), f.radius());
  const bool exact = f.order() == 0 && !f.truncated();
  return exact ? out : out.with_tail(std::numeric_limits<double>::infinity());
}

SliceSeries cullen_derivative(const SliceSeries& f) {
  if (f.order() == 0) return SliceSeries::constant({}, f.radius());
  std::vector<Quaternion> c(f.order());
  for (std::size_t n = 1; n <= f.order(); ++n) c[n - 1] = static_cast<double>(n) * f[n];
  SliceSeries out(std::move(c), f.radius());
  return f.truncated() ? out.with_tail(std::numeric_limits<double>::infinity()) : out;
}

Quaternion spherical_derivative_at(const SliceSeries& f, const Quaternion& q, double eps) {
  if (q.imag_norm() <= eps) {
    throw Error(ErrorCode::kRealPoint, "spherical derivative is undefined at real points");
  }
  const Quaternion qc = q.conj();
  return inverse(q - qc, 0.0) * (eval(f, q) - eval(f, qc));
}

SliceSeries star_divide_linear(const SliceSeries& f, const Quaternion& q0, double eps) {
  // (q - q0) * h = f  <=>  c_n = h_{n-1} - q0 h_n. Solved from the top degree
  // down, h_{n-1} = c_n + q0 h_n, which is stable for |q0| < 1; the leftover
  // c_0 + q0 h_0 equals f(q0).
  const std::size_t n_max = f.order();
  if (n_max == 0) {
    if (f[0].norm() > eps) throw Error(ErrorCode::kNonzeroRemainder, "constant series has no root");
    return SliceSeries::constant({}, f.radius());
  }
  std::vector<Quaternion> h(n_max);
  Quaternion next;  // h_n for the current step
  for (std::size_t n = n_max; n >= 1; --n) {
    h[n - 1] = f[n] + q0 * next;
    next = h[n - 1];
  }
  const double remainder = (f[0] + q0 * h[0]).norm();
  if (remainder > eps) {
    std::ostringstream msg;
    msg << "q0 is not a root: remainder " << remainder;
    throw Error(ErrorCode::kNonzeroRemainder, msg.str());
  }
  SliceSeries out(std::move(h), f.radius());
  return f.truncated() ? out.with_tail(std::numeric_limits<double>::infinity()) : out;
}

QuadraticDivision divide_real_quadratic(const SliceSeries& f, double x, double y) {
  const double p1 = -2.0 * x;
  const double p0 = x * x + y * y;
  const std::size_t n_max = f.order();
  if (n_max < 2) {
    double rem = 0.0;
    for (const auto& c : f.coeffs()) rem += c.norm();
    return {SliceSeries::constant({}, f.radius()), rem};
  }
  std::vector<Quaternion> g(n_max - 1);
  auto g_at = [&](std::size_t n) { return n < g.size() ? g[n] : Quaternion{}; };
  for (std::size_t n = n_max; n >= 2; --n) {
    g[n - 2] = f[n] - p1 * g_at(n - 1) - p0 * g_at(n);
  }
  const Quaternion r1 = f[1] - p1 * g[0] - p0 * g_at(1);
  const Quaternion r0 = f[0] - p0 * g[0];
  SliceSeries quotient(std::move(g), f.radius());
  if (f.truncated()) quotient = quotient.with_tail(std::numeric_limits<double>::infinity());
  return {quotient, r0.norm() + r1.norm()};
}

double truncation_tail(const SliceSeries& f, double r) {
  if (!f.truncated()) return 0.0;
  if (std::isfinite(f.tail()) && r <= 1.0) return f.tail();
  // Root test on the last coefficients: |a_n| <~ lambda^n.
  const std::size_t n_max = f.order();
  const std::size_t window = std::min<std::size_t>(16, n_max);
  double lambda = 0.0;
  for (std::size_t n = n_max + 1 - window; n <= n_max; ++n) {
    if (n == 0) continue;
    const double a = f[n].norm();
    if (a > 0.0) lambda = std::max(lambda, std::pow(a, 1.0 / static_cast<double>(n)));
  }
  const double ratio = lambda * r;
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  if (ratio == 0.0) return 0.0;
  return 10.0 * std::pow(ratio, static_cast<double>(n_max + 1)) / (1.0 - ratio);
}

}  // namespace slicereg
