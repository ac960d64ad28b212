#include "slicereg/landau.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "slicereg/sampling.hpp"

namespace slicereg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_coefficient(const SliceSeries& f) {
  double m = 0.0;
  for (const auto& c : f.coeffs()) m = std::max(m, c.norm());
  return m;
}

Quaternion on_slice(double x, double y, const Quaternion& unit) { return Quaternion(x) + y * unit; }

Witness singular_witness(const SliceSeries& f, const Quaternion& q) {
  Witness w;
  w.kind = WitnessKind::kSingular;
  w.q = q;
  w.q_other = q;
  w.value = eval(f, q);
  w.radius = q.norm();
  return w;
}

// Real polynomial with complex argument: value and derivative.
std::pair<std::complex<double>, std::complex<double>> horner(const std::vector<double>& s,
                                                             std::complex<double> z) {
  std::complex<double> p = s.back();
  std::complex<double> dp = 0.0;
  for (std::size_t n = s.size() - 1; n-- > 0;) {
    dp = dp * z + p;
    p = p * z + s[n];
  }
  return {p, dp};
}

std::vector<std::complex<double>> real_series_roots(const std::vector<double>& s, double r_max) {
  std::vector<std::complex<double>> roots;
  if (s.size() < 2) return roots;
  constexpr int kRadii = 12;
  constexpr int kAngles = 24;
  for (int i = 0; i < kRadii; ++i) {
    for (int j = 0; j <= kAngles; ++j) {
      const double rad = r_max * (i + 0.5) / kRadii;
      const double theta = std::numbers::pi * j / kAngles;
      std::complex<double> z = std::polar(rad, theta);
      bool ok = false;
      for (int it = 0; it < 100; ++it) {
        const auto [p, dp] = horner(s, z);
        if (std::abs(dp) == 0.0) break;
        const std::complex<double> step = p / dp;
        z -= step;
        if (!(std::abs(z) < 1.5 * r_max)) break;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) {
          ok = true;
          break;
        }
        ok = it > 60 && std::abs(step) < 1e-9;
      }
      if (!ok || !(std::abs(z) < r_max)) continue;
      double scale = 0.0;
      double zn = 1.0;
      for (double c : s) {
        scale += std::abs(c) * zn;
        zn *= std::abs(z);
      }
      if (std::abs(horner(s, z).first) > 1e-10 * scale) continue;
      if (z.imag() < 0.0) z = std::conj(z);
      const bool seen = std::any_of(roots.begin(), roots.end(),
                                    [&](const auto& w) { return std::abs(w - z) < 1e-7; });
      if (!seen) roots.push_back(z);
    }
  }
  return roots;
}

// Gauss-Newton on a real zero of g (four residuals, one unknown).
std::optional<double> polish_real_zero(const SliceSeries& g, double x, double r_max, double tol) {
  for (int it = 0; it < 40; ++it) {
    const Quaternion gx = eval(g, Quaternion(x));
    if (gx.norm() <= tol) return x;
    const Quaternion d = eval_cullen_derivative(g, Quaternion(x));
    const double dd = d.norm2();
    if (dd == 0.0) return std::nullopt;
    x -= (gx.w * d.w + gx.x * d.x + gx.y * d.y + gx.z * d.z) / dd;
    if (!(std::abs(x) < r_max)) return std::nullopt;
  }
  return eval(g, Quaternion(x)).norm() <= tol ? std::optional<double>(x) : std::nullopt;
}

// Zero of the spherical derivative c(x, y) / y near (x, y), by Gauss-Newton in (x, y).
std::optional<SphereRef> polish_spherical_zero(const SliceSeries& f, double x, double y, double r_max,
                                               double tol) {
  auto residual = [&](double xx, double yy) { return to_vector(sphere_affine(f, xx, yy).c / yy); };
  for (int it = 0; it < 40; ++it) {
    if (!(y > 1e-6) || !(std::hypot(x, y) < r_max)) return std::nullopt;
    const Vector4 r = residual(x, y);
    if (r.norm() <= tol) return SphereRef(x, y);
    const double h = 1e-7;
    Eigen::Matrix<double, 4, 2> jac;
    jac.col(0) = (residual(x + h, y) - residual(x - h, y)) / (2 * h);
    jac.col(1) = (residual(x, y + h) - residual(x, y - h)) / (2 * h);
    const Eigen::Vector2d step = jac.colPivHouseholderQr().solve(-r);
    if (!step.allFinite()) return std::nullopt;
    x += step[0];
    y += step[1];
  }
  if (!(y > 1e-6) || !(std::hypot(x, y) < r_max)) return std::nullopt;
  return residual(x, y).norm() <= tol ? std::optional<SphereRef>(SphereRef(x, y)) : std::nullopt;
}

std::vector<Witness> spherical_zero_witnesses(const SliceSeries& f, double r_max, std::size_t n) {
  std::vector<Witness> out;
  if (n < 4) return out;
  const double scale = std::max(1.0, max_coefficient(f));
  const double step = 2.0 * r_max / static_cast<double>(n);
  const std::size_t ny = n / 2;
  // grid[i][j] at x = -r_max + (i + 0.5) step, y = (j + 0.5) step
  std::vector<std::vector<double>> grid(n, std::vector<double>(ny, kInf));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const double x = -r_max + (i + 0.5) * step;
      const double y = (j + 0.5) * step;
      if (std::hypot(x, y) >= r_max) continue;
      grid[i][j] = (sphere_affine(f, x, y).c / y).norm();
    }
  }
  std::vector<SphereRef> found;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const double v = grid[i][j];
      if (!std::isfinite(v)) continue;
      bool local_min = true;
      for (int di = -1; di <= 1 && local_min; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const long ii = static_cast<long>(i) + di;
          const long jj = static_cast<long>(j) + dj;
          if (ii < 0 || jj < 0 || ii >= static_cast<long>(n) || jj >= static_cast<long>(ny)) continue;
          if (grid[ii][jj] < v) {
            local_min = false;
            break;
          }
        }
      }
      if (!local_min) continue;
      const auto z = polish_spherical_zero(f, -r_max + (i + 0.5) * step, (j + 0.5) * step, r_max, 1e-10 * scale);
      if (!z) continue;
      const bool seen = std::any_of(found.begin(), found.end(), [&](const SphereRef& s) {
        return std::hypot(s.x - z->x, s.y - z->y) < 1e-7;
      });
      if (seen) continue;
      found.push_back(*z);
      out.push_back(singular_witness(f, z->point(ImaginaryUnit::i())));
    }
  }
  return out;
}

std::optional<Witness> confirm_singular(const SliceSeries& f, const SliceSeries& g, const Quaternion& q,
                                        double r_max) {
  const double scale = std::max(1.0, max_coefficient(g));
  NewtonParams polish;
  polish.tol = 1e-13 * scale;
  const PreimageResult z = solve_preimage(g, Quaternion(), q, r_max, polish);
  if (z.residual <= 1e-9 * scale) return singular_witness(f, z.point);
  const auto coords = slice_decompose(q);
  if (coords.y > 1e-6) {
    const auto s = polish_spherical_zero(f, coords.x, coords.y, r_max, 1e-10 * std::max(1.0, max_coefficient(f)));
    if (s) return singular_witness(f, s->point(ImaginaryUnit::i()));
  }
  return std::nullopt;
}

}  // namespace

double landau_rho(double a) {
  if (!(a > 0.0 && a < 1.0)) throw Error(ErrorCode::kDomain, "landau_rho needs 0 < a < 1");
  return a / (1.0 + std::sqrt((1.0 - a) * (1.0 + a)));
}

std::size_t moebius_order_for(double center_norm) {
  if (!(center_norm > 0.0)) return kDefaultMoebiusOrder;
  const double n = std::ceil(std::log(1e-17) / std::log(center_norm));
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::min(n, 1e6)), kDefaultMoebiusOrder, 1024);
}

SliceSeries extremal_phi(double a, const Quaternion& u, std::size_t order) {
  if (!(a > 0.0 && a < 1.0)) throw Error(ErrorCode::kDomain, "extremal_phi needs 0 < a < 1");
  if (order == 0) order = moebius_order_for(a) + 1;
  if (order < 2) throw Error(ErrorCode::kDomain, "extremal_phi needs order >= 2");
  const MoebiusSpec spec{-a * u.conj(), u, MoebiusKind::kRegular};
  const SliceSeries m = regular_moebius_series(spec, order - 1);
  std::vector<Quaternion> c(order + 1);
  for (std::size_t n = 0; n < order; ++n) c[n + 1] = m[n];
  const SliceSeries phi(std::move(c), 1.0);
  return m.truncated() ? phi.with_tail(m.tail()) : phi;
}

PreimageResult solve_preimage(const SliceSeries& f, const Quaternion& v, const Quaternion& start,
                              double limit, const NewtonParams& params) {
  limit = std::min(limit, f.radius());
  PreimageResult out{start, kInf, false};
  if (!(start.norm() < limit)) return out;
  Quaternion q = start;
  Quaternion residual = eval(f, q) - v;
  double res = residual.norm();
  for (int it = 0; it < params.max_iterations && res >= params.tol; ++it) {
    const Eigen::FullPivLU<Matrix4> lu(real_differential(f, q).matrix);
    if (lu.rank() < 4) break;
    const Quaternion step = to_quaternion(lu.solve(-to_vector(residual)));
    double t = 1.0;
    bool improved = false;
    for (int h = 0; h <= params.max_halvings; ++h, t *= 0.5) {
      const Quaternion cand = q + t * step;
      if (!(cand.norm() < limit)) continue;
      const Quaternion r = eval(f, cand) - v;
      if (r.norm() < res) {
        q = cand;
        residual = r;
        res = r.norm();
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  out.point = q;
  out.residual = res;
  out.converged = res < params.tol;
  return out;
}

std::optional<Witness> WitnessScan::closest() const {
  std::optional<Witness> best;
  for (const auto* list : {&singular, &collisions}) {
    for (const auto& w : *list) {
      if (!best || w.radius < best->radius) best = w;
    }
  }
  return best;
}

std::vector<Witness> cullen_zero_witnesses(const SliceSeries& f, double r_max) {
  std::vector<Witness> out;
  if (f.order() < 2) return out;
  r_max = std::min(r_max, 0.999 * f.radius());
  const SliceSeries g = cullen_derivative(f);
  const double scale = std::max(1.0, max_coefficient(g));
  const SliceSeries gs = symmetrize(g);
  std::vector<double> s;
  s.reserve(gs.coeffs().size());
  for (const auto& c : gs.coeffs()) s.push_back(c.w);
  while (s.size() > 1 && s.back() == 0.0) s.pop_back();

  for (const auto& z : real_series_roots(s, r_max)) {
    const double x = z.real();
    const double y = z.imag();
    if (y <= 1e-6) {
      if (const auto xr = polish_real_zero(g, x, r_max, 1e-10 * scale)) {
        out.push_back(singular_witness(f, Quaternion(*xr)));
      }
      continue;
    }
    const SphereAffine bc = sphere_affine(g, x, y);
    if (bc.b.norm() <= 1e-6 * scale && bc.c.norm() <= 1e-6 * scale) {
      // Spherical zero: every point of the sphere is singular.
      out.push_back(singular_witness(f, on_slice(x, y, Quaternion::i())));
      continue;
    }
    if (bc.c.norm() == 0.0) continue;
    const Quaternion candidate = -bc.b * inverse(bc.c, 0.0);
    if (candidate.imag_norm() <= 1e-12) continue;
    const Quaternion start = on_slice(x, y, ImaginaryUnit(candidate, 0.0).value());
    if (auto w = confirm_singular(f, g, start, r_max)) out.push_back(*w);
  }
  return out;
}

WitnessScan scan_witnesses(const SliceSeries& f, const ScanParams& params, const NewtonParams& newton) {
  WitnessScan scan;
  const double r_max = std::min(params.scan_radius, 0.999 * f.radius());
  if (f.order() < 2) return scan;  // affine maps: no singular points, no collisions
  const SliceSeries g = cullen_derivative(f);
  const double fscale = std::max(1.0, max_coefficient(f));

  scan.singular = cullen_zero_witnesses(f, r_max);
  for (auto& w : spherical_zero_witnesses(f, r_max, params.spherical_grid)) scan.singular.push_back(w);

  auto best_radius = [&] {
    const auto b = scan.closest();
    return b ? b->radius : kInf;
  };

  // Shell scan of the differential; flagged points seed a refinement.
  Sampler det_sampler(params.seed);
  for (std::size_t k = 1; k <= params.shells; ++k) {
    const double r = static_cast<double>(k) * params.resolution();
    if (r >= r_max || r >= best_radius()) break;
    for (std::size_t n = 0; n < params.points_per_sphere; ++n) {
      const Quaternion q = r * det_sampler.unit();
      if (!is_singular(f, q)) continue;
      if (!scan.det_shell) scan.det_shell = r;
      if (auto w = confirm_singular(f, g, q, r_max)) scan.singular.push_back(*w);
    }
  }

  // Collision scan: sphere-mates, antipodes and random seeds.
  Sampler sampler(params.seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t j = 0; j < params.collision_shells; ++j) {
    const double r = r_max * (static_cast<double>(j) + 0.5) / static_cast<double>(params.collision_shells);
    for (std::size_t n = 0; n < params.collision_points; ++n) {
      const Quaternion q = r * sampler.unit();
      const Quaternion v = eval(f, q);
      const auto coords = slice_decompose(q);
      std::vector<Quaternion> seeds{q.conj(), -q};
      for (int m = 0; m < 2; ++m) seeds.push_back(on_slice(coords.x, coords.y, sampler.imaginary_unit()));
      for (std::size_t m = 0; m < params.collision_random_seeds; ++m) seeds.push_back(sampler.in_ball(r_max));
      for (const auto& s : seeds) {
        const PreimageResult p = solve_preimage(f, v, s, r_max, newton);
        if (!p.converged || distance(p.point, q) <= 1e-6 * fscale) continue;
        Witness w;
        w.kind = WitnessKind::kCollision;
        w.q = q;
        w.q_other = p.point;
        w.value = v;
        w.gap = p.residual;
        w.radius = std::max(q.norm(), p.point.norm());
        scan.collisions.push_back(w);
        break;
      }
    }
  }
  return scan;
}

CoverageReport verify_covering(const SliceSeries& f, double r, double t, const NewtonParams& newton,
                               std::size_t targets, std::uint64_t seed) {
  if (!(r > 0.0 && r <= f.radius())) throw Error(ErrorCode::kDomain, "verify_covering needs 0 < r <= radius");
  CoverageReport report;
  report.source_radius = r;
  report.target_radius = t;
  report.center = f[0];
  report.targets_total = targets;
  const Quaternion d = f[1];
  const Quaternion dinv = d.norm() > 0.0 ? inverse(d, 0.0) : Quaternion();
  Sampler sampler(seed);
  for (std::size_t k = 0; k < targets; ++k) {
    const double radius = t * std::pow(static_cast<double>(k + 1) / static_cast<double>(targets), 0.25);
    const Quaternion w = radius * sampler.unit();
    const Quaternion v = report.center + w;
    Quaternion start = w * dinv;
    if (start.norm() >= 0.999 * r) start = start * (0.999 * r / start.norm());
    PreimageResult p = solve_preimage(f, v, start, r, newton);
    if (!p.converged) {
      // Continuation along s -> f(0) + s w.
      Quaternion q;
      for (int s = 1; s <= newton.continuation_steps; ++s) {
        const double frac = static_cast<double>(s) / newton.continuation_steps;
        p = solve_preimage(f, report.center + frac * w, q, r, newton);
        if (!p.converged) break;
        q = p.point;
      }
    }
    if (p.converged) {
      ++report.targets_hit;
      report.max_preimage_residual = std::max(report.max_preimage_residual, p.residual);
    } else {
      report.failures.push_back(v);
    }
  }
  return report;
}

double selfmap_margin(const SliceSeries& f, double radius, std::size_t points, std::uint64_t seed) {
  return 1.0 - (max_modulus_on_sphere(f, radius, points, seed) + truncation_tail(f, radius));
}

LandauResult landau_certify(const SliceSeries& f, const LandauParams& params) {
  if (f[0].norm() > params.zero_tolerance) throw Error(ErrorCode::kHypothesis, "f(0) != 0");
  LandauResult result;
  result.a = f[1].norm();
  if (!(result.a > 0.0 && result.a < 1.0)) {
    throw Error(ErrorCode::kHypothesis, "|dc f(0)| must lie in (0, 1)");
  }
  if (f.radius() < 1.0) throw Error(ErrorCode::kHypothesis, "series must be regular on the unit ball");
  result.selfmap_margin = selfmap_margin(f, params.selfmap_radius, params.selfmap_points, params.scan.seed);
  if (!(result.selfmap_margin > 0.0)) throw Error(ErrorCode::kHypothesis, "self-map check failed");
  result.rho = landau_rho(result.a);

  InjectivityReport& inj = result.injectivity;
  inj.lower_bound = result.rho;
  inj.grid_resolution = params.scan.resolution();
  const WitnessScan scan = scan_witnesses(f, params.scan, params.newton);
  if (const auto w = scan.closest(); w && w->radius < 1.0) {
    inj.upper_bound = w->radius;
    inj.witness = w;
    inj.method = w->kind == WitnessKind::kSingular ? InjectivityMethod::kSingularScan
                                                   : InjectivityMethod::kCollisionScan;
  }
  if (params.coverage_targets > 0) {
    result.coverage = verify_covering(f, result.rho, params.coverage_fraction * result.rho * result.rho,
                                      params.newton, params.coverage_targets, params.scan.seed);
  }
  return result;
}

LandauResult landaubd_apply(const SliceSeries& f, double R, double C, const LandauParams& params) {
  if (!(R > 0.0 && R <= f.radius())) throw Error(ErrorCode::kDomain, "landaubd_apply needs 0 < R <= radius");
  if (!(C > 0.0)) throw Error(ErrorCode::kDomain, "landaubd_apply needs C > 0");
  std::vector<Quaternion> c(f.coeffs().size());
  double rn = 1.0;
  for (std::size_t n = 1; n < c.size(); ++n) {
    rn *= R;
    c[n] = f[n] * (rn / C);
  }
  SliceSeries g(std::move(c), f.radius() / R);
  if (f.truncated()) g = g.with_tail(R <= 1.0 ? f.tail() / C : kInf);

  LandauResult result = landau_certify(g, params);
  const Quaternion f0 = f[0];
  InjectivityReport& inj = result.injectivity;
  inj.lower_bound *= R;
  inj.upper_bound *= R;
  inj.grid_resolution *= R;
  if (inj.witness) {
    Witness& w = *inj.witness;
    w.q = w.q * R;
    w.q_other = w.q_other * R;
    w.value = f0 + C * w.value;
    w.gap *= C;
    w.radius *= R;
  }
  CoverageReport& cov = result.coverage;
  cov.source_radius *= R;
  cov.target_radius *= C;
  cov.center = f0;
  cov.max_preimage_residual *= C;
  for (auto& v : cov.failures) v = f0 + C * v;
  return result;
}

BlochCertificate bloch_landau(const SliceSeries& f, const ImaginaryUnit& slice, const BlochParams& params) {
  if (!(f.radius() > 1.0)) throw Error(ErrorCode::kHypothesis, "bloch_landau needs a series regular beyond the unit ball");
  if (std::abs(f[1].norm() - 1.0) > 1e-10) throw Error(ErrorCode::kHypothesis, "|dc f(0)| must equal 1");
  if (params.r_grid < 2 || params.circle_points < 1) throw Error(ErrorCode::kDomain, "bloch grid too coarse");

  BlochCertificate cert;
  cert.slice = slice;
  const Quaternion I = slice.value();
  const SliceSeries g = cullen_derivative(f);
  const double threshold = 1.0 - 1e-10;

  auto circle_max = [&](double r, Quaternion* arg) {
    double best = -1.0;
    for (std::size_t k = 0; k < params.circle_points; ++k) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(params.circle_points);
      const Quaternion q = r * (Quaternion(std::cos(theta)) + std::sin(theta) * I);
      const double m = eval(g, q).norm();
      if (m > best) {
        best = m;
        if (arg) *arg = q;
      }
    }
    return best;
  };
  auto h = [&](double r) { return (1.0 - r) * circle_max(r, nullptr); };

  const std::size_t n = params.r_grid;
  std::size_t last = 0;
  int crossings = 0;
  bool above = true;
  for (std::size_t k = 0; k <= n; ++k) {
    const double r = static_cast<double>(k) / static_cast<double>(n);
    const bool now = h(r) >= threshold;
    if (now) last = k;
    if (now != above) ++crossings;
    above = now;
  }
  if (crossings > 1) cert.warnings.push_back("h(r) crosses 1 more than once on the r grid; r0 is grid dependent");
  double lo = static_cast<double>(last) / static_cast<double>(n);
  double hi = static_cast<double>(last + 1) / static_cast<double>(n);
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) >= threshold ? lo : hi) = mid;
  }
  cert.r0 = lo;
  if (cert.r0 > 0.0) circle_max(cert.r0, &cert.p);
  cert.rho0 = 0.5 * (1.0 - cert.r0);
  cert.center = eval(f, cert.p);

  SliceSeries fp = f;
  if (cert.r0 > 0.0) {
    const RecenterResult rc = recenter_slice(f, cert.p, params.recenter_order, slice);
    if (rc.aliasing_warning) cert.warnings.push_back("recentered series may be aliased; raise recenter_order");
    fp = rc.series;
  }

  cert.rho = landau_rho(0.25);
  cert.inner_radius = cert.rho0 * cert.rho;
  cert.covered_radius = 2.0 * cert.rho * cert.rho;

  LandauParams local;
  local.scan = params.scan;
  local.scan.scan_radius = std::min(local.scan.scan_radius, 1.05 * cert.rho);
  local.newton = params.newton;
  local.coverage_targets = 0;
  cert.local = landaubd_apply(fp, cert.rho0, 2.0, local);
  cert.measured_a = cert.local.a;
  const auto& w = cert.local.injectivity.witness;
  cert.injectivity_verified = !w || w->radius >= cert.inner_radius;
  cert.local.coverage = verify_covering(fp, cert.inner_radius, 0.99 * cert.covered_radius, params.newton,
                                        params.coverage_targets, params.scan.seed);
  cert.coverage_verified = cert.local.coverage.complete();
  return cert;
}

SliceSeries generate_self_map(std::uint64_t seed, std::size_t k, std::size_t order) {
  Sampler sampler(seed);
  SliceSeries f = SliceSeries::identity(1.0);
  for (std::size_t i = 0; i < k; ++i) {
    const Quaternion p = sampler.uniform(0.05, 0.6) * sampler.unit();
    f = star_mul(f, regular_moebius_series({p, 1.0, MoebiusKind::kRegular}, order), order);
  }
  return right_scale(f, sampler.unit());
}

}  // namespace slicereg
