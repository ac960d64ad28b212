#include "slicereg/verify.hpp"

#include <algorithm>
#include <cmath>

#include "slicereg/sampling.hpp"

namespace slicereg {

namespace {

// g~(q) = (f - v) * H^{-*} with H = 1 - conj(v) * f, pointwise:
// (A * B)(q) = A(q) B(A(q)^{-1} q A(q)) and H^{-*}(p) = H(T_H(p))^{-1}.
class SchwarzNumerator {
 public:
  SchwarzNumerator(const SliceSeries& f, const Quaternion& v) : f_(f), v_(v), h_(left_scale(-v.conj(), f)) {
    std::vector<Quaternion> c = h_.coeffs();
    c[0] += Quaternion(1.0);
    h_ = SliceSeries(std::move(c), f.radius());
  }

  Quaternion h_inverse(const Quaternion& p) const { return inverse(eval(h_, t_map(h_, p, 0.0)), 0.0); }

  Quaternion operator()(const Quaternion& q) const { return times_h_inverse(eval(f_, q) - v_, q); }

  // (A * H^{-*})(q) given A(q).
  Quaternion times_h_inverse(const Quaternion& aq, const Quaternion& q) const {
    if (aq.norm() == 0.0) return {};
    return aq * h_inverse(inverse(aq, 0.0) * q * aq);
  }

 private:
  const SliceSeries& f_;
  Quaternion v_;
  SliceSeries h_;
};

struct SlackTracker {
  double worst = std::numeric_limits<double>::infinity();
  std::optional<Quaternion> point;
  std::size_t count = 0;

  void add(double slack, const Quaternion& q) {
    ++count;
    if (slack < worst) {
      worst = slack;
      point = q;
    }
  }
};

CheckReport finish(std::string id, const SlackTracker& t, double budget) {
  CheckReport r;
  r.theorem_id = std::move(id);
  r.samples = t.count;
  r.worst_slack = t.worst;
  r.worst_point = t.point;
  r.truncation_budget = budget;
  r.verdict = decide(t.worst, budget, t.count);
  return r;
}

double series_budget(const SliceSeries& f, double radius, double sensitivity) {
  return kSlackFloor + sensitivity * truncation_tail(f, radius);
}

// Projected gradient ascent (sign = +1) or descent (sign = -1) of |f|^2 on |q| = r.
Quaternion optimize_on_sphere(const SliceSeries& f, double r, const Quaternion& start, double sign) {
  Quaternion q = r * (start / start.norm());
  auto objective = [&](const Quaternion& p) { return sign * eval(f, p).norm2(); };
  double value = objective(q);
  double step = 0.1 * r;
  for (int it = 0; it < 200 && step > 1e-13 * r; ++it) {
    const Matrix4 jac = real_differential(f, q).matrix;
    Vector4 grad = sign * 2.0 * jac.transpose() * to_vector(eval(f, q));
    const Vector4 radial = to_vector(q) / r;
    grad -= grad.dot(radial) * radial;
    if (grad.norm() < 1e-15) break;
    const Quaternion dir = to_quaternion(grad / grad.norm());
    bool moved = false;
    while (step > 1e-13 * r) {
      Quaternion cand = q + step * dir;
      cand = r * (cand / cand.norm());
      const double cv = objective(cand);
      if (cv > value) {
        q = cand;
        value = cv;
        step = std::min(2.0 * step, r);
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return q;
}

void require_origin_fixed(const SliceSeries& f, double& a) {
  if (f[0].norm() > kDefaultEpsilon) throw Error(ErrorCode::kHypothesis, "f(0) != 0");
  a = f[1].norm();
  if (!(a > 0.0 && a < 1.0)) throw Error(ErrorCode::kHypothesis, "|dc f(0)| must lie in (0, 1)");
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict decide(double worst_slack, double budget, std::size_t samples) {
  if (samples == 0) return Verdict::kInconclusive;
  return worst_slack > -budget ? Verdict::kPass : Verdict::kFail;
}

SliceSeries build_schwarz_numerator(const SliceSeries& f, const Quaternion& q0, std::size_t order) {
  const Quaternion v = eval(f, q0);
  std::vector<Quaternion> a = f.coeffs();
  a[0] -= v;
  SliceSeries numerator(std::move(a), f.radius());
  if (f.truncated()) numerator = numerator.with_tail(f.tail());
  SliceSeries h = left_scale(-v.conj(), f);
  std::vector<Quaternion> c = h.coeffs();
  c[0] += Quaternion(1.0);
  SliceSeries hs(std::move(c), f.radius());
  if (h.truncated()) hs = hs.with_tail(h.tail());
  return star_mul(numerator, reciprocal(hs, order), order);
}

Quaternion schwarz_numerator_eval(const SliceSeries& f, const Quaternion& v, const Quaternion& q) {
  return SchwarzNumerator(f, v)(q);
}

Quaternion variant_p0(const Quaternion& q0, const Quaternion& q1) {
  const Quaternion w = Quaternion(1.0) - q1 * q0;
  return inverse(w) * q1 * w;
}

Quaternion moebius_pair_eval(const Quaternion& q0, const Quaternion& p0, const Quaternion& q) {
  const Quaternion m = regular_moebius_eval(q0, q, 1.0);
  if (m.norm() == 0.0) return {};
  return m * regular_moebius_eval(p0, inverse(m, 0.0) * q * m, 1.0);
}

CheckReport check_schwarz_pick(const SliceSeries& f, const Quaternion& q0, const HarnessParams& params) {
  const Quaternion v = eval(f, q0);
  if (!(v.norm() < 1.0)) throw Error(ErrorCode::kHypothesis, "|f(q0)| must be below 1");
  const SchwarzNumerator numerator(f, v);
  const double budget = series_budget(f, params.sample_radius, 4.0 / std::pow(1.0 - v.norm(), 2));

  SlackTracker all;
  double strict = std::numeric_limits<double>::infinity();
  Sampler sampler(params.seed);
  for (std::size_t n = 0; n < params.samples; ++n) {
    const Quaternion q = sampler.in_ball(params.sample_radius);
    const double slack = regular_moebius_eval(q0, q, 1.0).norm() - numerator(q).norm();
    all.add(slack, q);
    if (distance(q, q0) >= 0.05) strict = std::min(strict, slack);
  }

  const Quaternion dc = eval_cullen_derivative(f, q0);
  const double cullen_slack = 1.0 / (1.0 - q0.norm2()) - numerator.times_h_inverse(dc, q0).norm();
  all.add(cullen_slack, q0);
  std::optional<double> spherical_slack;
  if (q0.imag_norm() > 1e-12) {
    const double lhs = spherical_derivative_at(f, q0, 0.0).norm() /
                       (Quaternion(1.0) - symmetrization_at(f, q0)).norm();
    const Quaternion qb = q0.conj();
    spherical_slack = 1.0 / (Quaternion(1.0) - qb * qb).norm() - lhs;
    all.add(*spherical_slack, q0);
  }

  CheckReport r = finish("schwarz_pick", all, budget);
  r.details.emplace_back("strict_margin", strict);
  r.details.emplace_back("cullen_slack", cullen_slack);
  if (spherical_slack) r.details.emplace_back("spherical_slack", *spherical_slack);
  return r;
}

CheckReport check_variant_noninjective(const SliceSeries& f, const Quaternion& q0, const Quaternion& q1,
                                       const Quaternion& v, const HarnessParams& params) {
  if (!(v.norm() < 1.0)) throw Error(ErrorCode::kHypothesis, "|v| must be below 1");
  const SchwarzNumerator numerator(f, v);
  const Quaternion p0 = variant_p0(q0, q1);
  const double budget = series_budget(f, params.sample_radius, 4.0 / std::pow(1.0 - v.norm(), 2));
  SlackTracker all;
  Sampler sampler(params.seed);
  for (std::size_t n = 0; n < params.samples; ++n) {
    const Quaternion q = sampler.in_ball(params.sample_radius);
    all.add(moebius_pair_eval(q0, p0, q).norm() - numerator(q).norm(), q);
  }
  CheckReport r = finish("variant_noninjective", all, budget);
  r.details.emplace_back("p0_distance_to_q1_sphere", std::abs(p0.norm() - q1.norm()));
  r.details.emplace_back("residual_at_q0", (eval(f, q0) - v).norm());
  return r;
}

CheckReport check_globaltolocal(const SliceSeries& f, const ScanParams& scan, const NewtonParams& newton) {
  double a = 0.0;
  require_origin_fixed(f, a);
  const WitnessScan ws = scan_witnesses(f, scan, newton);
  SlackTracker all;
  for (const auto* list : {&ws.singular, &ws.collisions}) {
    for (const auto& w : *list) all.add(w.q.norm() * w.q_other.norm() - w.value.norm(), w.q);
  }
  const double budget = kSlackFloor + 1e3 * newton.tol + truncation_tail(f, scan.scan_radius);
  CheckReport r = finish("globaltolocal", all, budget);
  r.details.emplace_back("singular_witnesses", static_cast<double>(ws.singular.size()));
  r.details.emplace_back("collision_witnesses", static_cast<double>(ws.collisions.size()));
  r.details.emplace_back("landau_rho", landau_rho(a));
  if (const auto w = ws.closest()) {
    r.details.emplace_back("shell_radius", w->radius);
    r.details.emplace_back("shell_value", w->value.norm());
  }
  return r;
}

CheckReport check_minmax(const SliceSeries& f, const HarnessParams& params) {
  double a = 0.0;
  require_origin_fixed(f, a);
  const double budget = series_budget(f, params.sample_radius, 1.0);
  SlackTracker all;
  double closest = std::numeric_limits<double>::infinity();  // gap to a bound relative to |q|^2

  auto visit = [&](const Quaternion& q) {
    const double r = q.norm();
    const double m = eval(f, q).norm();
    const double lower = r * (a - r) / (1.0 - a * r);
    const double upper = r * (r + a) / (1.0 + a * r);
    all.add(std::min(m - lower, upper - m), q);
    if (r >= 0.05) {
      closest = std::min(closest, (upper - m) / (r * r));
      if (lower > 0.0) closest = std::min(closest, (m - lower) / (r * r));
    }
  };

  Sampler sampler(params.seed);
  for (std::size_t n = 0; n < params.samples; ++n) visit(sampler.in_ball(params.sample_radius));
  for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double r = frac * params.sample_radius / 0.9;
    for (int s = 0; s < 4; ++s) {
      const Quaternion start = sampler.unit();
      visit(optimize_on_sphere(f, r, start, 1.0));
      visit(optimize_on_sphere(f, r, start, -1.0));
    }
  }
  CheckReport r = finish("minmax", all, budget);
  r.equality_flag = closest <= 1e-9;
  r.details.emplace_back("a", a);
  r.details.emplace_back("equality_gap", closest);
  return r;
}

NoninjectiveFixture build_noninjective(std::uint64_t seed, Placement placement, std::size_t degree) {
  Sampler sampler(seed);
  NoninjectiveFixture fx{SliceSeries::constant(0.0, 1.0), sampler.in_ball(0.7), {}, {}};
  switch (placement) {
    case Placement::kGeneric:
      fx.q1 = sampler.in_ball(0.7);
      break;
    case Placement::kConjugate:
      fx.q1 = fx.q0.conj();
      break;
    case Placement::kCoincident:
      fx.q1 = fx.q0;
      break;
  }
  fx.v = sampler.in_ball(0.3);
  std::vector<Quaternion> g(degree + 1);
  for (auto& c : g) c = sampler.gaussian(0.5);
  const SliceSeries p = star_mul(star_mul(SliceSeries({-fx.q0, 1.0}, 1.0), SliceSeries({-fx.q1, 1.0}, 1.0)),
                                 SliceSeries(std::move(g), 1.0));
  const double scale = (0.9 - fx.v.norm()) / p.coefficient_l1();
  std::vector<Quaternion> c = right_scale(p, Quaternion(scale)).coeffs();
  c[0] += fx.v;
  fx.f = SliceSeries(std::move(c), 1.0);
  return fx;
}

SliceSeries mutate(const SliceSeries& f, const Mutation& m) {
  std::vector<Quaternion> c = f.coeffs();
  if (m.coefficient >= c.size()) c.resize(m.coefficient + 1);
  c[m.coefficient] += Quaternion(m.delta);
  const SliceSeries out(std::move(c), f.radius());
  return f.truncated() ? out.with_tail(f.tail()) : out;
}

const std::vector<std::string>& known_theorem_ids() {
  static const std::vector<std::string> ids{"schwarz_pick", "variant_noninjective", "minmax", "globaltolocal"};
  return ids;
}

namespace {

std::vector<std::string> fixtures_for(const std::string& id) {
  if (id == "schwarz_pick") return {"self_map", "moebius"};
  if (id == "variant_noninjective") return {"generic", "conjugate", "coincident"};
  if (id == "minmax") return {"self_map", "extremal"};
  if (id == "globaltolocal") return {"self_map", "extremal"};
  throw Error(ErrorCode::kParse, "unknown theorem_id '" + id + "'");
}

SliceSeries extremal_fixture(Sampler& s) {
  const double a = s.uniform(0.1, 0.9);
  return extremal_phi(a, s.unit());
}

CheckReport run_one(const std::string& id, const std::string& fixture, std::uint64_t seed, std::size_t samples,
                    const std::optional<Mutation>& mutation, const ScanParams& scan, const NewtonParams& newton) {
  const HarnessParams hp{samples, 0.9, seed};
  auto prepare = [&](const SliceSeries& f) { return mutation ? mutate(f, *mutation) : f; };
  Sampler s(seed ^ 0x5eed5eedULL);

  if (id == "schwarz_pick") {
    if (fixture == "self_map") {
      const SliceSeries f = prepare(generate_self_map(seed, 1 + seed % 3));
      return check_schwarz_pick(f, s.in_ball(0.8), hp);
    }
    const Quaternion b = s.in_ball(0.7);
    const SliceSeries f = prepare(regular_moebius_series({b, s.unit(), MoebiusKind::kRegular}));
    return check_schwarz_pick(f, s.in_ball(0.8), hp);
  }
  if (id == "variant_noninjective") {
    const Placement p = fixture == "generic"     ? Placement::kGeneric
                        : fixture == "conjugate" ? Placement::kConjugate
                                                 : Placement::kCoincident;
    const NoninjectiveFixture fx = build_noninjective(seed, p);
    return check_variant_noninjective(prepare(fx.f), fx.q0, fx.q1, fx.v, hp);
  }
  ScanParams sp = scan;
  sp.seed = seed;
  if (id == "minmax") {
    const SliceSeries f = prepare(fixture == "self_map" ? generate_self_map(seed, 1 + seed % 3) : extremal_fixture(s));
    return check_minmax(f, hp);
  }
  const SliceSeries f = prepare(fixture == "self_map" ? generate_self_map(seed, 2) : extremal_fixture(s));
  return check_globaltolocal(f, sp, newton);
}

}  // namespace

std::vector<CheckReport> run_suite(const SuiteSpec& spec, const ScanParams& scan, const NewtonParams& newton) {
  const std::vector<std::string> all = fixtures_for(spec.theorem_id);
  std::vector<std::string> chosen;
  if (spec.fixture == "default") {
    chosen = all;
  } else if (std::find(all.begin(), all.end(), spec.fixture) != all.end()) {
    chosen = {spec.fixture};
  } else {
    throw Error(ErrorCode::kParse, "unknown fixture '" + spec.fixture + "' for " + spec.theorem_id);
  }
  std::vector<CheckReport> out;
  for (std::size_t k = 0; k < spec.seeds; ++k) {
    const std::uint64_t seed = spec.first_seed + k;
    for (const auto& fixture : chosen) {
      CheckReport r = run_one(spec.theorem_id, fixture, seed, spec.samples, spec.mutation, scan, newton);
      r.fixture = fixture;
      r.seed = seed;
      if (spec.mutation) {
        r.details.emplace_back("mutated_coefficient", static_cast<double>(spec.mutation->coefficient));
        r.details.emplace_back("mutation_delta", spec.mutation->delta);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace slicereg
