#include "doctest.h"

#include <chrono>

#include "slicereg/landau.hpp"
#include "test_support.hpp"

using namespace slicereg;
using namespace slicereg::testing;

namespace {

// Phi_u pointwise from the closed-form Moebius map, independent of the series.
Quaternion phi_oracle(double a, const Quaternion& u, const Quaternion& q) {
  return q * regular_moebius_eval(-a * u.conj(), q, u);
}

template <typename F>
ErrorCode code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kParse;
}

LandauParams quick_params() {
  LandauParams p;
  p.scan.shells = 200;
  p.scan.points_per_sphere = 16;
  p.coverage_targets = 60;
  return p;
}

}  // namespace

TEST_CASE("landau_rho") {
  CHECK(std::abs(landau_rho(0.25) - (4.0 - std::sqrt(15.0))) < 1e-15);
  CHECK(std::abs(landau_rho(0.5) - (2.0 - std::sqrt(3.0))) < 1e-15);
  CHECK(std::abs(landau_rho(1e-6) / 1e-6 - 0.5) < 1e-9);
  Sampler s(11);
  for (int n = 0; n < 100; ++n) {
    const double a = s.uniform(1e-3, 1.0 - 1e-3);
    const double r = landau_rho(a);
    CHECK(std::abs((a - r) / (1 - a * r) - r) < 1e-14);
    // -M_a(rho) = rho
    CHECK(std::abs(-classical_eval(Quaternion(a), Quaternion(r)).w - r) < 1e-12);
  }
  for (double a : {0.0, 1.0, -0.5, 2.0}) {
    CHECK(code_of([&] { landau_rho(a); }) == ErrorCode::kDomain);
  }
}

TEST_CASE("extremal_phi matches the closed form") {
  Sampler s(12);
  for (double a : {0.1, 0.25, 0.5, 0.9}) {
    const Quaternion u = s.unit();
    const SliceSeries phi = extremal_phi(a, u);
    CHECK(phi[0] == Quaternion{});
    CHECK(std::abs(phi[1].norm() - a) < 1e-15);
    for (int n = 0; n < 20; ++n) {
      const Quaternion q = s.in_ball(0.8);
      CHECK((eval(phi, q) - phi_oracle(a, u, q)).norm() < 1e-12);
    }
    const double rho = landau_rho(a);
    const Quaternion q0 = -rho * u.conj();
    CHECK(std::abs(eval(phi, q0).norm() - rho * rho) < 1e-12);
    CHECK(eval_cullen_derivative(phi, q0).norm() < 1e-10);
  }
}

TEST_CASE("extremal_phi real profile") {
  // Phi(q) = -q M_a(q) is Phi_u with u = -1.
  const double a = 0.5;
  const double rho = landau_rho(a);
  CHECK(std::abs(rho - (2.0 - std::sqrt(3.0))) < 1e-15);
  const SliceSeries phi = extremal_phi(a, Quaternion(-1.0));
  CHECK(eval_cullen_derivative(phi, rho).norm() < 1e-10);
  CHECK((eval(phi, rho) - Quaternion(rho * rho)).norm() < 1e-14);
  const double eps = 1e-3;
  double prev = eval(phi, -1.0 + eps).w;
  for (double x = -1.0 + 2 * eps; x < rho; x += eps) {
    const double v = eval(phi, x).w;
    CHECK(v > prev);
    prev = v;
  }
  prev = eval(phi, rho + eps).w;
  for (double x = rho + 2 * eps; x < 1.0 - eps; x += eps) {
    const double v = eval(phi, x).w;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("solve_preimage") {
  const SliceSeries id = SliceSeries::identity(1.0);
  const PreimageResult p = solve_preimage(id, Quaternion(0.1, 0.2, -0.3, 0.1), Quaternion(), 1.0);
  CHECK(p.converged);
  CHECK(p.residual == 0.0);

  Sampler s(13);
  const SliceSeries f = generate_self_map(3, 2);
  for (int n = 0; n < 20; ++n) {
    const Quaternion q = s.in_ball(0.2);
    const PreimageResult r = solve_preimage(f, eval(f, q), Quaternion(), 0.9);
    REQUIRE(r.converged);
    CHECK(r.residual < 1e-12);
  }
}

TEST_CASE("cullen zeros of the extremal") {
  Sampler s(14);
  for (double a : {0.25, 0.5, 0.9}) {
    const Quaternion u = s.unit();
    const SliceSeries phi = extremal_phi(a, u);
    const auto ws = cullen_zero_witnesses(phi, 0.97);
    REQUIRE(ws.size() == 1);
    CHECK(distance(ws[0].q, -landau_rho(a) * u.conj()) < 1e-8);
  }
  // Real critical point: u = -1.
  const auto ws = cullen_zero_witnesses(extremal_phi(0.5, Quaternion(-1.0)), 0.97);
  REQUIRE(ws.size() == 1);
  CHECK(std::abs(ws[0].q.w - landau_rho(0.5)) < 1e-8);
  CHECK(ws[0].q.imag_norm() == 0.0);
}

TEST_CASE("spherical derivative zeros are singular witnesses") {
  // f = q + c q^2: ds f(x + yI) = 1 + 2 c x vanishes on the plane x = -1/(2c).
  const double c = 0.8;
  const SliceSeries f({0.0, 1.0, c}, 2.0);
  ScanParams p;
  p.shells = 100;
  p.collision_shells = 0;
  const WitnessScan scan = scan_witnesses(f, p);
  const auto w = scan.closest();
  REQUIRE(w);
  CHECK(w->kind == WitnessKind::kSingular);
  // dc f = 1 + 2cq vanishes at -1/(2c) = -0.625, which is also the nearest point of {x = -0.625}.
  CHECK(std::abs(w->radius - 1.0 / (2 * c)) < 1e-8);
  CHECK(std::abs(real_differential(f, w->q).determinant()) < 1e-12);
}

TEST_CASE("verify_covering") {
  const SliceSeries id = SliceSeries::identity(1.0);
  const CoverageReport all = verify_covering(id, 0.5, 0.49, {}, 100);
  CHECK(all.complete());
  CHECK(all.max_preimage_residual == 0.0);

  const double a = 0.5;
  const double rho = landau_rho(a);
  Sampler s(15);
  const SliceSeries phi = extremal_phi(a, s.unit());
  const CoverageReport c = verify_covering(phi, rho, 0.99 * rho * rho, {}, 300);
  CHECK(c.targets_hit == c.targets_total);
  CHECK(c.max_preimage_residual < 1e-12);
  CHECK(c.failures.empty());

  // Beyond the image bound some targets must fail.
  const double r = 0.3;
  const double t = 1.05 * r * (a + r) / (1 + a * r);
  const CoverageReport out = verify_covering(phi, r, t, {}, 300);
  CHECK(out.targets_hit < out.targets_total);
  CHECK(out.failures.size() == out.targets_total - out.targets_hit);
}

TEST_CASE("landau_certify on extremals") {
  Sampler s(16);
  const double a = 0.5;
  const double rho = landau_rho(a);
  const Quaternion u = s.unit();
  LandauParams p = quick_params();
  const LandauResult r = landau_certify(extremal_phi(a, u), p);
  CHECK(r.rho == rho);
  CHECK(r.injectivity.lower_bound == rho);
  CHECK(r.injectivity.upper_bound - rho < r.injectivity.grid_resolution);
  CHECK(r.injectivity.lower_bound <= r.injectivity.upper_bound + r.injectivity.grid_resolution);
  REQUIRE(r.injectivity.witness);
  CHECK(r.injectivity.method == InjectivityMethod::kSingularScan);
  CHECK(std::abs(r.injectivity.witness->value.norm() - rho * rho) < 1e-8);
  CHECK(r.coverage.complete());
}

TEST_CASE("landau_certify on a scaled rotation") {
  Sampler s(17);
  const Quaternion c = 0.6 * s.unit();
  const SliceSeries f({0.0, c}, 1.0);
  const LandauResult r = landau_certify(f, quick_params());
  CHECK(r.injectivity.lower_bound == doctest::Approx(landau_rho(0.6)).epsilon(1e-14));
  CHECK_FALSE(r.injectivity.witness);
  CHECK(r.injectivity.upper_bound == 1.0);
  CHECK(r.coverage.complete());
}

TEST_CASE("landau_certify hypotheses") {
  const LandauParams p = quick_params();
  CHECK(code_of([&] { landau_certify(SliceSeries({0.1, 0.5}, 1.0), p); }) == ErrorCode::kHypothesis);
  CHECK(code_of([&] { landau_certify(SliceSeries({0.0, 1.0}, 1.0), p); }) == ErrorCode::kHypothesis);
  CHECK(code_of([&] { landau_certify(SliceSeries({0.0, 0.0, 0.5}, 1.0), p); }) == ErrorCode::kHypothesis);
  CHECK(code_of([&] { landau_certify(SliceSeries({0.0, 0.5, 0.6}, 1.0), p); }) == ErrorCode::kHypothesis);
}

TEST_CASE("landaubd_apply") {
  Sampler s(18);
  const double a = 0.5;
  const double rho = landau_rho(a);
  const Quaternion u = s.unit();
  const SliceSeries phi = extremal_phi(a, u);
  const LandauParams p = quick_params();

  const LandauResult direct = landau_certify(phi, p);
  const LandauResult same = landaubd_apply(phi.with_radius(1.5), 1.0, 1.0, p);
  CHECK(same.injectivity.lower_bound == direct.injectivity.lower_bound);
  CHECK(std::abs(same.injectivity.upper_bound - direct.injectivity.upper_bound) < 1e-12);
  CHECK(same.coverage.targets_hit == direct.coverage.targets_hit);

  // f(q) = 2 Phi(q / 2) on B(0, 2).
  std::vector<Quaternion> c(phi.coeffs().size());
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = phi[n] * (2.0 / std::pow(2.0, static_cast<double>(n)));
  const SliceSeries f(std::move(c), 2.0);
  const LandauResult big = landaubd_apply(f, 2.0, 2.0, p);
  CHECK(std::abs(big.injectivity.lower_bound - 2 * rho) < 1e-14);
  CHECK(std::abs(big.coverage.target_radius - 0.99 * 2 * rho * rho) < 1e-14);
  CHECK(std::abs(big.coverage.source_radius - 2 * rho) < 1e-14);
  CHECK(std::abs(big.injectivity.upper_bound - 2 * rho) < 2 * big.injectivity.grid_resolution);
  CHECK(big.coverage.complete());

  // Scaling f by lambda together with C leaves the radii unchanged.
  const double lambda = 3.5;
  const LandauResult scaled = landaubd_apply(left_scale(Quaternion(lambda), f), 2.0, 2.0 * lambda, p);
  CHECK(std::abs(scaled.injectivity.lower_bound - big.injectivity.lower_bound) < 1e-14);
  CHECK(std::abs(scaled.injectivity.upper_bound - big.injectivity.upper_bound) < 1e-10);
  CHECK(std::abs(scaled.coverage.target_radius - lambda * big.coverage.target_radius) < 1e-13);

  // Constant term is carried to the covered ball's center.
  const SliceSeries shifted = f + SliceSeries::constant(Quaternion(0.0, 0.3, 0.0, 0.0), 2.0);
  const LandauResult sh = landaubd_apply(shifted, 2.0, 2.0, p);
  CHECK(sh.coverage.center == Quaternion(0.0, 0.3, 0.0, 0.0));
  CHECK(sh.coverage.complete());
}

TEST_CASE("bloch_landau on the identity") {
  const auto t0 = std::chrono::steady_clock::now();
  const BlochCertificate c = bloch_landau(SliceSeries::identity(2.0), ImaginaryUnit::i());
  const double rho = 4.0 - std::sqrt(15.0);
  CHECK(c.r0 == 0.0);
  CHECK(c.p == Quaternion{});
  CHECK(c.rho0 == 0.5);
  CHECK(std::abs(c.rho - rho) < 1e-15);
  CHECK(std::abs(c.inner_radius - rho / 2) < 1e-15);
  CHECK(std::abs(c.covered_radius - 2 * (31 - 8 * std::sqrt(15.0))) < 1e-12);
  CHECK(c.covered_radius > 1.0 / 31.0);
  CHECK(std::abs(c.measured_a - 0.25) < 1e-15);
  CHECK(c.injectivity_verified);
  CHECK(c.coverage_verified);
  CHECK(c.warnings.empty());
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(30));
}

TEST_CASE("bloch_landau with a derivative peak") {
  // f = q + q^2: h(r) = (1 - r)(1 + 2r) >= 1 exactly on [0, 1/2].
  const SliceSeries f({0.0, 1.0, 1.0}, 2.0);
  const BlochCertificate c = bloch_landau(f, ImaginaryUnit::i());
  CHECK(std::abs(c.r0 - 0.5) < 1e-6);
  CHECK(c.r0 <= 0.5);
  CHECK(distance(c.p, Quaternion(c.r0)) < 1e-12);
  CHECK(std::abs(c.rho0 - 0.25) < 1e-6);
  CHECK(std::abs(c.measured_a - 0.25) < 1e-6);
  CHECK((c.center - eval(f, c.p)).norm() < 1e-15);
  CHECK(c.injectivity_verified);
  CHECK(c.coverage_verified);

  // A small bump on another slice.
  const SliceSeries g({0.0, 1.0, Quaternion(0.0, 0.0, 0.3, 0.2), Quaternion(0.0, 0.1, 0.0, 0.0)}, 3.0);
  const BlochCertificate d = bloch_landau(g, ImaginaryUnit(Quaternion(0.0, 0.0, 1.0, 1.0)));
  CHECK(d.r0 >= 0.0);
  CHECK(d.injectivity_verified);
  CHECK(d.coverage_verified);
}

TEST_CASE("bloch_landau hypotheses") {
  CHECK(code_of([] { bloch_landau(SliceSeries({0.0, 0.5}, 2.0), ImaginaryUnit::i()); }) ==
        ErrorCode::kHypothesis);
  CHECK(code_of([] { bloch_landau(SliceSeries({0.0, 1.0}, 1.0), ImaginaryUnit::i()); }) ==
        ErrorCode::kHypothesis);
}

TEST_CASE("generate_self_map") {
  const Quaternion u = generate_self_map(5, 0).coeffs()[1];
  CHECK(std::abs(u.norm() - 1.0) < 1e-15);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SliceSeries f = generate_self_map(seed, 1 + seed % 3);
    CHECK(f[0] == Quaternion{});
    CHECK(max_modulus_on_sphere(f, 0.97, 1000, seed) < 1.0);
    const SliceSeries g = generate_self_map(seed, 1 + seed % 3);
    CHECK(max_coeff_diff(f, g, f.order()) == 0.0);
  }
  CHECK(max_coeff_diff(generate_self_map(1, 2), generate_self_map(2, 2), 5) > 0.0);
}

TEST_CASE("generated self-maps are injective inside the Landau ball") {
  LandauParams p = quick_params();
  p.coverage_targets = 40;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const SliceSeries f = generate_self_map(seed, 1 + seed % 3);
    const LandauResult r = landau_certify(f, p);
    if (r.injectivity.witness) CHECK(r.injectivity.witness->radius >= r.rho - r.injectivity.grid_resolution);
    CHECK(r.coverage.complete());
  }
}
