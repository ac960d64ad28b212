#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slicereg/moebius.hpp"
#include "slicereg/series.hpp"
#include "slicereg/slice_geometry.hpp"

namespace slicereg {

/// rho(a) = (1 - sqrt(1 - a^2)) / a, the fixed point of r -> (a - r)/(1 - a r).
/// Throws kDomain unless 0 < a < 1.
double landau_rho(double a);

/// Truncation order that brings the Moebius tail at |q0| = r below about 1e-17,
/// never less than kDefaultMoebiusOrder.
std::size_t moebius_order_for(double center_norm);

/// Phi_u(q) = q M_{-a conj(u)}(q) u as a series on the unit ball.
SliceSeries extremal_phi(double a, const Quaternion& u, std::size_t order = 0);

struct NewtonParams {
  double tol = 1e-12;
  int max_iterations = 60;
  int max_halvings = 30;
  int continuation_steps = 16;
};

struct PreimageResult {
  Quaternion point;
  double residual = 0.0;
  bool converged = false;
};

/// Damped Newton on q -> f(q) - v using the real differential. Iterates that
/// reach |q| >= limit are reported as not converged.
PreimageResult solve_preimage(const SliceSeries& f, const Quaternion& v, const Quaternion& start,
                              double limit, const NewtonParams& params = {});

struct ScanParams {
  std::size_t shells = 1000;  // shell grid step 1/shells
  std::size_t points_per_sphere = 64;
  double scan_radius = 0.97;
  std::size_t collision_shells = 24;
  std::size_t collision_points = 16;
  std::size_t collision_random_seeds = 4;
  std::size_t spherical_grid = 160;
  std::uint64_t seed = 0;

  double resolution() const { return 1.0 / static_cast<double>(shells); }
};

enum class InjectivityMethod { kLandauTheorem, kSingularScan, kCollisionScan };
enum class WitnessKind { kSingular, kCollision };

struct Witness {
  WitnessKind kind = WitnessKind::kSingular;
  Quaternion q;
  Quaternion q_other;  // equal to q for singular points
  Quaternion value;    // f(q)
  double gap = 0.0;    // |f(q) - f(q_other)|
  double radius = 0.0; // max(|q|, |q_other|)
};

/// All witnesses of non-injectivity found in B(0, scan_radius).
struct WitnessScan {
  std::vector<Witness> singular;    // exact or refined singular points
  std::vector<Witness> collisions;  // Newton-converged collision pairs
  std::optional<double> det_shell;  // first shell where the det scan flags a point

  std::optional<Witness> closest() const;
};

WitnessScan scan_witnesses(const SliceSeries& f, const ScanParams& params = {},
                           const NewtonParams& newton = {});

/// Singular points from the zeros of the Cullen derivative inside B(0, r_max).
std::vector<Witness> cullen_zero_witnesses(const SliceSeries& f, double r_max);

struct InjectivityReport {
  double lower_bound = 0.0;
  double upper_bound = 1.0;
  double grid_resolution = 0.0;
  InjectivityMethod method = InjectivityMethod::kLandauTheorem;
  std::optional<Witness> witness;
};

struct CoverageReport {
  double source_radius = 0.0;
  double target_radius = 0.0;
  Quaternion center;
  std::size_t targets_total = 0;
  std::size_t targets_hit = 0;
  double max_preimage_residual = 0.0;
  std::vector<Quaternion> failures;

  bool complete() const { return targets_hit == targets_total; }
};

/// Targets v = f(0) + w with |w| <= t; a target counts as hit when Newton finds
/// q with |q| < r and |f(q) - v| < newton.tol.
CoverageReport verify_covering(const SliceSeries& f, double r, double t, const NewtonParams& newton = {},
                               std::size_t targets = 500, std::uint64_t seed = 0);

struct LandauParams {
  ScanParams scan;
  NewtonParams newton;
  std::size_t coverage_targets = 500;
  double coverage_fraction = 0.99;
  double selfmap_radius = 0.97;
  std::size_t selfmap_points = 2000;
  double zero_tolerance = kDefaultEpsilon;
};

struct LandauResult {
  double a = 0.0;
  double rho = 0.0;
  double selfmap_margin = 0.0;
  InjectivityReport injectivity;
  CoverageReport coverage;
};

/// 1 - (sampled max |f| at `radius` + truncation tail). Positive for a certified self-map.
double selfmap_margin(const SliceSeries& f, double radius = 0.97, std::size_t points = 2000,
                      std::uint64_t seed = 0);

/// Throws kHypothesis if f(0) != 0, a = |dc f(0)| is outside (0,1) or f fails the
/// self-map check.
LandauResult landau_certify(const SliceSeries& f, const LandauParams& params = {});

/// Certifies g(q) = (f(qR) - f(0)) / C and maps radii back by R and values by C.
LandauResult landaubd_apply(const SliceSeries& f, double R, double C, const LandauParams& params = {});

struct BlochParams {
  std::size_t r_grid = 400;
  std::size_t circle_points = 720;
  std::size_t recenter_order = 64;
  std::size_t coverage_targets = 200;
  ScanParams scan;
  NewtonParams newton;
};

struct BlochCertificate {
  ImaginaryUnit slice = ImaginaryUnit::i();
  Quaternion p;
  Quaternion center;  // f(p)
  double r0 = 0.0;
  double rho0 = 0.0;
  double rho = 0.0;
  double inner_radius = 0.0;
  double covered_radius = 0.0;  // b
  double measured_a = 0.0;
  bool injectivity_verified = false;
  bool coverage_verified = false;
  LandauResult local;  // radii and values in f coordinates
  std::vector<std::string> warnings;
};

/// Throws kHypothesis unless the radius exceeds 1 and |dc f(0)| = 1 within 1e-10.
BlochCertificate bloch_landau(const SliceSeries& f, const ImaginaryUnit& slice, const BlochParams& params = {});

/// q * M_{p_1} * ... * M_{p_k} * u with |p_i| <= 0.6, truncated at `order`.
SliceSeries generate_self_map(std::uint64_t seed, std::size_t k, std::size_t order = kDefaultMoebiusOrder);

}  // namespace slicereg
