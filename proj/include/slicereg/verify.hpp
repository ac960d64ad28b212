#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slicereg/landau.hpp"

namespace slicereg {

enum class Verdict { kPass, kFail, kInconclusive };
std::string_view to_string(Verdict v);

/// Absolute slack allowed for floating point evaluation on top of series tails.
inline constexpr double kSlackFloor = 1e-11;

struct CheckReport {
  std::string theorem_id;
  std::string fixture;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double worst_slack = std::numeric_limits<double>::infinity();  // min of RHS - LHS
  double truncation_budget = 0.0;
  Verdict verdict = Verdict::kInconclusive;
  std::optional<Quaternion> worst_point;
  bool equality_flag = false;
  std::vector<std::pair<std::string, double>> details;
};

/// pass iff worst_slack > -budget; inconclusive without samples.
Verdict decide(double worst_slack, double budget, std::size_t samples);

struct HarnessParams {
  std::size_t samples = 500;
  double sample_radius = 0.9;
  std::uint64_t seed = 0;
};

/// (f - v) * (1 - conj(v) * f)^{-*} with v = f(q0), through the series reciprocal.
SliceSeries build_schwarz_numerator(const SliceSeries& f, const Quaternion& q0,
                                    std::size_t order = kDefaultMaxOrder);

/// Same function evaluated pointwise at q with the product and quotient formulas.
Quaternion schwarz_numerator_eval(const SliceSeries& f, const Quaternion& v, const Quaternion& q);

/// p0 = (1 - q1 q0)^{-1} q1 (1 - q1 q0).
Quaternion variant_p0(const Quaternion& q0, const Quaternion& q1);

/// (M_{q0} * M_{p0})(q) for regular Moebius maps.
Quaternion moebius_pair_eval(const Quaternion& q0, const Quaternion& p0, const Quaternion& q);

CheckReport check_schwarz_pick(const SliceSeries& f, const Quaternion& q0, const HarnessParams& params = {});

CheckReport check_variant_noninjective(const SliceSeries& f, const Quaternion& q0, const Quaternion& q1,
                                       const Quaternion& v, const HarnessParams& params = {});

/// Every witness (q, q') of non-injectivity must have |f(q)| <= |q||q'|.
CheckReport check_globaltolocal(const SliceSeries& f, const ScanParams& scan = {},
                                const NewtonParams& newton = {});

/// Both bounds of |f(q)| per sample, plus sphere optimizers that look for equality.
CheckReport check_minmax(const SliceSeries& f, const HarnessParams& params = {});

enum class Placement { kGeneric, kConjugate, kCoincident };

struct NoninjectiveFixture {
  SliceSeries f;
  Quaternion q0;
  Quaternion q1;
  Quaternion v;
};

/// f = v + s (q - q0) * (q - q1) * g with s chosen so that sum |a_n| <= 0.9.
NoninjectiveFixture build_noninjective(std::uint64_t seed, Placement placement, std::size_t degree = 4);

struct Mutation {
  std::size_t coefficient = 1;
  double delta = 0.05;
};

/// Adds delta to the real part of one coefficient.
SliceSeries mutate(const SliceSeries& f, const Mutation& m);

struct SuiteSpec {
  std::string theorem_id;
  std::string fixture = "default";
  std::uint64_t first_seed = 0;
  std::size_t seeds = 20;
  std::size_t samples = 500;
  std::optional<Mutation> mutation;
};

const std::vector<std::string>& known_theorem_ids();

/// Throws kParse for an unknown theorem id or fixture name.
std::vector<CheckReport> run_suite(const SuiteSpec& spec, const ScanParams& scan = {},
                                   const NewtonParams& newton = {});

}  // namespace slicereg
