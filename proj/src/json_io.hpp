#pragma once

// JSON forms of the library types. Internal to the shared C API.

#include <json.hpp>

#include "slicereg/landau.hpp"
#include "slicereg/verify.hpp"

namespace slicereg::json {

using nlohmann::json;

/// Run parameters shared by every command. Everything sampled derives from these.
struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t shells = 1000;
  std::size_t points = 64;
  double newton_tol = 1e-12;
  std::size_t max_order = kDefaultMaxOrder;
  std::size_t targets = 500;
  std::size_t bloch_targets = 200;
  Quaternion slice = Quaternion::i();

  ScanParams scan() const;
  NewtonParams newton() const;
};

RunConfig config_from_json(const json& j);
json to_json(const RunConfig& c);

json to_json(const Quaternion& q);
Quaternion quaternion_from_json(const json& j);

/// {"radius", "coeffs"[, "tail"]} or a generator form
/// {"generator": "extremal_phi" | "moebius" | "self_map", ...}.
SliceSeries series_from_json(const json& j, std::size_t max_order = kDefaultMaxOrder);
json to_json(const SliceSeries& f);

json to_json(const Witness& w);
json to_json(const InjectivityReport& r);
json to_json(const CoverageReport& r);
json to_json(const LandauResult& r);
json to_json(const BlochCertificate& c);
json to_json(const CheckReport& r);

/// {"suites": [{"theorem_id", "fixture", "first_seed", "seeds", "samples", "mutation"}]}
std::vector<SuiteSpec> manifest_from_json(const json& j);

/// Finite doubles as numbers, non-finite as null.
json number(double x);

}  // namespace slicereg::json
