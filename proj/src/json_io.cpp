#include "json_io.hpp"

#include <cmath>

namespace slicereg::json {

namespace {

Error parse_error(const std::string& what) { return Error(ErrorCode::kParse, what); }

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

std::string_view method_name(InjectivityMethod m) {
  switch (m) {
    case InjectivityMethod::kLandauTheorem:
      return "landau_theorem";
    case InjectivityMethod::kSingularScan:
      return "singular_scan";
    case InjectivityMethod::kCollisionScan:
      return "collision_scan";
  }
  return "landau_theorem";
}

}  // namespace

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

ScanParams RunConfig::scan() const {
  ScanParams s;
  s.shells = shells;
  s.points_per_sphere = points;
  s.seed = seed;
  return s;
}

NewtonParams RunConfig::newton() const {
  NewtonParams n;
  n.tol = newton_tol;
  return n;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  if (j.is_null()) return c;
  if (!j.is_object()) throw parse_error("config must be a JSON object");
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
  c.shells = get_or<std::size_t>(j, "shells", c.shells);
  c.points = get_or<std::size_t>(j, "points", c.points);
  c.newton_tol = get_or<double>(j, "newton_tol", c.newton_tol);
  c.max_order = get_or<std::size_t>(j, "max_order", c.max_order);
  c.targets = get_or<std::size_t>(j, "targets", c.targets);
  c.bloch_targets = get_or<std::size_t>(j, "bloch_targets", c.bloch_targets);
  if (j.contains("slice")) c.slice = quaternion_from_json(j.at("slice"));
  if (c.shells == 0 || c.points == 0) throw parse_error("shells and points must be positive");
  if (c.max_order == 0) throw parse_error("max_order must be positive");
  if (!(c.newton_tol > 0.0)) throw parse_error("newton_tol must be positive");
  return c;
}

json to_json(const RunConfig& c) {
  return {{"seed", c.seed},         {"shells", c.shells},       {"points", c.points},
          {"newton_tol", c.newton_tol}, {"max_order", c.max_order}, {"targets", c.targets},
          {"bloch_targets", c.bloch_targets}, {"slice", to_json(c.slice)}};
}

json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

Quaternion quaternion_from_json(const json& j) {
  if (j.is_number()) return Quaternion(j.get<double>());
  if (!j.is_array()) throw parse_error("quaternion must be a number or an array");
  if (j.size() == 3) return {0.0, j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
  if (j.size() != 4) throw parse_error("quaternion array must have 4 entries (or 3 for an imaginary unit)");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

namespace {

SliceSeries parse_series(const json& j) {
  if (!j.is_object()) throw parse_error("series must be a JSON object");
  if (j.contains("generator")) {
    const auto kind = j.at("generator").get<std::string>();
    const std::size_t order = get_or<std::size_t>(j, "order", 0);
    if (kind == "extremal_phi") {
      return extremal_phi(j.at("a").get<double>(), quaternion_from_json(j.at("u")), order);
    }
    if (kind == "moebius") {
      const MoebiusSpec spec{quaternion_from_json(j.at("center")),
                             j.contains("right_unit") ? quaternion_from_json(j.at("right_unit")) : Quaternion(1.0),
                             MoebiusKind::kRegular};
      return regular_moebius_series(spec, order ? order : kDefaultMoebiusOrder);
    }
    if (kind == "self_map") {
      return generate_self_map(j.at("seed").get<std::uint64_t>(), j.at("factors").get<std::size_t>(),
                               order ? order : kDefaultMoebiusOrder);
    }
    throw parse_error("unknown series generator '" + kind + "'");
  }
  if (!j.contains("coeffs") || !j.at("coeffs").is_array() || j.at("coeffs").empty()) {
    throw parse_error("series needs a non-empty 'coeffs' array");
  }
  std::vector<Quaternion> c;
  for (const auto& e : j.at("coeffs")) c.push_back(quaternion_from_json(e));
  const double radius = get_or<double>(j, "radius", 1.0);
  if (!(radius > 0.0)) throw parse_error("series radius must be positive");
  SliceSeries f(std::move(c), radius);
  if (j.contains("tail")) {
    const auto& t = j.at("tail");
    f = f.with_tail(t.is_null() ? std::numeric_limits<double>::infinity() : t.get<double>());
  }
  return f;
}

}  // namespace

SliceSeries series_from_json(const json& j, std::size_t max_order) {
  SliceSeries f = parse_series(j);
  return f.order() > max_order ? f.resized(max_order) : f;
}

json to_json(const SliceSeries& f) {
  json coeffs = json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(to_json(c));
  json out{{"radius", f.radius()}, {"coeffs", coeffs}};
  if (f.truncated()) out["tail"] = number(f.tail());
  return out;
}

json to_json(const Witness& w) {
  return {{"kind", w.kind == WitnessKind::kSingular ? "singular" : "collision"},
          {"q", to_json(w.q)},
          {"q_other", to_json(w.q_other)},
          {"value", to_json(w.value)},
          {"value_modulus", w.value.norm()},
          {"gap", w.gap},
          {"radius", w.radius}};
}

json to_json(const InjectivityReport& r) {
  return {{"lower_bound", r.lower_bound},
          {"upper_bound", r.upper_bound},
          {"grid_resolution", r.grid_resolution},
          {"method", std::string(method_name(r.method))},
          {"witness", r.witness ? to_json(*r.witness) : json(nullptr)}};
}

json to_json(const CoverageReport& r) {
  json failures = json::array();
  for (const auto& v : r.failures) failures.push_back(to_json(v));
  return {{"source_radius", r.source_radius},
          {"target_radius", r.target_radius},
          {"center", to_json(r.center)},
          {"targets_total", r.targets_total},
          {"targets_hit", r.targets_hit},
          {"max_preimage_residual", r.max_preimage_residual},
          {"failures", failures}};
}

json to_json(const LandauResult& r) {
  return {{"a", r.a},
          {"rho", r.rho},
          {"selfmap_margin", r.selfmap_margin},
          {"injectivity", to_json(r.injectivity)},
          {"coverage", to_json(r.coverage)}};
}

json to_json(const BlochCertificate& c) {
  return {{"slice", to_json(c.slice.value())},
          {"p", to_json(c.p)},
          {"center", to_json(c.center)},
          {"r0", c.r0},
          {"rho0", c.rho0},
          {"rho", c.rho},
          {"inner_radius", c.inner_radius},
          {"covered_radius", c.covered_radius},
          {"measured_a", c.measured_a},
          {"injectivity_verified", c.injectivity_verified},
          {"coverage_verified", c.coverage_verified},
          {"local", to_json(c.local)},
          {"warnings", c.warnings}};
}

json to_json(const CheckReport& r) {
  json details = json::object();
  for (const auto& [k, v] : r.details) details[k] = number(v);
  return {{"theorem_id", r.theorem_id},
          {"fixture", r.fixture},
          {"seed", r.seed},
          {"samples", r.samples},
          {"worst_slack", number(r.worst_slack)},
          {"truncation_budget", r.truncation_budget},
          {"verdict", std::string(to_string(r.verdict))},
          {"worst_point", r.worst_point ? to_json(*r.worst_point) : json(nullptr)},
          {"equality_flag", r.equality_flag},
          {"details", details}};
}

std::vector<SuiteSpec> manifest_from_json(const json& j) {
  if (!j.is_object() || !j.contains("suites") || !j.at("suites").is_array()) {
    throw parse_error("manifest needs a 'suites' array");
  }
  std::vector<SuiteSpec> out;
  const auto& ids = known_theorem_ids();
  for (const auto& e : j.at("suites")) {
    SuiteSpec s;
    s.theorem_id = e.at("theorem_id").get<std::string>();
    if (std::find(ids.begin(), ids.end(), s.theorem_id) == ids.end()) {
      throw parse_error("unknown theorem_id '" + s.theorem_id + "'");
    }
    s.fixture = get_or<std::string>(e, "fixture", s.fixture);
    s.first_seed = get_or<std::uint64_t>(e, "first_seed", s.first_seed);
    s.seeds = get_or<std::size_t>(e, "seeds", s.seeds);
    s.samples = get_or<std::size_t>(e, "samples", s.samples);
    if (e.contains("mutation")) {
      const auto& m = e.at("mutation");
      s.mutation = Mutation{get_or<std::size_t>(m, "coefficient", 1), get_or<double>(m, "delta", 0.05)};
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace slicereg::json
