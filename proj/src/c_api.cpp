#include "slicereg/slicereg.h"

#include <cstring>
#include <string>

#include "json_io.hpp"

#ifndef SLICEREG_VERSION
#define SLICEREG_VERSION "0.0.0"
#endif

struct sr_series {
  slicereg::SliceSeries value;
};

namespace {

using slicereg::Error;
using slicereg::ErrorCode;
using slicereg::json::json;

thread_local std::string g_last_error;

sr_status status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
      return SR_ERR_INPUT;
    case ErrorCode::kHypothesis:
      return SR_ERR_HYPOTHESIS;
    default:
      return SR_ERR_DOMAIN;
  }
}

template <typename F>
sr_status guarded(F&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_for(e.code());
  } catch (const json::exception& e) {
    g_last_error = std::string("invalid JSON: ") + e.what();
    return SR_ERR_INPUT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SR_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SR_ERR_INTERNAL;
  }
}

sr_status input_error(const char* what) {
  g_last_error = what;
  return SR_ERR_INPUT;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse(const char* text) {
  if (!text) throw Error(ErrorCode::kParse, "missing JSON input");
  return json::parse(text);
}

slicereg::json::RunConfig config(const char* text) {
  return slicereg::json::config_from_json(text ? parse(text) : json(nullptr));
}

json envelope(const slicereg::json::RunConfig& c) {
  return {{"tool", {{"name", "slicereg"}, {"version", SLICEREG_VERSION}}}, {"config", slicereg::json::to_json(c)}};
}

sr_series* wrap(slicereg::SliceSeries f) { return new sr_series{std::move(f)}; }

slicereg::Quaternion quat(const double q[4]) { return {q[0], q[1], q[2], q[3]}; }

void store(const slicereg::Quaternion& q, double out[4]) {
  out[0] = q.w;
  out[1] = q.x;
  out[2] = q.y;
  out[3] = q.z;
}

}  // namespace

extern "C" {

const char* sr_version(void) { return SLICEREG_VERSION; }

const char* sr_last_error(void) { return g_last_error.c_str(); }

void sr_string_free(char* s) { std::free(s); }

sr_status sr_series_from_json(const char* text, sr_series** out) {
  if (!out) return input_error("null output pointer");
  return guarded([&] {
    *out = wrap(slicereg::json::series_from_json(parse(text)));
    return SR_OK;
  });
}

sr_status sr_series_from_coeffs(const double* coeffs, size_t count, double radius, sr_series** out) {
  if (!out || !coeffs || count == 0) return input_error("coefficients and output pointer are required");
  return guarded([&] {
    std::vector<slicereg::Quaternion> c(count);
    for (size_t n = 0; n < count; ++n) c[n] = quat(coeffs + 4 * n);
    *out = wrap(slicereg::SliceSeries(std::move(c), radius));
    return SR_OK;
  });
}

void sr_series_free(sr_series* f) { delete f; }

sr_status sr_series_to_json(const sr_series* f, char** out) {
  if (!f || !out) return input_error("null argument");
  return guarded([&] {
    *out = copy_string(slicereg::json::to_json(f->value).dump());
    return SR_OK;
  });
}

size_t sr_series_order(const sr_series* f) { return f ? f->value.order() : 0; }

double sr_series_radius(const sr_series* f) { return f ? f->value.radius() : 0.0; }

sr_status sr_series_coeff(const sr_series* f, size_t n, double out[4]) {
  if (!f || !out) return input_error("null argument");
  store(f->value[n], out);
  return SR_OK;
}

sr_status sr_series_eval(const sr_series* f, const double q[4], double out[4]) {
  if (!f || !q || !out) return input_error("null argument");
  return guarded([&] {
    store(slicereg::eval(f->value, quat(q)), out);
    return SR_OK;
  });
}

sr_status sr_series_star_mul(const sr_series* f, const sr_series* g, size_t max_order, sr_series** out) {
  if (!f || !g || !out) return input_error("null argument");
  return guarded([&] {
    *out = wrap(slicereg::star_mul(f->value, g->value, max_order ? max_order : slicereg::kDefaultMaxOrder));
    return SR_OK;
  });
}

sr_status sr_series_conjugate(const sr_series* f, sr_series** out) {
  if (!f || !out) return input_error("null argument");
  return guarded([&] {
    *out = wrap(slicereg::conjugate(f->value));
    return SR_OK;
  });
}

sr_status sr_series_symmetrize(const sr_series* f, sr_series** out) {
  if (!f || !out) return input_error("null argument");
  return guarded([&] {
    *out = wrap(slicereg::symmetrize(f->value));
    return SR_OK;
  });
}

sr_status sr_series_reciprocal(const sr_series* f, size_t order, sr_series** out) {
  if (!f || !out) return input_error("null argument");
  return guarded([&] {
    *out = wrap(order ? slicereg::reciprocal(f->value, order) : slicereg::reciprocal(f->value));
    return SR_OK;
  });
}

sr_status sr_series_cullen_derivative(const sr_series* f, sr_series** out) {
  if (!f || !out) return input_error("null argument");
  return guarded([&] {
    *out = wrap(slicereg::cullen_derivative(f->value));
    return SR_OK;
  });
}

sr_status sr_landau_rho(double a, double* out) {
  if (!out) return input_error("null argument");
  return guarded([&] {
    *out = slicereg::landau_rho(a);
    return SR_OK;
  });
}

sr_status sr_eval_json(const char* series_json, const char* points_json, const char* config_json, char** out) {
  if (!out) return input_error("null output pointer");
  return guarded([&] {
    const auto cfg = config(config_json);
    const auto f = slicereg::json::series_from_json(parse(series_json), cfg.max_order);
    json points = parse(points_json);
    if (points.is_object() && points.contains("points")) points = points.at("points");
    if (!points.is_array()) throw Error(ErrorCode::kParse, "points must be an array of quaternions");
    json rows = json::array();
    for (const auto& p : points) {
      const slicereg::Quaternion q = slicereg::json::quaternion_from_json(p);
      rows.push_back({{"q", slicereg::json::to_json(q)}, {"value", slicereg::json::to_json(slicereg::eval(f, q))}});
    }
    json result = envelope(cfg);
    result["command"] = "eval";
    result["rows"] = rows;
    *out = copy_string(result.dump(2));
    return SR_OK;
  });
}

sr_status sr_landau_certify_json(const char* series_json, const char* config_json, char** out) {
  if (!out) return input_error("null output pointer");
  return guarded([&] {
    const auto cfg = config(config_json);
    const auto f = slicereg::json::series_from_json(parse(series_json), cfg.max_order);
    slicereg::LandauParams params;
    params.scan = cfg.scan();
    params.newton = cfg.newton();
    params.coverage_targets = cfg.targets;
    const slicereg::LandauResult r = slicereg::landau_certify(f, params);
    const auto& inj = r.injectivity;
    const bool consistent = inj.lower_bound <= inj.upper_bound + inj.grid_resolution;
    const bool verified = consistent && r.coverage.complete();
    json result = envelope(cfg);
    result["command"] = "landau";
    result["result"] = slicereg::json::to_json(r);
    result["verified"] = verified;
    *out = copy_string(result.dump(2));
    if (!verified) g_last_error = "Landau certificate did not verify";
    return verified ? SR_OK : SR_ERR_VERIFY;
  });
}

sr_status sr_bloch_landau_json(const char* series_json, const char* config_json, char** out) {
  if (!out) return input_error("null output pointer");
  return guarded([&] {
    const auto cfg = config(config_json);
    const auto f = slicereg::json::series_from_json(parse(series_json), cfg.max_order);
    slicereg::BlochParams params;
    params.scan = cfg.scan();
    params.newton = cfg.newton();
    params.coverage_targets = cfg.bloch_targets;
    const slicereg::BlochCertificate c =
        slicereg::bloch_landau(f, slicereg::ImaginaryUnit(cfg.slice), params);
    const bool verified = c.injectivity_verified && c.coverage_verified;
    json result = envelope(cfg);
    result["command"] = "bloch";
    result["certificate"] = slicereg::json::to_json(c);
    *out = copy_string(result.dump(2));
    if (!verified) g_last_error = "Bloch certificate did not verify";
    return verified ? SR_OK : SR_ERR_VERIFY;
  });
}

sr_status sr_verify_manifest_json(const char* manifest_json, const char* config_json, char** out) {
  if (!out) return input_error("null output pointer");
  return guarded([&] {
    const auto cfg = config(config_json);
    const auto suites = slicereg::json::manifest_from_json(parse(manifest_json));
    json reports = json::array();
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& spec : suites) {
      for (const auto& r : slicereg::run_suite(spec, cfg.scan(), cfg.newton())) {
        ++counts[static_cast<int>(r.verdict)];
        reports.push_back(slicereg::json::to_json(r));
      }
    }
    json result = envelope(cfg);
    result["command"] = "verify";
    result["reports"] = reports;
    result["summary"] = {{"total", reports.size()},
                         {"pass", counts[static_cast<int>(slicereg::Verdict::kPass)]},
                         {"fail", counts[static_cast<int>(slicereg::Verdict::kFail)]},
                         {"inconclusive", counts[static_cast<int>(slicereg::Verdict::kInconclusive)]}};
    *out = copy_string(result.dump(2));
    const bool failed = counts[static_cast<int>(slicereg::Verdict::kFail)] > 0;
    if (failed) g_last_error = "verification suite failed";
    return failed ? SR_ERR_VERIFY : SR_OK;
  });
}

}  // extern "C"
