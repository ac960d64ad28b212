#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <memory>
#include <string>

#include "slicereg/slicereg.h"

using nlohmann::json;

namespace {

using SeriesPtr = std::unique_ptr<sr_series, void (*)(sr_series*)>;
using TextPtr = std::unique_ptr<char, void (*)(char*)>;

SeriesPtr hold(sr_series* f) { return SeriesPtr(f, sr_series_free); }
TextPtr hold(char* s) { return TextPtr(s, sr_string_free); }

SeriesPtr from_json(const char* text) {
  sr_series* f = nullptr;
  REQUIRE(sr_series_from_json(text, &f) == SR_OK);
  return hold(f);
}

json run_json(sr_status expected, sr_status (*fn)(const char*, const char*, char**), const char* a,
              const char* cfg) {
  char* raw = nullptr;
  const sr_status s = fn(a, cfg, &raw);
  auto text = hold(raw);
  CHECK_MESSAGE(s == expected, sr_last_error());
  return text ? json::parse(text.get()) : json();
}

const char* kIdentity = R"({"radius": 2, "coeffs": [0, 1]})";
const char* kFastConfig = R"({"shells": 200, "points": 16, "targets": 100, "bloch_targets": 50})";

}  // namespace

TEST_CASE("version and error slot") {
  CHECK(std::string(sr_version()).size() > 0);
  sr_series* f = nullptr;
  CHECK(sr_series_from_json("{\"coeffs\": [", &f) == SR_ERR_INPUT);
  CHECK(f == nullptr);
  CHECK(std::string(sr_last_error()).find("JSON") != std::string::npos);
  CHECK(sr_series_from_json(kIdentity, &f) == SR_OK);
  CHECK(std::string(sr_last_error()).empty());
  sr_series_free(f);
  CHECK(sr_series_from_json(kIdentity, nullptr) == SR_ERR_INPUT);
}

TEST_CASE("series handles round trip through JSON") {
  const auto f = from_json(R"({"radius": 1.5, "coeffs": [1, [0, 1, 0, 0], [0, 0, 2, 0.5]], "tail": 1e-9})");
  CHECK(sr_series_order(f.get()) == 2);
  CHECK(sr_series_radius(f.get()) == 1.5);
  double c[4];
  REQUIRE(sr_series_coeff(f.get(), 2, c) == SR_OK);
  CHECK(c[2] == 2.0);
  CHECK(c[3] == 0.5);

  char* raw = nullptr;
  REQUIRE(sr_series_to_json(f.get(), &raw) == SR_OK);
  auto text = hold(raw);
  const auto g = from_json(text.get());
  CHECK(sr_series_order(g.get()) == 2);
  const json j = json::parse(text.get());
  CHECK(j.at("tail").get<double>() == 1e-9);
}

TEST_CASE("coefficient constructor and evaluation") {
  const double coeffs[] = {0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0};
  sr_series* raw = nullptr;
  REQUIRE(sr_series_from_coeffs(coeffs, 4, 2.0, &raw) == SR_OK);
  const auto f = hold(raw);
  const double q[4] = {0.1, 0.2, -0.3, 0.4};
  double v[4];
  REQUIRE(sr_series_eval(f.get(), q, v) == SR_OK);
  // q + q^3 evaluated by hand: q^2 = (w^2 - |u|^2, 2 w u).
  const double w = 0.1, u2 = 0.04 + 0.09 + 0.16;
  const double s_w = w * w - u2, s_u = 2 * w;
  const double c_w = s_w * w - s_u * u2, c_u = s_w + s_u * w;
  CHECK(v[0] == doctest::Approx(w + c_w).epsilon(1e-15));
  CHECK(v[1] == doctest::Approx(0.2 * (1 + c_u)).epsilon(1e-15));
  CHECK(v[3] == doctest::Approx(0.4 * (1 + c_u)).epsilon(1e-15));

  const double outside[4] = {2.5, 0, 0, 0};
  CHECK(sr_series_eval(f.get(), outside, v) == SR_ERR_DOMAIN);
  CHECK(sr_series_from_coeffs(coeffs, 0, 1.0, &raw) == SR_ERR_INPUT);
}

TEST_CASE("algebra through handles") {
  const auto f = from_json(R"({"radius": 1, "coeffs": [1, [0, 0.5, 0, 0]]})");
  const auto g = from_json(R"({"radius": 1, "coeffs": [[0, 0, 0.3, 0], 1]})");
  sr_series* raw = nullptr;
  REQUIRE(sr_series_star_mul(f.get(), g.get(), 0, &raw) == SR_OK);
  const auto fg = hold(raw);
  const double q[4] = {0.2, -0.1, 0.3, 0.25};
  double a[4], b[4], p[4];
  sr_series_eval(fg.get(), q, p);
  sr_series_eval(f.get(), q, a);
  REQUIRE(sr_series_reciprocal(f.get(), 64, &raw) == SR_OK);
  const auto inv = hold(raw);
  REQUIRE(sr_series_star_mul(inv.get(), fg.get(), 64, &raw) == SR_OK);
  const auto back = hold(raw);
  sr_series_eval(back.get(), q, b);
  sr_series_eval(g.get(), q, a);
  for (int k = 0; k < 4; ++k) CHECK(b[k] == doctest::Approx(a[k]).epsilon(1e-12));

  REQUIRE(sr_series_conjugate(g.get(), &raw) == SR_OK);
  const auto gc = hold(raw);
  double c[4];
  sr_series_coeff(gc.get(), 0, c);
  CHECK(c[2] == -0.3);
  REQUIRE(sr_series_symmetrize(g.get(), &raw) == SR_OK);
  const auto gs = hold(raw);
  for (size_t n = 0; n < sr_series_order(gs.get()); ++n) {
    sr_series_coeff(gs.get(), n, c);
    CHECK(c[1] == 0.0);
    CHECK(c[2] == 0.0);
    CHECK(c[3] == 0.0);
  }
  REQUIRE(sr_series_cullen_derivative(g.get(), &raw) == SR_OK);
  const auto dg = hold(raw);
  sr_series_coeff(dg.get(), 0, c);
  CHECK(c[0] == 1.0);

  const auto zero = from_json(R"({"coeffs": [0, 1]})");
  CHECK(sr_series_reciprocal(zero.get(), 0, &raw) != SR_OK);
}

TEST_CASE("landau rho") {
  double r = 0;
  REQUIRE(sr_landau_rho(0.25, &r) == SR_OK);
  CHECK(std::abs(r - (4.0 - std::sqrt(15.0))) < 1e-15);
  CHECK(sr_landau_rho(1.5, &r) == SR_ERR_DOMAIN);
  CHECK(sr_landau_rho(0.5, nullptr) == SR_ERR_INPUT);
}

TEST_CASE("eval command embeds config and version") {
  char* raw = nullptr;
  REQUIRE(sr_eval_json(kIdentity, "[[0.5, 0.1, 0, 0], 0.25]", R"({"seed": 9})", &raw) == SR_OK);
  auto text = hold(raw);
  const json j = json::parse(text.get());
  CHECK(j.at("command") == "eval");
  CHECK(j.at("tool").at("version") == sr_version());
  CHECK(j.at("config").at("seed") == 9);
  CHECK(j.at("config").at("shells") == 1000);
  CHECK(j.at("rows").size() == 2);
  CHECK(j.at("rows")[1].at("value")[0].get<double>() == 0.25);

  CHECK(sr_eval_json(kIdentity, R"({"oops": 1})", nullptr, &raw) == SR_ERR_INPUT);
  CHECK(sr_eval_json(kIdentity, "[[3, 0, 0, 0]]", nullptr, &raw) == SR_ERR_DOMAIN);
  CHECK(sr_eval_json(kIdentity, "[0]", R"({"shells": 0})", &raw) == SR_ERR_INPUT);
}

TEST_CASE("max_order caps loaded series") {
  char* raw = nullptr;
  REQUIRE(sr_eval_json(R"({"generator": "extremal_phi", "a": 0.5, "u": -1})", "[0.1]", R"({"max_order": 12})",
                       &raw) == SR_OK);
  auto text = hold(raw);
  CHECK(json::parse(text.get()).at("config").at("max_order") == 12);
}

TEST_CASE("landau command statuses") {
  const json ok = run_json(SR_OK, sr_landau_certify_json, R"({"radius": 1, "coeffs": [0, 0.5]})", kFastConfig);
  CHECK(ok.at("verified") == true);
  CHECK(ok.at("result").at("a").get<double>() == 0.5);

  run_json(SR_ERR_HYPOTHESIS, sr_landau_certify_json, kIdentity, kFastConfig);

  run_json(SR_ERR_HYPOTHESIS, sr_landau_certify_json, R"({"coeffs": [0.1, 0.5]})", kFastConfig);
  run_json(SR_ERR_INPUT, sr_landau_certify_json, R"({"generator": "unknown"})", kFastConfig);
}

TEST_CASE("bloch command") {
  const json ok = run_json(SR_OK, sr_bloch_landau_json, kIdentity, kFastConfig);
  const double rho = 4.0 - std::sqrt(15.0);
  CHECK(std::abs(ok.at("certificate").at("covered_radius").get<double>() - 2 * rho * rho) < 1e-12);
  run_json(SR_ERR_HYPOTHESIS, sr_bloch_landau_json, R"({"radius": 2, "coeffs": [0, 0.5]})", kFastConfig);
}

TEST_CASE("verify command") {
  const json none = run_json(SR_OK, sr_verify_manifest_json, R"({"suites": []})", nullptr);
  CHECK(none.at("summary").at("total") == 0);

  const json pass = run_json(
      SR_OK, sr_verify_manifest_json,
      R"({"suites": [{"theorem_id": "schwarz_pick", "fixture": "moebius", "seeds": 2, "samples": 50}]})", nullptr);
  CHECK(pass.at("summary").at("pass") == 2);

  const json fail = run_json(SR_ERR_VERIFY, sr_verify_manifest_json,
                             R"({"suites": [{"theorem_id": "schwarz_pick", "fixture": "moebius", "seeds": 2,
                                 "samples": 50, "mutation": {"coefficient": 1, "delta": 0.05}}]})",
                             nullptr);
  CHECK(fail.at("summary").at("fail").get<int>() >= 1);

  run_json(SR_ERR_INPUT, sr_verify_manifest_json, R"({"suites": [{"theorem_id": "riemann"}]})", nullptr);
  run_json(SR_ERR_INPUT, sr_verify_manifest_json, R"({"suites": [{"theorem_id": "minmax", "fixture": "x"}]})",
           nullptr);
}

TEST_CASE("repeated commands are byte identical") {
  const char* f = R"({"generator": "self_map", "seed": 4, "factors": 2})";
  const char* cfg = R"({"seed": 11, "shells": 200, "points": 16, "targets": 80})";
  char* a = nullptr;
  char* b = nullptr;
  sr_landau_certify_json(f, cfg, &a);
  sr_landau_certify_json(f, cfg, &b);
  auto ta = hold(a);
  auto tb = hold(b);
  REQUIRE(ta);
  REQUIRE(tb);
  CHECK(std::string(ta.get()) == std::string(tb.get()));
}
