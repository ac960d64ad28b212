// slicereg command line front end over the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "slicereg/slicereg.h"

namespace {

using nlohmann::json;

struct Options {
  std::uint64_t seed = 0;
  std::size_t shells = 1000;
  std::size_t points = 64;
  double newton_tol = 1e-12;
  std::size_t max_order = 256;
  std::size_t targets = 500;
  std::size_t bloch_targets = 200;
  std::string format = "json";
  std::string out;
  std::vector<double> slice{1.0, 0.0, 0.0};

  std::string series_file;
  std::string points_file;
  std::string manifest_file;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_json(const Options& o) {
  return json{{"seed", o.seed},
              {"shells", o.shells},
              {"points", o.points},
              {"newton_tol", o.newton_tol},
              {"max_order", o.max_order},
              {"targets", o.targets},
              {"bloch_targets", o.bloch_targets},
              {"slice", o.slice}}
      .dump();
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + o.out + "'");
  f << text;
  if (text.empty() || text.back() != '\n') f << '\n';
}

std::string provenance_line(const json& result) {
  return "# slicereg " + result.at("tool").at("version").get<std::string>() +
         " config=" + result.at("config").dump();
}

std::string format_eval(const Options& o, const json& result) {
  if (o.format == "json") return result.dump(2);
  std::ostringstream ss;
  ss.precision(17);
  ss << provenance_line(result) << "\nq_w,q_x,q_y,q_z,f_w,f_x,f_y,f_z\n";
  for (const auto& row : result.at("rows")) {
    const auto& q = row.at("q");
    const auto& v = row.at("value");
    for (int k = 0; k < 4; ++k) ss << q[k].get<double>() << ',';
    for (int k = 0; k < 4; ++k) ss << v[k].get<double>() << (k < 3 ? ',' : '\n');
  }
  return ss.str();
}

std::string format_verify(const Options& o, const json& result) {
  if (o.format == "json") return result.dump(2);
  std::ostringstream ss;
  ss.precision(17);
  ss << provenance_line(result) << "\ntheorem_id,fixture,seed,samples,worst_slack,truncation_budget,verdict\n";
  for (const auto& r : result.at("reports")) {
    ss << r.at("theorem_id").get<std::string>() << ',' << r.at("fixture").get<std::string>() << ','
       << r.at("seed").get<std::uint64_t>() << ',' << r.at("samples").get<std::size_t>() << ','
       << (r.at("worst_slack").is_null() ? std::string("inf") : r.at("worst_slack").dump()) << ','
       << r.at("truncation_budget").get<double>() << ',' << r.at("verdict").get<std::string>() << '\n';
  }
  return ss.str();
}

std::string format_certificate(const Options& o, const json& result) {
  if (o.format != "json") std::cerr << "note: certificates are written as JSON\n";
  return result.dump(2);
}

// Runs one C API call that produces a JSON string; prints it (when present) and
// returns the status as exit code.
template <typename Call, typename Format>
int run(const Options& o, Call&& call, Format&& format) {
  char* raw = nullptr;
  const sr_status status = call(&raw);
  std::unique_ptr<char, void (*)(char*)> text(raw, sr_string_free);
  if (text) emit(o, format(o, json::parse(text.get())));
  if (status != SR_OK) std::cerr << "slicereg: " << sr_last_error() << '\n';
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slice regular quaternionic series: algebra, Landau certificates and theorem suites"};
  app.set_version_flag("--version", std::string(sr_version()));
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "Seed for every sampled quantity");
  app.add_option("--shells", o.shells, "Shell grid resolution for singular scans (step 1/shells)");
  app.add_option("--points", o.points, "Points per sphere in shell scans");
  app.add_option("--newton-tol", o.newton_tol, "Residual tolerance for Newton preimages");
  app.add_option("--max-order", o.max_order, "Truncation order cap for loaded series");
  app.add_option("--targets", o.targets, "Coverage targets for landau");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", o.out, "Output file (default stdout)");

  auto* eval = app.add_subcommand("eval", "Evaluate a series at points");
  eval->add_option("series", o.series_file, "Series JSON")->required();
  eval->add_option("points", o.points_file, "Points JSON (array of [w,x,y,z])")->required();

  auto* landau = app.add_subcommand("landau", "Injectivity and covering certificate for a self-map fixing 0");
  landau->add_option("series", o.series_file, "Series JSON")->required();

  auto* bloch = app.add_subcommand("bloch", "Bloch-Landau certificate for a series with |dc f(0)| = 1");
  bloch->add_option("series", o.series_file, "Series JSON")->required();
  bloch->add_option("--slice", o.slice, "Imaginary unit of the slice as x,y,z")->delimiter(',')->expected(3);
  bloch->add_option("--targets", o.bloch_targets, "Coverage targets");

  auto* verify = app.add_subcommand("verify", "Run the theorem suites listed in a manifest");
  verify->add_option("manifest", o.manifest_file, "Suite manifest JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string cfg = config_json(o);
    if (*eval) {
      const std::string series = read_file(o.series_file);
      const std::string points = read_file(o.points_file);
      return run(o, [&](char** out) { return sr_eval_json(series.c_str(), points.c_str(), cfg.c_str(), out); },
                 format_eval);
    }
    if (*landau) {
      const std::string series = read_file(o.series_file);
      return run(o, [&](char** out) { return sr_landau_certify_json(series.c_str(), cfg.c_str(), out); },
                 format_certificate);
    }
    if (*bloch) {
      const std::string series = read_file(o.series_file);
      return run(o, [&](char** out) { return sr_bloch_landau_json(series.c_str(), cfg.c_str(), out); },
                 format_certificate);
    }
    const std::string manifest = read_file(o.manifest_file);
    return run(o, [&](char** out) { return sr_verify_manifest_json(manifest.c_str(), cfg.c_str(), out); },
               format_verify);
  } catch (const InputError& e) {
    std::cerr << "slicereg: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "slicereg: " << e.what() << '\n';
    return 1;
  }
}
