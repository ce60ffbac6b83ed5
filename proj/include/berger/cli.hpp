#pragma once

// Command-line front end. Every command echoes its inputs and writes either a
// JSON object {inputs, results, errors} or a CSV table with a fixed header.
//
// Exit codes: 0 ok, 1 usage, 2 geometry error, 3 verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "berger/ambient.hpp"
#include "berger/connection.hpp"
#include "berger/error.hpp"
#include "berger/metric.hpp"
#include "berger/params.hpp"
#include "berger/torus.hpp"
#include "berger/verify.hpp"

namespace berger::cli {

using json = nlohmann::json;

enum ExitCode : int { kOk = 0, kUsage = 1, kGeometry = 2, kVerifyFailed = 3 };

/// %.17g, enough to round-trip any double.
inline std::string format_number(double v) { return show(v); }

inline Signature parse_signature(const std::string& text) {
  std::vector<int> signs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string token = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (token == "+" || token == "+1" || token == "1") {
      signs.push_back(1);
    } else if (token == "-" || token == "-1") {
      signs.push_back(-1);
    } else {
      throw std::invalid_argument("signature entries must be + or -, got '" + token + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (signs.size() != 3) throw std::invalid_argument("signature needs three entries, e.g. +,+,+");
  return {signs[0], signs[1], signs[2]};
}

inline json to_json(const FrameCoords& c) { return {{"x", c.x}, {"y", c.y}, {"z", c.z}, {"n", c.n}}; }

inline json to_json(const Table3& t) {
  json out = json::array();
  for (const auto& row : t) {
    json r = json::array();
    for (const auto& col : row) r.push_back(json(col));
    out.push_back(r);
  }
  return out;
}

inline json to_json(const CheckRecord& c) {
  return {{"name", c.name},
          {"cases", c.cases},
          {"max_abs_deviation", c.max_abs_deviation},
          {"tolerance", c.tolerance},
          {"passed", c.passed},
          {"expected_fail", c.expected_fail}};
}

inline json to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"passed", r.all_passed()}, {"checks", checks}};
}

namespace detail {

struct Options {
  std::string space = "s3";
  std::string sig = "+,+,+";
  bool riemannian = false;
  bool lorentzian = false;
  double lambda = 1.0, mu = 1.0, nu = 1.0;
  double theta = std::numbers::pi / 4, alpha = 0.0, beta = 0.0;
  double target = 0.0;
  std::string method;
  std::string format = "json";
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  double step = 1e-5;
  unsigned threads = 1;

  ModelSpec spec() const {
    Signature s = parse_signature(sig);
    if (riemannian) s = Signature::riemannian();
    if (lorentzian) s = Signature::lorentzian();
    return {space == "s3" ? SpaceKind::S3 : SpaceKind::Sigma3, {lambda, mu, nu}, s};
  }

  json model_inputs() const {
    const ModelSpec m = spec();
    return {{"space", to_string(m.space)},
            {"signature", m.signature.to_string()},
            {"lambda", lambda},
            {"mu", mu},
            {"nu", nu}};
  }
};

const char* const kAxisNames[3] = {"X", "Y", "Z"};

struct Output {
  std::ostream& out;
  std::ostream& err;
  bool csv;

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  }
};

inline std::string cell(double v) { return format_number(v); }
inline std::string cell(bool v) { return v ? "true" : "false"; }

int cmd_connection(const Options& o, const json& inputs, Output& io) {
  const ModelSpec spec = o.spec();
  const std::string method = inputs["method"];

  const bool want_koszul = method != "closed-form";
  const bool want_closed = method != "koszul";
  const Table3 koszul = want_koszul ? koszul_connection(spec).gamma : Table3{};
  const Table3 closed = want_closed ? closed_form_connection(spec).gamma : Table3{};

  json results;
  results["gamma"] = to_json(want_koszul ? koszul : closed);
  if (want_koszul && want_closed) {
    results["closed_form_gamma"] = to_json(closed);
    results["max_deviation"] = max_abs_difference(koszul, closed);
  }

  if (!io.csv) {
    io.out << json{{"inputs", inputs}, {"results", results}, {"errors", json::array()}}.dump(2) << '\n';
    return kOk;
  }
  if (want_koszul && want_closed) {
    io.row({"i", "j", "k", "koszul", "closed_form"});
  } else {
    io.row({"i", "j", "k", "gamma"});
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        std::vector<std::string> r{kAxisNames[i], kAxisNames[j], kAxisNames[k]};
        if (want_koszul) r.push_back(cell(koszul[i][j][k]));
        if (want_closed) r.push_back(cell(closed[i][j][k]));
        io.row(r);
      }
  return kOk;
}

int cmd_curvature(const Options& o, const json& inputs, Output& io) {
  const ModelSpec spec = o.spec();
  spec.validate();
  const bool tabulated = spec.signature.is_tabulated();
  json planes = json::array();
  if (io.csv) io.row({"plane", "numerator", "sectional_curvature", "printed_numerator", "region"});
  for (PlaneKind plane : kAllPlanes) {
    const double numerator = curvature_numerator(spec, plane);
    const double k = sectional_curvature(spec, plane);
    json entry{{"plane", to_string(plane)}, {"numerator", numerator}, {"sectional_curvature", k}};
    std::string printed, region;
    if (tabulated) {
      const double p = printed_curvature_numerator(spec, plane);
      entry["printed_numerator"] = p;
      entry["printed_is_known_typo"] = printed_curvature_is_known_typo(spec, plane);
      entry["region"] = to_string(sign_region_check(spec, plane));
      printed = cell(p);
      region = to_string(sign_region_check(spec, plane));
    } else {
      entry["printed_numerator"] = nullptr;
      entry["region"] = nullptr;
    }
    planes.push_back(entry);
    if (io.csv) io.row({to_string(plane), cell(numerator), cell(k), printed, region});
  }
  if (!io.csv) {
    io.out << json{{"inputs", inputs}, {"results", {{"planes", planes}}}, {"errors", json::array()}}.dump(2)
           << '\n';
  }
  return kOk;
}

int cmd_mean_curvature(const Options& o, const json& inputs, Output& io) {
  const ModelSpec spec = o.spec();
  const TorusPoint tp{o.theta, o.alpha, o.beta};

  const SurfaceGeometry geo = mean_curvature(spec, tp);
  const FrameCoords b_beta = second_ff_beta(spec, tp);
  std::optional<double> closed;
  if (spec.signature.is_tabulated()) closed = closed_form_mean_curvature_norm(spec, tp);

  if (io.csv) {
    io.row({"E", "F", "G", "b_alpha_y", "b_alpha_z", "b_beta_y", "b_beta_z", "h_x", "h_y", "h_z", "h_n",
            "h_norm", "closed_form_h_norm", "minimal"});
    io.row({cell(geo.form.E), cell(geo.form.F), cell(geo.form.G), cell(geo.b_alpha.y), cell(geo.b_alpha.z),
            cell(b_beta.y), cell(b_beta.z), cell(geo.h.x), cell(geo.h.y), cell(geo.h.z), cell(geo.h.n),
            cell(geo.h_norm), closed ? cell(*closed) : "", cell(geo.minimal)});
    return kOk;
  }
  json results{{"E", geo.form.E},
               {"F", geo.form.F},
               {"G", geo.form.G},
               {"b_alpha", to_json(geo.b_alpha)},
               {"b_beta", to_json(b_beta)},
               {"trace_b", to_json(geo.trace_b)},
               {"h", to_json(geo.h)},
               {"h_norm", geo.h_norm},
               {"closed_form_h_norm", closed ? json(*closed) : json(nullptr)},
               {"minimal", geo.minimal}};
  io.out << json{{"inputs", inputs}, {"results", results}, {"errors", json::array()}}.dump(2) << '\n';
  return kOk;
}

int cmd_cmc_solve(const Options& o, const json& inputs, Output& io) {
  const ModelSpec spec = o.spec();
  const std::string method = inputs["method"];
  const CmcSolution sol =
      cmc_solve(spec, o.target, method == "bisection" ? CmcMethod::Bisection : CmcMethod::ClosedForm);
  if (io.csv) {
    io.row({"theta"});
    for (double t : sol.thetas) io.row({cell(t)});
    return kOk;
  }
  io.out << json{{"inputs", inputs}, {"results", {{"thetas", sol.thetas}}}, {"errors", json::array()}}.dump(2)
         << '\n';
  return kOk;
}

int cmd_verify(const Options& o, const json& inputs, Output& io, bool single_spec) {
  FdConfig cfg;
  cfg.step = o.step;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  std::vector<ModelSpec> specs;
  if (single_spec) {
    specs.push_back(o.spec());
  } else {
    for (ModelSpec s : standard_cases()) {
      s.params = {o.lambda, o.mu, o.nu};
      specs.push_back(s);
    }
  }
  for (const auto& s : specs) s.validate();
  const VerificationReport report = run_suite(specs, cfg, o.threads);

  if (io.csv) {
    io.row({"name", "cases", "max_abs_deviation", "tolerance", "passed", "expected_fail"});
    for (const auto& c : report.checks) {
      io.row({c.name, std::to_string(c.cases), cell(c.max_abs_deviation), cell(c.tolerance), cell(c.passed),
              cell(c.expected_fail)});
    }
  } else {
    io.out << json{{"inputs", inputs}, {"results", to_json(report)}, {"errors", json::array()}}.dump(2) << '\n';
  }
  return report.all_passed() ? kOk : kVerifyFailed;
}

void add_model_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--space", o.space, "s3 or sigma3")->check(CLI::IsMember({"s3", "sigma3"}))->capture_default_str();
  auto* sig = cmd->add_option("--sig", o.sig, "signs on the lambda, mu, nu terms, e.g. -,+,+")
                  ->check([](const std::string& s) {
                    try {
                      parse_signature(s);
                      return std::string();
                    } catch (const std::exception& e) {
                      return std::string(e.what());
                    }
                  })
                  ->capture_default_str();
  auto* rie = cmd->add_flag("--riemannian", o.riemannian, "same as --sig +,+,+");
  auto* lor = cmd->add_flag("--lorentzian", o.lorentzian, "same as --sig -,+,+");
  sig->excludes(rie)->excludes(lor);
  rie->excludes(lor);
  cmd->add_option("--lambda", o.lambda)->capture_default_str();
  cmd->add_option("--mu", o.mu)->capture_default_str();
  cmd->add_option("--nu", o.nu)->capture_default_str();
  cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

}  // namespace detail

/// Runs one command; `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  Options o;
  CLI::App app{"Geometry of Berger spheres and their Lorentzian analogues"};
  app.name("berger");
  app.require_subcommand(1);

  auto* connection = app.add_subcommand("connection", "Levi-Civita connection on the left-invariant frame");
  add_model_options(connection, o);
  connection->add_option("--method", o.method, "koszul, closed-form or both")
      ->check(CLI::IsMember({"koszul", "closed-form", "both"}));

  auto* curvature = app.add_subcommand("curvature", "Sectional curvatures of the coordinate planes");
  add_model_options(curvature, o);

  auto* mean = app.add_subcommand("mean-curvature", "Fundamental forms and mean curvature of a flat torus");
  add_model_options(mean, o);
  mean->add_option("--theta", o.theta)->capture_default_str();
  mean->add_option("--alpha", o.alpha)->capture_default_str();
  mean->add_option("--beta", o.beta)->capture_default_str();

  auto* cmc = app.add_subcommand("cmc-solve", "Tori of the family with prescribed constant |H|");
  add_model_options(cmc, o);
  cmc->add_option("--target", o.target, "the constant C")->required();
  cmc->add_option("--method", o.method, "closed-form or bisection")
      ->check(CLI::IsMember({"closed-form", "bisection"}));

  auto* verify = app.add_subcommand("verify", "Finite-difference and oracle cross-checks");
  add_model_options(verify, o);
  verify->add_option("--samples", o.samples)->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--seed", o.seed)->capture_default_str();
  verify->add_option("--step", o.step, "central-difference step in (0, 1e-2]")
      ->check([](const std::string& s) {
        double v = 0.0;
        try {
          v = std::stod(s);
        } catch (const std::exception&) {
          return std::string("not a number: " + s);
        }
        return v > 0.0 && v <= 1e-2 ? std::string() : std::string("step must lie in (0, 1e-2]");
      })
      ->capture_default_str();
  verify->add_option("--threads", o.threads)->check(CLI::PositiveNumber)->capture_default_str();

  std::vector<std::string> argv_store{"berger"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Output io{out, err, o.format == "csv"};
  const bool single = verify->count("--space") || verify->count("--sig") || o.riemannian || o.lorentzian;
  json inputs = o.model_inputs();
  if (*connection) {
    inputs["method"] = o.method.empty() ? "koszul" : o.method;
  } else if (*mean) {
    inputs["theta"] = o.theta;
    inputs["alpha"] = o.alpha;
    inputs["beta"] = o.beta;
  } else if (*cmc) {
    inputs["target"] = o.target;
    inputs["method"] = o.method.empty() ? "closed-form" : o.method;
  } else if (*verify) {
    // Thread count is left out so the report is identical for any value.
    if (!single) inputs = {{"lambda", o.lambda}, {"mu", o.mu}, {"nu", o.nu}};
    inputs["samples"] = o.samples;
    inputs["seed"] = o.seed;
    inputs["step"] = o.step;
  }
  try {
    if (*connection) return cmd_connection(o, inputs, io);
    if (*curvature) return cmd_curvature(o, inputs, io);
    if (*mean) return cmd_mean_curvature(o, inputs, io);
    if (*cmc) return cmd_cmc_solve(o, inputs, io);
    return cmd_verify(o, inputs, io, single);
  } catch (const GeometryError& e) {
    if (io.csv) {
      err << "error," << to_string(e.code()) << ',' << e.what() << '\n';
    } else {
      json error{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
      out << json{{"inputs", inputs}, {"results", nullptr}, {"errors", json::array({error})}}.dump(2) << '\n';
    }
    return kGeometry;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace berger::cli
