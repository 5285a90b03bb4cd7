// Copyright 2026 siqbarrier contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "siqbarrier/cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "siqbarrier/errors.hpp"
#include "siqbarrier/parallel.hpp"

#ifndef SIQBARRIER_VERSION
#define SIQBARRIER_VERSION "0.0.0"
#endif

namespace siqbarrier::cli {
namespace {

using json = nlohmann::ordered_json;

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string_view to_string(Command c) {
  switch (c) {
    case Command::compute: return "compute";
    case Command::sweep: return "sweep";
    case Command::verify: return "verify";
    case Command::shapecheck: return "shapecheck";
    case Command::props: return "props";
  }
  return "unknown";
}

std::string_view to_string(MethodSelection m) {
  switch (m) {
    case MethodSelection::closed_form: return "closed_form";
    case MethodSelection::f_matrix: return "f_matrix";
    case MethodSelection::oracle: return "oracle";
    case MethodSelection::all: return "all";
  }
  return "unknown";
}

std::vector<Method> methods_of(MethodSelection m) {
  switch (m) {
    case MethodSelection::closed_form: return {Method::closed_form};
    case MethodSelection::f_matrix: return {Method::f_matrix};
    case MethodSelection::oracle: return {Method::oracle};
    case MethodSelection::all: return {Method::closed_form, Method::f_matrix, Method::oracle};
  }
  return {};
}

// Severity of an exception, mapped onto exit codes.
int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigurationError*>(&e)) return usage_failure;
  if (dynamic_cast<const ConservationError*>(&e)) return tolerance_failure;
  return domain_failure;
}

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const PoleError*>(&e)) return "pole";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const SingularMatrixError*>(&e)) return "singular_matrix";
  if (dynamic_cast<const DegenerateError*>(&e)) return "degenerate";
  if (dynamic_cast<const ConservationError*>(&e)) return "conservation";
  if (dynamic_cast<const PrecisionError*>(&e)) return "precision";
  if (dynamic_cast<const ConfigurationError*>(&e)) return "configuration";
  return "internal";
}

json barrier_json(const BarrierSpec& spec) {
  json j;
  j["kind"] = std::string(to_string(spec.kind()));
  j["V0"] = spec.V0();
  std::visit([&](const auto& s) {
    using S = std::decay_t<decltype(s)>;
    if constexpr (std::is_same_v<S, Parabolic>) j["omega"] = s.omega;
    else j["b"] = s.b;
  }, spec.shape());
  j["hbar"] = spec.units().hbar;
  j["mass"] = spec.units().mass;
  return j;
}

json request_json(const RunRequest& r) {
  json j;
  j["command"] = std::string(to_string(r.command));
  j["barrier"] = barrier_json(r.barrier);
  if (r.energy) j["energy"] = *r.energy;
  if (!r.energy_grid.empty()) j["energy_grid"] = r.energy_grid;
  j["method"] = std::string(to_string(r.method));
  j["format"] = r.format == OutputFormat::json ? "json" : "csv";
  j["sign"] = r.sign == SignChoice::upper ? "upper" : "lower";
  j["checks"] = r.policy == CheckPolicy::enforce ? "enforce" : "warn";
  j["tolerance"] = r.tolerance;
  j["fmatrix_tolerance"] = r.fmatrix_tolerance;
  if (r.command == Command::shapecheck) {
    j["x_min"] = r.x_min;
    j["x_max"] = r.x_max;
    j["points"] = r.points;
    j["chain_index"] = r.chain_index;
  }
  json o;
  if (r.oracle.x_left) o["x_left"] = *r.oracle.x_left;
  if (r.oracle.x_right) o["x_right"] = *r.oracle.x_right;
  o["max_step_phase"] = r.oracle.max_step_phase;
  o["wkb_quality_threshold"] = r.oracle.wkb_quality_threshold;
  o["refinement_levels"] = r.oracle.refinement_levels;
  j["oracle"] = o;
  return j;
}

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool passed;
};

json check_json(const Check& c) {
  return {{"name", c.name}, {"value", num(c.value)}, {"tolerance", num(c.tolerance)},
          {"passed", c.passed}};
}

struct Row {
  double energy = 0.0;
  Method method = Method::closed_form;
  ScatteringResult result;
  std::optional<OracleResult> oracle;
  std::vector<std::string> warnings;
};

json row_json(const Row& r) {
  json j{{"energy", r.energy},
         {"method", std::string(to_string(r.method))},
         {"T", r.result.T},
         {"R", r.result.R},
         {"unitarity_residual", r.result.unitarity_residual}};
  if (r.method != Method::oracle) {
    j["C_T"] = {r.result.C_T.real(), r.result.C_T.imag()};
    j["C_R"] = {r.result.C_R.real(), r.result.C_R.imag()};
  }
  if (r.oracle) {
    j["error_estimate"] = r.oracle->error_estimate;
    j["matching_points"] = {r.oracle->matching_points.first, r.oracle->matching_points.second};
  }
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  return j;
}

Row evaluate(const RunRequest& req, double E, Method method) {
  Row row;
  row.energy = E;
  row.method = method;
  switch (method) {
    case Method::closed_form:
      row.result = closed_form_coefficients(req.barrier, E);
      break;
    case Method::f_matrix: {
      FMatrixOptions o;
      o.a.sign = req.sign;
      o.policy = req.policy;
      o.tolerance = req.fmatrix_tolerance;
      row.result = f_matrix_coefficients(req.barrier, E, o, &row.warnings);
      break;
    }
    case Method::oracle: {
      row.oracle = solve(req.barrier, E, req.oracle);
      row.result.T = row.oracle->T;
      row.result.R = row.oracle->R;
      row.result.method = Method::oracle;
      row.result.unitarity_residual = row.oracle->unitarity_residual;
      break;
    }
  }
  return row;
}

// Per-energy outcome of a grid job.
struct Slot {
  std::vector<Row> rows;
  std::string error;
  std::string error_kind;
  int code = ok;
};

template <class F>
std::vector<Slot> run_grid(const RunRequest& req, const std::vector<double>& grid, F&& job) {
  std::vector<Slot> slots(grid.size());
  parallel_for(grid.size(), req.threads, [&](std::size_t i) {
    try {
      slots[i].rows = job(i, grid[i]);
    } catch (const std::exception& e) {
      slots[i].error = e.what();
      slots[i].error_kind = error_type(e);
      slots[i].code = exit_code_for(e);
    }
  });
  return slots;
}

std::vector<double> energies(const RunRequest& req) {
  if (!req.energy_grid.empty()) return req.energy_grid;
  if (req.energy) return {*req.energy};
  return {};
}

json envelope(const RunRequest& req) {
  return {{"request", request_json(req)}, {"results", json::array()}, {"checks", json::array()},
          {"version", SIQBARRIER_VERSION}};
}

constexpr std::string_view csv_header = "energy,T,R,method,unitarity_residual";

std::string csv_row(const Row& r) {
  return fmt::format("{},{},{},{},{}\n", num(r.energy), num(r.result.T), num(r.result.R),
                     to_string(r.method), num(r.result.unitarity_residual));
}

int worst(int a, int b) {
  // domain failures outrank tolerance failures; usage never arises here.
  if (a == domain_failure || b == domain_failure) return domain_failure;
  return std::max(a, b);
}

RunOutcome run_compute_or_sweep(const RunRequest& req) {
  const auto grid = energies(req);
  const auto methods = methods_of(req.method);
  const auto slots = run_grid(req, grid, [&](std::size_t, double E) {
    std::vector<Row> rows;
    for (Method m : methods) rows.push_back(evaluate(req, E, m));
    return rows;
  });
  RunOutcome out;
  json doc = envelope(req);
  std::string csv = std::string(csv_header) + "\n";
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Slot& s = slots[i];
    if (!s.error.empty()) {
      out.exit_code = worst(out.exit_code, s.code);
      out.diagnostics += fmt::format("energy {}: {}\n", num(grid[i]), s.error);
      doc["results"].push_back({{"energy", grid[i]}, {"error", {{"type", s.error_kind}, {"message", s.error}}}});
      for (Method m : methods) csv += fmt::format("{},nan,nan,{},nan\n", num(grid[i]), to_string(m));
      continue;
    }
    for (const Row& r : s.rows) {
      doc["results"].push_back(row_json(r));
      csv += csv_row(r);
      for (const auto& w : r.warnings)
        out.diagnostics += fmt::format("energy {}: warning: {}\n", num(r.energy), w);
      doc["checks"].push_back(check_json({fmt::format("unitarity[{}]@{}", to_string(r.method), num(r.energy)),
                                          r.result.unitarity_residual,
                                          r.method == Method::oracle ? 1e-4 : req.fmatrix_tolerance,
                                          r.result.unitarity_residual <= (r.method == Method::oracle ? 1e-4 : req.fmatrix_tolerance)}));
    }
  }
  out.output = req.format == OutputFormat::json ? doc.dump(2) + "\n" : csv;
  return out;
}

RunOutcome run_verify(const RunRequest& req) {
  const auto grid = energies(req);
  const auto slots = run_grid(req, grid, [&](std::size_t, double E) {
    return std::vector<Row>{evaluate(req, E, Method::closed_form), evaluate(req, E, Method::f_matrix),
                            evaluate(req, E, Method::oracle)};
  });
  RunOutcome out;
  json doc = envelope(req);
  std::string csv = std::string(csv_header) + ",T_oracle,abs_err\n";
  double max_f = 0.0, max_o = 0.0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Slot& s = slots[i];
    if (!s.error.empty()) {
      out.exit_code = worst(out.exit_code, s.code);
      out.diagnostics += fmt::format("energy {}: {}\n", num(grid[i]), s.error);
      doc["results"].push_back({{"energy", grid[i]}, {"error", {{"type", s.error_kind}, {"message", s.error}}}});
      csv += fmt::format("{},nan,nan,closed_form,nan,nan,nan\n", num(grid[i]));
      continue;
    }
    const auto& c = s.rows[0].result;
    const auto& f = s.rows[1].result;
    const auto& o = *s.rows[2].oracle;
    const double df = std::max(std::abs(c.T - f.T), std::abs(c.R - f.R));
    const double dO = std::abs(c.T - o.T);
    max_f = std::max(max_f, df);
    max_o = std::max(max_o, dO);
    doc["results"].push_back({{"energy", grid[i]},
                              {"T_closed", c.T},
                              {"R_closed", c.R},
                              {"T_fmatrix", f.T},
                              {"R_fmatrix", f.R},
                              {"T_oracle", o.T},
                              {"R_oracle", o.R},
                              {"delta_fmatrix", df},
                              {"delta_oracle", dO},
                              {"oracle_error_estimate", o.error_estimate}});
    csv += fmt::format("{},{},{},closed_form,{},{},{}\n", num(grid[i]), num(c.T), num(c.R),
                       num(c.unitarity_residual), num(o.T), num(dO));
  }
  const Check cf{"max_delta_fmatrix", max_f, req.fmatrix_tolerance, max_f <= req.fmatrix_tolerance};
  const Check co{"max_delta_oracle", max_o, req.tolerance, max_o <= req.tolerance};
  doc["checks"].push_back(check_json(cf));
  doc["checks"].push_back(check_json(co));
  out.diagnostics += fmt::format("max |T_closed - T_fmatrix| = {}, max |T_closed - T_oracle| = {}\n",
                                 num(max_f), num(max_o));
  if (out.exit_code == ok && !(cf.passed && co.passed)) out.exit_code = tolerance_failure;
  out.output = req.format == OutputFormat::json ? doc.dump(2) + "\n" : csv;
  return out;
}

std::string checks_csv(const std::vector<Check>& checks) {
  std::string csv = "name,value,tolerance,passed\n";
  for (const auto& c : checks)
    csv += fmt::format("{},{},{},{}\n", c.name, num(c.value), num(c.tolerance), c.passed);
  return csv;
}

RunOutcome run_shapecheck(const RunRequest& req) {
  const auto& spec = req.barrier;
  std::vector<double> grid(static_cast<std::size_t>(req.points));
  for (int i = 0; i < req.points; ++i)
    grid[i] = req.points == 1 ? req.x_min
                              : req.x_min + (req.x_max - req.x_min) * i / (req.points - 1);
  const auto family = shape_invariant_family(spec, req.sign);
  const double V0 = spec.V0();
  const double tol = req.fmatrix_tolerance;
  const double si = verify_shape_invariance(family, grid);
  const double ls = verify_linear_shift(family, req.chain_index, grid);
  const auto fc = verify_factorization(spec, grid, req.sign);
  const Complex expected = spec.kind() == BarrierKind::parabolic
                               ? Complex(-V0, -sign_of(req.sign) * energy_quantum(spec))
                               : family.a1 * family.a1;
  std::vector<Check> checks{
      {"shape_invariance", si, tol * V0, si <= tol * V0},
      {fmt::format("linear_shift[n={}]", req.chain_index), ls, tol * std::sqrt(V0),
       ls <= tol * std::sqrt(V0)},
      {"factorization_x_dependence", fc.max_deviation, tol * (V0 + std::abs(fc.residual_constant)),
       fc.max_deviation <= tol * (V0 + std::abs(fc.residual_constant))},
      {"factorization_constant", std::abs(fc.residual_constant - expected),
       tol * (V0 + std::abs(expected)),
       std::abs(fc.residual_constant - expected) <= tol * (V0 + std::abs(expected))},
  };
  json doc = envelope(req);
  doc["results"].push_back({{"shape_invariance_residual", si},
                            {"linear_shift_residual", ls},
                            {"factorization_constant", {fc.residual_constant.real(), fc.residual_constant.imag()}},
                            {"factorization_max_deviation", fc.max_deviation},
                            {"a1", {family.a1.real(), family.a1.imag()}}});
  bool all_passed = true;
  for (const auto& c : checks) {
    doc["checks"].push_back(check_json(c));
    all_passed = all_passed && c.passed;
  }
  RunOutcome out;
  out.exit_code = all_passed ? ok : tolerance_failure;
  out.output = req.format == OutputFormat::json ? doc.dump(2) + "\n" : checks_csv(checks);
  return out;
}

RunOutcome run_props(const RunRequest& req) {
  const auto grid = energies(req);
  const auto& spec = req.barrier;
  const double tol = req.fmatrix_tolerance;
  FMatrixOptions o;
  o.a.sign = req.sign;
  o.tolerance = tol;

  std::vector<json> entries(grid.size());
  std::vector<std::vector<Check>> per_energy(grid.size());
  const auto slots = run_grid(req, grid, [&](std::size_t i, double E) {
    const auto p = f_matrix_properties(spec, E, o);
    json j{{"energy", E},
           {"det_residual", p.det_residual},
           {"abs_F11", p.abs_F11},
           {"abs_F12", p.abs_F12},
           {"abs_F21", p.abs_F21},
           {"abs_F22", p.abs_F22},
           {"T", p.T},
           {"R", p.R},
           {"observed_F11_equals_minus_F22", p.diagonal_anti_equal},
           {"observed_F21_equals_minus_F12", p.off_diagonal_anti_equal},
           {"sign_residual_diagonal", p.sign_residual_diagonal},
           {"sign_residual_off_diagonal", p.sign_residual_off_diagonal}};
    const bool flux = !(spec.kind() == BarrierKind::eckart && dimensionless(spec, E).s->imag() != 0.0);
    std::vector<Check> c{{fmt::format("det_F@{}", num(E)), p.det_residual, tol, p.det_residual <= tol}};
    if (flux) {
      c.push_back({fmt::format("abs_F12_at_least_one@{}", num(E)), 1.0 - p.abs_F12, tol, p.f12_at_least_one});
      c.push_back({fmt::format("abs_F22_le_abs_F12@{}", num(E)), p.abs_F22 - p.abs_F12, tol, p.f22_bounded_by_f12});
      c.push_back({fmt::format("abs_F11_eq_abs_F22@{}", num(E)), p.diagonal_modulus_gap,
                   tol * std::max(1.0, p.abs_F22), p.diagonal_modulus_gap <= tol * std::max(1.0, p.abs_F22)});
    }
    if (spec.kind() == BarrierKind::morse) {
      const double gap = morse_h_reduction_gap(spec, E);
      c.push_back({fmt::format("morse_h_reduction@{}", num(E)), gap, tol, gap <= tol});
      const double T_closed = closed_form_coefficients(spec, E).T;
      for (auto [form, name] : {std::pair{MorseMinusForm::printed, "printed"},
                                std::pair{MorseMinusForm::printed_corrected, "printed_corrected"}}) {
        FMatrixOptions v = o;
        v.a.morse_minus = form;
        const auto q = f_matrix_properties(spec, E, v);
        j[std::string("morse_left_matrix_") + name] = {{"det_residual", q.det_residual},
                                                         {"T", q.T},
                                                         {"T_closed", T_closed}};
      }
    }
    entries[i] = std::move(j);
    per_energy[i] = std::move(c);
    return std::vector<Row>{};
  });

  RunOutcome out;
  json doc = envelope(req);
  std::vector<Check> all;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].error.empty()) {
      out.exit_code = worst(out.exit_code, slots[i].code);
      out.diagnostics += fmt::format("energy {}: {}\n", num(grid[i]), slots[i].error);
      doc["results"].push_back({{"energy", grid[i]}, {"error", {{"type", slots[i].error_kind}, {"message", slots[i].error}}}});
      continue;
    }
    doc["results"].push_back(entries[i]);
    for (auto& c : per_energy[i]) all.push_back(c);
  }
  bool all_passed = true;
  for (const auto& c : all) {
    doc["checks"].push_back(check_json(c));
    all_passed = all_passed && c.passed;
  }
  if (out.exit_code == ok && !all_passed) out.exit_code = tolerance_failure;
  out.output = req.format == OutputFormat::json ? doc.dump(2) + "\n" : checks_csv(all);
  return out;
}

RunOutcome failure(const RunRequest* req, const std::exception& e, int code) {
  RunOutcome out;
  out.exit_code = code;
  out.diagnostics = fmt::format("error: {}\n", e.what());
  json doc{{"error", {{"type", error_type(e)}, {"message", e.what()}}}, {"version", SIQBARRIER_VERSION}};
  if (req) doc["request"] = request_json(*req);
  if (!req || req->format == OutputFormat::json) out.output = doc.dump(2) + "\n";
  return out;
}

}  // namespace

void RunRequest::validate() const {
  const bool needs_energy = command == Command::compute;
  const bool needs_grid = command == Command::sweep || command == Command::verify;
  if (needs_energy && (!energy || !energy_grid.empty()))
    throw ConfigurationError("compute needs exactly one --energy");
  if (needs_grid && (energy || energy_grid.empty()))
    throw ConfigurationError(std::string(to_string(command)) + " needs an energy grid");
  if (command == Command::props && (energy.has_value() == !energy_grid.empty()))
    throw ConfigurationError("props needs either --energy or an energy grid");
  if (energy && !std::isfinite(*energy)) throw ConfigurationError("energy must be finite");
  for (std::size_t i = 0; i < energy_grid.size(); ++i) {
    if (!std::isfinite(energy_grid[i])) throw ConfigurationError("energy grid must be finite");
    if (i > 0 && !(energy_grid[i] > energy_grid[i - 1]))
      throw ConfigurationError("energy grid must be strictly increasing");
  }
  if (!(tolerance > 0.0) || !(fmatrix_tolerance > 0.0))
    throw ConfigurationError("tolerances must be > 0");
  if (command == Command::shapecheck) {
    if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max))
      throw ConfigurationError("shapecheck needs finite --xmin < --xmax");
    if (points < 2) throw ConfigurationError("shapecheck needs --points >= 2");
    if (chain_index < 2) throw ConfigurationError("--n must be >= 2");
  }
  oracle.validate();
}

RunOutcome run(const RunRequest& request) {
  try {
    request.validate();
  } catch (const std::exception& e) {
    return failure(&request, e, usage_failure);
  }
  try {
    switch (request.command) {
      case Command::compute:
      case Command::sweep: return run_compute_or_sweep(request);
      case Command::verify: return run_verify(request);
      case Command::shapecheck: return run_shapecheck(request);
      case Command::props: return run_props(request);
    }
  } catch (const std::exception& e) {
    return failure(&request, e, exit_code_for(e));
  }
  return failure(&request, Error("unknown command"), usage_failure);
}

RunRequest parse_arguments(const std::vector<std::string>& args) {
  CLI::App app{"Exact and numerical transmission through shape-invariant barriers", "siqbarrier"};
  app.require_subcommand(1);

  struct Raw {
    std::string barrier;
    std::optional<double> V0, omega, b, energy, emin, emax, x_left, x_right;
    double hbar = 1.0, mass = 1.0;
    std::optional<int> steps;
    std::string spacing = "linear";
    std::optional<std::string> method;
    std::string format = "json", sign = "upper";
    double tol = 1e-6, ftol = 1e-10;
    double max_step_phase = OracleConfig{}.max_step_phase;
    double wkb = OracleConfig{}.wkb_quality_threshold;
    int levels = OracleConfig{}.refinement_levels;
    bool lenient = false;
    std::optional<double> xmin, xmax;
    int points = 1000, n = 3;
    unsigned threads = 0;
  } raw;

  const std::map<std::string, Command> commands{{"compute", Command::compute},
                                                {"sweep", Command::sweep},
                                                {"verify", Command::verify},
                                                {"shapecheck", Command::shapecheck},
                                                {"props", Command::props}};
  const std::vector<std::pair<std::string, std::string>> descriptions{
      {"compute", "T and R at one energy"},
      {"sweep", "T and R over an energy grid"},
      {"verify", "compare closed form, F-matrix and numerical routes over a grid"},
      {"shapecheck", "shape-invariance, linear-shift and factorization residuals"},
      {"props", "evolution-matrix property report"}};

  for (const auto& [name, desc] : descriptions) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--barrier", raw.barrier, "parabolic | morse | eckart")
        ->required()
        ->check(CLI::IsMember({"parabolic", "morse", "eckart"}));
    sub->add_option("--V0", raw.V0, "barrier height")->required();
    sub->add_option("--omega", raw.omega, "parabolic frequency");
    sub->add_option("--b", raw.b, "Morse/Eckart length");
    sub->add_option("--hbar", raw.hbar, "reduced Planck constant");
    sub->add_option("--mass", raw.mass, "particle mass");
    sub->add_option("--sign", raw.sign, "upper | lower")->check(CLI::IsMember({"upper", "lower"}));
    sub->add_option("--format", raw.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", raw.threads, "worker threads (0 = SIQBARRIER_THREADS or all)");
    sub->add_option("--fmatrix-tol", raw.ftol, "tolerance on route and F-matrix residuals");
    sub->add_flag("--lenient", raw.lenient, "report F-matrix property failures as warnings");
    if (name == "shapecheck") {
      sub->add_option("--xmin", raw.xmin, "grid start (default: oracle window)");
      sub->add_option("--xmax", raw.xmax, "grid end (default: oracle window)");
      sub->add_option("--points", raw.points, "grid size");
      sub->add_option("--n", raw.n, "chain index for the linear-shift check");
      continue;
    }
    sub->add_option("--energy", raw.energy, "single energy");
    if (name != "compute") {
      sub->add_option("--emin", raw.emin, "grid start");
      sub->add_option("--emax", raw.emax, "grid end");
      sub->add_option("--steps", raw.steps, "grid size");
      sub->add_option("--spacing", raw.spacing, "linear | geometric")
          ->check(CLI::IsMember({"linear", "geometric"}));
    }
    if (name == "props") continue;
    if (name != "verify")
      sub->add_option("--method", raw.method, "closed_form | f_matrix | oracle | all")
          ->check(CLI::IsMember({"closed_form", "f_matrix", "oracle", "all"}));
    if (name == "verify") sub->add_option("--tol", raw.tol, "bound on |T_closed - T_oracle|");
    sub->add_option("--x-left", raw.x_left, "oracle window start");
    sub->add_option("--x-right", raw.x_right, "oracle window end");
    sub->add_option("--max-step-phase", raw.max_step_phase, "oracle phase advance per step");
    sub->add_option("--wkb-threshold", raw.wkb, "oracle matching-point quality bound");
    sub->add_option("--refinement-levels", raw.levels, "oracle step-halving levels");
  }

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream text, problem;
    app.exit(e, text, problem);
    if (e.get_exit_code() == 0) throw HelpRequested(text.str());
    throw ConfigurationError(problem.str().empty() ? e.what() : problem.str());
  }

  RunRequest req;
  const std::string name = app.get_subcommands().front()->get_name();
  req.command = commands.at(name);

  const UnitSystem units{raw.hbar, raw.mass};
  try {
    if (raw.barrier == "parabolic") {
      if (!raw.omega || raw.b) throw ConfigurationError("parabolic barrier takes --omega and no --b");
      req.barrier = BarrierSpec::parabolic(*raw.V0, *raw.omega, units);
    } else {
      if (!raw.b || raw.omega) throw ConfigurationError(raw.barrier + " barrier takes --b and no --omega");
      req.barrier = raw.barrier == "morse" ? BarrierSpec::morse(*raw.V0, *raw.b, units)
                                           : BarrierSpec::eckart(*raw.V0, *raw.b, units);
    }
  } catch (const DomainError& e) {
    throw ConfigurationError(e.what());
  }

  req.energy = raw.energy;
  const bool any_grid = raw.emin || raw.emax || raw.steps;
  if (any_grid) {
    if (!(raw.emin && raw.emax && raw.steps))
      throw ConfigurationError("an energy grid needs --emin, --emax and --steps");
    const double lo = *raw.emin, hi = *raw.emax;
    const int n = *raw.steps;
    if (n < 1) throw ConfigurationError("--steps must be >= 1");
    if (n == 1 ? lo != hi : !(lo < hi))
      throw ConfigurationError("--emin must be < --emax (or equal with --steps 1)");
    const bool geo = raw.spacing == "geometric";
    if (geo && !(lo > 0.0)) throw ConfigurationError("geometric spacing needs --emin > 0");
    for (int i = 0; i < n; ++i) {
      const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
      double E = geo ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
      if (i == n - 1) E = hi;
      req.energy_grid.push_back(E);
    }
  }

  if (raw.method) {
    const std::map<std::string, MethodSelection> m{{"closed_form", MethodSelection::closed_form},
                                                   {"f_matrix", MethodSelection::f_matrix},
                                                   {"oracle", MethodSelection::oracle},
                                                   {"all", MethodSelection::all}};
    req.method = m.at(*raw.method);
  } else {
    req.method = req.command == Command::sweep ? MethodSelection::closed_form : MethodSelection::all;
  }
  req.format = raw.format == "csv" ? OutputFormat::csv : OutputFormat::json;
  req.sign = raw.sign == "lower" ? SignChoice::lower : SignChoice::upper;
  req.policy = raw.lenient ? CheckPolicy::warn : CheckPolicy::enforce;
  req.tolerance = raw.tol;
  req.fmatrix_tolerance = raw.ftol;
  req.oracle.x_left = raw.x_left;
  req.oracle.x_right = raw.x_right;
  req.oracle.max_step_phase = raw.max_step_phase;
  req.oracle.wkb_quality_threshold = raw.wkb;
  req.oracle.refinement_levels = raw.levels;
  // Default grid: the oracle's integration window at the barrier top.
  const auto [wl, wr] = default_window(req.barrier, req.barrier.V0());
  req.x_min = raw.xmin.value_or(wl);
  req.x_max = raw.xmax.value_or(wr);
  req.points = raw.points;
  req.chain_index = raw.n;
  req.threads = raw.threads;
  req.validate();
  return req;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunRequest req;
  try {
    req = parse_arguments(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return ok;
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return usage_failure;
  }
  const RunOutcome r = run(req);
  out << r.output;
  err << r.diagnostics;
  return r.exit_code;
}

}  // namespace siqbarrier::cli
