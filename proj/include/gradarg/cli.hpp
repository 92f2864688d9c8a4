#ifndef GRADARG_CLI_HPP
#define GRADARG_CLI_HPP

// Command-line front end. run() does all the work and returns a RunReport so
// that tests can drive it without spawning processes.
//
// Exit codes: 0 success, 1 invert verification failed, 2 usage or input error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gradarg/degree_space.hpp"
#include "gradarg/framework.hpp"
#include "gradarg/framework_io.hpp"
#include "gradarg/inverse.hpp"
#include "gradarg/kernel_text.hpp"
#include "gradarg/kernels.hpp"
#include "gradarg/semantics.hpp"

namespace gradarg::cli {

using Json = nlohmann::ordered_json;

inline constexpr int exit_ok = 0;
inline constexpr int exit_semantic_failure = 1;
inline constexpr int exit_usage = 2;

struct RunReport {
  std::string subcommand;
  Json inputs = Json::object();
  Json outputs = Json::object();
  Json diagnostics = Json::object();
  int exit_code = exit_ok;

  Json to_json() const {
    Json j;
    j["subcommand"] = subcommand;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["diagnostics"] = diagnostics;
    j["exit_code"] = exit_code;
    return j;
  }
};

namespace detail {

/// Rounds to 12 significant digits for machine-readable output.
inline double sig12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

inline Json vector_json(std::span<const double> v) {
  Json a = Json::array();
  for (double e : v) a.push_back(sig12(e));
  return a;
}

inline Json by_argument(const Topology& t, std::span<const double> v) {
  Json o = Json::object();
  for (std::size_t i = 0; i < t.size(); ++i) o[t.id(i)] = sig12(v[i]);
  return o;
}

inline std::string fmt4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

inline void print_table(std::ostream& out, const Topology& t, const std::string& header,
                        const std::vector<std::pair<std::string, std::vector<double>>>& columns) {
  std::size_t width = header.size();
  for (const auto& id : t.arguments()) width = std::max(width, id.size());
  out << std::left << std::setw(static_cast<int>(width + 2)) << header;
  for (const auto& [name, values] : columns) out << std::left << std::setw(14) << name;
  out << '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    out << std::left << std::setw(static_cast<int>(width + 2)) << t.id(i);
    for (const auto& [name, values] : columns) out << std::left << std::setw(14) << fmt4(values[i]);
    out << '\n';
  }
}

inline std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    if (first == std::string::npos) throw Error(ErrorKind::malformed_file, "empty CSV cell");
    cell = cell.substr(first, last - first + 1);
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0') throw Error(ErrorKind::malformed_file, "not a number: '" + cell + "'");
    out.push_back(v);
  }
  return out;
}

/// Rows of comma-separated numbers; blank lines and lines starting with '#' are skipped.
inline std::vector<std::vector<double>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::malformed_file, "cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t\r")] == '#') continue;
    rows.push_back(parse_number_list(line));
  }
  return rows;
}

struct Options {
  bool json = false;
  std::string framework;
  std::string semantics;
  double tolerance = 1e-12;
  std::size_t max_iterations = 10000;
  std::string ordering;
  double zeta = 1.0;
  std::string method = "analytic";
  double bisection_tolerance = 1e-10;
  std::string degrees;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::string grid;
  std::string out;
  std::size_t samples = 1000;
};

inline FixedPointConfig fixed_point_config(const Options& o) {
  FixedPointConfig c;
  c.tolerance = o.tolerance;
  c.max_iterations = o.max_iterations;
  return c;
}

inline void run_evaluate(const Options& o, RunReport& r, std::ostream& out) {
  const auto doc = load_framework(o.framework);
  const auto framework = doc.framework();
  const auto kernel = parse_kernel(o.semantics);
  const auto e = evaluate(framework, kernel, fixed_point_config(o));
  const auto& t = framework.topology();

  r.outputs["degrees"] = by_argument(t, e.result.degrees);
  r.outputs["ranking"] = e.ranking.to_string();
  r.diagnostics["iterations"] = e.result.iterations;
  r.diagnostics["residual"] = sig12(e.result.residual);
  r.diagnostics["fixed_point_residual"] = sig12(e.result.fixed_point_residual);
  r.diagnostics["converged"] = e.result.converged;
  if (o.json) return;
  out << "semantics: " << to_string(kernel) << '\n';
  print_table(out, t, "argument", {{"weight", framework.weights()}, {"degree", e.result.degrees}});
  out << "ranking: " << e.ranking.to_string() << '\n';
  out << "iterations: " << e.result.iterations << "  residual: " << fmt4(e.result.residual)
      << "  converged: " << (e.result.converged ? "yes" : "no") << '\n';
}

inline void run_bounds(const Options& o, RunReport& r, std::ostream& out) {
  const auto doc = load_framework(o.framework);
  const auto& t = doc.topology;
  const auto kernel = parse_kernel(o.semantics);
  const auto partition = parse_ordering(o.ordering, t);
  const auto targets = compute_bounds(partition, t, kernel, BoundsConfig{.zeta = o.zeta, .top = 1.0});

  r.outputs["targets"] = by_argument(t, targets);
  if (o.json) return;
  out << "semantics: " << to_string(kernel) << "  ordering: " << partition.to_string() << "  zeta: " << o.zeta << '\n';
  print_table(out, t, "argument", {{"target", targets}});
}

inline void run_invert(const Options& o, RunReport& r, std::ostream& out) {
  const auto doc = load_framework(o.framework);
  const auto& t = doc.topology;
  const auto kernel = parse_kernel(o.semantics);
  const auto partition = parse_ordering(o.ordering, t);
  const auto method = o.method == "bisection" ? InverseMethod::bisection : InverseMethod::analytic;

  InverseOptions options;
  options.fixed_point = fixed_point_config(o);
  options.bisection.tolerance = o.bisection_tolerance;
  const auto rep = solve_inverse(t, partition, kernel, BoundsConfig{.zeta = o.zeta, .top = 1.0}, method, options);
  const auto& s = rep.solution;

  r.outputs["targets"] = by_argument(t, rep.targets);
  r.outputs["weights"] = by_argument(t, s.weights);
  r.outputs["achieved"] = by_argument(t, s.achieved);
  r.diagnostics["method"] = std::string(to_string(s.method));
  r.diagnostics["feasible"] = s.feasible;
  r.diagnostics["residual"] = sig12(s.residual);
  r.diagnostics["converged"] = s.converged;
  r.diagnostics["kernel_evaluations"] = s.kernel_evaluations;
  r.diagnostics["search_solves"] = s.search_solves;
  r.diagnostics["rounds"] = s.rounds;
  r.diagnostics["verified"] = rep.verified;
  r.diagnostics["verification"] = rep.verification_message;
  if (!rep.verified) r.exit_code = exit_semantic_failure;
  if (o.json) return;
  out << "semantics: " << to_string(kernel) << "  ordering: " << partition.to_string()
      << "  method: " << to_string(s.method) << '\n';
  print_table(out, t, "argument", {{"target", rep.targets}, {"weight", s.weights}, {"achieved", s.achieved}});
  out << "feasible: " << (s.feasible ? "yes" : "no") << "  residual: " << fmt4(s.residual)
      << "  verification: " << (rep.verified ? "passed" : "FAILED (" + rep.verification_message + ")") << '\n';
}

inline void run_validate(const Options& o, RunReport& r, std::ostream& out) {
  const auto doc = load_framework(o.framework);
  const auto& t = doc.topology;
  const auto kernel = parse_kernel(o.semantics);
  const auto rows = read_csv(o.degrees);

  Json verdicts = Json::array();
  std::size_t valid = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& x = rows[k];
    const bool ok = is_valid_degree_vector(x, t, kernel);
    valid += ok ? 1 : 0;
    Json row;
    row["row"] = k;
    row["valid"] = ok;
    row["weights"] = vector_json(weights_for_degrees(x, t, kernel));
    verdicts.push_back(std::move(row));
    if (!o.json) {
      out << "row " << k << ": " << (ok ? "valid" : "invalid") << "  k(x) =";
      for (double w : weights_for_degrees(x, t, kernel)) out << ' ' << fmt4(w);
      out << '\n';
    }
  }
  r.outputs["rows"] = std::move(verdicts);
  r.diagnostics["valid_rows"] = valid;
  r.diagnostics["total_rows"] = rows.size();
}

inline void run_sample(const Options& o, RunReport& r, std::ostream& out) {
  const auto doc = load_framework(o.framework);
  const auto& t = doc.topology;
  const auto kernel = parse_kernel(o.semantics);
  SamplingPlan plan = RandomSampling{o.count};
  if (!o.grid.empty()) plan = GridSampling{parse_number_list(o.grid)};
  const auto sample = sample_degree_space(t, kernel, plan, o.seed, fixed_point_config(o));

  std::ofstream file(o.out);
  if (!file) throw Error(ErrorKind::malformed_file, "cannot write '" + o.out + "'");
  for (const auto& p : sample.points) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.12g", p[i]);
      file << (i == 0 ? "" : ",") << buf;
    }
    file << '\n';
  }
  r.outputs["points"] = sample.points.size();
  r.outputs["file"] = o.out;
  if (!o.json) out << "wrote " << sample.points.size() << " degree vectors to " << o.out << '\n';
}

inline void run_check_kernel(const Options& o, RunReport& r, std::ostream& out) {
  const auto doc = load_framework(o.framework);
  const auto kernel = parse_kernel(o.semantics);
  const auto rep = check_kernel_axioms(kernel, doc.topology, o.samples, o.seed);

  r.outputs["samples"] = rep.samples;
  r.outputs["monotonicity_violations"] = rep.monotonicity_violations;
  r.outputs["homogeneity_violations"] = rep.homogeneity_violations;
  r.outputs["negative_outputs"] = rep.negative_outputs;
  r.outputs["clean"] = rep.clean();
  r.diagnostics["max_homogeneity_error"] = sig12(rep.max_homogeneity_error);
  r.diagnostics["scaling_violations"] = rep.scaling_violations;
  r.diagnostics["first_violation"] = rep.first_violation;
  if (o.json) return;
  out << "semantics: " << to_string(kernel) << "  samples: " << rep.samples << '\n'
      << "monotonicity violations: " << rep.monotonicity_violations << '\n'
      << "homogeneity violations:  " << rep.homogeneity_violations
      << " (max error " << fmt4(rep.max_homogeneity_error) << ")\n"
      << "negative outputs:        " << rep.negative_outputs << '\n';
  if (!rep.first_violation.empty()) out << "first violation: " << rep.first_violation << '\n';
}

}  // namespace detail

/// Parses @p args (without the program name) and runs one subcommand.
inline RunReport run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Gradual argumentation semantics: forward evaluation and weight inversion", "gradarg"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Emit the full run report as JSON");

  auto add_common = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--framework", o.framework, "Framework JSON file")->required();
    sub->add_option("--semantics", o.semantics, "Kernel descriptor, e.g. hc, mb, cb, lp:2, lin:0.5*hc+0.5*mb")->required();
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--tolerance", o.tolerance, "Fixed-point stopping tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", o.max_iterations, "Fixed-point iteration budget")->check(CLI::PositiveNumber);
  };

  auto* eval = app.add_subcommand("evaluate", "Compute acceptability degrees and the ranking");
  add_common(eval);
  add_solver(eval);

  auto* bounds = app.add_subcommand("bounds", "Target degrees for a preference ordering");
  add_common(bounds);
  bounds->add_option("--ordering", o.ordering, "Ordering such as \"a0 > a1 = a3 > a2\"")->required();
  bounds->add_option("--zeta", o.zeta, "Gap parameter")->check(CLI::PositiveNumber);

  auto* invert = app.add_subcommand("invert", "Initial weights realizing a preference ordering");
  add_common(invert);
  add_solver(invert);
  invert->add_option("--ordering", o.ordering, "Ordering such as \"a0 > a1 = a3 > a2\"")->required();
  invert->add_option("--zeta", o.zeta, "Gap parameter")->check(CLI::PositiveNumber);
  invert->add_option("--method", o.method, "analytic or bisection")->check(CLI::IsMember({"analytic", "bisection"}));
  invert->add_option("--bisection-tolerance", o.bisection_tolerance, "Degree gap tolerance for bisection")
      ->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Check degree vectors for attainability");
  add_common(validate);
  validate->add_option("--degrees", o.degrees, "CSV file, one degree vector per row")->required();

  auto* sample = app.add_subcommand("sample", "Sample the attainable degree space");
  add_common(sample);
  add_solver(sample);
  sample->add_option("--count", o.count, "Number of random weight vectors");
  sample->add_option("--seed", o.seed, "Random seed")->required();
  sample->add_option("--grid", o.grid, "Comma-separated weight levels; replaces random sampling");
  sample->add_option("--out", o.out, "Output CSV file")->required();

  auto* check = app.add_subcommand("check-kernel", "Sample the kernel axioms");
  add_common(check);
  check->add_option("--samples", o.samples, "Number of samples")->check(CLI::PositiveNumber);
  check->add_option("--seed", o.seed, "Random seed")->required();

  RunReport report;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    report.subcommand = "help";
    return report;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    report.subcommand = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
    report.exit_code = exit_usage;
    report.diagnostics["error"] = e.what();
    return report;
  }

  const auto* chosen = app.get_subcommands().front();
  report.subcommand = chosen->get_name();
  report.inputs["framework"] = o.framework;
  report.inputs["semantics"] = o.semantics;
  if (!o.ordering.empty()) report.inputs["ordering"] = o.ordering;
  if (chosen == bounds || chosen == invert) report.inputs["zeta"] = o.zeta;
  if (chosen == invert) report.inputs["method"] = o.method;
  if (chosen == eval || chosen == invert || chosen == sample) {
    report.inputs["tolerance"] = o.tolerance;
    report.inputs["max_iter"] = o.max_iterations;
  }
  if (chosen == sample || chosen == check) report.inputs["seed"] = o.seed;

  try {
    if (chosen == eval) detail::run_evaluate(o, report, out);
    if (chosen == bounds) detail::run_bounds(o, report, out);
    if (chosen == invert) detail::run_invert(o, report, out);
    if (chosen == validate) detail::run_validate(o, report, out);
    if (chosen == sample) detail::run_sample(o, report, out);
    if (chosen == check) detail::run_check_kernel(o, report, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    report.exit_code = exit_usage;
    report.diagnostics["error"] = e.what();
  }
  if (o.json) out << report.to_json().dump(2) << '\n';
  return report;
}

inline int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr).exit_code;
}

}  // namespace gradarg::cli

#endif  // GRADARG_CLI_HPP
