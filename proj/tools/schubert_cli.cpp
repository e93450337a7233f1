// schubert: build, solve, certify and check Schubert problems.
#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

#include "schubert/io.hpp"
#include "schubert/linalg.hpp"
#include "schubert/oracle.hpp"
#include "schubert/solver.hpp"

using namespace schubert;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void write_out(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string counts(const SquareSystem& s) {
  return std::to_string(s.total_equations()) + "/" + std::to_string(s.total_variables());
}

int cmd_check(const std::string& file) {
  ProblemDocument doc = load_problem(file);
  std::cout << describe(doc.problem) << "\n";
  validate_problem(doc.problem);
  std::cout << "valid: codimensions sum to " << problem_dimension(doc.problem) << "\n";
  ProblemInstance inst = random_instance(doc.problem, 1, Field::Complex);
  auto row = [](const std::string& name, const std::function<SquareSystem()>& build) {
    try {
      SquareSystem s = build();
      std::cout << "  " << std::left << std::setw(9) << name << counts(s) << "  paths "
                << bezout_count(s).get_str() << "\n";
    } catch (const Error& e) {
      std::cout << "  " << std::left << std::setw(9) << name << "n/a (" << e.what() << ")\n";
    }
  };
  std::cout << "equations/variables:\n";
  if (std::holds_alternative<GrassmannianProblem>(doc.problem)) {
    row("pdf1:", [&] { return build_pdf1(inst); });
    row("pdf2:", [&] { return build_pdf2(inst); });
    row("pdf3:", [&] { return build_formulation(inst, doc, "pdf3"); });
    std::cout << "determinantal charts (variables/minimal equations):\n";
    for (Chart c : {Chart::FullCell, Chart::OneCondition, Chart::TwoCondition}) {
      try {
        DeterminantalSystem d = build_determinantal(inst, c);
        std::cout << "  " << std::left << std::setw(15) << chart_name(c) << d.num_vars() << "/"
                  << d.minimal_generators << "  (" << d.num_minors() << " minors)\n";
      } catch (const Error& e) {
        std::cout << "  " << chart_name(c) << " n/a (" << e.what() << ")\n";
      }
    }
  } else {
    row("base:", [&] { return build_flag_pdf(inst, false); });
    row("reduced:", [&] { return build_flag_pdf(inst, true); });
    const auto plan = plan_reductions(std::get<FlagProblem>(doc.problem));
    std::cout << "reductions (primal is condition " << plan.primal + 1 << "):\n";
    for (const auto& it : plan.items) {
      std::cout << "  condition";
      for (int c : it.conditions) std::cout << " " << c + 1;
      std::cout << ": " << reduction_name(it.kind) << ", saves " << it.savings << "\n";
    }
  }
  return 0;
}

void print_summary(const RunDocument& run) {
  std::cout << describe(run.problem.problem) << "\n"
            << "formulation " << run.formulation << ", seed " << run.seed << ", field " << field_name(run.field)
            << "\n";
  if (run.solver.contains("paths"))
    std::cout << "paths " << run.solver["paths"] << ": converged " << run.solver["converged"] << ", diverged "
              << run.solver["diverged"] << ", failed " << run.solver["failed"] << "\n";
  std::cout << "solutions " << run.solutions.size() << ", certified distinct " << run.certified_distinct;
  if (run.field == Field::Real) std::cout << ", real " << run.certified_real << ", undecided " << run.undecided;
  std::cout << "\n";
}

int cmd_solve(const std::string& file, const SolveOptions& opts, const std::string& out) {
  ProblemDocument doc = load_problem(file);
  RunDocument run = solve_problem(doc, opts);
  write_out(run_to_json(run), out);
  if (!out.empty() && out != "-") print_summary(run);
  return run_exit_code(run);
}

int cmd_certify(const std::string& file, int jobs, const std::string& out) {
  RunDocument run = run_from_json(load_json(file));
  RecertifyReport rep = recertify(run, jobs);
  json j;
  json items = json::array();
  bool all_match = true;
  for (std::size_t i = 0; i < rep.set.certificates.size(); ++i) {
    const auto& c = rep.set.certificates[i];
    json item = certificate_to_json(c);
    item["matches_stored"] = static_cast<bool>(rep.matches[i]);
    item["reality"] = reality_name(rep.set.reality[i]);
    all_match = all_match && rep.matches[i];
    if (!c.verdict) std::cerr << "solution " << i << ": not certified (" << c.reason << ")\n";
    if (!rep.matches[i]) std::cerr << "solution " << i << ": certificate differs from the stored one\n";
    items.push_back(item);
  }
  j["certificates"] = items;
  j["counts"] = {{"certified", rep.set.certified},
                 {"certified_distinct", rep.set.distinct_count},
                 {"certified_real", rep.set.real_count},
                 {"undecided", rep.set.undecided}};
  j["identical"] = all_match;
  write_out(j, out);
  std::cerr << "certified distinct " << rep.set.distinct_count << " of " << run.solutions.size();
  if (run.field == Field::Real) std::cerr << ", real " << rep.set.real_count;
  std::cerr << "\n";
  const bool ok = rep.set.distinct_count == static_cast<int>(run.solutions.size()) && rep.set.undecided == 0 &&
                  rep.set.certified == static_cast<int>(run.solutions.size());
  return ok ? 0 : 2;
}

int cmd_verify(const std::string& file) {
  RunDocument run = run_from_json(load_json(file));
  ProblemInstance inst = run_instance(run);
  SquareSystem sys = build_formulation(inst, run.problem, run.formulation);
  bool all = true;
  for (std::size_t i = 0; i < run.solutions.size(); ++i) {
    auto x = to_complex(run.solutions[i].point);
    auto reports = check_solution(inst, sys, x);
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.pass();
    std::cout << "solution " << i << ": " << (ok ? "member of all conditions" : "FAILS membership") << "\n";
    for (std::size_t c = 0; c < reports.size(); ++c) std::cout << "  condition " << c + 1 << " " << reports[c].str() << "\n";
    all = all && ok;
  }
  return all ? 0 : 2;
}

int cmd_report(const std::string& file) {
  RunDocument run = run_from_json(load_json(file));
  print_summary(run);
  for (std::size_t i = 0; i < run.solutions.size(); ++i) {
    const auto& c = run.certificates.at(i);
    std::cout << "  [" << i << "] path " << run.solutions[i].path << "  alpha " << std::scientific
              << std::setprecision(3) << c.alpha.get_d() << "  beta " << c.beta.get_d() << std::defaultfloat
              << "  " << (c.verdict ? "certified" : "not certified");
    if (run.field == Field::Real) std::cout << "  " << reality_name(run.reality.at(i));
    std::cout << "\n";
  }
  return run_exit_code(run);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schubert problems as square polynomial systems"};
  app.require_subcommand(1);

  std::string file, out;
  std::uint64_t seed = 1;
  std::string field = "complex";
  std::string formulation;
  bool force = false;
  int jobs = 0;

  auto* check = app.add_subcommand("check", "validate a problem and print equation/variable counts");
  check->add_option("problem", file, "problem JSON")->required();

  auto* solve = app.add_subcommand("solve", "solve a random instance and certify the solutions");
  solve->add_option("problem", file, "problem JSON")->required();
  solve->add_option("--seed", seed, "instance and homotopy seed");
  solve->add_option("--field", field, "real or complex")->check(CLI::IsMember({"real", "complex"}));
  solve->add_option("--formulation", formulation, "pdf1, pdf2, pdf3, flag or determinantal");
  solve->add_flag("--force", force, "ignore the path count ceiling");
  solve->add_option("--jobs", jobs, "worker threads (0: all cores)");
  solve->add_option("--out", out, "run document path (default stdout)");

  auto* certify = app.add_subcommand("certify", "recompute certificates of a run document");
  certify->add_option("run", file, "run JSON")->required();
  certify->add_option("--jobs", jobs, "worker threads");
  certify->add_option("--out", out, "report path (default stdout)");

  auto* verify = app.add_subcommand("verify", "rank membership checks for the solutions of a run");
  verify->add_option("run", file, "run JSON")->required();

  auto* report = app.add_subcommand("report", "summary of a run document");
  report->add_option("run", file, "run JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (check->parsed()) return cmd_check(file);
    if (solve->parsed()) {
      SolveOptions opts;
      opts.seed = seed;
      opts.field = parse_field(field);
      if (!formulation.empty()) opts.formulation = formulation;
      opts.tracker.force = force;
      opts.tracker.jobs = jobs;
      return cmd_solve(file, opts, out);
    }
    if (certify->parsed()) return cmd_certify(file, jobs, out);
    if (verify->parsed()) return cmd_verify(file);
    if (report->parsed()) return cmd_report(file);
  } catch (const CodimensionMismatch& e) {
    std::cerr << "invalid problem: " << e.what() << "\n";
    return 1;
  } catch (const BezoutCeilingExceeded& e) {
    std::cerr << "refusing to solve: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
