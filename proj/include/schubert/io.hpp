#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "schubert/certifier.hpp"
#include "schubert/solver.hpp"
#include "schubert/systems.hpp"

namespace schubert {

using json = nlohmann::json;

inline constexpr const char* kProblemSchema = "schubert-problem/1";
inline constexpr const char* kRunSchema = "schubert-run/1";

struct ProblemDocument {
  std::string name;
  SchubertProblem problem;
  std::optional<std::string> formulation;  // override
  std::optional<bool> reduce;              // flag problems
  std::optional<int> hypersurfaces;        // trailing determinants for pdf3
};

json rational_to_json(const mpq_class& q);
mpq_class rational_from_json(const json& j);
json gauss_to_json(const GaussRat& z);
GaussRat gauss_from_json(const json& j);
json complex_to_json(const Complex& z);
Complex complex_from_json(const json& j);

json problem_to_json(const ProblemDocument& doc);
/// Throws SchemaError / InvalidArgument / CodimensionMismatch.
ProblemDocument problem_from_json(const json& j);
/// Parse text; errors carry the line number.
ProblemDocument parse_problem(const std::string& text);
ProblemDocument load_problem(const std::string& path);

json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

/// Formulation names: pdf1, pdf2, pdf3, flag.
std::string default_formulation(const ProblemDocument& doc);
SquareSystem build_formulation(const ProblemInstance& inst, const ProblemDocument& doc, const std::string& name);

struct RunSolution {
  std::size_t path = 0;
  std::vector<GaussRat> point;  // exact snapshot of the refined float point
  double residual = 0.0;
};

struct RunDocument {
  ProblemDocument problem;
  std::uint64_t seed = 0;
  Field field = Field::Complex;
  int scale = 256;
  std::string formulation;
  json solver;  // tracker settings and path statistics
  std::vector<VariableGroup> groups;
  std::vector<RunSolution> solutions;
  std::vector<Certificate> certificates;
  std::vector<Reality> reality;
  int certified_distinct = 0;
  int certified_real = 0;
  int undecided = 0;
  json oracle;  // membership and cross-check reports
};

json run_to_json(const RunDocument& run);
RunDocument run_from_json(const json& j);

/// Status for the CLI: 0 all solutions certified distinct (and real status decided), 2 otherwise.
int run_exit_code(const RunDocument& run);

struct SolveOptions {
  std::uint64_t seed = 1;
  Field field = Field::Complex;
  int scale = 256;
  std::optional<std::string> formulation;
  TrackerConfig tracker;
  bool run_oracle = true;
};

/// Instance, system, track, refine, certify, oracle checks.
RunDocument solve_problem(const ProblemDocument& doc, const SolveOptions& opts);

struct RecertifyReport {
  SetCertificate set;
  std::vector<bool> matches;  // certificate equal to the stored one
};

/// Rebuild the instance and system from the run and recompute every certificate.
RecertifyReport recertify(const RunDocument& run, int jobs = 0);

/// Rebuild instance and system for a stored run.
ProblemInstance run_instance(const RunDocument& run);

}  // namespace schubert
