#include "schubert/io.hpp"

#include <fstream>
#include <sstream>

#include "schubert/linalg.hpp"
#include "schubert/oracle.hpp"

namespace schubert {

json rational_to_json(const mpq_class& q) {
  return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

mpq_class rational_from_json(const json& j) {
  try {
    mpz_class num(j.at("num").get<std::string>()), den(j.at("den").get<std::string>());
    if (sgn(den) == 0) throw SchemaError("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad rational: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw SchemaError("bad rational: not an integer string");
  }
}

json gauss_to_json(const GaussRat& z) { return json{{"re", rational_to_json(z.re())}, {"im", rational_to_json(z.im())}}; }

GaussRat gauss_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) throw SchemaError("bad Gaussian rational");
  return GaussRat(rational_from_json(j["re"]), rational_from_json(j["im"]));
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw SchemaError("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json problem_to_json(const ProblemDocument& doc) {
  json j;
  j["schema"] = kProblemSchema;
  if (!doc.name.empty()) j["name"] = doc.name;
  json conds = json::array();
  if (const auto* g = std::get_if<GrassmannianProblem>(&doc.problem)) {
    j["space"] = {{"grassmannian", {{"n", g->n}, {"ell", g->ell}}}};
    for (const auto& c : g->conditions) conds.push_back(c.alpha());
  } else {
    const auto& f = std::get<FlagProblem>(doc.problem);
    j["space"] = {{"flag", {{"n", f.type.n()}, {"a", f.type.a()}}}};
    for (const auto& w : f.conditions) conds.push_back(w.w());
  }
  j["conditions"] = conds;
  if (doc.formulation) j["formulation"] = *doc.formulation;
  if (doc.reduce) j["reduce"] = *doc.reduce;
  if (doc.hypersurfaces) j["hypersurfaces"] = *doc.hypersurfaces;
  return j;
}

ProblemDocument problem_from_json(const json& j) {
  try {
    if (!j.is_object()) throw SchemaError("problem document must be an object");
    if (j.contains("schema") && j["schema"] != kProblemSchema)
      throw SchemaError("unknown problem schema " + j["schema"].dump());
    ProblemDocument doc;
    doc.name = j.value("name", "");
    const json& space = j.at("space");
    const json& conds = j.at("conditions");
    if (!conds.is_array()) throw SchemaError("conditions must be an array");
    if (space.contains("grassmannian")) {
      GrassmannianProblem g;
      g.n = space["grassmannian"].at("n").get<int>();
      g.ell = space["grassmannian"].at("ell").get<int>();
      for (const auto& c : conds) {
        auto alpha = c.get<std::vector<int>>();
        if (static_cast<int>(alpha.size()) != g.ell)
          throw InvalidArgument("condition " + c.dump() + " does not have ell = " + std::to_string(g.ell) + " entries");
        g.conditions.emplace_back(g.n, alpha);
      }
      doc.problem = g;
    } else if (space.contains("flag")) {
      FlagProblem f;
      f.type = FlagType(space["flag"].at("n").get<int>(), space["flag"].at("a").get<std::vector<int>>());
      for (const auto& c : conds) f.conditions.emplace_back(f.type, c.get<std::vector<int>>());
      doc.problem = f;
    } else {
      throw SchemaError("space must be 'grassmannian' or 'flag'");
    }
    if (j.contains("formulation")) doc.formulation = j["formulation"].get<std::string>();
    if (j.contains("reduce")) doc.reduce = j["reduce"].get<bool>();
    if (j.contains("hypersurfaces")) doc.hypersurfaces = j["hypersurfaces"].get<int>();
    return doc;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("problem document: ") + e.what());
  }
}

ProblemDocument parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i) line += text[i] == '\n';
    throw SchemaError("line " + std::to_string(line) + ": " + e.what());
  }
  return problem_from_json(j);
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ProblemDocument load_problem(const std::string& path) { return parse_problem(read_file(path)); }

json certificate_to_json(const Certificate& c) {
  json pt = json::array();
  for (const auto& z : c.point) pt.push_back(gauss_to_json(z));
  json j{{"point", pt},
         {"beta", rational_to_json(c.beta)},
         {"gamma", rational_to_json(c.gamma)},
         {"alpha", rational_to_json(c.alpha)},
         {"alpha_decimal", c.alpha.get_d()},
         {"beta_decimal", c.beta.get_d()},
         {"verdict", c.verdict},
         {"basis", gamma_basis_name(c.basis)}};
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

Certificate certificate_from_json(const json& j) {
  try {
    Certificate c;
    for (const auto& z : j.at("point")) c.point.push_back(gauss_from_json(z));
    c.beta = rational_from_json(j.at("beta"));
    c.gamma = rational_from_json(j.at("gamma"));
    c.alpha = rational_from_json(j.at("alpha"));
    c.verdict = j.at("verdict").get<bool>();
    const std::string b = j.at("basis").get<std::string>();
    if (b == "bilinear") c.basis = GammaBasis::Bilinear;
    else if (b == "general") c.basis = GammaBasis::General;
    else throw SchemaError("unknown gamma basis " + b);
    c.reason = j.value("reason", "");
    return c;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("certificate: ") + e.what());
  }
}

std::string default_formulation(const ProblemDocument& doc) {
  if (doc.formulation) return *doc.formulation;
  return std::holds_alternative<GrassmannianProblem>(doc.problem) ? "pdf3" : "flag";
}

SquareSystem build_formulation(const ProblemInstance& inst, const ProblemDocument& doc, const std::string& name) {
  if (name == "pdf1") return build_pdf1(inst);
  if (name == "pdf2") return build_pdf2(inst);
  if (name == "pdf3") return doc.hypersurfaces ? build_pdf3(inst, *doc.hypersurfaces) : build_pdf3(inst);
  if (name == "flag") return build_flag_pdf(inst, doc.reduce.value_or(true));
  if (name == "determinantal")
    throw InvalidArgument("determinantal systems are not square; they are used for checking only");
  throw InvalidArgument("unknown formulation '" + name + "'");
}

namespace {

Reality reality_from(const std::string& s) {
  if (s == "real") return Reality::Real;
  if (s == "nonreal") return Reality::Nonreal;
  if (s == "undecided") return Reality::Undecided;
  throw SchemaError("unknown reality verdict " + s);
}

}  // namespace

json run_to_json(const RunDocument& run) {
  json j;
  j["schema"] = kRunSchema;
  j["problem"] = problem_to_json(run.problem);
  j["seed"] = run.seed;
  j["field"] = field_name(run.field);
  j["scale"] = run.scale;
  j["formulation"] = run.formulation;
  j["solver"] = run.solver;
  json groups = json::array();
  for (const auto& g : run.groups) groups.push_back({{"name", g.name}, {"offset", g.offset}, {"size", g.size()}});
  j["groups"] = groups;
  json sols = json::array();
  for (const auto& s : run.solutions) {
    json exact = json::array(), approx = json::array();
    for (const auto& z : s.point) {
      exact.push_back(gauss_to_json(z));
      approx.push_back(complex_to_json(z.to_complex()));
    }
    sols.push_back({{"path", s.path}, {"residual", s.residual}, {"point", approx}, {"exact", exact}});
  }
  j["solutions"] = sols;
  json certs = json::array();
  for (const auto& c : run.certificates) certs.push_back(certificate_to_json(c));
  j["certificates"] = certs;
  json real = json::array();
  for (auto r : run.reality) real.push_back(reality_name(r));
  j["reality"] = real;
  j["counts"] = {{"certified_distinct", run.certified_distinct},
                 {"certified_real", run.certified_real},
                 {"undecided", run.undecided}};
  j["oracle"] = run.oracle;
  return j;
}

RunDocument run_from_json(const json& j) {
  try {
    if (j.value("schema", "") != kRunSchema) throw SchemaError("not a run document (schema " + j.value("schema", std::string("missing")) + ")");
    RunDocument run;
    run.problem = problem_from_json(j.at("problem"));
    run.seed = j.at("seed").get<std::uint64_t>();
    run.field = parse_field(j.at("field").get<std::string>());
    run.scale = j.at("scale").get<int>();
    run.formulation = j.at("formulation").get<std::string>();
    run.solver = j.value("solver", json::object());
    for (const auto& s : j.at("solutions")) {
      RunSolution rs;
      rs.path = s.at("path").get<std::size_t>();
      rs.residual = s.value("residual", 0.0);
      for (const auto& z : s.at("exact")) rs.point.push_back(gauss_from_json(z));
      run.solutions.push_back(std::move(rs));
    }
    for (const auto& c : j.at("certificates")) run.certificates.push_back(certificate_from_json(c));
    for (const auto& r : j.at("reality")) run.reality.push_back(reality_from(r.get<std::string>()));
    const json& counts = j.at("counts");
    run.certified_distinct = counts.at("certified_distinct").get<int>();
    run.certified_real = counts.at("certified_real").get<int>();
    run.undecided = counts.at("undecided").get<int>();
    run.oracle = j.value("oracle", json::object());
    // groups are rebuilt from the system; the stored layout is checked against it
    ProblemInstance inst = run_instance(run);
    SquareSystem sys = build_formulation(inst, run.problem, run.formulation);
    run.groups = sys.groups;
    const json& groups = j.at("groups");
    if (groups.size() != sys.groups.size()) throw SchemaError("group layout does not match the formulation");
    for (std::size_t i = 0; i < groups.size(); ++i)
      if (groups[i].at("offset").get<int>() != sys.groups[i].offset || groups[i].at("size").get<int>() != sys.groups[i].size())
        throw SchemaError("group layout does not match the formulation");
    for (const auto& s : run.solutions)
      if (static_cast<int>(s.point.size()) != sys.total_variables())
        throw SchemaError("solution length does not match the system");
    return run;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("run document: ") + e.what());
  }
}

int run_exit_code(const RunDocument& run) {
  bool all = run.certified_distinct == static_cast<int>(run.solutions.size()) && run.undecided == 0;
  for (const auto& c : run.certificates) all = all && c.verdict;
  return all ? 0 : 2;
}

ProblemInstance run_instance(const RunDocument& run) {
  return random_instance(run.problem.problem, run.seed, run.field, run.scale);
}

namespace {

json solver_json(const TrackerConfig& cfg, const SolveResult& r) {
  return json{{"method", "total-degree"},
              {"initial_step", cfg.initial_step},
              {"min_step", cfg.min_step},
              {"max_step", cfg.max_step},
              {"corrector_iters", cfg.corrector_iters},
              {"divergence_norm", cfg.divergence_norm},
              {"refine_target", cfg.refine_target},
              {"dedup", cfg.dedup},
              {"bezout_ceiling", cfg.bezout_ceiling},
              {"gamma", complex_to_json(r.gamma)},
              {"paths", r.paths.size()},
              {"converged", r.converged},
              {"diverged", r.diverged},
              {"failed", r.failed}};
}

std::optional<DeterminantalSystem> checking_chart(const ProblemInstance& inst) {
  try {
    if (std::holds_alternative<FlagProblem>(inst.problem)) return build_determinantal(inst, Chart::FlagCell);
    return build_determinantal(inst, Chart::OneCondition);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

RunDocument solve_problem(const ProblemDocument& doc, const SolveOptions& opts) {
  RunDocument run;
  run.problem = doc;
  run.seed = opts.seed;
  run.field = opts.field;
  run.scale = opts.scale;
  run.formulation = opts.formulation ? *opts.formulation : default_formulation(doc);
  ProblemInstance inst = random_instance(doc.problem, opts.seed, opts.field, opts.scale);
  SquareSystem sys = build_formulation(inst, doc, run.formulation);
  run.groups = sys.groups;
  SolveResult res = solve_total_degree(sys, opts.tracker, opts.seed);
  run.solver = solver_json(opts.tracker, res);
  std::vector<std::vector<GaussRat>> pts;
  for (std::size_t i = 0; i < res.solutions.size(); ++i) {
    RunSolution s;
    s.path = res.solution_paths[i];
    s.point = to_exact(res.solutions[i]);
    s.residual = res.paths[s.path].residual;
    pts.push_back(s.point);
    run.solutions.push_back(std::move(s));
  }
  SetCertificate set = certify_set(sys, pts, opts.tracker.jobs);
  run.certificates = set.certificates;
  run.reality = set.reality;
  run.certified_distinct = set.distinct_count;
  run.certified_real = set.real_count;
  run.undecided = set.undecided;
  if (opts.run_oracle) {
    json reports = json::array();
    auto chart = checking_chart(inst);
    for (std::size_t i = 0; i < res.solutions.size(); ++i) {
      json r;
      bool member = true;
      json checks = json::array();
      for (const auto& m : check_solution(inst, sys, res.solutions[i])) {
        member = member && m.pass();
        checks.push_back(m.str());
      }
      r["membership"] = member;
      r["checks"] = checks;
      if (chart) {
        try {
          CrossCheckReport cc = cross_check(sys, res.solutions[i], *chart);
          r["max_minor"] = cc.max_minor;
          r["chart"] = chart_name(chart->chart);
        } catch (const Error& e) {
          r["cross_check_error"] = e.what();
        }
      }
      reports.push_back(r);
    }
    run.oracle = {{"solutions", reports}};
  }
  return run;
}

RecertifyReport recertify(const RunDocument& run, int jobs) {
  ProblemInstance inst = run_instance(run);
  SquareSystem sys = build_formulation(inst, run.problem, run.formulation);
  std::vector<std::vector<GaussRat>> pts;
  for (const auto& s : run.solutions) pts.push_back(s.point);
  RecertifyReport rep;
  rep.set = certify_set(sys, pts, jobs);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool same = i < run.certificates.size();
    if (same) {
      const auto& a = run.certificates[i];
      const auto& b = rep.set.certificates[i];
      same = a.point == b.point && a.beta == b.beta && a.gamma == b.gamma && a.alpha == b.alpha &&
             a.verdict == b.verdict && a.basis == b.basis;
    }
    rep.matches.push_back(same);
  }
  return rep;
}

}  // namespace schubert
