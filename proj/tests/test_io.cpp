#include <doctest.h>

#include <filesystem>

#include "schubert/io.hpp"
#include "support.hpp"

using namespace schubert;

namespace {

const std::string kProblems = SCHUBERT_PROBLEM_DIR;

RunDocument four_lines_run(Field f = Field::Complex, std::uint64_t seed = 3) {
  ProblemDocument doc = load_problem(kProblems + "/four_lines.json");
  SolveOptions opts;
  opts.seed = seed;
  opts.field = f;
  return solve_problem(doc, opts);
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("rational and complex values round trip") {
    mpq_class big("-123456789012345678901234567890/98765432109876543210987");
    big.canonicalize();
    CHECK(rational_from_json(rational_to_json(big)) == big);
    GaussRat z(mpq_class(1, 3), mpq_class(-7, 2));
    CHECK(gauss_from_json(gauss_to_json(z)) == z);
    CHECK(complex_from_json(complex_to_json({0.1, -2.5})) == Complex(0.1, -2.5));
    CHECK_THROWS_AS(rational_from_json(json{{"num", "1"}, {"den", "0"}}), SchemaError);
    CHECK_THROWS_AS(rational_from_json(json{{"num", "abc"}, {"den", "1"}}), SchemaError);
    CHECK_THROWS_AS(rational_from_json(json("1/2")), SchemaError);
    CHECK_THROWS_AS(complex_from_json(json::array({1})), SchemaError);
  }

  TEST_CASE("every shipped problem loads and round trips") {
    int n = 0;
    for (const auto& e : std::filesystem::directory_iterator(kProblems)) {
      ProblemDocument doc = load_problem(e.path().string());
      ProblemDocument back = problem_from_json(problem_to_json(doc));
      CHECK(problem_to_json(back) == problem_to_json(doc));
      CHECK(describe(back.problem) == describe(doc.problem));
      ++n;
    }
    CHECK(n >= 5);
  }

  TEST_CASE("shipped problems are the documented ones") {
    CHECK_THROWS_AS(validate_problem(load_problem(kProblems + "/bad_codim.json").problem), CodimensionMismatch);
    CHECK(describe(load_problem(kProblems + "/gr39_437.json").problem) == describe(testing::ex437()));
    CHECK(describe(load_problem(kProblems + "/flag_245.json").problem) == describe(testing::flag_example()));
    CHECK(describe(load_problem(kProblems + "/gr28_4848.json").problem) == describe(testing::gr28()));
  }

  TEST_CASE("parse errors carry a line number") {
    try {
      parse_problem("{\n  \"space\": {\"grassmannian\": {\"n\": 4, \"ell\": 2}},\n  \"conditions\": [[2, 4],, ]\n}");
      FAIL("no error");
    } catch (const SchemaError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_problem(R"({"space": {"torus": {}}, "conditions": []})"), SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"space": {"grassmannian": {"n": 4, "ell": 2}}, "conditions": [[1, 2, 3]]})"),
                    InvalidArgument);
    CHECK_THROWS_AS(parse_problem(R"({"schema": "other/9", "space": {}, "conditions": []})"), SchemaError);
  }

  TEST_CASE("default formulations") {
    CHECK(default_formulation(load_problem(kProblems + "/four_lines.json")) == "pdf3");
    CHECK(default_formulation(load_problem(kProblems + "/flag_245.json")) == "flag");
    CHECK(default_formulation(load_problem(kProblems + "/gr28_4848.json")) == "pdf2");
    auto doc = load_problem(kProblems + "/four_lines.json");
    auto inst = random_instance(doc.problem, 1, Field::Complex);
    CHECK_THROWS_AS(build_formulation(inst, doc, "determinantal"), InvalidArgument);
    CHECK_THROWS_AS(build_formulation(inst, doc, "nonsense"), InvalidArgument);
  }

  TEST_CASE("certificate round trip") {
    auto run = four_lines_run();
    REQUIRE_FALSE(run.certificates.empty());
    for (const auto& c : run.certificates) {
      auto d = certificate_from_json(certificate_to_json(c));
      CHECK(d.point == c.point);
      CHECK(d.beta == c.beta);
      CHECK(d.gamma == c.gamma);
      CHECK(d.alpha == c.alpha);
      CHECK(d.verdict == c.verdict);
      CHECK(d.basis == c.basis);
    }
  }

  TEST_CASE("run documents round trip and recertify identically") {
    auto run = four_lines_run();
    CHECK(run.solutions.size() == 2);
    CHECK(run.certified_distinct == 2);
    CHECK(run_exit_code(run) == 0);
    auto back = run_from_json(json::parse(run_to_json(run).dump()));
    CHECK(back.seed == run.seed);
    CHECK(back.formulation == run.formulation);
    REQUIRE(back.solutions.size() == run.solutions.size());
    for (std::size_t i = 0; i < run.solutions.size(); ++i) CHECK(back.solutions[i].point == run.solutions[i].point);
    auto rep = recertify(back, 1);
    for (bool m : rep.matches) CHECK(m);
    CHECK(rep.set.distinct_count == 2);
  }

  TEST_CASE("tampered run documents are detected") {
    json j = run_to_json(four_lines_run());
    json moved = j;
    moved["solutions"][0]["exact"][0]["re"] = {{"num", "1"}, {"den", "7"}};
    auto rep = recertify(run_from_json(moved), 1);
    CHECK_FALSE(rep.matches[0]);
    CHECK(rep.matches[1]);
    json layout = j;
    layout["groups"][0]["size"] = 5;
    CHECK_THROWS_AS(run_from_json(layout), SchemaError);
    json schema = j;
    schema["schema"] = "schubert-run/0";
    CHECK_THROWS_AS(run_from_json(schema), SchemaError);
    json shortened = j;
    shortened["solutions"][0]["exact"].erase(0);
    CHECK_THROWS_AS(run_from_json(shortened), SchemaError);
  }

  TEST_CASE("exit code reflects uncertified or undecided runs") {
    auto run = four_lines_run();
    run.certificates[0].verdict = false;
    CHECK(run_exit_code(run) == 2);
    auto real = four_lines_run(Field::Real, 5);
    CHECK(run_exit_code(real) == 0);
    real.undecided = 1;
    CHECK(run_exit_code(real) == 2);
  }

  TEST_CASE("oracle results are recorded in the run") {
    auto run = four_lines_run();
    CHECK(run.oracle.is_object());
    CHECK_FALSE(run.oracle.empty());
    CHECK(run.solver.at("paths") == 4);
  }
}
