#include <doctest.h>

#include <random>

#include "schubert/linalg.hpp"
#include "schubert/oracle.hpp"
#include "schubert/solver.hpp"
#include "support.hpp"

using namespace schubert;
using testing::cond;

namespace {

double match_error(const std::vector<std::vector<Complex>>& a, const std::vector<std::vector<Complex>>& b) {
  double worst = 0;
  for (const auto& x : a) {
    double best = 1e300;
    for (const auto& y : b) {
      double d = 0;
      for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
      best = std::min(best, d);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("closed form agrees with the tracker on four lines") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto inst = random_instance(testing::four_lines(), seed, Field::Complex);
      auto cf = four_lines_closed_form(inst);
      CHECK(cf.discriminant_sign == 0);
      CHECK(cf.real_count == -1);
      auto r = solve_total_degree(build_pdf3(inst), TrackerConfig{}, seed);
      REQUIRE(r.solutions.size() == 2);
      CHECK(match_error(cf.solutions, r.solutions) < 1e-8);
      CHECK(match_error(r.solutions, cf.solutions) < 1e-8);
    }
  }

  TEST_CASE("discriminant sign decides the real count") {
    bool pos = false, neg = false;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      auto cf = four_lines_closed_form(random_instance(testing::four_lines(), seed, Field::Real));
      CHECK(cf.discriminant_sign != 0);
      CHECK(cf.real_count == (cf.discriminant_sign > 0 ? 2 : 0));
      for (const auto& x : cf.solutions) {
        const bool real = std::abs(x[0].imag()) < 1e-9 && std::abs(x[1].imag()) < 1e-9;
        CHECK(real == (cf.discriminant_sign > 0));
      }
      pos = pos || cf.discriminant_sign > 0;
      neg = neg || cf.discriminant_sign < 0;
    }
    CHECK(pos);
    CHECK(neg);
  }

  TEST_CASE("closed form rejects other problems") {
    CHECK_THROWS_AS(four_lines_closed_form(random_instance(testing::gr28(), 1, Field::Complex)), InvalidArgument);
  }

  TEST_CASE("solutions of four lines meet all four lines") {
    auto inst = random_instance(testing::four_lines(), 2, Field::Complex);
    auto s = build_pdf2(inst);
    auto r = solve_total_degree(s, TrackerConfig{}, 2);
    REQUIRE(r.solutions.size() == 2);
    auto det = build_determinantal(inst, Chart::OneCondition);
    for (const auto& x : r.solutions) {
      for (const auto& rep : check_solution(inst, s, x)) {
        CHECK(rep.pass());
        CHECK(rep.mode == RankMode::Float);
      }
      auto cc = cross_check(s, x, det);
      CHECK(cc.max_minor < 1e-9);
      CHECK(cc.fit_residual < 1e-9);
    }
  }

  TEST_CASE("annihilator check on the displayed product") {
    auto m = pattern_M_alpha(cond(7, {2, 4, 5, 7}));
    auto n = pattern_N_alpha(cond(7, {2, 4, 5, 7}));
    REQUIRE(m->num_vars() == n->num_vars());
    std::vector<GaussRat> mv, nv;
    for (int k = 0; k < m->num_vars(); ++k) {
      mv.push_back(GaussRat(mpq_class(k + 2, 3), mpq_class(-k, 5)));
      nv.push_back(-mv.back());
    }
    QMatrix mm = m->instantiate(mv), nn = n->instantiate(nv);
    CHECK(annihilator_check(mm, nn));
    nv[3] += GaussRat(1L);
    CHECK_FALSE(annihilator_check(mm, n->instantiate(nv)));
    CHECK_THROWS_AS(annihilator_check(mm, QMatrix(7, 4)), InvalidArgument);
    CHECK_THROWS_AS(annihilator_check(mm, QMatrix(7, 3)), DegenerateInstance);
    CMatrix mf(4, 7), nf(7, 3);
    for (std::size_t i = 0; i < mm.data().size(); ++i) mf.data()[i] = mm.data()[i].to_complex();
    for (std::size_t i = 0; i < nn.data().size(); ++i) nf.data()[i] = nn.data()[i].to_complex();
    CHECK(annihilator_check(mf, nf));
  }

  TEST_CASE("membership report text") {
    auto inst = random_instance(testing::four_lines(), 1, Field::Complex);
    QMatrix h = inst.flags[0].leading_rows(2);
    auto rep = check_membership(h, SchubertCondition::hypersurface(2, 4), inst.flags[0].exact());
    CHECK(rep.pass());
    CHECK(rep.str().rfind("exact:", 0) == 0);
    CHECK_THROWS_AS(check_membership(h, SchubertCondition::hypersurface(2, 5), inst.flags[0].exact()),
                    InvalidArgument);
  }

  TEST_CASE("small flag problems: membership and flag chart cross check") {
    std::mt19937_64 rng(77);
    int solved = 0;
    for (int attempt = 0; attempt < 400 && solved < 4; ++attempt) {
      auto p = testing::random_flag_problem(rng);
      if (p.conditions.size() < 3) continue;
      auto inst = random_instance(p, static_cast<std::uint64_t>(attempt), Field::Complex);
      auto s = build_flag_pdf(inst, true);
      if (bezout_count(s) > 64 || s.total_variables() == 0) continue;
      SolveResult r;
      try {
        r = solve_total_degree(s, TrackerConfig{}, static_cast<std::uint64_t>(attempt));
      } catch (const DegenerateInstance&) {
        continue;  // a nonzero constant equation: the problem has no solutions
      }
      if (r.solutions.empty()) continue;
      DeterminantalSystem det;
      try {
        det = build_determinantal(inst, Chart::FlagCell);
      } catch (const InvalidArgument&) {
        continue;
      }
      ++solved;
      for (const auto& x : r.solutions) {
        for (const auto& rep : check_solution(inst, s, x)) CHECK(rep.pass());
        try {
          auto cc = cross_check(s, x, det);
          CHECK(cc.max_minor < 1e-8);
        } catch (const DegenerateInstance&) {
        }
      }
    }
    CHECK(solved > 0);
  }
}
