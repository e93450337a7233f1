#include <doctest.h>

#include <atomic>
#include <random>

#include "schubert/linalg.hpp"
#include "schubert/parallel.hpp"
#include "schubert/polycore.hpp"
#include "schubert/solver.hpp"
#include "support.hpp"

using namespace schubert;

namespace {

double dist(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("instances are deterministic in the seed") {
    for (Field f : {Field::Real, Field::Complex}) {
      auto a = random_instance(testing::ex437(), 42, f);
      auto b = random_instance(testing::ex437(), 42, f);
      auto c = random_instance(testing::ex437(), 43, f);
      CHECK(a.flags == b.flags);
      CHECK_FALSE(a.flags == c.flags);
      CHECK(a.is_real() == (f == Field::Real));
    }
  }

  TEST_CASE("entries are multiples of the scale") {
    auto inst = random_instance(testing::four_lines(), 5, Field::Complex, 16);
    for (const auto& fl : inst.flags)
      for (const auto& z : fl.exact().data()) {
        CHECK(mpq_class(z.re() * 16).get_den() == 1);
        CHECK(abs(z.re()) <= 1);
        CHECK(abs(z.im()) <= 1);
      }
  }

  TEST_CASE("paired flags are in linear general position (1000 seeds)") {
    int bad = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      auto inst = random_instance(testing::four_lines(), seed, seed % 2 ? Field::Real : Field::Complex);
      for (auto [i, j] : inst.opposite_pairs) {
        const auto& f = inst.flags[i];
        const auto& g = inst.flags[j];
        for (int k = 1; k < 4; ++k)
          bad += rank_exact(vstack(f.leading_rows(k), g.leading_rows(4 - k))) != 4u;
      }
    }
    CHECK(bad == 0);
  }

  TEST_CASE("bezout count and ceiling") {
    auto e = build_pdf3(random_instance(testing::ex437(), 1, Field::Complex));
    mpz_class paths = 1;
    for (int i = 0; i < 18; ++i) paths *= 2;
    for (int i = 0; i < 6; ++i) paths *= 3;
    CHECK(bezout_count(e) == paths);
    TrackerConfig cfg;
    CHECK_THROWS_AS(solve_total_degree(e, cfg, 1), BezoutCeilingExceeded);
    auto flag = build_flag_pdf(random_instance(testing::flag_example(), 1, Field::Complex), true);
    CHECK_THROWS_AS(solve_total_degree(flag, cfg, 1), BezoutCeilingExceeded);
  }

  TEST_CASE("four lines: two finite solutions and two divergent paths") {
    auto s = build_pdf3(random_instance(testing::four_lines(), 3, Field::Complex));
    CHECK(s.degrees() == std::vector<int>{2, 2});
    TrackerConfig cfg;
    auto r = solve_total_degree(s, cfg, 3);
    CHECK(r.paths.size() == 4);
    CHECK(r.converged + r.diverged + r.failed == 4);
    CHECK(r.solutions.size() == 2);
    CHECK(r.diverged == 2);
    for (const auto& x : r.solutions) {
      double res = 0;
      for (const auto& z : evaluate(s, x)) res = std::max(res, std::abs(z));
      CHECK(res < 1e-12);
      CHECK(rank_float(jacobian(s, x)) == 2u);
    }
  }

  TEST_CASE("tracking is deterministic and independent of the worker count") {
    auto s = build_pdf2(random_instance(testing::four_lines(), 6, Field::Complex));
    TrackerConfig cfg;
    cfg.jobs = 1;
    auto a = solve_total_degree(s, cfg, 11);
    cfg.jobs = 3;
    auto b = solve_total_degree(s, cfg, 11);
    REQUIRE(a.paths.size() == b.paths.size());
    CHECK(a.gamma == b.gamma);
    for (std::size_t i = 0; i < a.paths.size(); ++i) {
      CHECK(a.paths[i].status == b.paths[i].status);
      CHECK(a.paths[i].endpoint == b.paths[i].endpoint);
    }
    CHECK(a.solutions == b.solutions);
  }

  TEST_CASE("real instances have conjugation-closed solution sets") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto s = build_pdf3(random_instance(testing::four_lines(), seed, Field::Real));
      CHECK(s.real_coefficients);
      auto r = solve_total_degree(s, TrackerConfig{}, seed);
      for (const auto& x : r.solutions) {
        std::vector<Complex> c(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) c[i] = std::conj(x[i]);
        double best = 1e300;
        for (const auto& y : r.solutions) best = std::min(best, dist(c, y));
        CHECK(best < 1e-6);
      }
    }
  }

  TEST_CASE("newton: exact zero, quadratic contraction, and honest failure") {
    auto s = build_pdf3(random_instance(testing::four_lines(), 3, Field::Complex));
    auto r = solve_total_degree(s, TrackerConfig{}, 3);
    REQUIRE(r.solutions.size() == 2);
    auto x = r.solutions[0];
    auto again = x;
    auto rep0 = newton_refine(s, again);
    CHECK(rep0.converged);
    CHECK(dist(again, x) < 1e-13);

    auto y = x;
    y[0] += 1e-4;
    y[1] -= 1e-4;
    auto rep = newton_refine(s, y, 20, 0.0);
    REQUIRE(rep.step_sizes.size() >= 2);
    CHECK(rep.step_sizes[0] > 1e-5);
    CHECK(rep.step_sizes[0] < 1e-3);
    CHECK(rep.step_sizes[1] < 1e-6);
    if (rep.step_sizes.size() >= 3) CHECK(rep.step_sizes[2] < 1e-11);
    CHECK(dist(y, x) < 1e-12);

    std::vector<Complex> far{{3e5, -2e5}, {-7e5, 1e5}};
    bool converged = false;
    try {
      converged = newton_refine(s, far, 3).converged;
    } catch (const SingularJacobian&) {
    }
    CHECK_FALSE(converged);
  }

  TEST_CASE("tracker settings are validated") {
    auto s = build_pdf3(random_instance(testing::four_lines(), 3, Field::Complex));
    TrackerConfig cfg;
    cfg.min_step = 0.5;
    CHECK_THROWS_AS(solve_total_degree(s, cfg, 1), InvalidArgument);
    auto nonsquare = s;
    nonsquare.dets.pop_back();
    CHECK_THROWS_AS(solve_total_degree(nonsquare, TrackerConfig{}, 1), InvalidArgument);
  }

  TEST_CASE("worker pool") {
    CHECK(worker_count(3) == 3);
    CHECK(worker_count(0) >= 1);
    std::atomic<int> sum{0};
    parallel_for(100, 4, [&](std::size_t i) { sum += static_cast<int>(i); });
    CHECK(sum == 4950);
    CHECK_THROWS_AS(parallel_for(10, 2, [](std::size_t i) {
                      if (i == 5) throw InvalidArgument("boom");
                    }),
                    InvalidArgument);
  }
}
