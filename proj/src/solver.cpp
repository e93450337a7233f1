#include "schubert/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "schubert/linalg.hpp"
#include "schubert/polycore.hpp"

namespace schubert {

const char* path_status_name(PathStatus s) {
  switch (s) {
    case PathStatus::Converged: return "converged";
    case PathStatus::Diverged: return "diverged";
    case PathStatus::StepFailure: return "step-failure";
  }
  return "?";
}

namespace {

// Uniform in [0, 1) from the top 53 bits; independent of the library's distributions.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Complex unit_complex(std::mt19937_64& rng) {
  return std::polar(1.0, 2.0 * std::numbers::pi * unit(rng));
}

mpq_class random_entry(std::mt19937_64& rng, int scale) {
  const std::uint64_t span = 2 * static_cast<std::uint64_t>(scale) + 1;
  long k = static_cast<long>(rng() % span) - scale;
  mpq_class q(k, scale);
  q.canonicalize();
  return q;
}

double max_abs_vec(const std::vector<Complex>& v) {
  double m = 0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

ProblemInstance random_instance(const SchubertProblem& problem, std::uint64_t seed, Field field, int scale) {
  validate_problem(problem);
  if (scale < 1) throw InvalidArgument("scale must be positive");
  ProblemInstance inst;
  inst.problem = problem;
  inst.seed = seed;
  inst.field = field;
  inst.scale = scale;
  const int n = inst.n();
  const std::size_t s = condition_count(problem);
  std::mt19937_64 rng(seed);
  inst.opposite_pairs = required_pairs(problem);
  std::vector<int> partner(s, -1);
  for (auto [i, j] : inst.opposite_pairs) partner[j] = i;
  std::vector<std::optional<FlagMatrix>> flags(s);
  for (std::size_t c = 0; c < s; ++c) {
    if (partner[c] >= 0) continue;
    for (int attempt = 0;; ++attempt) {
      if (attempt == 100) throw DegenerateInstance("could not draw a full rank flag matrix");
      QMatrix phi(n, n);
      for (auto& z : phi.data()) {
        mpq_class re = random_entry(rng, scale);
        mpq_class im = field == Field::Complex ? random_entry(rng, scale) : mpq_class(0);
        z = GaussRat(re, im);
      }
      if (rank_exact(phi) == static_cast<std::size_t>(n)) {
        flags[c] = FlagMatrix(std::move(phi));
        break;
      }
    }
  }
  for (auto [i, j] : inst.opposite_pairs) flags[j] = flags[i]->opposite();
  for (auto& f : flags) inst.flags.push_back(std::move(*f));
  return inst;
}

NewtonReport newton_refine(const SquareSystem& sys, std::vector<Complex>& x, int max_iters, double target) {
  NewtonReport rep;
  for (int it = 0;; ++it) {
    std::vector<Complex> g = evaluate(sys, x);
    const double res = max_abs_vec(g);
    rep.residuals.push_back(res);
    if (res < target) {
      rep.converged = true;
      return rep;
    }
    if (it == max_iters) return rep;
    LU<Complex> f = lu_factor(jacobian(sys, x));
    if (f.singular) throw SingularJacobian("Jacobian is singular at the current point");
    std::vector<Complex> dx = lu_solve(f, g);
    const double step = std::sqrt(kernels::cnorm2(dx.size(), dx.data()));
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= dx[i];
    rep.step_sizes.push_back(step);
    ++rep.iterations;
    if (!std::isfinite(step)) return rep;
    // rounding level: further steps cannot improve the point
    const double xn = std::sqrt(kernels::cnorm2(x.size(), x.data()));
    if (step <= 1e-15 * (1.0 + xn)) {
      g = evaluate(sys, x);
      rep.residuals.push_back(max_abs_vec(g));
      rep.converged = rep.residuals.back() < target * 1e3;
      return rep;
    }
  }
}

mpz_class bezout_count(const SquareSystem& sys) {
  mpz_class b = 1;
  for (int d : sys.degrees()) b *= d;
  return b;
}

int worker_count(int jobs) {
  if (jobs > 0) return jobs;
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(h);
}

namespace {

struct Homotopy {
  const SquareSystem& sys;
  std::vector<int> deg;
  std::vector<Complex> c;
  Complex gamma;

  // H(x, t), H_x, and H_t
  void eval(const std::vector<Complex>& x, double t, std::vector<Complex>* h, CMatrix* hx,
            std::vector<Complex>* ht) const {
    const std::size_t n = x.size();
    std::vector<Complex> f = evaluate(sys, x);
    std::vector<Complex> g0(n), dg0(n);
    for (std::size_t i = 0; i < n; ++i) {
      Complex p = std::pow(x[i], deg[i] - 1);
      g0[i] = p * x[i] - c[i];
      dg0[i] = static_cast<double>(deg[i]) * p;
    }
    if (h) {
      h->resize(n);
      for (std::size_t i = 0; i < n; ++i) (*h)[i] = (1.0 - t) * gamma * g0[i] + t * f[i];
    }
    if (ht) {
      ht->resize(n);
      for (std::size_t i = 0; i < n; ++i) (*ht)[i] = f[i] - gamma * g0[i];
    }
    if (hx) {
      *hx = jacobian(sys, x);
      for (auto& z : hx->data()) z *= t;
      for (std::size_t i = 0; i < n; ++i) (*hx)(i, i) += (1.0 - t) * gamma * dg0[i];
    }
  }
};

PathResult track(const Homotopy& H, std::vector<Complex> x, const TrackerConfig& cfg) {
  PathResult res;
  const std::size_t n = x.size();
  double t = 0.0, h = cfg.initial_step;
  int streak = 0;
  auto norm = [](const std::vector<Complex>& v) { return std::sqrt(kernels::cnorm2(v.size(), v.data())); };
  std::vector<Complex> hv, ht, dx;
  CMatrix hx;
  while (t < 1.0) {
    if (norm(x) > cfg.divergence_norm) {
      res.status = PathStatus::Diverged;
      res.t = t;
      res.endpoint = x;
      return res;
    }
    if (h < cfg.min_step) {
      res.status = norm(x) > cfg.stall_norm ? PathStatus::Diverged : PathStatus::StepFailure;
      res.t = t;
      res.endpoint = x;
      return res;
    }
    const double step = std::min(h, 1.0 - t);
    const double t1 = t + step;
    bool ok = true;
    std::vector<Complex> y = x;
    // Euler predictor
    H.eval(x, t, nullptr, &hx, &ht);
    LU<Complex> f = lu_factor(hx);
    if (f.singular) {
      ok = false;
    } else {
      dx = lu_solve(f, ht);
      for (std::size_t i = 0; i < n; ++i) y[i] -= step * dx[i];
      // Newton corrector at t1
      ok = false;
      for (int it = 0; it < cfg.corrector_iters; ++it) {
        H.eval(y, t1, &hv, &hx, nullptr);
        LU<Complex> g = lu_factor(hx);
        if (g.singular) break;
        dx = lu_solve(g, hv);
        for (std::size_t i = 0; i < n; ++i) y[i] -= dx[i];
        const double d = norm(dx);
        if (!std::isfinite(d)) break;
        if (d <= cfg.corrector_tol * (1.0 + norm(y))) {
          ok = true;
          break;
        }
      }
    }
    ++res.steps;
    if (ok) {
      x = std::move(y);
      t = t1;
      if (++streak >= cfg.grow_after) {
        h = std::min(h * cfg.grow, cfg.max_step);
        streak = 0;
      }
    } else {
      ++res.rejected;
      streak = 0;
      h *= cfg.shrink;
    }
  }
  res.t = 1.0;
  try {
    NewtonReport nr = newton_refine(H.sys, x, cfg.refine_iters, cfg.refine_target);
    res.residual = nr.residual();
    res.status = nr.converged ? PathStatus::Converged : PathStatus::StepFailure;
  } catch (const SingularJacobian&) {
    res.status = PathStatus::StepFailure;
    res.residual = max_abs_vec(evaluate(H.sys, x));
  }
  if (res.status != PathStatus::Converged && norm(x) > cfg.stall_norm) res.status = PathStatus::Diverged;
  res.endpoint = std::move(x);
  return res;
}

}  // namespace

SolveResult solve_total_degree(const SquareSystem& sys, const TrackerConfig& cfg, std::uint64_t seed) {
  if (!sys.is_square()) throw InvalidArgument("system is not square");
  if (!(cfg.min_step > 0 && cfg.min_step <= cfg.initial_step && cfg.initial_step < 1))
    throw InvalidArgument("tracker steps must satisfy 0 < min step <= initial step < 1");
  const std::vector<int> deg = sys.degrees();
  for (int d : deg)
    if (d < 1) throw DegenerateInstance("system has a constant equation");
  const mpz_class bez = bezout_count(sys);
  if (!cfg.force && bez > mpz_class(cfg.bezout_ceiling))
    throw BezoutCeilingExceeded(bez.get_str(), static_cast<std::uint64_t>(cfg.bezout_ceiling));
  if (!bez.fits_ulong_p()) throw InvalidArgument("path count does not fit in memory");
  const std::size_t npaths = bez.get_ui();

  std::mt19937_64 rng(seed ^ 0x5c4b7e2d9a1f3e61ULL);
  SolveResult out;
  out.seed = seed;
  out.gamma = cfg.gamma ? *cfg.gamma : unit_complex(rng);
  const std::size_t n = deg.size();
  Homotopy H{sys, deg, std::vector<Complex>(n), out.gamma};
  for (auto& z : H.c) z = unit_complex(rng);

  // start solution k: mixed radix digits pick the d_i-th roots
  auto start_point = [&](std::size_t k) {
    std::vector<Complex> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t di = static_cast<std::size_t>(deg[i]);
      const std::size_t digit = k % di;
      k /= di;
      const double r = std::pow(std::abs(H.c[i]), 1.0 / deg[i]);
      const double a = (std::arg(H.c[i]) + 2.0 * std::numbers::pi * static_cast<double>(digit)) / deg[i];
      x[i] = std::polar(r, a);
    }
    return x;
  };

  out.paths.resize(npaths);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= npaths) return;
      out.paths[k] = track(H, start_point(k), cfg);
      if (cfg.progress) cfg.progress(k, path_status_name(out.paths[k].status));
    }
  };
  const int nw = std::min<int>(worker_count(cfg.jobs), static_cast<int>(std::max<std::size_t>(npaths, 1)));
  if (nw <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t k = 0; k < npaths; ++k) {
    const auto& p = out.paths[k];
    switch (p.status) {
      case PathStatus::Converged: ++out.converged; break;
      case PathStatus::Diverged: ++out.diverged; break;
      case PathStatus::StepFailure: ++out.failed; break;
    }
    if (p.status != PathStatus::Converged) continue;
    bool dup = false;
    for (const auto& s : out.solutions) {
      double d = 0;
      for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(s[i] - p.endpoint[i]));
      if (d < cfg.dedup) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      out.solutions.push_back(p.endpoint);
      out.solution_paths.push_back(k);
    }
  }
  return out;
}

}  // namespace schubert
