#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "schubert/systems.hpp"

namespace schubert {

/// Random flags for a problem. Entries are k/scale with integer k in [-scale, scale]
/// (both parts for the complex field). Pairs from required_pairs get (Phi, w0 Phi).
ProblemInstance random_instance(const SchubertProblem& problem, std::uint64_t seed, Field field,
                                int scale = 256);

struct NewtonReport {
  bool converged = false;
  int iterations = 0;
  std::vector<double> step_sizes;  // ||dx|| per iteration
  std::vector<double> residuals;   // max |G| before each iteration, then the final one
  double residual() const { return residuals.empty() ? 0.0 : residuals.back(); }
};

/// x <- x - DG(x)^{-1} G(x) until max |G| < target or the step falls to rounding level.
/// Throws SingularJacobian.
NewtonReport newton_refine(const SquareSystem& sys, std::vector<Complex>& x, int max_iters = 20,
                           double target = 1e-12);

struct TrackerConfig {
  double initial_step = 0.01;
  double min_step = 1e-14;
  double max_step = 0.05;
  double grow = 2.0;          // step factor after grow_after successes in a row
  int grow_after = 3;
  double shrink = 0.5;        // step factor after a failed corrector
  int corrector_iters = 3;
  double corrector_tol = 1e-9;  // relative to 1 + ||x||
  double divergence_norm = 1e8;
  double stall_norm = 1e4;      // step failure beyond this norm counts as divergence
  int refine_iters = 10;
  double refine_target = 1e-12;
  double dedup = 1e-6;          // max-norm distance
  double bezout_ceiling = 1e4;
  bool force = false;
  int jobs = 0;                 // 0: hardware concurrency
  std::optional<Complex> gamma; // default: random unit complex from the seed
  std::function<void(std::size_t, const char*)> progress;  // (path index, status)
};

enum class PathStatus { Converged, Diverged, StepFailure };
const char* path_status_name(PathStatus s);

struct PathResult {
  PathStatus status = PathStatus::StepFailure;
  std::vector<Complex> endpoint;
  double t = 0.0;
  int steps = 0;
  int rejected = 0;
  double residual = 0.0;
};

struct SolveResult {
  std::vector<std::vector<Complex>> solutions;  // deduplicated converged endpoints
  std::vector<std::size_t> solution_paths;      // first path index for each solution
  std::vector<PathResult> paths;
  std::uint64_t seed = 0;
  Complex gamma;
  std::size_t converged = 0, diverged = 0, failed = 0;
};

mpz_class bezout_count(const SquareSystem& sys);

/// Total-degree homotopy (1-t) gamma G0 + t F with G0_i = x_i^{d_i} - c_i.
SolveResult solve_total_degree(const SquareSystem& sys, const TrackerConfig& config, std::uint64_t seed);

/// Resolve a jobs setting to a worker count.
int worker_count(int jobs);

}  // namespace schubert
