#pragma once

#include <string>
#include <vector>

#include "schubert/combinatorics.hpp"
#include "schubert/matrix.hpp"
#include "schubert/systems.hpp"

namespace schubert {

enum class RankMode { Exact, Float };

struct RankCheck {
  int a = 0;      // rows of the subspace matrix used (ell for Grassmannians)
  int j = 0;      // flag rows stacked below
  int bound = 0;  // required rank bound
  int rank = 0;
  bool pass = false;
};

struct MembershipReport {
  RankMode mode = RankMode::Exact;
  std::vector<RankCheck> checks;
  bool pass() const;
  std::string str() const;
};

/// Row span of H (ell x n) against X_alpha of the flag with rows `flag`:
/// rank [H ; flag_{alpha_i}] <= ell + alpha_i - i for each i.
MembershipReport check_membership(const QMatrix& H, const SchubertCondition& alpha, const QMatrix& flag);
MembershipReport check_membership(const CMatrix& H, const SchubertCondition& alpha, const CMatrix& flag,
                                  double rel_tol = 1e-8);
/// Flag given by the first a_i rows of E (a_t x n) against X_w:
/// rank [E_{a_i} ; flag_j] <= r_w(a_i, j).
MembershipReport check_membership(const QMatrix& E, const FlagPermutation& w, const QMatrix& flag);
MembershipReport check_membership(const CMatrix& E, const FlagPermutation& w, const CMatrix& flag,
                                  double rel_tol = 1e-8);

/// Row matrix of the dual flag: its first j rows span the annihilator of F_{n-j}.
QMatrix dual_flag(const QMatrix& flag);
CMatrix dual_flag(const CMatrix& flag);

/// Subspace (or partial flag) of a solution: primal group matrix times the primal frame.
CMatrix primal_subspace(const SquareSystem& sys, const std::vector<Complex>& x);
QMatrix primal_subspace(const SquareSystem& sys, const std::vector<GaussRat>& x);

/// Membership of a solution against every condition of its instance.
std::vector<MembershipReport> check_solution(const ProblemInstance& inst, const SquareSystem& sys,
                                             const std::vector<Complex>& x, double rel_tol = 1e-8);

struct FourLinesSolution {
  std::vector<std::vector<Complex>> solutions;  // coordinates of the pdf3 system
  mpq_class discriminant_re;                    // exact, real instances only (else 0)
  int discriminant_sign = 0;                    // real instances: sign; complex: 0
  int real_count = -1;                          // real instances only
  std::vector<GaussRat> quadratic;              // c0 + c1 x + c2 x^2
};

/// Lines meeting four lines in P^3: eliminate y from the two-variable system.
/// Throws DegenerateInstance when the quadratic degenerates.
FourLinesSolution four_lines_closed_form(const ProblemInstance& inst);

/// M N == 0 (exact). Throws InvalidArgument on shapes, DegenerateInstance on rank deficiency.
bool annihilator_check(const QMatrix& M, const QMatrix& N);
bool annihilator_check(const CMatrix& M, const CMatrix& N, double tol = 1e-10);

struct CrossCheckReport {
  double max_minor = 0.0;
  double fit_residual = 0.0;
  std::vector<Complex> chart_coords;
};

/// Map a solution into the chart of a determinantal system and evaluate every minor.
/// Throws DegenerateInstance when the chart change is undefined.
CrossCheckReport cross_check(const SquareSystem& sys, const std::vector<Complex>& x, const DeterminantalSystem& det);

}  // namespace schubert
