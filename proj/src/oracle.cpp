#include "schubert/oracle.hpp"

#include <cmath>
#include <sstream>

#include "schubert/linalg.hpp"
#include "schubert/polycore.hpp"

namespace schubert {

bool MembershipReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string MembershipReport::str() const {
  std::ostringstream os;
  os << (mode == RankMode::Exact ? "exact" : "float") << ":";
  for (const auto& c : checks)
    os << " rank[" << c.a << "|" << c.j << "]=" << c.rank << (c.pass ? "<=" : ">") << c.bound;
  return os.str();
}

namespace {

template <class T>
int rank_of(const Matrix<T>& m, double rel_tol) {
  if constexpr (std::is_same_v<T, GaussRat>) {
    (void)rel_tol;
    return static_cast<int>(rank_exact(m));
  } else {
    return static_cast<int>(rank_float(m, rel_tol));
  }
}

template <class T>
MembershipReport grass_membership(const Matrix<T>& H, const SchubertCondition& alpha, const Matrix<T>& flag,
                                  double tol) {
  const int ell = alpha.ell(), n = alpha.n();
  if (static_cast<int>(H.rows()) != ell || static_cast<int>(H.cols()) != n || static_cast<int>(flag.rows()) != n ||
      static_cast<int>(flag.cols()) != n)
    throw InvalidArgument("membership: shapes do not match the condition");
  MembershipReport rep;
  rep.mode = ScalarTraits<T>::exact ? RankMode::Exact : RankMode::Float;
  for (int i = 1; i <= ell; ++i) {
    const int b = alpha.at(i);
    RankCheck c;
    c.a = ell;
    c.j = b;
    c.bound = ell + b - i;
    if (c.bound >= std::min(ell + b, n)) continue;  // vacuous
    c.rank = rank_of(vstack(H, flag.rows_range(0, static_cast<std::size_t>(b))), tol);
    c.pass = c.rank <= c.bound;
    rep.checks.push_back(c);
  }
  return rep;
}

template <class T>
MembershipReport flag_membership(const Matrix<T>& E, const FlagPermutation& w, const Matrix<T>& flag, double tol) {
  const FlagType& t = w.type();
  const int n = t.n();
  if (static_cast<int>(E.rows()) != t.top() || static_cast<int>(E.cols()) != n ||
      static_cast<int>(flag.rows()) != n || static_cast<int>(flag.cols()) != n)
    throw InvalidArgument("membership: shapes do not match the flag type");
  MembershipReport rep;
  rep.mode = ScalarTraits<T>::exact ? RankMode::Exact : RankMode::Float;
  for (int a : t.a())
    for (int j = 1; j <= n; ++j) {
      RankCheck c;
      c.a = a;
      c.j = j;
      c.bound = rank_bound(w, a, j);
      if (c.bound >= std::min(a + j, n)) continue;
      c.rank = rank_of(vstack(E.rows_range(0, static_cast<std::size_t>(a)), flag.rows_range(0, static_cast<std::size_t>(j))), tol);
      c.pass = c.rank <= c.bound;
      rep.checks.push_back(c);
    }
  return rep;
}

template <class T>
Matrix<T> dual_flag_impl(const Matrix<T>& flag) {
  // columns of flag^{-1} pair with the rows of flag; the last j columns kill F_{n-j}
  return inverse(flag).reverse_cols().transpose();
}

}  // namespace

MembershipReport check_membership(const QMatrix& H, const SchubertCondition& alpha, const QMatrix& flag) {
  return grass_membership(H, alpha, flag, 0.0);
}
MembershipReport check_membership(const CMatrix& H, const SchubertCondition& alpha, const CMatrix& flag,
                                  double rel_tol) {
  return grass_membership(H, alpha, flag, rel_tol);
}
MembershipReport check_membership(const QMatrix& E, const FlagPermutation& w, const QMatrix& flag) {
  return flag_membership(E, w, flag, 0.0);
}
MembershipReport check_membership(const CMatrix& E, const FlagPermutation& w, const CMatrix& flag, double rel_tol) {
  return flag_membership(E, w, flag, rel_tol);
}

QMatrix dual_flag(const QMatrix& flag) { return dual_flag_impl(flag); }
CMatrix dual_flag(const CMatrix& flag) { return dual_flag_impl(flag); }

CMatrix primal_subspace(const SquareSystem& sys, const std::vector<Complex>& x) {
  const auto& g = sys.groups.at(0);
  return g.pattern->instantiate(x.data() + g.offset) * sys.primal_frame;
}

QMatrix primal_subspace(const SquareSystem& sys, const std::vector<GaussRat>& x) {
  const auto& g = sys.groups.at(0);
  return g.pattern->instantiate(x.data() + g.offset) * sys.primal_frame_exact;
}

std::vector<MembershipReport> check_solution(const ProblemInstance& inst, const SquareSystem& sys,
                                             const std::vector<Complex>& x, double rel_tol) {
  CMatrix H = primal_subspace(sys, x);
  std::vector<MembershipReport> out;
  if (const auto* g = std::get_if<GrassmannianProblem>(&inst.problem)) {
    for (std::size_t c = 0; c < g->conditions.size(); ++c)
      out.push_back(check_membership(H, g->conditions[c], inst.flags[c].value(), rel_tol));
  } else {
    const auto& f = std::get<FlagProblem>(inst.problem);
    for (std::size_t c = 0; c < f.conditions.size(); ++c)
      out.push_back(check_membership(H, f.conditions[c], inst.flags[c].value(), rel_tol));
  }
  return out;
}

FourLinesSolution four_lines_closed_form(const ProblemInstance& inst) {
  const auto* g = std::get_if<GrassmannianProblem>(&inst.problem);
  if (!g || g->ell != 2 || g->n != 4 || g->conditions.size() != 4)
    throw InvalidArgument("closed form needs four hypersurface conditions on Gr(2,4)");
  for (const auto& c : g->conditions)
    if (!c.is_hypersurface()) throw InvalidArgument("closed form needs four hypersurface conditions on Gr(2,4)");
  SquareSystem sys = build_pdf3(inst, 2);
  if (sys.total_variables() != 2) throw Error("internal: unexpected four-lines system size");
  // f_k = a + b x + c y + d x y
  GaussRat co[2][4];
  for (int k = 0; k < 2; ++k)
    for (const auto& t : equation_terms(sys, k)) {
      int slot = t.vars.empty() ? 0 : t.vars.size() == 2 ? 3 : (t.vars[0] == 0 ? 1 : 2);
      co[k][slot] += t.coef;
    }
  const auto& [a1, b1, c1, d1] = co[0];
  const auto& [a2, b2, c2, d2] = co[1];
  // y = -(a1 + b1 x) / (c1 + d1 x); (a2 + b2 x)(c1 + d1 x) - (c2 + d2 x)(a1 + b1 x) = 0
  GaussRat q0 = a2 * c1 - c2 * a1;
  GaussRat q1 = a2 * d1 + b2 * c1 - c2 * b1 - d2 * a1;
  GaussRat q2 = b2 * d1 - d2 * b1;
  if (q2.is_zero()) throw DegenerateInstance("four lines: a solution lies at infinity in this chart");
  GaussRat disc = q1 * q1 - GaussRat(4L) * q2 * q0;
  if (disc.is_zero()) throw DegenerateInstance("four lines: double root");
  FourLinesSolution out;
  out.quadratic = {q0, q1, q2};
  if (inst.is_real()) {
    out.discriminant_re = disc.re();
    out.discriminant_sign = sgn(disc.re());
    out.real_count = out.discriminant_sign > 0 ? 2 : 0;
  }
  using LC = std::complex<long double>;
  auto lc = [](const GaussRat& z) { return LC(z.re().get_d(), z.im().get_d()); };
  LC A = lc(q2), B = lc(q1), C = lc(q0);
  LC s = std::sqrt(lc(disc));
  // stable pair of roots
  LC qq = (std::real(std::conj(B) * s) >= 0) ? -(B + s) / 2.0L : -(B - s) / 2.0L;
  LC roots[2] = {qq / A, C / qq};
  for (const LC& x : roots) {
    LC den = lc(c1) + lc(d1) * x;
    if (std::abs(den) < 1e-300L) throw DegenerateInstance("four lines: chart change undefined");
    LC y = -(lc(a1) + lc(b1) * x) / den;
    out.solutions.push_back({Complex(static_cast<double>(x.real()), static_cast<double>(x.imag())),
                             Complex(static_cast<double>(y.real()), static_cast<double>(y.imag()))});
  }
  return out;
}

namespace {

template <class T>
void check_annihilator_shapes(const Matrix<T>& M, const Matrix<T>& N) {
  if (M.cols() != N.rows() || M.rows() + N.cols() != M.cols())
    throw InvalidArgument("annihilator check: shapes must be ell x n and n x (n - ell)");
}

}  // namespace

bool annihilator_check(const QMatrix& M, const QMatrix& N) {
  check_annihilator_shapes(M, N);
  if (rank_exact(M) != M.rows() || rank_exact(N) != N.cols())
    throw DegenerateInstance("annihilator check: rank deficient input");
  QMatrix P = M * N;
  for (const auto& z : P.data())
    if (!z.is_zero()) return false;
  return true;
}

bool annihilator_check(const CMatrix& M, const CMatrix& N, double tol) {
  check_annihilator_shapes(M, N);
  if (rank_float(M) != M.rows() || rank_float(N) != N.cols())
    throw DegenerateInstance("annihilator check: rank deficient input");
  CMatrix P = M * N;
  const double scale = std::max(1.0, frobenius_norm(M) * frobenius_norm(N));
  for (const auto& z : P.data())
    if (std::abs(z) > tol * scale) return false;
  return true;
}

CrossCheckReport cross_check(const SquareSystem& sys, const std::vector<Complex>& x, const DeterminantalSystem& det) {
  CMatrix H = primal_subspace(sys, x);
  CMatrix K = H * inverse(det.frame);
  const auto& pat = *det.pattern;
  if (static_cast<int>(K.rows()) != pat.rows() || static_cast<int>(K.cols()) != pat.cols())
    throw InvalidArgument("cross check: chart and solution shapes differ");
  // rows of the chart matrix allowed to mix: all rows for a subspace, the enclosing block for a flag
  std::vector<int> span(static_cast<std::size_t>(pat.rows()), pat.rows());
  if (!det.steps.empty())
    for (int r = 0; r < pat.rows(); ++r)
      for (int a : det.steps)
        if (a > r) {
          span[static_cast<std::size_t>(r)] = a;
          break;
        }
  CrossCheckReport rep;
  CMatrix C(K.rows(), K.cols());
  for (int r = 0; r < pat.rows(); ++r) {
    const int m = span[static_cast<std::size_t>(r)];
    std::vector<int> fixed;
    for (int c = 0; c < pat.cols(); ++c)
      if (!pat.is_var(r, c)) fixed.push_back(c);
    CMatrix A(fixed.size(), static_cast<std::size_t>(m));
    std::vector<Complex> rhs(fixed.size());
    for (std::size_t q = 0; q < fixed.size(); ++q) {
      for (int k = 0; k < m; ++k) A(q, k) = K(k, fixed[q]);
      rhs[q] = pat.is_one(r, fixed[q]) ? 1.0 : 0.0;
    }
    if (rank_float(A) < static_cast<std::size_t>(m))
      throw DegenerateInstance("cross check: chart change is undefined at this solution");
    std::vector<Complex> g = least_squares(A, rhs);
    for (int c = 0; c < pat.cols(); ++c) {
      Complex s = 0;
      for (int k = 0; k < m; ++k) s += g[k] * K(k, c);
      C(r, c) = s;
    }
    for (std::size_t q = 0; q < fixed.size(); ++q)
      rep.fit_residual = std::max(rep.fit_residual, std::abs(C(r, fixed[q]) - rhs[q]));
  }
  rep.chart_coords.resize(static_cast<std::size_t>(pat.num_vars()));
  for (int v = 0; v < pat.num_vars(); ++v) {
    auto [r, c] = pat.var_position(v);
    rep.chart_coords[v] = C(r, c);
  }
  rep.max_minor = max_minor(det, rep.chart_coords);
  return rep;
}

}  // namespace schubert
