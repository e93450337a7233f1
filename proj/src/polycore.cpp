#include "schubert/polycore.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "schubert/linalg.hpp"

namespace schubert {

namespace {

template <class T>
const Matrix<T>& L_of(const BilinearBlock& b) {
  if constexpr (std::is_same_v<T, Complex>) return b.L;
  else return b.L_exact;
}

template <class T>
const Matrix<T>& P_of(const DeterminantEquation& d) {
  if constexpr (std::is_same_v<T, Complex>) return d.P;
  else return d.P_exact;
}

template <class T>
const Matrix<T>& Q_of(const DeterminantEquation& d) {
  if constexpr (std::is_same_v<T, Complex>) return d.Q;
  else return d.Q_exact;
}

template <class T>
std::vector<Matrix<T>> instantiate_groups(const SquareSystem& sys, const std::vector<T>& x) {
  if (static_cast<int>(x.size()) != sys.total_variables())
    throw InvalidArgument("point has " + std::to_string(x.size()) + " coordinates, system has " +
                          std::to_string(sys.total_variables()) + " variables");
  std::vector<Matrix<T>> m;
  m.reserve(sys.groups.size());
  for (const auto& g : sys.groups) m.push_back(g.pattern->instantiate(x.data() + g.offset));
  return m;
}

template <class T>
Matrix<T> stacked_det_matrix(const DeterminantEquation& d, const Matrix<T>& M) {
  return vstack(M.rows_range(0, static_cast<std::size_t>(d.primal_rows)) * P_of<T>(d), Q_of<T>(d));
}

// Cofactor (r, k) of a square matrix from the explicit minor. Stays valid when a is singular,
// which is exactly where determinant equations vanish.
template <class T>
T cofactor(const Matrix<T>& a, std::size_t r, std::size_t k) {
  const std::size_t n = a.rows();
  Matrix<T> minor(n - 1, n - 1);
  for (std::size_t i = 0, ii = 0; i < n; ++i) {
    if (i == r) continue;
    for (std::size_t j = 0, jj = 0; j < n; ++j) {
      if (j == k) continue;
      minor(ii, jj++) = a(i, j);
    }
    ++ii;
  }
  T c = determinant(minor);
  if ((r + k) % 2 == 1) c = -c;
  return c;
}

}  // namespace

template <class T>
std::vector<T> evaluate(const SquareSystem& sys, const std::vector<T>& x) {
  auto mats = instantiate_groups(sys, x);
  std::vector<T> out(static_cast<std::size_t>(sys.total_equations()));
  for (const auto& b : sys.blocks) {
    const Matrix<T> A = mats[b.primal_group].rows_range(0, static_cast<std::size_t>(b.primal_rows)) * L_of<T>(b);
    const Matrix<T>& N = mats[b.dual_group];
    for (std::size_t e = 0; e < b.entries.size(); ++e) {
      auto [r, c] = b.entries[e];
      T s(0L);
      for (std::size_t k = 0; k < A.cols(); ++k)
        if (!ScalarTraits<T>::is_zero(N(k, c))) s += A(r, k) * N(k, c);
      out[b.first_equation + e] = s;
    }
  }
  for (const auto& d : sys.dets) out[d.equation] = determinant(stacked_det_matrix(d, mats[d.primal_group]));
  return out;
}

template <class T>
Matrix<T> jacobian(const SquareSystem& sys, const std::vector<T>& x) {
  auto mats = instantiate_groups(sys, x);
  Matrix<T> J(static_cast<std::size_t>(sys.total_equations()), static_cast<std::size_t>(sys.total_variables()));
  for (const auto& b : sys.blocks) {
    const auto& gm = sys.groups[b.primal_group];
    const auto& gn = sys.groups[b.dual_group];
    const Matrix<T>& M = mats[b.primal_group];
    const Matrix<T>& N = mats[b.dual_group];
    const Matrix<T> A = M.rows_range(0, static_cast<std::size_t>(b.primal_rows)) * L_of<T>(b);
    const Matrix<T> B = L_of<T>(b) * N;
    for (std::size_t e = 0; e < b.entries.size(); ++e) {
      auto [r, c] = b.entries[e];
      const std::size_t eq = static_cast<std::size_t>(b.first_equation) + e;
      for (int j = 0; j < gm.pattern->cols(); ++j) {
        int v = gm.pattern->cell(r, j);
        if (v >= 0) J(eq, gm.offset + v) += B(j, c);
      }
      for (int k = 0; k < gn.pattern->rows(); ++k) {
        int v = gn.pattern->cell(k, c);
        if (v >= 0) J(eq, gn.offset + v) += A(r, k);
      }
    }
  }
  for (const auto& d : sys.dets) {
    const auto& g = sys.groups[d.primal_group];
    const Matrix<T> A = stacked_det_matrix(d, mats[d.primal_group]);
    const Matrix<T>& P = P_of<T>(d);
    const std::size_t n = A.cols();
    for (int r = 0; r < d.primal_rows; ++r) {
      if (g.pattern->row_vars(r) == 0) continue;
      std::vector<T> cof(n);
      for (std::size_t k = 0; k < n; ++k) cof[k] = cofactor(A, static_cast<std::size_t>(r), k);
      for (int j = 0; j < g.pattern->cols(); ++j) {
        int v = g.pattern->cell(r, j);
        if (v < 0) continue;
        T s(0L);
        for (std::size_t k = 0; k < n; ++k) s += P(j, k) * cof[k];
        J(d.equation, g.offset + v) = s;
      }
    }
  }
  return J;
}

template <class T>
EvalReport<T> evaluate_full(const SquareSystem& sys, const std::vector<T>& x) {
  EvalReport<T> r;
  r.residual = evaluate(sys, x);
  r.jacobian = jacobian(sys, x);
  if (sys.max_degree() <= 2) r.d2_bound = d2_norm_bound(sys);
  return r;
}

template std::vector<Complex> evaluate(const SquareSystem&, const std::vector<Complex>&);
template std::vector<GaussRat> evaluate(const SquareSystem&, const std::vector<GaussRat>&);
template CMatrix jacobian(const SquareSystem&, const std::vector<Complex>&);
template QMatrix jacobian(const SquareSystem&, const std::vector<GaussRat>&);
template EvalReport<Complex> evaluate_full(const SquareSystem&, const std::vector<Complex>&);
template EvalReport<GaussRat> evaluate_full(const SquareSystem&, const std::vector<GaussRat>&);

std::vector<Term> equation_terms(const SquareSystem& sys, int equation) {
  std::map<std::vector<int>, GaussRat> acc;
  for (const auto& b : sys.blocks) {
    if (equation < b.first_equation || equation >= b.first_equation + static_cast<int>(b.entries.size())) continue;
    auto [r, c] = b.entries[static_cast<std::size_t>(equation - b.first_equation)];
    const auto& gm = sys.groups[b.primal_group];
    const auto& gn = sys.groups[b.dual_group];
    for (int j = 0; j < gm.pattern->cols(); ++j) {
      int mv = gm.pattern->cell(r, j);
      if (mv == CoordinatePattern::kZero) continue;
      for (int k = 0; k < gn.pattern->rows(); ++k) {
        int nv = gn.pattern->cell(k, c);
        if (nv == CoordinatePattern::kZero) continue;
        const GaussRat& coef = b.L_exact(j, k);
        if (coef.is_zero()) continue;
        std::vector<int> vars;
        if (mv >= 0) vars.push_back(gm.offset + mv);
        if (nv >= 0) vars.push_back(gn.offset + nv);
        std::sort(vars.begin(), vars.end());
        acc[vars] += coef;
      }
    }
  }
  for (const auto& d : sys.dets) {
    if (d.equation != equation) continue;
    const auto& g = sys.groups[d.primal_group];
    const int p = d.primal_rows;
    const std::size_t n = d.P_exact.cols();
    std::vector<std::vector<int>> choices(static_cast<std::size_t>(p));
    for (int r = 0; r < p; ++r)
      for (int j = 0; j < g.pattern->cols(); ++j)
        if (!g.pattern->is_zero(r, j)) choices[r].push_back(j);
    std::vector<std::size_t> idx(static_cast<std::size_t>(p), 0);
    bool empty = std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); });
    while (!empty) {
      std::vector<int> cols(static_cast<std::size_t>(p));
      for (int r = 0; r < p; ++r) cols[r] = choices[r][idx[r]];
      std::vector<int> sorted = cols;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
        QMatrix A(n, n);
        for (int r = 0; r < p; ++r)
          for (std::size_t k = 0; k < n; ++k) A(r, k) = d.P_exact(cols[r], k);
        for (std::size_t r = 0; r < d.Q_exact.rows(); ++r)
          for (std::size_t k = 0; k < n; ++k) A(p + r, k) = d.Q_exact(r, k);
        GaussRat coef = determinant(A);
        if (!coef.is_zero()) {
          std::vector<int> vars;
          for (int r = 0; r < p; ++r) {
            int v = g.pattern->cell(r, cols[r]);
            if (v >= 0) vars.push_back(g.offset + v);
          }
          std::sort(vars.begin(), vars.end());
          acc[vars] += coef;
        }
      }
      int r = p - 1;
      while (r >= 0 && ++idx[r] == choices[r].size()) idx[r--] = 0;
      if (r < 0) break;
    }
  }
  std::vector<Term> out;
  for (auto& [vars, coef] : acc)
    if (!coef.is_zero()) out.push_back({coef, vars});
  return out;
}

std::vector<std::vector<Term>> all_terms(const SquareSystem& sys) {
  std::vector<std::vector<Term>> t;
  for (int e = 0; e < sys.total_equations(); ++e) t.push_back(equation_terms(sys, e));
  return t;
}

Complex evaluate_terms(const std::vector<Term>& terms, const std::vector<Complex>& x) {
  Complex s = 0;
  for (const auto& t : terms) {
    Complex m = t.coef.to_complex();
    for (int v : t.vars) m *= x[v];
    s += m;
  }
  return s;
}

namespace {

// Can the quadratic monomials of an equation be split so each joins the two sides?
bool bipartite(const std::vector<Term>& terms) {
  std::map<int, std::vector<int>> adj;
  for (const auto& t : terms)
    if (t.vars.size() == 2) {
      adj[t.vars[0]].push_back(t.vars[1]);
      adj[t.vars[1]].push_back(t.vars[0]);
    }
  std::map<int, int> color;
  for (const auto& [start, _] : adj) {
    if (color.count(start)) continue;
    std::vector<int> stack{start};
    color[start] = 0;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        auto it = color.find(v);
        if (it == color.end()) {
          color[v] = 1 - color[u];
          stack.push_back(v);
        } else if (it->second == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

mpq_class d2_norm_bound_squared(const SquareSystem& sys) {
  if (sys.max_degree() > 2)
    throw NotBilinear("system has equations of degree " + std::to_string(sys.max_degree()) +
                      "; use the general bound");
  // For one equation with quadratic part u^T C v (bipartite), ||D^2 g/2|| = ||C||_2 / 2 <= ||C||_F / 2.
  // Otherwise the symmetric matrix has Frobenius norm^2 sum |c|^2 / 2.
  mpq_class total = 0;
  for (const auto& terms : all_terms(sys)) {
    mpq_class s = 0;
    for (const auto& t : terms)
      if (t.vars.size() == 2) s += t.coef.norm2();
    total += bipartite(terms) ? mpq_class(s / 4) : mpq_class(s / 2);
  }
  return total;
}

double d2_norm_bound(const SquareSystem& sys) { return std::sqrt(d2_norm_bound_squared(sys).get_d()); }

mpq_class bombieri_norm_squared(const std::vector<std::vector<Term>>& terms, const std::vector<int>& degrees) {
  if (terms.size() != degrees.size()) throw InvalidArgument("bombieri norm: degree list length");
  mpq_class total = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const int d = degrees[i];
    for (const auto& t : terms[i]) {
      const int k = static_cast<int>(t.vars.size());
      if (k > d) throw InvalidArgument("bombieri norm: term degree exceeds equation degree");
      // multilinear monomial: weight 1 / multinomial(d; d-k, 1, ..., 1) = (d-k)! / d!
      mpz_class num = 1, den = 1;
      for (int q = 2; q <= d - k; ++q) num *= q;
      for (int q = 2; q <= d; ++q) den *= q;
      mpq_class w(num, den);
      w.canonicalize();
      total += t.coef.norm2() * w;
    }
  }
  return total;
}

}  // namespace schubert
