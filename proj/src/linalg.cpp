#include "schubert/linalg.hpp"

#include <algorithm>

#include <Eigen/Dense>

namespace schubert {

namespace {

using EMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

EMat to_eigen(const CMatrix& a) {
  EMat m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

// Gaussian integer with exact division.
struct GInt {
  mpz_class re, im;
  bool zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

GInt mul(const GInt& a, const GInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GInt sub(const GInt& a, const GInt& b) { return {a.re - b.re, a.im - b.im}; }

// a / b, known to be exact
GInt exact_div(const GInt& a, const GInt& b) {
  mpz_class d = b.re * b.re + b.im * b.im;
  mpz_class r = a.re * b.re + a.im * b.im;
  mpz_class i = a.im * b.re - a.re * b.im;
  mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), d.get_mpz_t());
  mpz_divexact(i.get_mpz_t(), i.get_mpz_t(), d.get_mpz_t());
  return {r, i};
}

}  // namespace

double lu_rcond_estimate(const LU<Complex>& f) {
  if (f.singular) return 0.0;
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 0; i < f.lu.rows(); ++i) {
    double v = std::abs(f.lu(i, i));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi == 0.0 ? 0.0 : lo / hi;
}

std::size_t rank_exact(const QMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  // clear denominators row by row
  std::vector<std::vector<GInt>> g(m, std::vector<GInt>(n));
  for (std::size_t i = 0; i < m; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < n; ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).re().get_den_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).im().get_den_mpz_t());
    }
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class r = a(i, j).re() * l, im = a(i, j).im() * l;
      g[i][j] = {r.get_num(), im.get_num()};
    }
  }
  GInt prev{1, 0};
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t p = rank;
    while (p < m && g[p][col].zero()) ++p;
    if (p == m) continue;
    std::swap(g[p], g[rank]);
    const GInt piv = g[rank][col];
    for (std::size_t i = rank + 1; i < m; ++i) {
      for (std::size_t j = col + 1; j < n; ++j)
        g[i][j] = exact_div(sub(mul(piv, g[i][j]), mul(g[i][col], g[rank][j])), prev);
      g[i][col] = {0, 0};
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

std::vector<double> singular_values(const CMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return {};
  Eigen::JacobiSVD<EMat> svd(to_eigen(a));
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

std::size_t rank_float(const CMatrix& a, double rel_tol) {
  std::vector<double> s = singular_values(a);
  if (s.empty() || s[0] == 0.0) return 0;
  std::size_t r = 0;
  for (double v : s)
    if (v > rel_tol * s[0]) ++r;
  return r;
}

QMatrix nullspace_exact(const QMatrix& a) {
  // reduced row echelon form over Q(i)
  QMatrix r = a;
  const std::size_t m = r.rows(), n = r.cols();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t p = row;
    while (p < m && r(p, col).is_zero()) ++p;
    if (p == m) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(r(p, j), r(row, j));
    GaussRat inv = GaussRat(1L) / r(row, col);
    for (std::size_t j = 0; j < n; ++j) r(row, j) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || r(i, col).is_zero()) continue;
      GaussRat f = r(i, col);
      for (std::size_t j = 0; j < n; ++j) r(i, j) -= f * r(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  QMatrix basis(n, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], k) = GaussRat(1L);
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -r(i, free[k]);
  }
  return basis;
}

CMatrix nullspace_float(const CMatrix& a, double rel_tol) {
  const std::size_t n = a.cols();
  if (a.rows() == 0) return CMatrix::identity(n);
  Eigen::JacobiSVD<EMat> svd(to_eigen(a), Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  std::size_t r = 0;
  double top = s.size() ? s(0) : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (top > 0.0 && s(i) > rel_tol * top) ++r;
  const auto& v = svd.matrixV();
  CMatrix basis(n, n - r);
  for (std::size_t k = r; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) basis(i, k - r) = v(i, k);
  return basis;
}

CMatrix left_annihilator(const CMatrix& a, double rel_tol) {
  // h a = 0  <=>  a^T h^T = 0
  return nullspace_float(a.transpose(), rel_tol).transpose();
}

std::vector<Complex> least_squares(const CMatrix& a, const std::vector<Complex>& b) {
  EMat m = to_eigen(a);
  Eigen::Matrix<Complex, Eigen::Dynamic, 1> rhs(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i) = b[i];
  Eigen::Matrix<Complex, Eigen::Dynamic, 1> x = m.colPivHouseholderQr().solve(rhs);
  return std::vector<Complex>(x.data(), x.data() + x.size());
}

double frobenius_norm(const CMatrix& a) {
  return std::sqrt(kernels::cnorm2(a.data().size(), a.data().data()));
}

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

double norm2(const std::vector<Complex>& v) {
  return std::sqrt(kernels::cnorm2(v.size(), v.data()));
}

}  // namespace schubert
