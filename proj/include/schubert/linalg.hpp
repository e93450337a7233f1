#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "schubert/errors.hpp"
#include "schubert/kernels.hpp"
#include "schubert/matrix.hpp"

namespace schubert {

/// PA = LU with partial pivoting. Float mode pivots on magnitude, exact mode on
/// the first nonzero entry.
template <class T>
struct LU {
  Matrix<T> lu;
  std::vector<std::size_t> perm;  // row i of PA is row perm[i] of A
  int sign = 1;
  bool singular = false;
};

template <class T>
LU<T> lu_factor(Matrix<T> a) {
  if (a.rows() != a.cols()) throw InvalidArgument("lu_factor: matrix not square");
  const std::size_t n = a.rows();
  LU<T> f;
  f.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    if constexpr (ScalarTraits<T>::exact) {
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) {
        f.singular = true;
        continue;
      }
    } else {
      double best = std::abs(a(k, k));
      for (std::size_t i = k + 1; i < n; ++i) {
        double v = std::abs(a(i, k));
        if (v > best) {
          best = v;
          p = i;
        }
      }
      if (best == 0.0) {
        f.singular = true;
        continue;
      }
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      std::swap(f.perm[p], f.perm[k]);
      f.sign = -f.sign;
    }
    const T pivot = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (ScalarTraits<T>::is_zero(a(i, k))) continue;
      T m = a(i, k) / pivot;
      a(i, k) = m;
      if constexpr (std::is_same_v<T, Complex>) {
        kernels::caxpy(n - k - 1, -m, a.row(k) + k + 1, a.row(i) + k + 1);
      } else {
        for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
      }
    }
  }
  f.lu = std::move(a);
  return f;
}

template <class T>
std::vector<T> lu_solve(const LU<T>& f, const std::vector<T>& b) {
  if (f.singular) throw SingularMatrix("lu_solve: singular matrix");
  const std::size_t n = f.lu.rows();
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  return x;
}

template <class T>
T lu_determinant(const LU<T>& f) {
  if (f.singular) return T(0L);
  T d(static_cast<long>(f.sign));
  for (std::size_t i = 0; i < f.lu.rows(); ++i) d *= f.lu(i, i);
  return d;
}

template <class T>
T determinant(const Matrix<T>& a) {
  if (a.rows() == 0) return T(1L);
  return lu_determinant(lu_factor(a));
}

template <class T>
std::vector<T> solve(const Matrix<T>& a, const std::vector<T>& b) {
  return lu_solve(lu_factor(a), b);
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  LU<T> f = lu_factor(a);
  if (f.singular) throw SingularMatrix("inverse: singular matrix");
  const std::size_t n = a.rows();
  Matrix<T> inv(n, n);
  std::vector<T> e(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) e[i] = T(i == j ? 1L : 0L);
    std::vector<T> col = lu_solve(f, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

/// Reciprocal condition estimate from the LU factors (cheap, float only).
double lu_rcond_estimate(const LU<Complex>& f);

/// Exact rank by fraction-free (Bareiss) elimination over the Gaussian integers.
std::size_t rank_exact(const QMatrix& a);

/// Float rank: singular values above rel_tol * sigma_max.
std::size_t rank_float(const CMatrix& a, double rel_tol = 1e-8);

/// Singular values in decreasing order.
std::vector<double> singular_values(const CMatrix& a);

/// Basis of {x : a x = 0} as columns, exact.
QMatrix nullspace_exact(const QMatrix& a);

/// Orthonormal basis of {x : a x = 0} as columns, from the SVD.
CMatrix nullspace_float(const CMatrix& a, double rel_tol = 1e-8);

/// Rows spanning {h : h a = 0} (the annihilator of the column space of a).
CMatrix left_annihilator(const CMatrix& a, double rel_tol = 1e-8);

/// Least-squares solution of a x = b (a tall or square), via Eigen.
std::vector<Complex> least_squares(const CMatrix& a, const std::vector<Complex>& b);

double frobenius_norm(const CMatrix& a);
double max_abs(const std::vector<Complex>& v);
double norm2(const std::vector<Complex>& v);

}  // namespace schubert
