#pragma once

#include <optional>
#include <vector>

#include "schubert/matrix.hpp"
#include "schubert/systems.hpp"

namespace schubert {

/// Residual of every equation, bilinear blocks first then determinants.
template <class T>
std::vector<T> evaluate(const SquareSystem& sys, const std::vector<T>& x);

/// Jacobian (equations x variables).
template <class T>
Matrix<T> jacobian(const SquareSystem& sys, const std::vector<T>& x);

template <class T>
struct EvalReport {
  std::vector<T> residual;
  Matrix<T> jacobian;
  std::optional<double> d2_bound;
};

template <class T>
EvalReport<T> evaluate_full(const SquareSystem& sys, const std::vector<T>& x);

/// Multilinear monomial coef * prod x[vars].
struct Term {
  GaussRat coef;
  std::vector<int> vars;  // sorted, distinct
};

/// Exact monomial expansion of one equation.
std::vector<Term> equation_terms(const SquareSystem& sys, int equation);
std::vector<std::vector<Term>> all_terms(const SquareSystem& sys);

/// Evaluate an expanded equation (reference path used by tests).
Complex evaluate_terms(const std::vector<Term>& terms, const std::vector<Complex>& x);

/// Squared bound on ||D^2 G / 2|| for systems of degree <= 2. Exact.
/// Throws NotBilinear when some equation has degree > 2.
mpq_class d2_norm_bound_squared(const SquareSystem& sys);
double d2_norm_bound(const SquareSystem& sys);

/// Squared Bombieri-Weyl norm of the homogenized system, per equation degree d_i.
mpq_class bombieri_norm_squared(const std::vector<std::vector<Term>>& terms, const std::vector<int>& degrees);

}  // namespace schubert
