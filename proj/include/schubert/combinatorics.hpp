#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "schubert/errors.hpp"

namespace schubert {

/// Increasing ell-subset alpha of [n], entries 1-based.
class SchubertCondition {
 public:
  SchubertCondition() = default;
  SchubertCondition(int n, std::vector<int> alpha);

  /// (n-ell, n-ell+2, ..., n), the unique codimension one condition.
  static SchubertCondition hypersurface(int ell, int n);
  /// (n-ell+1, ..., n), no condition at all.
  static SchubertCondition trivial(int ell, int n);

  int n() const { return n_; }
  int ell() const { return static_cast<int>(alpha_.size()); }
  const std::vector<int>& alpha() const { return alpha_; }
  /// 1-based access, alpha_i.
  int at(int i) const { return alpha_[static_cast<std::size_t>(i - 1)]; }

  int codim() const;
  int dim() const;
  bool is_hypersurface() const;
  bool is_trivial() const { return codim() == 0; }

  std::string str() const;

  friend bool operator==(const SchubertCondition& a, const SchubertCondition& b) {
    return a.n_ == b.n_ && a.alpha_ == b.alpha_;
  }
  friend bool operator!=(const SchubertCondition& a, const SchubertCondition& b) {
    return !(a == b);
  }
  friend bool operator<(const SchubertCondition& a, const SchubertCondition& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.alpha_ < b.alpha_;
  }

 private:
  int n_ = 0;
  std::vector<int> alpha_;
};

int codim(const SchubertCondition& c);
/// Coordinatewise order; throws InvalidArgument on mismatched spaces.
bool leq(const SchubertCondition& a, const SchubertCondition& b);
/// Number of beta in C([n], ell) with beta not <= alpha.
long norm_count(const SchubertCondition& c);
/// alpha^perp in C([n], n-ell): j in alpha^perp iff n+1-j not in alpha.
SchubertCondition dual_condition(const SchubertCondition& c);
/// True iff alpha_i + beta_{ell+1-i} >= n+1 for all i.
bool pair_feasible(const SchubertCondition& a, const SchubertCondition& b);
/// All conditions of Gr(ell, n) in lexicographic order.
std::vector<SchubertCondition> enumerate_conditions(int ell, int n);

/// Flag type 0 < a_1 < ... < a_t < n.
class FlagType {
 public:
  FlagType() = default;
  FlagType(int n, std::vector<int> a);

  int n() const { return n_; }
  const std::vector<int>& a() const { return a_; }
  int length() const { return static_cast<int>(a_.size()); }
  int top() const { return a_.back(); }
  int dim() const;
  FlagType reversed() const;
  bool contains(int a) const;
  /// Is every entry of other also an entry of this?
  bool refines(const FlagType& other) const;

  std::string str() const;

  friend bool operator==(const FlagType& x, const FlagType& y) {
    return x.n_ == y.n_ && x.a_ == y.a_;
  }
  friend bool operator!=(const FlagType& x, const FlagType& y) { return !(x == y); }

 private:
  int n_ = 0;
  std::vector<int> a_;
};

/// Permutation of [n] in one-line notation (1-based values) with descents in a_seq.
class FlagPermutation {
 public:
  FlagPermutation() = default;
  FlagPermutation(FlagType type, std::vector<int> w);

  const FlagType& type() const { return type_; }
  int n() const { return type_.n(); }
  const std::vector<int>& w() const { return w_; }
  /// 1-based w(i).
  int at(int i) const { return w_[static_cast<std::size_t>(i - 1)]; }

  int length() const;
  int codim() const;
  /// {w(1), ..., w(a)} as a condition on Gr(a, n).
  SchubertCondition restrict_to(int a) const;

  std::string str() const;

  friend bool operator==(const FlagPermutation& x, const FlagPermutation& y) {
    return x.type_ == y.type_ && x.w_ == y.w_;
  }
  friend bool operator!=(const FlagPermutation& x, const FlagPermutation& y) {
    return !(x == y);
  }

 private:
  FlagType type_;
  std::vector<int> w_;
};

/// Inversion count of a raw permutation.
int inversions(const std::vector<int>& w);
/// Positions i with w(i) > w(i+1).
std::vector<int> descents(const std::vector<int>& w);

int perm_length(const FlagPermutation& w);
int perm_codim(const FlagPermutation& w);
/// w0 w w0 on the reversed flag type.
FlagPermutation conjugate_w0(const FlagPermutation& w);
/// Longest w in W^{a_seq} with {w(1..a)} = alpha, a = alpha.ell().
FlagPermutation lift_grassmannian(const SchubertCondition& alpha, const FlagType& type);
/// Longest element of v W_{b} lying in W^{a_seq}.
FlagPermutation lift_subflag(const FlagPermutation& v, const FlagType& type);
/// Minimal coset representative of w in W^{b}, for b a subflag of w's type.
FlagPermutation project_to(const FlagPermutation& w, const FlagType& b);
/// All permutations in W^{a_seq}.
std::vector<FlagPermutation> enumerate_permutations(const FlagType& type);
/// r_w(a_i, j) = a_i + j - #{k <= a_i : w(k) <= j}.
int rank_bound(const FlagPermutation& w, int a, int j);

struct GrassmannianProblem {
  int ell = 0;
  int n = 0;
  std::vector<SchubertCondition> conditions;
  int dimension() const { return ell * (n - ell); }
};

struct FlagProblem {
  FlagType type;
  std::vector<FlagPermutation> conditions;
  int dimension() const { return type.dim(); }
};

using SchubertProblem = std::variant<GrassmannianProblem, FlagProblem>;

int problem_dimension(const SchubertProblem& p);
int codim_sum(const SchubertProblem& p);
std::size_t condition_count(const SchubertProblem& p);
/// Throws CodimensionMismatch unless codimensions sum to the dimension;
/// InvalidArgument when conditions live on another space.
void validate_problem(const SchubertProblem& p);
std::string describe(const SchubertProblem& p);

}  // namespace schubert
