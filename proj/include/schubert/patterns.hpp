#pragma once

#include <memory>
#include <string>
#include <vector>

#include "schubert/combinatorics.hpp"
#include "schubert/matrix.hpp"

namespace schubert {

enum class PatternFamily { MAlpha, MUpper, MBi, MW, NAlpha, NBi, NW };
enum class Orientation { RowSpan, ColumnSpan };

const char* family_name(PatternFamily f);

/// Matrix template: each cell is Zero, One, or Var(k) with k dense from 0.
/// Variables are numbered row-major.
class CoordinatePattern {
 public:
  static constexpr int kZero = -2;
  static constexpr int kOne = -1;

  CoordinatePattern() = default;
  /// cells: kZero, kOne, or any value >= 0 meaning "variable" (renumbered row-major).
  CoordinatePattern(int rows, int cols, std::vector<int> cells, PatternFamily family,
                    Orientation orientation, std::string label);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int num_vars() const { return num_vars_; }
  int cell(int r, int c) const { return cells_[static_cast<std::size_t>(r * cols_ + c)]; }
  bool is_var(int r, int c) const { return cell(r, c) >= 0; }
  bool is_one(int r, int c) const { return cell(r, c) == kOne; }
  bool is_zero(int r, int c) const { return cell(r, c) == kZero; }
  PatternFamily family() const { return family_; }
  Orientation orientation() const { return orientation_; }
  const std::string& label() const { return label_; }

  /// (row, col) of variable k.
  std::pair<int, int> var_position(int k) const { return var_pos_[static_cast<std::size_t>(k)]; }
  /// Number of variables in row r / column c.
  int row_vars(int r) const;
  int col_vars(int c) const;

  CoordinatePattern transpose(PatternFamily family, Orientation orientation, std::string label) const;
  CoordinatePattern rotate180(PatternFamily family, std::string label) const;
  CoordinatePattern reverse_cols(PatternFamily family, std::string label) const;

  template <class T>
  Matrix<T> instantiate(const T* values) const {
    Matrix<T> m(static_cast<std::size_t>(rows_), static_cast<std::size_t>(cols_));
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) {
        int v = cell(r, c);
        if (v == kOne) m(r, c) = T(1L);
        else if (v >= 0) m(r, c) = values[v];
      }
    return m;
  }

  template <class T>
  Matrix<T> instantiate(const std::vector<T>& values) const {
    if (static_cast<int>(values.size()) != num_vars_)
      throw InvalidArgument("instantiate: expected " + std::to_string(num_vars_) + " values, got " +
                            std::to_string(values.size()));
    return instantiate(values.data());
  }

  /// Multi-line text picture ("1", "0", "*").
  std::string picture() const;

  friend bool operator==(const CoordinatePattern& a, const CoordinatePattern& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.cells_ == b.cells_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> cells_;
  int num_vars_ = 0;
  std::vector<std::pair<int, int>> var_pos_;
  PatternFamily family_ = PatternFamily::MAlpha;
  Orientation orientation_ = Orientation::RowSpan;
  std::string label_;
};

using PatternPtr = std::shared_ptr<const CoordinatePattern>;

/// Echelon matrices with pivots alpha (ell x n).
PatternPtr pattern_M_alpha(const SchubertCondition& alpha);
/// M_beta rotated 180 degrees (first nonzero of row j at n+1-beta_{ell+1-j}).
PatternPtr pattern_M_upper(const SchubertCondition& beta);
/// M^beta_alpha: leading One of row i at n+1-beta_{ell+1-i}, support ending at alpha_i.
PatternPtr pattern_M_bi(const SchubertCondition& alpha, const SchubertCondition& beta);
/// Partial echelon matrices M_w (a_t x n).
PatternPtr pattern_M_w(const FlagPermutation& w);
/// N_alpha = transpose of M^{alpha^perp} (n x (n-ell)).
PatternPtr pattern_N_alpha(const SchubertCondition& alpha);
/// N^beta_alpha = transpose of M^{alpha^perp}_{beta^perp}.
PatternPtr pattern_N_bi(const SchubertCondition& alpha, const SchubertCondition& beta);
/// N_w = (M_{w0 w w0} w0)^T (n x (n - a_1)).
PatternPtr pattern_N_w(const FlagPermutation& w);

std::size_t pattern_cache_size();

}  // namespace schubert
