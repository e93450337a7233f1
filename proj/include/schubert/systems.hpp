#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schubert/combinatorics.hpp"
#include "schubert/matrix.hpp"
#include "schubert/patterns.hpp"

namespace schubert {

enum class Field { Real, Complex };
const char* field_name(Field f);
Field parse_field(const std::string& s);

/// Full rank n x n matrix Phi with F_i = row span of the first i rows.
class FlagMatrix {
 public:
  FlagMatrix() = default;
  explicit FlagMatrix(QMatrix phi);

  int n() const { return static_cast<int>(phi_.rows()); }
  const QMatrix& exact() const { return phi_; }
  const QMatrix& exact_inverse() const { return inv_; }
  const CMatrix& value() const { return phi_f_; }
  const CMatrix& inverse() const { return inv_f_; }
  bool is_real() const;
  /// w0 Phi: the opposite flag.
  FlagMatrix opposite() const { return FlagMatrix(phi_.reverse_rows()); }
  /// First r rows (the subspace F_r).
  QMatrix leading_rows(int r) const { return phi_.rows_range(0, static_cast<std::size_t>(r)); }

  friend bool operator==(const FlagMatrix& a, const FlagMatrix& b) { return a.phi_ == b.phi_; }

 private:
  QMatrix phi_, inv_;
  CMatrix phi_f_, inv_f_;
};

/// A Schubert problem with one flag per condition. opposite_pairs lists (i, j)
/// with flags[j] == flags[i].opposite().
struct ProblemInstance {
  SchubertProblem problem;
  std::vector<FlagMatrix> flags;
  std::vector<std::pair<int, int>> opposite_pairs;
  std::uint64_t seed = 0;
  Field field = Field::Complex;
  int scale = 1;

  bool is_real() const;
  int n() const;
};

/// Condition order used by the Grassmannian builders: non-hypersurface
/// conditions first (stable), then hypersurface ones. Consecutive positions
/// (0,1), (2,3), ... are the opposite pairs.
std::vector<int> canonical_order(const GrassmannianProblem& p);
/// Opposite pairs (as condition indices) an instance must carry so every builder applies.
std::vector<std::pair<int, int>> required_pairs(const SchubertProblem& p);

enum class Formulation { PDF1, PDF2, PDF3, Flag };
const char* formulation_name(Formulation f);

enum class ReductionKind { Full, SubFlag, RedOne, GrassPair, CodimOne };
const char* reduction_name(ReductionKind k);

struct VariableGroup {
  std::string name;
  PatternPtr pattern;
  int offset = 0;
  int size() const { return pattern->num_vars(); }
};

/// Equations (M_rows * L * N)[r, c] = 0 for (r, c) in entries, where M is the
/// primal group matrix restricted to its first primal_rows rows and N the dual.
struct BilinearBlock {
  int primal_group = 0;
  int dual_group = 0;
  int primal_rows = 0;
  QMatrix L_exact;
  CMatrix L;
  std::vector<std::pair<int, int>> entries;
  int first_equation = 0;
  std::string label;
};

/// det([M_rows * P ; Q]) = 0.
struct DeterminantEquation {
  int primal_group = 0;
  int primal_rows = 0;
  QMatrix P_exact;
  CMatrix P;
  QMatrix Q_exact;
  CMatrix Q;
  int equation = 0;
  std::string label;
};

struct AppliedReduction {
  ReductionKind kind = ReductionKind::Full;
  std::vector<int> conditions;
  int savings = 0;
  std::string detail;
};

class SquareSystem {
 public:
  Formulation formulation = Formulation::PDF1;
  int n = 0;
  std::vector<VariableGroup> groups;
  std::vector<BilinearBlock> blocks;
  std::vector<DeterminantEquation> dets;
  std::vector<AppliedReduction> reductions;
  /// Frame of the primal group: the subspace/flag is the row span of M * primal_frame.
  QMatrix primal_frame_exact;
  CMatrix primal_frame;
  int baseline = 0;  // equation count before reductions (flag systems)
  bool real_coefficients = false;

  int total_variables() const;
  int total_equations() const;
  int bilinear_equations() const;
  bool is_square() const { return total_variables() == total_equations(); }
  /// Structural degree of each equation (number of pattern rows/cols carrying variables).
  std::vector<int> degrees() const;
  int max_degree() const;
  std::string summary() const;
};

SquareSystem build_pdf1(const ProblemInstance& inst);
SquareSystem build_pdf2(const ProblemInstance& inst);
/// t trailing hypersurface conditions become determinants.
SquareSystem build_pdf3(const ProblemInstance& inst, int t);
SquareSystem build_pdf3(const ProblemInstance& inst);
/// Number of trailing hypersurface conditions used by default.
int default_hypersurface_count(const GrassmannianProblem& p);

struct ReductionPlanItem {
  ReductionKind kind = ReductionKind::Full;
  std::vector<int> conditions;  // one, or two for GrassPair
  int a = 0;                    // Grassmannian projection (RedOne, GrassPair, CodimOne)
  std::optional<FlagType> sub;  // SubFlag
  int savings = 0;
};

struct ReductionPlan {
  int primal = 0;
  std::vector<ReductionPlanItem> items;
  int total_savings() const;
};

/// Choose reductions for a flag problem. With enable = false every condition is Full.
ReductionPlan plan_reductions(const FlagProblem& p, bool enable = true);
SquareSystem build_flag_pdf(const ProblemInstance& inst, const ReductionPlan& plan);
SquareSystem build_flag_pdf(const ProblemInstance& inst, bool reduce = true);

/// Table of savings from determinants of hypersurface conditions.
int reduction_savings(int a_parity, int b, int nu);

enum class Chart { FullCell, OneCondition, TwoCondition, FlagCell };
const char* chart_name(Chart c);

struct MinorFamily {
  int condition = 0;
  int primal_rows = 0;  // rows of the chart matrix stacked on top
  CMatrix flag_rows;    // Phi_b in chart coordinates
  int minor_size = 0;
  long count() const;
};

struct DeterminantalSystem {
  Chart chart = Chart::FullCell;
  PatternPtr pattern;
  CMatrix frame;  // subspace = row span of C * frame
  std::vector<int> chart_conditions;
  std::vector<int> steps;  // flag type of a flag chart, empty for subspaces
  std::vector<MinorFamily> families;
  long minimal_generators = 0;  // sum of norm_count over conditions given by equations (-1 for flags)
  int num_vars() const { return pattern->num_vars(); }
  long num_minors() const;
};

DeterminantalSystem build_determinantal(const ProblemInstance& inst, Chart chart);

/// Evaluate every minor at chart coordinates; returns the largest |minor|.
double max_minor(const DeterminantalSystem& sys, const std::vector<Complex>& coords);

}  // namespace schubert
