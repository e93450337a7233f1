#include "schubert/systems.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "schubert/linalg.hpp"

namespace schubert {

const char* field_name(Field f) { return f == Field::Real ? "real" : "complex"; }

Field parse_field(const std::string& s) {
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw InvalidArgument("field must be 'real' or 'complex', got '" + s + "'");
}

const char* formulation_name(Formulation f) {
  switch (f) {
    case Formulation::PDF1: return "pdf1";
    case Formulation::PDF2: return "pdf2";
    case Formulation::PDF3: return "pdf3";
    case Formulation::Flag: return "flag";
  }
  return "?";
}

const char* reduction_name(ReductionKind k) {
  switch (k) {
    case ReductionKind::Full: return "full";
    case ReductionKind::SubFlag: return "subflag";
    case ReductionKind::RedOne: return "grassmannian";
    case ReductionKind::GrassPair: return "grassmannian-pair";
    case ReductionKind::CodimOne: return "codim-one";
  }
  return "?";
}

const char* chart_name(Chart c) {
  switch (c) {
    case Chart::FullCell: return "full-cell";
    case Chart::OneCondition: return "one-condition";
    case Chart::TwoCondition: return "two-condition";
    case Chart::FlagCell: return "flag-cell";
  }
  return "?";
}

FlagMatrix::FlagMatrix(QMatrix phi) : phi_(std::move(phi)) {
  if (phi_.rows() != phi_.cols() || phi_.rows() == 0) throw InvalidArgument("flag matrix must be square");
  inv_ = schubert::inverse(phi_);  // throws SingularMatrix
  phi_f_ = to_complex(phi_);
  inv_f_ = to_complex(inv_);
}

bool FlagMatrix::is_real() const {
  for (const auto& z : phi_.data())
    if (!z.is_real()) return false;
  return true;
}

bool ProblemInstance::is_real() const {
  for (const auto& f : flags)
    if (!f.is_real()) return false;
  return true;
}

int ProblemInstance::n() const {
  if (const auto* g = std::get_if<GrassmannianProblem>(&problem)) return g->n;
  return std::get<FlagProblem>(problem).type.n();
}

std::vector<int> canonical_order(const GrassmannianProblem& p) {
  std::vector<int> order;
  for (std::size_t i = 0; i < p.conditions.size(); ++i)
    if (!p.conditions[i].is_hypersurface()) order.push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < p.conditions.size(); ++i)
    if (p.conditions[i].is_hypersurface()) order.push_back(static_cast<int>(i));
  return order;
}

std::vector<std::pair<int, int>> required_pairs(const SchubertProblem& p) {
  std::vector<std::pair<int, int>> pairs;
  if (const auto* g = std::get_if<GrassmannianProblem>(&p)) {
    auto order = canonical_order(*g);
    for (std::size_t i = 0; i + 1 < order.size(); i += 2) pairs.emplace_back(order[i], order[i + 1]);
  } else {
    for (const auto& item : plan_reductions(std::get<FlagProblem>(p)).items)
      if (item.kind == ReductionKind::GrassPair) pairs.emplace_back(item.conditions[0], item.conditions[1]);
  }
  return pairs;
}

int SquareSystem::total_variables() const {
  int v = 0;
  for (const auto& g : groups) v += g.size();
  return v;
}

int SquareSystem::bilinear_equations() const {
  int e = 0;
  for (const auto& b : blocks) e += static_cast<int>(b.entries.size());
  return e;
}

int SquareSystem::total_equations() const { return bilinear_equations() + static_cast<int>(dets.size()); }

std::vector<int> SquareSystem::degrees() const {
  std::vector<int> d(static_cast<std::size_t>(total_equations()), 0);
  for (const auto& b : blocks) {
    const auto& M = *groups[b.primal_group].pattern;
    const auto& N = *groups[b.dual_group].pattern;
    for (std::size_t e = 0; e < b.entries.size(); ++e) {
      auto [r, c] = b.entries[e];
      d[b.first_equation + e] = (M.row_vars(r) > 0) + (N.col_vars(c) > 0);
    }
  }
  for (const auto& det : dets) {
    const auto& M = *groups[det.primal_group].pattern;
    int k = 0;
    for (int r = 0; r < det.primal_rows; ++r) k += M.row_vars(r) > 0;
    d[det.equation] = k;
  }
  return d;
}

int SquareSystem::max_degree() const {
  auto d = degrees();
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

std::string SquareSystem::summary() const {
  std::ostringstream os;
  os << formulation_name(formulation) << ": " << total_equations() << " equations ("
     << bilinear_equations() << " bilinear, " << dets.size() << " determinantal), " << total_variables()
     << " variables in " << groups.size() << " groups";
  return os.str();
}

namespace {

const GrassmannianProblem& grassmannian_of(const ProblemInstance& inst) {
  const auto* g = std::get_if<GrassmannianProblem>(&inst.problem);
  if (!g) throw InvalidArgument("this formulation needs a Grassmannian problem");
  return *g;
}

void check_flags(const ProblemInstance& inst) {
  validate_problem(inst.problem);
  if (inst.flags.size() != condition_count(inst.problem))
    throw InvalidArgument("instance needs one flag per condition");
  for (const auto& f : inst.flags)
    if (f.n() != inst.n()) throw InvalidArgument("flag matrix has the wrong size");
}

std::vector<std::pair<int, int>> grid(int rows, int cols) {
  std::vector<std::pair<int, int>> e;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) e.emplace_back(r, c);
  return e;
}

// (r, c) with r < a_k and c < n - a_k for some k
std::vector<std::pair<int, int>> flag_entries(const FlagType& t) {
  std::vector<std::pair<int, int>> e;
  for (int r = 0; r < t.top(); ++r)
    for (int c = 0; c < t.n() - t.a().front(); ++c) {
      bool hit = false;
      for (int a : t.a())
        if (r < a && c < t.n() - a) hit = true;
      if (hit) e.emplace_back(r, c);
    }
  return e;
}

struct Builder {
  SquareSystem sys;
  int next_offset = 0;
  int next_equation = 0;

  int add_group(std::string name, PatternPtr p) {
    sys.groups.push_back({std::move(name), std::move(p), next_offset});
    next_offset += sys.groups.back().size();
    return static_cast<int>(sys.groups.size()) - 1;
  }

  void add_block(int dual, int primal_rows, const FlagMatrix& primal_flag, const FlagMatrix& dual_flag,
                 std::vector<std::pair<int, int>> entries, std::string label) {
    BilinearBlock b;
    b.primal_group = 0;
    b.dual_group = dual;
    b.primal_rows = primal_rows;
    b.L_exact = primal_flag.exact() * dual_flag.exact_inverse();
    b.L = to_complex(b.L_exact);
    b.entries = std::move(entries);
    b.first_equation = next_equation;
    next_equation += static_cast<int>(b.entries.size());
    b.label = std::move(label);
    sys.blocks.push_back(std::move(b));
  }

  void add_det(int primal_rows, const FlagMatrix& primal_flag, QMatrix q, std::string label) {
    DeterminantEquation d;
    d.primal_group = 0;
    d.primal_rows = primal_rows;
    d.P_exact = primal_flag.exact();
    d.P = primal_flag.value();
    d.Q_exact = std::move(q);
    d.Q = to_complex(d.Q_exact);
    d.label = std::move(label);
    sys.dets.push_back(std::move(d));
  }

  SquareSystem finish(const ProblemInstance& inst) {
    // determinants come after all bilinear equations
    for (auto& d : sys.dets) d.equation = next_equation++;
    sys.real_coefficients = inst.is_real();
    if (!sys.is_square())
      throw Error("internal: built system is not square (" + std::to_string(sys.total_equations()) +
                  " equations, " + std::to_string(sys.total_variables()) + " variables)");
    return std::move(sys);
  }
};

// Paired formulation over the given condition indices (canonical order).
SquareSystem build_paired(const ProblemInstance& inst, const std::vector<int>& conds,
                          const std::vector<int>& hypersurfaces, Formulation formulation) {
  const auto& g = grassmannian_of(inst);
  const int ell = g.ell, n = g.n;
  if (conds.empty()) throw InvalidArgument("no conditions left for the primal group");
  struct Pair {
    int first;
    int second;  // -1: padded trivial condition
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < conds.size(); i += 2)
    pairs.push_back({conds[i], i + 1 < conds.size() ? conds[i + 1] : -1});
  const SchubertCondition trivial = SchubertCondition::trivial(ell, n);
  auto cond = [&](int idx) { return idx < 0 ? trivial : g.conditions[static_cast<std::size_t>(idx)]; };
  for (const auto& p : pairs) {
    if (p.second >= 0 && !(inst.flags[p.second] == inst.flags[p.first].opposite()))
      throw FlagsNotOpposite("flags of conditions " + std::to_string(p.first + 1) + " and " +
                             std::to_string(p.second + 1) + " are not an opposite pair");
    if (!pair_feasible(cond(p.first), cond(p.second)))
      throw InfeasiblePair("conditions " + cond(p.first).str() + " and " + cond(p.second).str() +
                           " cannot be imposed on opposite flags");
  }
  Builder b;
  b.sys.formulation = formulation;
  b.sys.n = n;
  const Pair& last = pairs.back();
  const FlagMatrix& frame = inst.flags[last.first];
  b.sys.primal_frame_exact = frame.exact();
  b.sys.primal_frame = frame.value();
  b.add_group("M", pattern_M_bi(cond(last.first), cond(last.second)));
  for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
    const Pair& p = pairs[i];
    int gi = b.add_group("N" + std::to_string(i + 1), pattern_N_bi(cond(p.first), cond(p.second)));
    b.add_block(gi, ell, frame, inst.flags[p.first], grid(ell, n - ell),
                "pair " + std::to_string(i + 1));
  }
  for (int h : hypersurfaces)
    b.add_det(ell, frame, inst.flags[h].leading_rows(n - ell),
              "hypersurface condition " + std::to_string(h + 1));
  b.sys.baseline = (static_cast<int>(g.conditions.size()) - 1) * ell * (n - ell);
  return b.finish(inst);
}

}  // namespace

SquareSystem build_pdf1(const ProblemInstance& inst) {
  check_flags(inst);
  const auto& g = grassmannian_of(inst);
  const int ell = g.ell, n = g.n;
  auto order = canonical_order(g);
  if (order.size() < 2) throw InvalidArgument("the basic formulation needs at least two conditions");
  const int s = order.back();
  Builder b;
  b.sys.formulation = Formulation::PDF1;
  b.sys.n = n;
  b.sys.primal_frame_exact = inst.flags[s].exact();
  b.sys.primal_frame = inst.flags[s].value();
  b.add_group("M", pattern_M_alpha(g.conditions[s]));
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    int c = order[i];
    int gi = b.add_group("N" + std::to_string(i + 1), pattern_N_alpha(g.conditions[c]));
    b.add_block(gi, ell, inst.flags[s], inst.flags[c], grid(ell, n - ell),
                "condition " + std::to_string(c + 1));
  }
  b.sys.baseline = (static_cast<int>(order.size()) - 1) * ell * (n - ell);
  return b.finish(inst);
}

SquareSystem build_pdf2(const ProblemInstance& inst) {
  check_flags(inst);
  return build_paired(inst, canonical_order(grassmannian_of(inst)), {}, Formulation::PDF2);
}

int default_hypersurface_count(const GrassmannianProblem& p) {
  int h = 0;
  for (const auto& c : p.conditions) h += c.is_hypersurface();
  const int m = static_cast<int>(p.conditions.size()) - h;
  if (m >= 2) return (m % 2 == 0) ? h : std::max(h - 1, 0);
  if (m == 1) return std::max(h - 1, 0);
  return std::max(h - 2, 0);
}

SquareSystem build_pdf3(const ProblemInstance& inst, int t) {
  check_flags(inst);
  const auto& g = grassmannian_of(inst);
  auto order = canonical_order(g);
  if (t < 0 || t > static_cast<int>(order.size())) throw InvalidArgument("bad hypersurface count");
  std::vector<int> head(order.begin(), order.end() - t), tail(order.end() - t, order.end());
  for (int h : tail)
    if (!g.conditions[h].is_hypersurface())
      throw InvalidArgument("condition " + g.conditions[h].str() + " is not the hypersurface condition");
  if (head.empty()) throw InvalidArgument("at least one condition must remain for the primal group");
  return build_paired(inst, head, tail, Formulation::PDF3);
}

SquareSystem build_pdf3(const ProblemInstance& inst) {
  return build_pdf3(inst, default_hypersurface_count(grassmannian_of(inst)));
}

int ReductionPlan::total_savings() const {
  int s = 0;
  for (const auto& i : items) s += i.savings;
  return s;
}

namespace {

struct Candidates {
  std::optional<int> codim_one_a;
  std::optional<int> grass_a;
  std::optional<FlagType> sub;
};

Candidates candidates_for(const FlagPermutation& w) {
  const FlagType& t = w.type();
  const int n = t.n();
  Candidates c;
  int best_grass = -1;
  for (int a : t.a()) {
    SchubertCondition alpha = w.restrict_to(a);
    if (lift_grassmannian(alpha, t) != w) continue;
    if (w.codim() == 1 && alpha.is_hypersurface() && !c.codim_one_a) c.codim_one_a = a;
    int save = t.dim() - a * (n - a);
    if (save > best_grass) {
      best_grass = save;
      c.grass_a = a;
    }
  }
  // proper subflags with at least two steps (single steps are the Grassmannian case)
  const int len = t.length();
  int best_dim = t.dim();
  for (int mask = 1; mask < (1 << len) - 1; ++mask) {
    std::vector<int> b;
    for (int k = 0; k < len; ++k)
      if (mask & (1 << k)) b.push_back(t.a()[static_cast<std::size_t>(k)]);
    if (b.size() < 2) continue;
    FlagType sub(n, b);
    if (sub.dim() >= best_dim) continue;
    if (lift_subflag(project_to(w, sub), t) == w) {
      best_dim = sub.dim();
      c.sub = sub;
    }
  }
  return c;
}

}  // namespace

ReductionPlan plan_reductions(const FlagProblem& p, bool enable) {
  const int s = static_cast<int>(p.conditions.size());
  const FlagType& t = p.type;
  const int n = t.n();
  std::vector<Candidates> cand;
  for (const auto& w : p.conditions) cand.push_back(candidates_for(w));
  ReductionPlan plan;
  plan.primal = s - 1;
  for (int i = s - 1; i >= 0; --i) {
    const auto& c = cand[static_cast<std::size_t>(i)];
    if (!c.codim_one_a && !c.grass_a && !c.sub) {
      plan.primal = i;
      break;
    }
  }
  std::map<int, std::vector<int>> grass_groups;
  for (int i = 0; i < s; ++i) {
    if (i == plan.primal) continue;
    const auto& c = cand[static_cast<std::size_t>(i)];
    ReductionPlanItem item;
    item.conditions = {i};
    if (!enable) {
      plan.items.push_back(item);
      continue;
    }
    if (c.codim_one_a) {
      item.kind = ReductionKind::CodimOne;
      item.a = *c.codim_one_a;
      item.savings = t.dim() - 1;
      plan.items.push_back(item);
      continue;
    }
    const int grass_save = c.grass_a ? t.dim() - *c.grass_a * (n - *c.grass_a) : -1;
    const int sub_save = c.sub ? t.dim() - c.sub->dim() : -1;
    if (c.grass_a && grass_save >= sub_save) {
      grass_groups[*c.grass_a].push_back(i);
      continue;
    }
    if (c.sub) {
      item.kind = ReductionKind::SubFlag;
      item.sub = c.sub;
      item.savings = sub_save;
    }
    plan.items.push_back(item);
  }
  for (auto& [a, members] : grass_groups) {
    std::vector<bool> used(members.size(), false);
    for (std::size_t x = 0; x < members.size(); ++x) {
      if (used[x]) continue;
      const SchubertCondition ax = p.conditions[members[x]].restrict_to(a);
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        if (used[y]) continue;
        const SchubertCondition ay = p.conditions[members[y]].restrict_to(a);
        if (pair_feasible(ax, ay)) {
          used[x] = used[y] = true;
          ReductionPlanItem item;
          item.kind = ReductionKind::GrassPair;
          item.conditions = {members[x], members[y]};
          item.a = a;
          item.savings = 2 * t.dim() - a * (n - a);
          plan.items.push_back(item);
          break;
        }
      }
      if (!used[x]) {
        used[x] = true;
        ReductionPlanItem item;
        item.kind = ReductionKind::RedOne;
        item.conditions = {members[x]};
        item.a = a;
        item.savings = t.dim() - a * (n - a);
        plan.items.push_back(item);
      }
    }
  }
  std::sort(plan.items.begin(), plan.items.end(),
            [](const auto& x, const auto& y) { return x.conditions[0] < y.conditions[0]; });
  return plan;
}

SquareSystem build_flag_pdf(const ProblemInstance& inst, const ReductionPlan& plan) {
  check_flags(inst);
  const auto* fp = std::get_if<FlagProblem>(&inst.problem);
  if (!fp) throw InvalidArgument("the flag formulation needs a flag-manifold problem");
  const FlagType& t = fp->type;
  const int n = t.n();
  const int s = static_cast<int>(fp->conditions.size());
  if (s < 2) throw InvalidArgument("the flag formulation needs at least two conditions");
  std::vector<int> seen(static_cast<std::size_t>(s), 0);
  seen[plan.primal]++;
  for (const auto& item : plan.items)
    for (int c : item.conditions) seen[c]++;
  for (int c = 0; c < s; ++c)
    if (seen[c] != 1) throw InvalidArgument("reduction plan must cover each condition exactly once");

  const FlagMatrix& frame = inst.flags[plan.primal];
  Builder b;
  b.sys.formulation = Formulation::Flag;
  b.sys.n = n;
  b.sys.primal_frame_exact = frame.exact();
  b.sys.primal_frame = frame.value();
  b.add_group("M", pattern_M_w(fp->conditions[plan.primal]));
  int dual_index = 0;
  for (const auto& item : plan.items) {
    const int i = item.conditions[0];
    const FlagPermutation& w = fp->conditions[i];
    AppliedReduction applied{item.kind, item.conditions, item.savings, ""};
    const std::string tag = "condition " + std::to_string(i + 1);
    switch (item.kind) {
      case ReductionKind::Full: {
        int gi = b.add_group("N" + std::to_string(++dual_index), pattern_N_w(w));
        b.add_block(gi, t.top(), frame, inst.flags[i], flag_entries(t), tag);
        break;
      }
      case ReductionKind::SubFlag: {
        if (!item.sub || !t.refines(*item.sub))
          throw InapplicableReduction(tag + ": subflag reduction needs a subflag type");
        FlagPermutation v = project_to(w, *item.sub);
        if (lift_subflag(v, t) != w)
          throw InapplicableReduction(tag + ": " + w.str() + " is not the lift of a permutation on " +
                                      item.sub->str());
        int gi = b.add_group("N" + std::to_string(++dual_index), pattern_N_w(v));
        b.add_block(gi, item.sub->top(), frame, inst.flags[i], flag_entries(*item.sub), tag);
        applied.detail = "v = " + v.str() + " on " + item.sub->str();
        break;
      }
      case ReductionKind::RedOne: {
        SchubertCondition alpha = w.restrict_to(item.a);
        if (lift_grassmannian(alpha, t) != w)
          throw InapplicableReduction(tag + ": " + w.str() + " is not a Grassmannian lift");
        int gi = b.add_group("N" + std::to_string(++dual_index), pattern_N_alpha(alpha));
        b.add_block(gi, item.a, frame, inst.flags[i], grid(item.a, n - item.a), tag);
        applied.detail = "alpha = " + alpha.str();
        break;
      }
      case ReductionKind::GrassPair: {
        if (item.conditions.size() != 2) throw InapplicableReduction("pair reduction needs two conditions");
        const int j = item.conditions[1];
        SchubertCondition alpha = w.restrict_to(item.a);
        SchubertCondition beta = fp->conditions[j].restrict_to(item.a);
        if (lift_grassmannian(alpha, t) != w || lift_grassmannian(beta, t) != fp->conditions[j])
          throw InapplicableReduction(tag + ": pair members must be Grassmannian lifts");
        if (!(inst.flags[j] == inst.flags[i].opposite()))
          throw FlagsNotOpposite("flags of conditions " + std::to_string(i + 1) + " and " +
                                 std::to_string(j + 1) + " are not an opposite pair");
        int gi = b.add_group("N" + std::to_string(++dual_index), pattern_N_bi(alpha, beta));
        b.add_block(gi, item.a, frame, inst.flags[i], grid(item.a, n - item.a),
                    tag + "+" + std::to_string(j + 1));
        applied.detail = "alpha = " + alpha.str() + ", beta = " + beta.str();
        break;
      }
      case ReductionKind::CodimOne: {
        SchubertCondition alpha = w.restrict_to(item.a);
        if (w.codim() != 1 || !alpha.is_hypersurface() || lift_grassmannian(alpha, t) != w)
          throw InapplicableReduction(tag + ": " + w.str() + " is not a codimension one lift");
        b.add_det(item.a, frame, inst.flags[i].leading_rows(n - item.a), tag);
        applied.detail = "a = " + std::to_string(item.a);
        break;
      }
    }
    b.sys.reductions.push_back(applied);
  }
  b.sys.baseline = (s - 1) * t.dim();
  SquareSystem sys = b.finish(inst);
  if (sys.total_variables() != sys.baseline - plan.total_savings())
    throw Error("internal: reduction savings do not match the built system");
  return sys;
}

SquareSystem build_flag_pdf(const ProblemInstance& inst, bool reduce) {
  const auto* fp = std::get_if<FlagProblem>(&inst.problem);
  if (!fp) throw InvalidArgument("the flag formulation needs a flag-manifold problem");
  return build_flag_pdf(inst, plan_reductions(*fp, reduce));
}

int reduction_savings(int a_parity, int b, int nu) {
  if (a_parity != 0 && a_parity != 1) throw InvalidArgument("parity must be 0 or 1");
  if (b < 1) throw InvalidArgument("need at least one hypersurface condition");
  if (nu < 1) throw InvalidArgument("nu must be positive");
  if (a_parity == 0) return (b % 2 == 0) ? (b / 2) * nu - b : ((b + 1) / 2) * nu - b;
  return (b / 2) * nu - b + 1;
}

long MinorFamily::count() const {
  auto binom = [](long n, long k) {
    if (k < 0 || k > n) return 0L;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  const long rows = primal_rows + static_cast<long>(flag_rows.rows());
  return binom(rows, minor_size) * binom(static_cast<long>(flag_rows.cols()), minor_size);
}

long DeterminantalSystem::num_minors() const {
  long c = 0;
  for (const auto& f : families) c += f.count();
  return c;
}

namespace {

// Frame B whose rows e_i span F^p_i cap F^q_{n+1-i}.
CMatrix two_condition_frame(const FlagMatrix& p, const FlagMatrix& q) {
  if (q == p.opposite()) return p.value();
  const int n = p.n();
  CMatrix B(n, n);
  for (int i = 1; i <= n; ++i) {
    // x P_i = y Q_{n+1-i}  ->  null vector of [P_i ; -Q_{n+1-i}]^T
    CMatrix Pi = p.value().rows_range(0, i);
    CMatrix Qj = q.value().rows_range(0, n + 1 - i);
    CMatrix stacked(n + 1, n);
    for (int r = 0; r < i; ++r)
      for (int c = 0; c < n; ++c) stacked(r, c) = Pi(r, c);
    for (int r = 0; r < n + 1 - i; ++r)
      for (int c = 0; c < n; ++c) stacked(i + r, c) = -Qj(r, c);
    CMatrix ann = left_annihilator(stacked);
    if (ann.rows() != 1)
      throw FlagsNotOpposite("two-condition chart needs flags in linear general position");
    for (int c = 0; c < n; ++c) {
      Complex s = 0;
      for (int r = 0; r < i; ++r) s += ann(0, r) * Pi(r, c);
      B(i - 1, c) = s;
    }
  }
  return B;
}

void add_grassmannian_families(DeterminantalSystem& d, const GrassmannianProblem& g, const ProblemInstance& inst,
                               const CMatrix& frame_inv, const std::vector<int>& skip) {
  const int ell = g.ell, n = g.n;
  for (std::size_t c = 0; c < g.conditions.size(); ++c) {
    if (std::find(skip.begin(), skip.end(), static_cast<int>(c)) != skip.end()) continue;
    const auto& alpha = g.conditions[c];
    if (alpha.is_trivial()) continue;
    d.minimal_generators += norm_count(alpha);
    CMatrix phi = inst.flags[c].value() * frame_inv;
    for (int i = 1; i <= ell; ++i) {
      const int b = alpha.at(i);
      const int size = ell + b - i + 1;
      if (size > std::min(ell + b, n)) continue;
      MinorFamily f;
      f.condition = static_cast<int>(c);
      f.primal_rows = ell;
      f.flag_rows = phi.rows_range(0, b);
      f.minor_size = size;
      d.families.push_back(std::move(f));
    }
  }
}

}  // namespace

DeterminantalSystem build_determinantal(const ProblemInstance& inst, Chart chart) {
  check_flags(inst);
  DeterminantalSystem d;
  d.chart = chart;
  if (const auto* fp = std::get_if<FlagProblem>(&inst.problem)) {
    if (chart != Chart::FlagCell) throw InvalidArgument("flag problems use the flag-cell chart");
    const FlagType& t = fp->type;
    const int n = t.n();
    const int primal = plan_reductions(*fp).primal;
    d.pattern = pattern_M_w(fp->conditions[primal]);
    d.frame = inst.flags[primal].value();
    d.chart_conditions = {primal};
    d.steps = t.a();
    d.minimal_generators = -1;
    CMatrix frame_inv = inst.flags[primal].inverse();
    for (std::size_t c = 0; c < fp->conditions.size(); ++c) {
      if (static_cast<int>(c) == primal) continue;
      const auto& w = fp->conditions[c];
      CMatrix phi = inst.flags[c].value() * frame_inv;
      for (int a : t.a())
        for (int j = 1; j <= n; ++j) {
          const int r = rank_bound(w, a, j);
          if (r + 1 > std::min(a + j, n)) continue;
          MinorFamily f;
          f.condition = static_cast<int>(c);
          f.primal_rows = a;
          f.flag_rows = phi.rows_range(0, j);
          f.minor_size = r + 1;
          d.families.push_back(std::move(f));
        }
    }
    return d;
  }
  const auto& g = std::get<GrassmannianProblem>(inst.problem);
  const int ell = g.ell, n = g.n;
  std::vector<int> order = canonical_order(g);
  auto by_codim = order;
  std::stable_sort(by_codim.begin(), by_codim.end(), [&](int x, int y) {
    return g.conditions[x].codim() > g.conditions[y].codim();
  });
  switch (chart) {
    case Chart::FullCell: {
      d.pattern = pattern_M_alpha(SchubertCondition::trivial(ell, n));
      d.frame = CMatrix::identity(n);
      add_grassmannian_families(d, g, inst, CMatrix::identity(n), {});
      break;
    }
    case Chart::OneCondition: {
      const int p = by_codim.front();
      d.pattern = pattern_M_alpha(g.conditions[p]);
      d.frame = inst.flags[p].value();
      d.chart_conditions = {p};
      add_grassmannian_families(d, g, inst, inst.flags[p].inverse(), {p});
      break;
    }
    case Chart::TwoCondition: {
      if (g.conditions.size() < 2) throw InvalidArgument("two-condition chart needs two conditions");
      // prefer an opposite pair of largest total codimension
      int p = -1, q = -1, best = -1;
      for (auto [x, y] : inst.opposite_pairs) {
        int score = g.conditions[x].codim() + g.conditions[y].codim();
        if (score > best && pair_feasible(g.conditions[x], g.conditions[y])) {
          best = score;
          p = x;
          q = y;
        }
      }
      if (p < 0) {
        p = by_codim[0];
        q = by_codim[1];
      }
      d.pattern = pattern_M_bi(g.conditions[p], g.conditions[q]);
      d.frame = two_condition_frame(inst.flags[p], inst.flags[q]);
      d.chart_conditions = {p, q};
      add_grassmannian_families(d, g, inst, inverse(d.frame), {p, q});
      break;
    }
    case Chart::FlagCell:
      throw InvalidArgument("the flag-cell chart needs a flag-manifold problem");
  }
  return d;
}

double max_minor(const DeterminantalSystem& sys, const std::vector<Complex>& coords) {
  CMatrix C = sys.pattern->instantiate(coords);
  double worst = 0.0;
  for (const auto& f : sys.families) {
    CMatrix stacked = vstack(C.rows_range(0, f.primal_rows), f.flag_rows);
    const int R = static_cast<int>(stacked.rows()), N = static_cast<int>(stacked.cols());
    const int k = f.minor_size;
    std::vector<int> rows(k), cols(k);
    std::function<void(int, int)> pick_cols;
    std::function<void(int, int)> pick_rows = [&](int pos, int start) {
      if (pos == k) {
        pick_cols(0, 0);
        return;
      }
      for (int r = start; r <= R - (k - pos); ++r) {
        rows[pos] = r;
        pick_rows(pos + 1, r + 1);
      }
    };
    pick_cols = [&](int pos, int start) {
      if (pos == k) {
        CMatrix sub(k, k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) sub(i, j) = stacked(rows[i], cols[j]);
        worst = std::max(worst, std::abs(determinant(sub)));
        return;
      }
      for (int c = start; c <= N - (k - pos); ++c) {
        cols[pos] = c;
        pick_cols(pos + 1, c + 1);
      }
    };
    pick_rows(0, 0);
  }
  return worst;
}

}  // namespace schubert
