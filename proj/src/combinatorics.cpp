#include "schubert/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace schubert {

namespace {

std::string join(const std::vector<int>& v, const char* sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    os << v[i];
  }
  return os.str();
}

// block boundaries 0 = b_0 < b_1 < ... < b_t < b_{t+1} = n
std::vector<int> boundaries(const FlagType& t) {
  std::vector<int> b{0};
  b.insert(b.end(), t.a().begin(), t.a().end());
  b.push_back(t.n());
  return b;
}

}  // namespace

SchubertCondition::SchubertCondition(int n, std::vector<int> alpha) : n_(n), alpha_(std::move(alpha)) {
  if (n < 2) throw InvalidArgument("Schubert condition needs n >= 2");
  const int ell = static_cast<int>(alpha_.size());
  if (ell < 1 || ell > n - 1)
    throw InvalidArgument("Schubert condition length must lie in [1, n-1]");
  for (int i = 0; i < ell; ++i) {
    if (alpha_[i] < 1 || alpha_[i] > n)
      throw InvalidArgument("Schubert condition entry out of range [1, n]");
    if (i > 0 && alpha_[i] <= alpha_[i - 1])
      throw InvalidArgument("Schubert condition must be strictly increasing");
  }
}

SchubertCondition SchubertCondition::hypersurface(int ell, int n) {
  std::vector<int> a(ell);
  a[0] = n - ell;
  for (int i = 1; i < ell; ++i) a[i] = n - ell + 1 + i;
  return SchubertCondition(n, a);
}

SchubertCondition SchubertCondition::trivial(int ell, int n) {
  std::vector<int> a(ell);
  std::iota(a.begin(), a.end(), n - ell + 1);
  return SchubertCondition(n, a);
}

int SchubertCondition::codim() const {
  int s = 0;
  for (int i = 1; i <= ell(); ++i) s += at(i) - i;
  return ell() * (n_ - ell()) - s;
}

int SchubertCondition::dim() const { return ell() * (n_ - ell()) - codim(); }

bool SchubertCondition::is_hypersurface() const {
  return *this == hypersurface(ell(), n_);
}

std::string SchubertCondition::str() const { return "(" + join(alpha_, ",") + ")"; }

int codim(const SchubertCondition& c) { return c.codim(); }

bool leq(const SchubertCondition& a, const SchubertCondition& b) {
  if (a.n() != b.n() || a.ell() != b.ell())
    throw InvalidArgument("leq: conditions on different Grassmannians");
  for (int i = 1; i <= a.ell(); ++i)
    if (a.at(i) > b.at(i)) return false;
  return true;
}

std::vector<SchubertCondition> enumerate_conditions(int ell, int n) {
  std::vector<SchubertCondition> out;
  std::vector<int> cur(ell);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == ell) {
      out.emplace_back(n, cur);
      return;
    }
    for (int v = start; v <= n - (ell - pos - 1); ++v) {
      cur[pos] = v;
      rec(pos + 1, v + 1);
    }
  };
  rec(0, 1);
  return out;
}

long norm_count(const SchubertCondition& c) {
  long count = 0;
  for (const auto& b : enumerate_conditions(c.ell(), c.n()))
    if (!leq(b, c)) ++count;
  return count;
}

SchubertCondition dual_condition(const SchubertCondition& c) {
  const int n = c.n();
  std::vector<bool> in(n + 1, false);
  for (int v : c.alpha()) in[v] = true;
  std::vector<int> d;
  for (int j = 1; j <= n; ++j)
    if (!in[n + 1 - j]) d.push_back(j);
  return SchubertCondition(n, d);
}

bool pair_feasible(const SchubertCondition& a, const SchubertCondition& b) {
  if (a.n() != b.n() || a.ell() != b.ell())
    throw InvalidArgument("pair_feasible: conditions on different Grassmannians");
  const int ell = a.ell();
  for (int i = 1; i <= ell; ++i)
    if (a.at(i) + b.at(ell + 1 - i) < a.n() + 1) return false;
  return true;
}

FlagType::FlagType(int n, std::vector<int> a) : n_(n), a_(std::move(a)) {
  if (a_.empty()) throw InvalidArgument("flag type needs at least one dimension");
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (a_[i] <= 0 || a_[i] >= n) throw InvalidArgument("flag type entries must lie in (0, n)");
    if (i > 0 && a_[i] <= a_[i - 1]) throw InvalidArgument("flag type must be strictly increasing");
  }
}

int FlagType::dim() const {
  int d = 0, prev = 0;
  for (int ai : a_) {
    d += (ai - prev) * (n_ - ai);
    prev = ai;
  }
  return d;
}

FlagType FlagType::reversed() const {
  std::vector<int> r;
  for (auto it = a_.rbegin(); it != a_.rend(); ++it) r.push_back(n_ - *it);
  return FlagType(n_, r);
}

bool FlagType::contains(int a) const { return std::find(a_.begin(), a_.end(), a) != a_.end(); }

bool FlagType::refines(const FlagType& other) const {
  if (other.n_ != n_) return false;
  for (int b : other.a_)
    if (!contains(b)) return false;
  return true;
}

std::string FlagType::str() const { return "(" + join(a_, ",") + ")"; }

int inversions(const std::vector<int>& w) {
  int c = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t k = i + 1; k < w.size(); ++k)
      if (w[k] < w[i]) ++c;
  return c;
}

std::vector<int> descents(const std::vector<int>& w) {
  std::vector<int> d;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] > w[i + 1]) d.push_back(static_cast<int>(i) + 1);
  return d;
}

FlagPermutation::FlagPermutation(FlagType type, std::vector<int> w) : type_(std::move(type)), w_(std::move(w)) {
  const int n = type_.n();
  if (static_cast<int>(w_.size()) != n) throw InvalidArgument("permutation length must equal n");
  std::vector<bool> seen(n + 1, false);
  for (int v : w_) {
    if (v < 1 || v > n || seen[v]) throw InvalidArgument("not a permutation of [n]");
    seen[v] = true;
  }
  for (int d : descents(w_))
    if (!type_.contains(d))
      throw InvalidArgument("permutation " + join(w_, "") + " has a descent at " + std::to_string(d) +
                            " outside " + type_.str());
}

int FlagPermutation::length() const { return inversions(w_); }
int FlagPermutation::codim() const { return type_.dim() - length(); }

SchubertCondition FlagPermutation::restrict_to(int a) const {
  std::vector<int> s(w_.begin(), w_.begin() + a);
  std::sort(s.begin(), s.end());
  return SchubertCondition(n(), s);
}

std::string FlagPermutation::str() const {
  // dotted one-line notation, e.g. 68.25.7.134
  // (with n >= 10 the values get commas so they stay readable)
  std::ostringstream os;
  std::size_t k = 0;
  for (int i = 0; i < n(); ++i) {
    bool cut = k < type_.a().size() && i == type_.a()[k];
    if (cut) {
      os << '.';
      ++k;
    } else if (i > 0 && n() >= 10) {
      os << ',';
    }
    os << w_[static_cast<std::size_t>(i)];
  }
  return os.str();
}

int perm_length(const FlagPermutation& w) { return w.length(); }
int perm_codim(const FlagPermutation& w) { return w.codim(); }

FlagPermutation conjugate_w0(const FlagPermutation& w) {
  const int n = w.n();
  std::vector<int> c(n);
  for (int i = 1; i <= n; ++i) c[i - 1] = n + 1 - w.at(n + 1 - i);
  return FlagPermutation(w.type().reversed(), c);
}

FlagPermutation lift_subflag(const FlagPermutation& v, const FlagType& type) {
  if (!type.refines(v.type()))
    throw InvalidArgument("lift_subflag: " + v.type().str() + " is not a subflag of " + type.str());
  const std::vector<int> coarse = boundaries(v.type());
  const std::vector<int> fine = boundaries(type);
  std::vector<int> w(v.w());
  for (std::size_t k = 0; k + 1 < coarse.size(); ++k) {
    const int lo = coarse[k], hi = coarse[k + 1];
    std::vector<int> vals(v.w().begin() + lo, v.w().begin() + hi);
    std::sort(vals.rbegin(), vals.rend());  // largest first
    std::size_t taken = 0;
    for (std::size_t f = 0; f + 1 < fine.size(); ++f) {
      const int flo = fine[f], fhi = fine[f + 1];
      if (flo < lo || fhi > hi) continue;
      std::vector<int> sub(vals.begin() + static_cast<long>(taken),
                           vals.begin() + static_cast<long>(taken + (fhi - flo)));
      taken += static_cast<std::size_t>(fhi - flo);
      std::sort(sub.begin(), sub.end());
      std::copy(sub.begin(), sub.end(), w.begin() + flo);
    }
  }
  return FlagPermutation(type, w);
}

FlagPermutation lift_grassmannian(const SchubertCondition& alpha, const FlagType& type) {
  const int a = alpha.ell();
  if (alpha.n() != type.n()) throw InvalidArgument("lift_grassmannian: ambient dimension mismatch");
  if (!type.contains(a))
    throw InvalidArgument("lift_grassmannian: " + std::to_string(a) + " is not in " + type.str());
  std::vector<int> w(alpha.alpha());
  std::vector<bool> in(type.n() + 1, false);
  for (int x : alpha.alpha()) in[x] = true;
  for (int j = 1; j <= type.n(); ++j)
    if (!in[j]) w.push_back(j);
  return lift_subflag(FlagPermutation(FlagType(type.n(), {a}), w), type);
}

FlagPermutation project_to(const FlagPermutation& w, const FlagType& b) {
  if (!w.type().refines(b)) throw InvalidArgument("project_to: not a subflag");
  std::vector<int> v(w.w());
  const std::vector<int> bd = boundaries(b);
  for (std::size_t k = 0; k + 1 < bd.size(); ++k) std::sort(v.begin() + bd[k], v.begin() + bd[k + 1]);
  return FlagPermutation(b, v);
}

std::vector<FlagPermutation> enumerate_permutations(const FlagType& type) {
  const int n = type.n();
  const std::vector<int> bd = boundaries(type);
  std::vector<FlagPermutation> out;
  std::vector<int> w(n);
  std::vector<bool> used(n + 1, false);
  // fill block by block with increasing runs
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t block, int pos, int minval) {
    if (pos == n) {
      out.emplace_back(type, w);
      return;
    }
    if (pos == bd[block + 1]) {
      rec(block + 1, pos, 1);
      return;
    }
    for (int v = minval; v <= n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      w[pos] = v;
      rec(block, pos + 1, v + 1);
      used[v] = false;
    }
  };
  rec(0, 0, 1);
  return out;
}

int rank_bound(const FlagPermutation& w, int a, int j) {
  int c = 0;
  for (int k = 1; k <= a; ++k)
    if (w.at(k) <= j) ++c;
  return a + j - c;
}

int problem_dimension(const SchubertProblem& p) {
  return std::visit([](const auto& q) { return q.dimension(); }, p);
}

int codim_sum(const SchubertProblem& p) {
  return std::visit(
      [](const auto& q) {
        int s = 0;
        for (const auto& c : q.conditions) s += c.codim();
        return s;
      },
      p);
}

std::size_t condition_count(const SchubertProblem& p) {
  return std::visit([](const auto& q) { return q.conditions.size(); }, p);
}

void validate_problem(const SchubertProblem& p) {
  if (const auto* g = std::get_if<GrassmannianProblem>(&p)) {
    if (g->ell < 1 || g->ell > g->n - 1) throw InvalidArgument("Grassmannian needs 1 <= ell <= n-1");
    for (const auto& c : g->conditions)
      if (c.n() != g->n || c.ell() != g->ell)
        throw InvalidArgument("condition " + c.str() + " is not on Gr(" + std::to_string(g->ell) +
                              "," + std::to_string(g->n) + ")");
  } else {
    const auto& f = std::get<FlagProblem>(p);
    for (const auto& w : f.conditions)
      if (w.type() != f.type) throw InvalidArgument("permutation " + w.str() + " has another flag type");
  }
  if (condition_count(p) == 0) throw InvalidArgument("problem has no conditions");
  const int actual = codim_sum(p), required = problem_dimension(p);
  if (actual != required) throw CodimensionMismatch(actual, required);
}

std::string describe(const SchubertProblem& p) {
  std::ostringstream os;
  if (const auto* g = std::get_if<GrassmannianProblem>(&p)) {
    os << "Gr(" << g->ell << "," << g->n << "):";
    for (const auto& c : g->conditions) os << " " << c.str();
  } else {
    const auto& f = std::get<FlagProblem>(p);
    os << "Fl(" << f.type.str() << "," << f.type.n() << "):";
    for (const auto& w : f.conditions) os << " " << w.str();
  }
  return os.str();
}

}  // namespace schubert
