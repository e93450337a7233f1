#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "schubert/combinatorics.hpp"
#include "schubert/systems.hpp"

namespace testing {

using namespace schubert;

inline SchubertCondition cond(int n, std::vector<int> a) { return SchubertCondition(n, std::move(a)); }

/// One-line permutation from a digit string, e.g. "48573126".
inline FlagPermutation perm(const FlagType& t, const std::string& digits) {
  std::vector<int> w;
  for (char ch : digits)
    if (ch >= '1' && ch <= '9') w.push_back(ch - '0');
  return FlagPermutation(t, w);
}

inline GrassmannianProblem grass(int ell, int n, std::vector<SchubertCondition> cs) {
  return GrassmannianProblem{ell, n, std::move(cs)};
}

inline GrassmannianProblem four_lines() {
  return grass(2, 4, std::vector<SchubertCondition>(4, SchubertCondition::hypersurface(2, 4)));
}

inline GrassmannianProblem gr28() { return grass(2, 8, std::vector<SchubertCondition>(4, cond(8, {4, 8}))); }

inline GrassmannianProblem ex437() {
  std::vector<SchubertCondition> cs(4, cond(9, {4, 8, 9}));
  for (int i = 0; i < 6; ++i) cs.push_back(SchubertCondition::hypersurface(3, 9));
  return grass(3, 9, cs);
}

inline FlagProblem flag_example() {
  FlagType t(8, {2, 4, 5});
  FlagProblem p{t, {}};
  for (const char* s : {"48573126", "78453126", "78453126", "68574123", "68574123", "78465123", "78465123",
                        "78465123", "47385126"})
    p.conditions.push_back(perm(t, s));
  return p;
}

/// Every multiset of nontrivial conditions on Gr(ell, n) with codimensions summing to the dimension
/// and at least two conditions.
inline void for_each_grassmannian_problem(int ell, int n, const std::function<void(const GrassmannianProblem&)>& fn) {
  std::vector<SchubertCondition> conds;
  for (const auto& c : enumerate_conditions(ell, n))
    if (!c.is_trivial()) conds.push_back(c);
  const int dim = ell * (n - ell);
  std::vector<SchubertCondition> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
    if (left == 0) {
      if (cur.size() >= 2) fn(grass(ell, n, cur));
      return;
    }
    for (std::size_t i = from; i < conds.size(); ++i) {
      if (conds[i].codim() > left) continue;
      cur.push_back(conds[i]);
      rec(i, left - conds[i].codim());
      cur.pop_back();
    }
  };
  rec(0, dim);
}

/// Random flag problem with n <= 6: random type, then conditions drawn until the codimensions fill the dimension.
inline FlagProblem random_flag_problem(std::mt19937_64& rng) {
  for (;;) {
    const int n = 3 + static_cast<int>(rng() % 4);
    std::vector<int> a;
    for (int k = 1; k < n; ++k)
      if (rng() % 2) a.push_back(k);
    if (a.empty()) continue;
    FlagType t(n, a);
    std::vector<FlagPermutation> perms;
    for (const auto& w : enumerate_permutations(t))
      if (w.codim() > 0) perms.push_back(w);
    FlagProblem p{t, {}};
    int left = t.dim();
    while (left > 0) {
      std::vector<const FlagPermutation*> fit;
      for (const auto& w : perms)
        if (w.codim() <= left) fit.push_back(&w);
      const auto& w = *fit[rng() % fit.size()];
      p.conditions.push_back(w);
      left -= w.codim();
    }
    if (p.conditions.size() >= 2) return p;
  }
}

}  // namespace testing
