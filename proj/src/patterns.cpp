#include "schubert/patterns.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>

namespace schubert {

const char* family_name(PatternFamily f) {
  switch (f) {
    case PatternFamily::MAlpha: return "M_alpha";
    case PatternFamily::MUpper: return "M^beta";
    case PatternFamily::MBi: return "M^beta_alpha";
    case PatternFamily::MW: return "M_w";
    case PatternFamily::NAlpha: return "N_alpha";
    case PatternFamily::NBi: return "N^beta_alpha";
    case PatternFamily::NW: return "N_w";
  }
  return "?";
}

CoordinatePattern::CoordinatePattern(int rows, int cols, std::vector<int> cells, PatternFamily family,
                                     Orientation orientation, std::string label)
    : rows_(rows), cols_(cols), cells_(std::move(cells)), family_(family), orientation_(orientation),
      label_(std::move(label)) {
  if (static_cast<int>(cells_.size()) != rows * cols) throw InvalidArgument("pattern: cell count");
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) {
      int& v = cells_[static_cast<std::size_t>(r * cols_ + c)];
      if (v >= 0) {
        v = num_vars_++;
        var_pos_.emplace_back(r, c);
      } else if (v != kZero && v != kOne) {
        throw InvalidArgument("pattern: bad cell code");
      }
    }
}

int CoordinatePattern::row_vars(int r) const {
  int k = 0;
  for (int c = 0; c < cols_; ++c) k += is_var(r, c);
  return k;
}

int CoordinatePattern::col_vars(int c) const {
  int k = 0;
  for (int r = 0; r < rows_; ++r) k += is_var(r, c);
  return k;
}

CoordinatePattern CoordinatePattern::transpose(PatternFamily family, Orientation orientation,
                                               std::string label) const {
  std::vector<int> t(cells_.size());
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t[static_cast<std::size_t>(c * rows_ + r)] = cell(r, c);
  return CoordinatePattern(cols_, rows_, t, family, orientation, std::move(label));
}

CoordinatePattern CoordinatePattern::rotate180(PatternFamily family, std::string label) const {
  std::vector<int> t(cells_.size());
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      t[static_cast<std::size_t>((rows_ - 1 - r) * cols_ + (cols_ - 1 - c))] = cell(r, c);
  return CoordinatePattern(rows_, cols_, t, family, orientation_, std::move(label));
}

CoordinatePattern CoordinatePattern::reverse_cols(PatternFamily family, std::string label) const {
  std::vector<int> t(cells_.size());
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t[static_cast<std::size_t>(r * cols_ + (cols_ - 1 - c))] = cell(r, c);
  return CoordinatePattern(rows_, cols_, t, family, orientation_, std::move(label));
}

std::string CoordinatePattern::picture() const {
  std::ostringstream os;
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if (c) os << ' ';
      os << (is_var(r, c) ? '*' : is_one(r, c) ? '1' : '0');
    }
    os << '\n';
  }
  return os.str();
}

namespace {

std::shared_mutex cache_mutex;
std::map<std::string, PatternPtr>& cache() {
  static std::map<std::string, PatternPtr> c;
  return c;
}

PatternPtr cached(const std::string& key, const std::function<CoordinatePattern()>& make) {
  {
    std::shared_lock lock(cache_mutex);
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
  }
  auto p = std::make_shared<const CoordinatePattern>(make());
  std::unique_lock lock(cache_mutex);
  auto [it, inserted] = cache().emplace(key, p);
  return it->second;
}

std::string key_of(const SchubertCondition& c) { return std::to_string(c.n()) + c.str(); }

std::string key_of(const FlagPermutation& w) {
  std::ostringstream os;
  os << w.n() << w.type().str() << "[";
  for (int v : w.w()) os << v << ",";
  os << "]";
  return os.str();
}

constexpr int Z = CoordinatePattern::kZero;
constexpr int O = CoordinatePattern::kOne;
constexpr int V = 0;

CoordinatePattern make_M_alpha(const SchubertCondition& alpha) {
  const int ell = alpha.ell(), n = alpha.n();
  std::vector<int> cells(static_cast<std::size_t>(ell * n), Z);
  std::vector<bool> pivot_col(n + 1, false);
  for (int i = 1; i <= ell; ++i) {
    const int p = alpha.at(i);
    for (int j = 1; j < p; ++j)
      if (!pivot_col[j]) cells[static_cast<std::size_t>((i - 1) * n + (j - 1))] = V;
    cells[static_cast<std::size_t>((i - 1) * n + (p - 1))] = O;
    pivot_col[p] = true;
  }
  return CoordinatePattern(ell, n, cells, PatternFamily::MAlpha, Orientation::RowSpan,
                           "M_" + alpha.str());
}

}  // namespace

PatternPtr pattern_M_alpha(const SchubertCondition& alpha) {
  return cached("M_alpha:" + key_of(alpha), [&] { return make_M_alpha(alpha); });
}

PatternPtr pattern_M_upper(const SchubertCondition& beta) {
  return cached("M_upper:" + key_of(beta), [&] {
    return make_M_alpha(beta).rotate180(PatternFamily::MUpper, "M^" + beta.str());
  });
}

PatternPtr pattern_M_bi(const SchubertCondition& alpha, const SchubertCondition& beta) {
  if (!pair_feasible(alpha, beta))
    throw InfeasiblePair("conditions " + alpha.str() + " and " + beta.str() +
                         " cannot hold on a pair of opposite flags");
  return cached("M_bi:" + key_of(alpha) + "|" + key_of(beta), [&] {
    const int ell = alpha.ell(), n = alpha.n();
    std::vector<int> cells(static_cast<std::size_t>(ell * n), Z);
    for (int i = 1; i <= ell; ++i) {
      const int lead = n + 1 - beta.at(ell + 1 - i);
      const int last = alpha.at(i);
      for (int j = lead + 1; j <= last; ++j) cells[static_cast<std::size_t>((i - 1) * n + (j - 1))] = V;
      cells[static_cast<std::size_t>((i - 1) * n + (lead - 1))] = O;
    }
    return CoordinatePattern(ell, n, cells, PatternFamily::MBi, Orientation::RowSpan,
                             "M^" + beta.str() + "_" + alpha.str());
  });
}

PatternPtr pattern_M_w(const FlagPermutation& w) {
  return cached("M_w:" + key_of(w), [&] {
    const int rows = w.type().top(), n = w.n();
    std::vector<int> cells(static_cast<std::size_t>(rows * n), Z);
    for (int i = 1; i <= rows; ++i) {
      for (int k = i + 1; k <= n; ++k)
        if (w.at(k) < w.at(i)) cells[static_cast<std::size_t>((i - 1) * n + (w.at(k) - 1))] = V;
      cells[static_cast<std::size_t>((i - 1) * n + (w.at(i) - 1))] = O;
    }
    return CoordinatePattern(rows, n, cells, PatternFamily::MW, Orientation::RowSpan, "M_" + w.str());
  });
}

PatternPtr pattern_N_alpha(const SchubertCondition& alpha) {
  return cached("N_alpha:" + key_of(alpha), [&] {
    SchubertCondition d = dual_condition(alpha);
    return pattern_M_upper(d)->transpose(PatternFamily::NAlpha, Orientation::ColumnSpan,
                                         "N_" + alpha.str());
  });
}

PatternPtr pattern_N_bi(const SchubertCondition& alpha, const SchubertCondition& beta) {
  if (!pair_feasible(alpha, beta))
    throw InfeasiblePair("conditions " + alpha.str() + " and " + beta.str() +
                         " cannot hold on a pair of opposite flags");
  return cached("N_bi:" + key_of(alpha) + "|" + key_of(beta), [&] {
    SchubertCondition da = dual_condition(alpha), db = dual_condition(beta);
    return pattern_M_bi(db, da)->transpose(PatternFamily::NBi, Orientation::ColumnSpan,
                                           "N^" + beta.str() + "_" + alpha.str());
  });
}

PatternPtr pattern_N_w(const FlagPermutation& w) {
  return cached("N_w:" + key_of(w), [&] {
    FlagPermutation c = conjugate_w0(w);
    return pattern_M_w(c)
        ->reverse_cols(PatternFamily::MW, "")
        .transpose(PatternFamily::NW, Orientation::ColumnSpan, "N_" + w.str());
  });
}

std::size_t pattern_cache_size() {
  std::shared_lock lock(cache_mutex);
  return cache().size();
}

}  // namespace schubert
