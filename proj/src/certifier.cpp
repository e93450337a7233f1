#include "schubert/certifier.hpp"

#include <algorithm>

#include "schubert/linalg.hpp"
#include "schubert/parallel.hpp"

namespace schubert {

const char* gamma_basis_name(GammaBasis b) { return b == GammaBasis::Bilinear ? "bilinear" : "general"; }

const char* reality_name(Reality r) {
  switch (r) {
    case Reality::Real: return "real";
    case Reality::Nonreal: return "nonreal";
    case Reality::Undecided: return "undecided";
  }
  return "?";
}

CertifierContext::CertifierContext(const SquareSystem& s) : sys(&s), terms(all_terms(s)) {
  degrees.resize(terms.size(), 1);
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (const auto& t : terms[i]) degrees[i] = std::max(degrees[i], static_cast<int>(t.vars.size()));
  max_degree = degrees.empty() ? 1 : *std::max_element(degrees.begin(), degrees.end());
  bilinear = max_degree <= 2;
  if (bilinear) d2_squared = d2_norm_bound_squared(s);
  bombieri_squared = bombieri_norm_squared(terms, degrees);
}

std::vector<Complex> Certificate::approx() const { return to_complex(point); }

bool below_alpha0(const mpq_class& alpha) {
  mpq_class lhs = 13 - 4 * alpha;
  return sgn(lhs) > 0 && lhs * lhs > 153;
}

namespace {

mpq_class vec_norm2(const std::vector<GaussRat>& v) {
  mpq_class s = 0;
  for (const auto& z : v) s += z.norm2();
  return s;
}

mpq_class pow_q(const mpq_class& b, int e) {
  mpq_class r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

struct Pieces {
  mpq_class beta_squared;
  QMatrix inv;
};

// Throws SingularJacobian.
Pieces pieces_at(const CertifierContext& ctx, const std::vector<GaussRat>& x) {
  QMatrix J = jacobian(*ctx.sys, x);
  LU<GaussRat> f = lu_factor(J);
  if (f.singular) throw SingularJacobian("Jacobian is singular at the point");
  std::vector<GaussRat> g = evaluate(*ctx.sys, x);
  Pieces p;
  p.beta_squared = vec_norm2(lu_solve(f, g));
  const std::size_t n = J.rows();
  p.inv = QMatrix(n, n);
  std::vector<GaussRat> e(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) e[i] = GaussRat(i == j ? 1L : 0L);
    std::vector<GaussRat> col = lu_solve(f, e);
    for (std::size_t i = 0; i < n; ++i) p.inv(i, j) = col[i];
  }
  return p;
}

GammaBounds bounds_from(const CertifierContext& ctx, const std::vector<GaussRat>& x, const QMatrix& inv) {
  GammaBounds b;
  mpq_class frob = 0;
  for (const auto& z : inv.data()) frob += z.norm2();
  b.bilinear_squared = ctx.bilinear ? mpq_class(frob * ctx.d2_squared) : mpq_class(-1);
  // gamma <= mu D^{3/2} / (2 ||x||_1), mu^2 <= max(1, ||f||^2 sum_ij |inv_ji|^2 d_i ||x||_1^{2(d_i-1)})
  const mpq_class x1sq = 1 + vec_norm2(x);
  mpq_class s = 0;
  for (std::size_t i = 0; i < inv.cols(); ++i) {
    mpq_class col = 0;
    for (std::size_t j = 0; j < inv.rows(); ++j) col += inv(j, i).norm2();
    s += col * ctx.degrees[i] * pow_q(x1sq, ctx.degrees[i] - 1);
  }
  mpq_class mu2 = ctx.bombieri_squared * s;
  if (mu2 < 1) mu2 = 1;
  const long D = ctx.max_degree;
  b.general_squared = mu2 * (D * D * D) / (4 * x1sq);
  return b;
}

}  // namespace

GammaBounds gamma_bounds(const CertifierContext& ctx, const std::vector<GaussRat>& x) {
  return bounds_from(ctx, x, pieces_at(ctx, x).inv);
}

Certificate certify_point(const CertifierContext& ctx, const std::vector<GaussRat>& x) {
  Certificate c;
  c.point = x;
  c.basis = ctx.bilinear ? GammaBasis::Bilinear : GammaBasis::General;
  if (static_cast<int>(x.size()) != ctx.sys->total_variables())
    throw InvalidArgument("certify: point has the wrong length");
  Pieces p;
  try {
    p = pieces_at(ctx, x);
  } catch (const SingularJacobian&) {
    c.verdict = false;
    c.reason = "singular Jacobian";
    c.beta = c.gamma = c.alpha = -1;
    return c;
  }
  GammaBounds b = bounds_from(ctx, x, p.inv);
  c.beta = sqrt_upper_bound(p.beta_squared);
  c.gamma = sqrt_upper_bound(ctx.bilinear ? b.bilinear_squared : b.general_squared);
  c.alpha = c.beta * c.gamma;
  c.verdict = below_alpha0(c.alpha);
  if (!c.verdict) c.reason = "alpha " + std::to_string(c.alpha.get_d()) + " is not below alpha_0";
  return c;
}

Certificate certify_point(const SquareSystem& sys, const std::vector<GaussRat>& x) {
  return certify_point(CertifierContext(sys), x);
}

Certificate certify_point(const CertifierContext& ctx, const std::vector<Complex>& x) {
  return certify_point(ctx, to_exact(x));
}

bool certify_distinct(const Certificate& a, const Certificate& b) {
  if (!a.verdict || !b.verdict) return false;
  if (a.point.size() != b.point.size()) throw InvalidArgument("certify_distinct: length mismatch");
  mpq_class d = 0;
  for (std::size_t i = 0; i < a.point.size(); ++i) d += (a.point[i] - b.point[i]).norm2();
  mpq_class r = 2 * (a.beta + b.beta);
  return d > r * r;
}

std::vector<GaussRat> rational_newton_step(const SquareSystem& sys, const std::vector<GaussRat>& x, int bits) {
  LU<GaussRat> f = lu_factor(jacobian(sys, x));
  if (f.singular) throw SingularJacobian("Jacobian is singular at the point");
  std::vector<GaussRat> dx = lu_solve(f, evaluate(sys, x));
  std::vector<GaussRat> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = round_to_bits(x[i] - dx[i], bits);
  return y;
}

namespace {

Certificate conjugate(const Certificate& c) {
  // Real coefficients: the conjugate point has the same beta and gamma.
  Certificate d = c;
  for (auto& z : d.point) z = z.conj();
  return d;
}

// alpha < 3/100 and ||x - Re x|| < 1/(20 gamma): the associated zero is real.
bool real_test(const Certificate& c) {
  if (!c.verdict || c.alpha >= mpq_class(3, 100)) return false;
  mpq_class im2 = 0;
  for (const auto& z : c.point) im2 += z.im() * z.im();
  return 400 * im2 * c.gamma * c.gamma < 1;
}

}  // namespace

RealityReport classify_real(const CertifierContext& ctx, const Certificate& c, int max_refinements) {
  if (!ctx.sys->real_coefficients) throw NotRealSystem("system has non-real coefficients");
  RealityReport rep;
  rep.used = c;
  if (!c.verdict) {
    rep.detail = "point is not certified";
    return rep;
  }
  Certificate cur = c;
  for (int k = 0;; ++k) {
    if (certify_distinct(cur, conjugate(cur))) {
      rep.verdict = Reality::Nonreal;
      rep.used = cur;
      return rep;
    }
    if (real_test(cur)) {
      rep.verdict = Reality::Real;
      rep.used = cur;
      return rep;
    }
    if (k == max_refinements) break;
    try {
      Certificate next = certify_point(ctx, rational_newton_step(*ctx.sys, cur.point));
      if (!next.verdict) break;
      cur = std::move(next);
      rep.refinements = k + 1;
    } catch (const SingularJacobian&) {
      break;
    }
  }
  rep.used = cur;
  rep.detail = "alpha " + std::to_string(cur.alpha.get_d()) + ", beta " + std::to_string(cur.beta.get_d()) +
               " after " + std::to_string(rep.refinements) + " refinements";
  return rep;
}

SetCertificate certify_set(const SquareSystem& sys, const std::vector<std::vector<GaussRat>>& points, int jobs) {
  CertifierContext ctx(sys);
  const int workers = jobs > 0 ? jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  SetCertificate s;
  const std::size_t m = points.size();
  s.certificates.resize(m);
  s.reality.assign(m, Reality::Undecided);
  parallel_for(m, workers, [&](std::size_t i) { s.certificates[i] = certify_point(ctx, points[i]); });
  s.distinct.assign(m, std::vector<bool>(m, false));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  std::vector<char> dist(pairs.size(), 0);
  parallel_for(pairs.size(), workers, [&](std::size_t k) {
    dist[k] = certify_distinct(s.certificates[pairs[k].first], s.certificates[pairs[k].second]);
  });
  for (std::size_t k = 0; k < pairs.size(); ++k)
    s.distinct[pairs[k].first][pairs[k].second] = s.distinct[pairs[k].second][pairs[k].first] = dist[k];
  s.counted.assign(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (!s.certificates[i].verdict) continue;
    ++s.certified;
    bool fresh = true;
    for (std::size_t j = 0; j < i; ++j)
      if (s.counted[j] && !s.distinct[i][j]) fresh = false;
    if (fresh) {
      s.counted[i] = true;
      ++s.distinct_count;
    }
  }
  if (sys.real_coefficients) {
    parallel_for(m, workers, [&](std::size_t i) {
      if (s.counted[i]) s.reality[i] = classify_real(ctx, s.certificates[i]).verdict;
    });
    for (std::size_t i = 0; i < m; ++i) {
      if (!s.counted[i]) continue;
      s.real_count += s.reality[i] == Reality::Real;
      s.undecided += s.reality[i] == Reality::Undecided;
    }
  }
  return s;
}

SetCertificate certify_set(const SquareSystem& sys, const std::vector<std::vector<Complex>>& points, int jobs) {
  std::vector<std::vector<GaussRat>> q;
  for (const auto& p : points) q.push_back(to_exact(p));
  return certify_set(sys, q, jobs);
}

}  // namespace schubert
