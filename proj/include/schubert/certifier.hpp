#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "schubert/polycore.hpp"
#include "schubert/systems.hpp"

namespace schubert {

enum class GammaBasis { Bilinear, General };
const char* gamma_basis_name(GammaBasis b);

/// Per-system data reused across points: monomial expansion, degrees, norms.
struct CertifierContext {
  explicit CertifierContext(const SquareSystem& sys);

  const SquareSystem* sys;
  std::vector<std::vector<Term>> terms;
  std::vector<int> degrees;   // max monomial degree per equation (at least 1)
  int max_degree = 1;
  bool bilinear = false;
  mpq_class d2_squared;       // bilinear class only
  mpq_class bombieri_squared;
};

struct Certificate {
  std::vector<GaussRat> point;
  mpq_class beta;   // >= ||DG(x)^{-1} G(x)||
  mpq_class gamma;  // >= gamma(G, x)
  mpq_class alpha;  // beta * gamma
  bool verdict = false;
  GammaBasis basis = GammaBasis::Bilinear;
  std::string reason;  // set when verdict is false

  std::vector<Complex> approx() const;
};

/// alpha < (13 - 3 sqrt 17) / 4, decided exactly.
bool below_alpha0(const mpq_class& alpha);

Certificate certify_point(const CertifierContext& ctx, const std::vector<GaussRat>& x);
Certificate certify_point(const SquareSystem& sys, const std::vector<GaussRat>& x);
/// Snapshot of a float point (exact binary values).
Certificate certify_point(const CertifierContext& ctx, const std::vector<Complex>& x);

struct GammaBounds {
  mpq_class bilinear_squared;  // -1 when not applicable
  mpq_class general_squared;
};
/// Both squared gamma bounds at x. Throws SingularJacobian.
GammaBounds gamma_bounds(const CertifierContext& ctx, const std::vector<GaussRat>& x);

/// Associated zeros provably differ: ||x - y|| > 2 (beta_x + beta_y).
bool certify_distinct(const Certificate& a, const Certificate& b);

enum class Reality { Real, Nonreal, Undecided };
const char* reality_name(Reality r);

struct RealityReport {
  Reality verdict = Reality::Undecided;
  int refinements = 0;
  Certificate used;  // certificate the verdict rests on
  std::string detail;
};

/// Reality of the zero associated to a certified point. Throws NotRealSystem.
RealityReport classify_real(const CertifierContext& ctx, const Certificate& c, int max_refinements = 4);

/// One exact Newton step, rounded to `bits` relative bits.
std::vector<GaussRat> rational_newton_step(const SquareSystem& sys, const std::vector<GaussRat>& x, int bits = 256);

struct SetCertificate {
  std::vector<Certificate> certificates;
  std::vector<std::vector<bool>> distinct;  // symmetric
  std::vector<Reality> reality;             // Undecided for non-real systems
  std::vector<bool> counted;                // certified and distinct from every earlier counted point
  int certified = 0;
  int distinct_count = 0;
  int real_count = 0;
  int undecided = 0;
};

SetCertificate certify_set(const SquareSystem& sys, const std::vector<std::vector<GaussRat>>& points,
                           int jobs = 0);
SetCertificate certify_set(const SquareSystem& sys, const std::vector<std::vector<Complex>>& points,
                           int jobs = 0);

}  // namespace schubert
