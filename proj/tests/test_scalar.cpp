#include <doctest.h>

#include <random>

#include "schubert/linalg.hpp"
#include "schubert/scalar.hpp"

using namespace schubert;

TEST_SUITE("scalar") {
  TEST_CASE("gaussian rational arithmetic is exact") {
    GaussRat i(mpq_class(0), mpq_class(1));
    CHECK(i * i == GaussRat(-1L));
    GaussRat z(mpq_class(3, 7), mpq_class(-2, 5));
    CHECK(z / z == GaussRat(1L));
    CHECK((z * z.conj()).im() == 0);
    CHECK((z * z.conj()).re() == z.norm2());
    CHECK(GaussRat::from_complex({0.1, -0.25}).to_complex() == Complex(0.1, -0.25));
  }

  TEST_CASE("sqrt upper bound is an upper bound and tight") {
    for (long k : {1L, 2L, 3L, 10L, 12345L}) {
      mpq_class q(k, 7);
      mpq_class r = sqrt_upper_bound(q);
      CHECK(r * r >= q);
      CHECK(r.get_d() <= std::sqrt(q.get_d()) * (1 + 1e-15));
    }
    CHECK(sqrt_upper_bound(mpq_class(4)) == 2);
    CHECK(sqrt_upper_bound(mpq_class(0)) == 0);
  }

  TEST_CASE("round to bits keeps relative accuracy") {
    GaussRat z(mpq_class(1, 3), mpq_class(-5, 7));
    GaussRat r = round_to_bits(z, 64);
    CHECK(mpq_class(abs(mpq_class(r.re() - z.re()))).get_d() < 1e-18);
    CHECK(mpq_class(abs(mpq_class(r.im() - z.im()))).get_d() < 1e-18);
  }

  TEST_CASE("exact and float rank agree on random integer matrices") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t r = 2 + rng() % 4, c = 2 + rng() % 4, k = 1 + rng() % std::min(r, c);
      QMatrix a(r, k), b(k, c);
      for (auto& x : a.data()) x = GaussRat(static_cast<long>(rng() % 9) - 4);
      for (auto& x : b.data()) x = GaussRat(static_cast<long>(rng() % 9) - 4);
      QMatrix m = a * b;
      CMatrix f(r, c);
      for (std::size_t i = 0; i < m.data().size(); ++i) f.data()[i] = m.data()[i].to_complex();
      CHECK(rank_exact(m) == rank_float(f));
      CHECK(rank_exact(m) <= k);
    }
  }

  TEST_CASE("exact inverse and determinant") {
    QMatrix a(3, 3);
    long v[] = {2, 1, 0, 1, 3, 1, 0, 1, 4};
    for (int i = 0; i < 9; ++i) a.data()[i] = GaussRat(v[i]);
    CHECK(determinant(a) == GaussRat(18L));
    CHECK(a * inverse(a) == QMatrix::identity(3));
    QMatrix s(2, 2);
    CHECK_THROWS_AS(inverse(s), SingularMatrix);
  }

  TEST_CASE("null space and left annihilator") {
    QMatrix a(2, 4);
    long v[] = {1, 2, 3, 4, 0, 1, 1, 1};
    for (int i = 0; i < 8; ++i) a.data()[i] = GaussRat(v[i]);
    QMatrix n = nullspace_exact(a);
    CHECK(n.cols() == 2);
    QMatrix an = a * n;
    for (const auto& z : an.data()) CHECK(z.is_zero());
    CMatrix f(4, 2);
    std::mt19937_64 rng(9);
    for (auto& z : f.data()) z = Complex(double(rng() % 100) / 50 - 1, double(rng() % 100) / 50 - 1);
    CMatrix l = left_annihilator(f);
    CHECK(l.rows() == 2);
    CHECK(frobenius_norm(l * f) < 1e-12);
  }
}
