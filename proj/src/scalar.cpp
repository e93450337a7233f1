#include "schubert/scalar.hpp"

#include <cmath>
#include <sstream>

#include "schubert/errors.hpp"
#include "schubert/matrix.hpp"

namespace schubert {

GaussRat GaussRat::from_complex(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw InvalidArgument("cannot take exact value of a non-finite number");
  // mpq_set_d is exact for finite doubles
  return GaussRat(mpq_class(z.real()), mpq_class(z.imag()));
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussRat& GaussRat::operator/=(const GaussRat& o) {
  if (o.is_zero()) throw SingularMatrix("division by zero in exact arithmetic");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class d = o.norm2();
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / d;
  mpq_class i = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

std::string to_string(const GaussRat& z) {
  std::ostringstream os;
  os << z.re().get_str();
  if (sgn(z.im()) >= 0) os << "+";
  os << z.im().get_str() << "i";
  return os.str();
}

namespace {

// floor(log2(|q|)) up to +-1, enough to pick scales
long approx_log2(const mpq_class& q) {
  return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
}

mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

mpq_class sqrt_upper_bound(const mpq_class& q, int bits) {
  if (sgn(q) < 0) throw InvalidArgument("sqrt_upper_bound of a negative number");
  if (sgn(q) == 0) return 0;
  // pick k with q*4^k about 4^bits, then r = ceil(sqrt(ceil(q*4^k))) / 2^k
  long k = bits - approx_log2(q) / 2;
  mpz_class scaled;
  if (k >= 0) {
    mpz_class num = q.get_num();
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(2 * k));
    scaled = ceil_div(num, q.get_den());
  } else {
    mpz_class den = q.get_den();
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-2 * k));
    scaled = ceil_div(q.get_num(), den);
  }
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  if (root * root < scaled) root += 1;
  mpq_class r(root);
  if (k >= 0) {
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    r = mpq_class(root, den);
  } else {
    mpz_class num = root;
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
    r = mpq_class(num);
  }
  r.canonicalize();
  return r;
}

namespace {

mpq_class round_part(const mpq_class& x, int bits) {
  if (sgn(x) == 0) return 0;
  long k = bits - approx_log2(x);
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  if (k >= 0)
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  else
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
  // nearest integer to num/den
  mpz_class twice = 2 * num + den;
  mpz_class m;
  mpz_fdiv_q(m.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
  mpz_class scale = 1;
  if (k >= 0) {
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    mpq_class r(m, scale);
    r.canonicalize();
    return r;
  }
  mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
  return mpq_class(m);
}

}  // namespace

GaussRat round_to_bits(const GaussRat& z, int bits) {
  return GaussRat(round_part(z.re(), bits), round_part(z.im(), bits));
}

std::vector<Complex> to_complex(const std::vector<GaussRat>& v) {
  std::vector<Complex> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].to_complex();
  return out;
}

std::vector<GaussRat> to_exact(const std::vector<Complex>& v) {
  std::vector<GaussRat> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = GaussRat::from_complex(v[i]);
  return out;
}

}  // namespace schubert
