#include "schubert/kernels.hpp"

namespace schubert::kernels::scalar {

void caxpy(std::size_t n, Complex a, const Complex* x, Complex* y) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = Complex(y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr));
  }
}

Complex cdotu(std::size_t n, const Complex* x, const Complex* y) {
  double sr = 0.0, si = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    sr += xr * yr - xi * yi;
    si += xr * yi + xi * yr;
  }
  return {sr, si};
}

double cnorm2(std::size_t n, const Complex* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

}  // namespace schubert::kernels::scalar
