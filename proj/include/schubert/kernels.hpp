#pragma once

#include <cstddef>

#include "schubert/scalar.hpp"

// Complex double vector kernels. Each has a scalar reference version and an
// AVX2/FMA version; dispatch picks one at first use based on cpuid.
namespace schubert::kernels {

enum class Level { Scalar, Avx2 };

// y += a*x
void caxpy(std::size_t n, Complex a, const Complex* x, Complex* y);
// sum x[i]*y[i] (no conjugation)
Complex cdotu(std::size_t n, const Complex* x, const Complex* y);
// sum |x[i]|^2
double cnorm2(std::size_t n, const Complex* x);

Level active_level();
bool avx2_supported();
// Force a level (tests, benchmarks). Avx2 is ignored when unsupported.
void set_level(Level level);
const char* level_name(Level level);

namespace scalar {
void caxpy(std::size_t n, Complex a, const Complex* x, Complex* y);
Complex cdotu(std::size_t n, const Complex* x, const Complex* y);
double cnorm2(std::size_t n, const Complex* x);
}  // namespace scalar

#ifdef SCHUBERT_HAVE_AVX2
namespace avx2 {
void caxpy(std::size_t n, Complex a, const Complex* x, Complex* y);
Complex cdotu(std::size_t n, const Complex* x, const Complex* y);
double cnorm2(std::size_t n, const Complex* x);
}  // namespace avx2
#endif

}  // namespace schubert::kernels
