#include <atomic>

#include "schubert/kernels.hpp"

namespace schubert::kernels {

namespace {

bool detect_avx2() {
#if defined(SCHUBERT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Level initial_level() { return detect_avx2() ? Level::Avx2 : Level::Scalar; }

std::atomic<Level>& level_ref() {
  static std::atomic<Level> level{initial_level()};
  return level;
}

}  // namespace

bool avx2_supported() {
  static const bool ok = detect_avx2();
  return ok;
}

Level active_level() { return level_ref().load(std::memory_order_relaxed); }

void set_level(Level level) {
  if (level == Level::Avx2 && !avx2_supported()) level = Level::Scalar;
  level_ref().store(level, std::memory_order_relaxed);
}

const char* level_name(Level level) { return level == Level::Avx2 ? "avx2" : "scalar"; }

void caxpy(std::size_t n, Complex a, const Complex* x, Complex* y) {
#ifdef SCHUBERT_HAVE_AVX2
  if (active_level() == Level::Avx2) return avx2::caxpy(n, a, x, y);
#endif
  scalar::caxpy(n, a, x, y);
}

Complex cdotu(std::size_t n, const Complex* x, const Complex* y) {
#ifdef SCHUBERT_HAVE_AVX2
  if (active_level() == Level::Avx2) return avx2::cdotu(n, x, y);
#endif
  return scalar::cdotu(n, x, y);
}

double cnorm2(std::size_t n, const Complex* x) {
#ifdef SCHUBERT_HAVE_AVX2
  if (active_level() == Level::Avx2) return avx2::cnorm2(n, x);
#endif
  return scalar::cnorm2(n, x);
}

}  // namespace schubert::kernels
