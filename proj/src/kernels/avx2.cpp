#include "pgap/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define PGAP_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#endif

#include "sign_search_step.hpp"

namespace pgap::kernels {

#ifdef PGAP_HAVE_AVX2_KERNELS
namespace {

#define PGAP_AVX2 __attribute__((target("avx2,fma")))

PGAP_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

PGAP_AVX2 double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

PGAP_AVX2 void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

PGAP_AVX2 void matvec_avx2(const double* a, std::size_t n, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = dot_avx2(a + i * n, x, n);
}

PGAP_AVX2 double quad_form_avx2(const double* a, std::size_t n, const double* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * dot_avx2(a + i * n, x, n);
  return s;
}

PGAP_AVX2 SignSearchResult sign_search_avx2(const double* hat, std::size_t n, std::uint64_t first,
                                            std::uint64_t count, double tie_tol) {
  alignas(32) double z[kMaxSignSearchOrder];
  alignas(32) double w[kMaxSignSearchOrder];
  SignSearchResult best;
  if (count == 0) return best;

  std::uint64_t mask = gray(first);
  detail::load_signs(mask, n, z);
  matvec_avx2(hat, n, z, w);
  double value = dot_avx2(z, w, n);
  best = {value, mask};

  for (std::uint64_t rank = first + 1; rank < first + count; ++rank) {
    const unsigned bit = static_cast<unsigned>(__builtin_ctzll(rank));
    const std::size_t k = bit + 1;
    const double zk = z[k];
    value += 4.0 * (hat[k * n + k] - zk * w[k]);
    axpy_avx2(-2.0 * zk, hat + k * n, w, n);
    z[k] = -zk;
    mask ^= std::uint64_t{1} << bit;
    if ((rank - first) % kResyncInterval == 0) {
      matvec_avx2(hat, n, z, w);
      value = dot_avx2(z, w, n);
    }
    detail::consider(best, value, mask, tie_tol);
  }
  return best;
}

#undef PGAP_AVX2

}  // namespace

const KernelTable* avx2() {
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelTable table{"avx2", dot_avx2, axpy_avx2, matvec_avx2, quad_form_avx2,
                                 sign_search_avx2};
  return supported ? &table : nullptr;
}

#else

const KernelTable* avx2() { return nullptr; }

#endif

}  // namespace pgap::kernels
