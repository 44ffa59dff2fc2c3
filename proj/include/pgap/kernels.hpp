#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// on x86-64 hosts that report AVX2+FMA at runtime, a vectorized version. The
// two are interchangeable up to floating-point summation order.

#include <cstddef>
#include <cstdint>

namespace pgap::kernels {

// Largest matrix order the sign search accepts (z_0 is pinned, so the mask
// covers the remaining n - 1 coordinates).
inline constexpr std::size_t kMaxSignSearchOrder = 64;

// The search re-derives w = H z from scratch every this many Gray steps so
// incremental round-off cannot accumulate across a whole chunk.
inline constexpr std::uint64_t kResyncInterval = 4096;

struct SignSearchResult {
  double value = 0.0;       // max (H z | z) seen in the range
  std::uint64_t mask = 0;   // bit b set <=> z_{b+1} = -1; z_0 = +1 always
};

struct KernelTable {
  const char* name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = A x for a row-major n x n matrix
  void (*matvec)(const double* a, std::size_t n, const double* x, double* y);
  // (A x | x) for a row-major n x n matrix
  double (*quad_form)(const double* a, std::size_t n, const double* x);
  // Maximizes (H z | z) over the Gray-code ranks [first, first + count) of
  // sign vectors with z_0 = +1. Values within tie_tol of the running best are
  // resolved toward the lexicographically smallest z (-1 < +1).
  SignSearchResult (*sign_search)(const double* hat, std::size_t n, std::uint64_t first,
                                  std::uint64_t count, double tie_tol);
};

const KernelTable& scalar();

// nullptr when the host lacks AVX2/FMA or the build is not x86-64.
const KernelTable* avx2();

// The table used by the library. Chosen once: AVX2 when available, unless
// the environment variable PGAP_KERNEL=scalar forces the reference path.
const KernelTable& active();

inline constexpr std::uint64_t gray(std::uint64_t rank) { return rank ^ (rank >> 1); }

// True when the sign vector encoded by `a` precedes `b` lexicographically.
inline constexpr bool mask_precedes(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  const std::uint64_t lowest = diff & (~diff + 1);
  return (a & lowest) != 0;
}

}  // namespace pgap::kernels
