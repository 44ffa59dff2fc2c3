#include <cmath>

#include "pgap/kernels.hpp"
#include "sign_search_step.hpp"

namespace pgap::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void matvec_scalar(const double* a, std::size_t n, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = dot_scalar(a + i * n, x, n);
}

double quad_form_scalar(const double* a, std::size_t n, const double* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * dot_scalar(a + i * n, x, n);
  return s;
}

void resync_scalar(const double* hat, std::size_t n, const double* z, double* w, double& value) {
  matvec_scalar(hat, n, z, w);
  value = dot_scalar(z, w, n);
}

SignSearchResult sign_search_scalar(const double* hat, std::size_t n, std::uint64_t first,
                                    std::uint64_t count, double tie_tol) {
  double z[kMaxSignSearchOrder];
  double w[kMaxSignSearchOrder];
  SignSearchResult best;
  if (count == 0) return best;

  std::uint64_t mask = gray(first);
  detail::load_signs(mask, n, z);
  double value = 0.0;
  resync_scalar(hat, n, z, w, value);
  best = {value, mask};

  for (std::uint64_t rank = first + 1; rank < first + count; ++rank) {
    const unsigned bit = static_cast<unsigned>(std::countr_zero(rank));
    const std::size_t k = bit + 1;
    const double zk = z[k];
    value += 4.0 * (hat[k * n + k] - zk * w[k]);
    axpy_scalar(-2.0 * zk, hat + k * n, w, n);
    z[k] = -zk;
    mask ^= std::uint64_t{1} << bit;
    if ((rank - first) % kResyncInterval == 0) resync_scalar(hat, n, z, w, value);
    detail::consider(best, value, mask, tie_tol);
  }
  return best;
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{"scalar", dot_scalar, axpy_scalar, matvec_scalar, quad_form_scalar,
                                 sign_search_scalar};
  return table;
}

}  // namespace pgap::kernels
