#include "pgap/negtype.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "pgap/error.hpp"
#include "pgap/kernels.hpp"

namespace pgap {
namespace {

constexpr double kSolveRelTol = 1e-8;
constexpr double kTieRelTol = 1e-12;
constexpr unsigned kMaxChunkBits = 8;

// Positive direction of D inside sum(x) = 0, from the top eigenpair of P D P.
std::optional<Vector> positive_direction(const Matrix& d) {
  const std::size_t n = d.rows();
  Matrix proj(n, n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) proj(i, j) = (i == j ? 1.0 : 0.0) - inv_n;
  const Matrix pdp = multiply(multiply(proj, d), proj);
  Matrix sym = pdp;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sym(i, j) = sym(j, i) = 0.5 * (pdp(i, j) + pdp(j, i));
  const Spectrum s = sym_eigen(sym);
  Vector x = s.eigenvector(n - 1);
  const double mean = sum(x) * inv_n;
  for (double& v : x) v -= mean;
  const double form = dot(x, multiply(d, x));
  if (!(form > s.zero_tol * dot(x, x))) return std::nullopt;
  return x;
}

}  // namespace

const char* to_string(NegTypeClass c) {
  switch (c) {
    case NegTypeClass::NotNegativeType: return "NotNegativeType";
    case NegTypeClass::NegativeTypeNonStrict: return "NegativeTypeNonStrict";
    case NegTypeClass::StrictNegativeType: return "StrictNegativeType";
  }
  return "Unknown";
}

const char* to_string(GapMethod m) {
  switch (m) {
    case GapMethod::SignEnumeration: return "SignEnumeration";
    case GapMethod::DefinitionZero: return "DefinitionZero";
    case GapMethod::SinglePoint: return "SinglePoint";
  }
  return "Unknown";
}

NegTypeCertificate certify(const PDistanceMatrix& dp) {
  const Matrix& d = dp.entries;
  const std::size_t n = d.rows();
  NegTypeCertificate cert;
  cert.spectrum = sym_eigen(d);
  if (n == 1) {
    cert.classification = NegTypeClass::StrictNegativeType;
    cert.m_p = 0.0;
    cert.u_p = Vector{1.0};
    return cert;
  }

  const double tol = cert.spectrum.zero_tol;
  cert.lambda_second = cert.spectrum.eigenvalues[n - 2];
  cert.lambda_top = cert.spectrum.eigenvalues[n - 1];

  const Vector one = ones(n);
  const SolveResult solve = solve_sym(d, cert.spectrum, one);
  const bool solvable = solve.residual_norm <= kSolveRelTol * std::sqrt(static_cast<double>(n));
  if (solvable) {
    cert.b = solve.solution;
    cert.b_dot_one = sum(solve.solution);
  }
  const double b_tol = solvable ? kZeroRelTol * norm1(solve.solution) : 0.0;

  const bool spectral_ok = cert.lambda_second <= tol && cert.lambda_top > tol;
  if (!spectral_ok || !solvable || cert.b_dot_one < -b_tol) {
    cert.classification = NegTypeClass::NotNegativeType;
    cert.witness = positive_direction(d);
    if (!cert.witness) {
      // The projected form disagrees at this tolerance; stay conservative.
      cert.classification = NegTypeClass::NegativeTypeNonStrict;
      cert.boundary_warning = true;
    }
  } else if (cert.lambda_second < -tol && cert.b_dot_one > b_tol) {
    cert.classification = NegTypeClass::StrictNegativeType;
  } else {
    cert.classification = NegTypeClass::NegativeTypeNonStrict;
    cert.boundary_warning = true;
  }

  if (cert.negative_type() && cert.b && cert.b_dot_one > b_tol) {
    cert.m_p = 1.0 / cert.b_dot_one;
    Vector u = *cert.b;
    for (double& v : u) v /= cert.b_dot_one;
    cert.u_p = std::move(u);
  } else {
    cert.m_p = kInfinity;
  }
  return cert;
}

double m_constant(const PDistanceMatrix& dp) { return certify(dp).m_p; }

HatMatrix hat_matrix(const PDistanceMatrix& dp) { return hat_matrix(dp, certify(dp)); }

HatMatrix hat_matrix(const PDistanceMatrix& dp, const NegTypeCertificate& cert) {
  if (!cert.strict()) throw Error(Errc::NotStrict, "hat matrix needs strict negative type");
  const std::size_t n = dp.size();
  if (n == 1) return {Matrix(1, 1)};
  const Matrix inv = inverse_from_spectrum(cert.spectrum);
  const Vector x = multiply(inv, ones(n));
  const double s = sum(x);
  Matrix hat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) hat(i, j) = hat(j, i) = x[i] * x[j] / s - inv(i, j);
  return {std::move(hat)};
}

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NEGTYPE_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

GapResult gap_from_hat(const Matrix& hat, const GapOptions& options) {
  const std::size_t n = hat.rows();
  if (!hat.square() || n < 2) throw Error(Errc::TooFewPoints, "sign search needs at least two points");
  if (n > options.cap || n > kernels::kMaxSignSearchOrder)
    throw Error(Errc::TooManyPoints,
                "n = " + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(options.cap),
                {n, options.cap});

  const auto& k = kernels::active();
  double scale = 0.0;
  for (std::size_t i = 0; i < n * n; ++i) scale += std::abs(hat.data()[i]);
  const double tie_tol = kTieRelTol * scale;

  const unsigned free_bits = static_cast<unsigned>(n - 1);
  const unsigned chunk_bits = std::min(free_bits, kMaxChunkBits);
  const std::uint64_t chunks = std::uint64_t{1} << chunk_bits;
  const std::uint64_t chunk_len = std::uint64_t{1} << (free_bits - chunk_bits);

  std::vector<kernels::SignSearchResult> partial(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++)
      partial[c] = k.sign_search(hat.data(), n, c * chunk_len, chunk_len, tie_tol);
  };
  const unsigned threads = static_cast<unsigned>(
      std::min<std::uint64_t>(resolve_thread_count(options.threads), chunks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  kernels::SignSearchResult best = partial[0];
  for (std::uint64_t c = 1; c < chunks; ++c) {
    const auto& r = partial[c];
    if (r.value > best.value + tie_tol) {
      best = r;
    } else if (r.value >= best.value - tie_tol && kernels::mask_precedes(r.mask, best.mask)) {
      best = {std::max(r.value, best.value), r.mask};
    }
  }

  GapResult out;
  out.method = GapMethod::SignEnumeration;
  out.z_star.assign(n, 1);
  Vector z(n, 1.0);
  for (std::size_t i = 1; i < n; ++i)
    if ((best.mask >> (i - 1)) & 1u) {
      out.z_star[i] = -1;
      z[i] = -1.0;
    }
  out.beta = k.quad_form(hat.data(), n, z.data());
  out.gamma = 2.0 / out.beta;
  return out;
}

GapResult gap_exact(const PDistanceMatrix& dp, const GapOptions& options) {
  const std::size_t n = dp.size();
  if (n == 1) return {kInfinity, 0.0, {1}, GapMethod::SinglePoint};
  if (n > options.cap)
    throw Error(Errc::TooManyPoints,
                "n = " + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(options.cap),
                {n, options.cap});
  const NegTypeCertificate cert = certify(dp);
  if (!cert.negative_type()) throw Error(Errc::NotNegativeType, "space is not of p-negative type");
  if (!cert.strict()) return {0.0, kInfinity, {}, GapMethod::DefinitionZero};
  return gap_from_hat(hat_matrix(dp, cert).values, options);
}

bool gap_definition_check(const PDistanceMatrix& dp, double gamma, std::span<const double> x) {
  if (x.size() != dp.size()) throw Error(Errc::DimensionMismatch, "vector length does not match the space");
  const double l1 = norm1(x);
  if (l1 == 0.0) throw Error(Errc::NotInF0, "zero vector");
  if (std::abs(sum(x)) > 1e-12 * l1) throw Error(Errc::NotInF0, "coordinates do not sum to zero");
  const double form = kernels::active().quad_form(dp.entries.data(), dp.size(), x.data());
  return 0.5 * gamma * l1 * l1 + form <= 1e-12 * l1 * l1 * std::max(1.0, gamma);
}

}  // namespace pgap
