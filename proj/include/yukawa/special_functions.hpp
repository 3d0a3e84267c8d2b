#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace yukawa {

/// Largest polynomial degree and upper index accepted by laguerre(). Together
/// they cover every hydrogenic state with principal number up to 20, including
/// the shifted indices needed for first and second derivatives.
inline constexpr int kMaxLaguerreDegree = 20;
inline constexpr int kMaxLaguerreUpper = 41;

/// Indices (n, k) of the associated Laguerre polynomial L_n^k.
struct PolynomialIndex {
  int n = 0;
  int k = 0;
};

namespace detail {

inline void check_index(const PolynomialIndex& idx) {
  if (idx.n < 0 || idx.k < 0) {
    throw std::invalid_argument("laguerre: indices must be non-negative (n=" +
                                std::to_string(idx.n) + ", k=" + std::to_string(idx.k) + ")");
  }
  if (idx.n > kMaxLaguerreDegree || idx.k > kMaxLaguerreUpper) {
    throw std::out_of_range("laguerre: index (n=" + std::to_string(idx.n) + ", k=" +
                            std::to_string(idx.k) + ") exceeds supported range (n<=" +
                            std::to_string(kMaxLaguerreDegree) +
                            ", k<=" + std::to_string(kMaxLaguerreUpper) + ")");
  }
}

}  // namespace detail

/// Exact binomial C(n + k, n) for the supported index range. The largest
/// value, C(61, 20), is below 2^53 and therefore exact as a double.
inline std::uint64_t laguerre_at_origin(const PolynomialIndex& idx) {
  detail::check_index(idx);
  std::uint64_t c = 1;
  for (int i = 1; i <= idx.n; ++i) {
    c = c * static_cast<std::uint64_t>(idx.k + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

/// Associated Laguerre polynomial L_n^k(x) from its explicit Gamma-ratio sum
///
///   L_n^k(x) = sum_{m=0}^{n} Gamma(n+k+1) (-x)^m / [Gamma(m+k+1) (n-m)! m!].
///
/// Each term is obtained from the previous one through the rational factor
/// -x (n-m) / [(m+k+1)(m+1)], so no Gamma value is ever formed. The leading
/// term is the exact integer C(n+k, n), which makes x = 0 exact.
inline double laguerre(const PolynomialIndex& idx, double x) {
  detail::check_index(idx);
  if (!std::isfinite(x)) {
    throw std::domain_error("laguerre: argument must be finite");
  }
  long double term = static_cast<long double>(laguerre_at_origin(idx));
  long double sum = term;
  for (int m = 0; m < idx.n; ++m) {
    term *= -static_cast<long double>(x) * static_cast<long double>(idx.n - m) /
            (static_cast<long double>(m + idx.k + 1) * static_cast<long double>(m + 1));
    sum += term;
  }
  return static_cast<double>(sum);
}

/// ln(n!) to full double precision. Small arguments are summed exactly in
/// long double; lgamma takes over where its relative error is far below 1e-12.
inline double log_factorial(int n) {
  if (n < 0) {
    throw std::invalid_argument("log_factorial: negative argument " + std::to_string(n));
  }
  if (n <= 170) {
    long double acc = 0.0L;
    for (int k = 2; k <= n; ++k) acc += std::log(static_cast<long double>(k));
    return static_cast<double>(acc);
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace yukawa
