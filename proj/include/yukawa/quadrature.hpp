#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace yukawa {

/// A real-valued function of the radial coordinate r >= 0.
using RadialEvaluator = std::function<double(double)>;

struct IntegrationSpec {
  double decay_scale = 1.0;  ///< e-fold length of the integrand's exponential tail
  double rel_tol = 1e-10;
  int max_subdivisions = 32768;

  void validate() const {
    if (!(decay_scale > 0.0) || !std::isfinite(decay_scale)) {
      throw std::invalid_argument("IntegrationSpec: decay_scale must be positive and finite");
    }
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
      throw std::invalid_argument("IntegrationSpec: rel_tol must lie in (0, 1)");
    }
    if (max_subdivisions < 1) {
      throw std::invalid_argument("IntegrationSpec: max_subdivisions must be positive");
    }
  }
};

/// Raised when neither the weighted rule nor the adaptive fallback reaches the
/// requested tolerance. Carries the best estimate obtained.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double partial, double error)
      : std::runtime_error(what), partial_(partial), error_(error) {}

  double partial_estimate() const noexcept { return partial_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double partial_;
  double error_;
};

namespace detail {

/// Gauss-Laguerre rule for weight e^{-x} with the weights pre-multiplied by
/// e^{x_i}, so that sum_i w_i f(x_i) approximates the plain integral of f.
struct LaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline LaguerreRule make_laguerre_rule(int order) {
  using real = long double;
  LaguerreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const real n = order;
  real z = 0.0L;
  std::vector<real> roots(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) {
    if (i == 0) {
      z = 3.0L / (1.0L + 2.4L * n);
    } else if (i == 1) {
      z += 15.0L / (1.0L + 2.5L * n);
    } else {
      const real ai = i - 1;
      z += (1.0L + 2.55L * ai) / (1.9L * ai) * (z - roots[static_cast<std::size_t>(i - 2)]);
    }
    real p1 = 0.0L;
    real p2 = 0.0L;
    real pp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      p1 = 1.0L;
      p2 = 0.0L;
      for (int j = 1; j <= order; ++j) {
        const real p3 = p2;
        p2 = p1;
        p1 = ((2.0L * j - 1.0L - z) * p2 - (j - 1.0L) * p3) / j;
      }
      pp = (n * p1 - n * p2) / z;
      const real z_prev = z;
      z = z_prev - p1 / pp;
      if (std::fabs(z - z_prev) <= 1e-17L * std::fabs(z)) break;
    }
    roots[static_cast<std::size_t>(i)] = z;
    // w_i = -1 / (n L_n'(x_i) L_{n-1}(x_i)); fold in e^{x_i} in log space.
    const real w = -1.0L / (pp * n * p2);
    rule.nodes[static_cast<std::size_t>(i)] = static_cast<double>(z);
    rule.weights[static_cast<std::size_t>(i)] = static_cast<double>(std::exp(std::log(w) + z));
  }
  return rule;
}

inline const LaguerreRule& laguerre_rule_low() {
  static const LaguerreRule rule = make_laguerre_rule(64);
  return rule;
}

inline const LaguerreRule& laguerre_rule_high() {
  static const LaguerreRule rule = make_laguerre_rule(100);
  return rule;
}

struct RuleResult {
  double value;
  double l1;
};

template <class F>
RuleResult apply_rule(const LaguerreRule& rule, const F& f, double scale) {
  long double sum = 0.0L;
  long double l1 = 0.0L;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const long double term =
        static_cast<long double>(rule.weights[i]) * static_cast<long double>(f(scale * rule.nodes[i]));
    sum += term;
    l1 += std::fabs(term);
  }
  return {static_cast<double>(sum * scale), static_cast<double>(l1 * scale)};
}

inline unsigned depth_for(int max_subdivisions) {
  unsigned depth = 1;
  while ((1 << depth) < max_subdivisions && depth < 30) ++depth;
  return depth;
}

template <class F>
double adaptive_interval(const F& f, double lo, double hi, const IntegrationSpec& spec,
                         double* l1_out = nullptr) {
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, lo, hi, depth_for(spec.max_subdivisions), spec.rel_tol, &error, &l1);
  if (!std::isfinite(value)) {
    throw IntegrationError("adaptive quadrature produced a non-finite value", value, error);
  }
  if (error > spec.rel_tol * l1 && error > 8.0 * std::numeric_limits<double>::min()) {
    throw IntegrationError("adaptive quadrature did not converge on [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "] (error estimate " + std::to_string(error) +
                               ")",
                           value, error);
  }
  if (l1_out != nullptr) *l1_out = l1;
  return value;
}

}  // namespace detail

/// Integral of f over [0, infinity).
///
/// A 64- and a 100-point Gauss-Laguerre rule, stretched to the integrand's decay
/// scale, are tried first; both are exact for polynomial-times-exponential
/// integrands of moderate degree. When the two disagree by more than
/// rel_tol (measured against the integral of |f|), the integral is redone
/// adaptively with Gauss-Kronrod on [0, 60 * decay_scale] and the remaining
/// tail is added from the high-order rule.
template <class F>
double integrate_halfline(const F& f, const IntegrationSpec& spec) {
  spec.validate();
  const double s = spec.decay_scale;
  const auto low = detail::apply_rule(detail::laguerre_rule_low(), f, s);
  const auto high = detail::apply_rule(detail::laguerre_rule_high(), f, s);
  if (std::isfinite(high.value) && std::isfinite(low.value) &&
      std::fabs(high.value - low.value) <= spec.rel_tol * std::max(high.l1, std::fabs(high.value))) {
    return high.value;
  }
  const double cut = 60.0 * s;
  const double body = detail::adaptive_interval(f, 0.0, cut, spec);
  const auto tail = detail::apply_rule(detail::laguerre_rule_high(),
                                       [&](double t) { return f(cut + t); }, s);
  if (!std::isfinite(tail.value)) {
    throw IntegrationError("half-line quadrature: tail beyond 60 decay scales is not finite", body,
                           std::numeric_limits<double>::infinity());
  }
  return body + tail.value;
}

/// Integral of f over [lower, infinity); f must decay on spec.decay_scale.
template <class F>
double integrate_tail(const F& f, double lower, const IntegrationSpec& spec) {
  if (!std::isfinite(lower) || lower < 0.0) {
    throw std::invalid_argument("integrate_tail: lower limit must be finite and non-negative");
  }
  return integrate_halfline([&](double t) { return f(lower + t); }, spec);
}

/// Integral of f over [0, upper] by adaptive Gauss-Kronrod.
template <class F>
double integrate_partial(const F& f, double upper, const IntegrationSpec& spec) {
  spec.validate();
  if (!std::isfinite(upper) || upper < 0.0) {
    throw std::invalid_argument("integrate_partial: upper limit must be finite and non-negative");
  }
  if (upper == 0.0) return 0.0;
  return detail::adaptive_interval(f, 0.0, upper, spec);
}

/// Integral of f over [lo, hi] by adaptive Gauss-Kronrod.
template <class F>
double integrate_interval(const F& f, double lo, double hi, const IntegrationSpec& spec) {
  spec.validate();
  if (!(std::isfinite(lo) && std::isfinite(hi))) {
    throw std::invalid_argument("integrate_interval: limits must be finite");
  }
  if (lo == hi) return 0.0;
  return detail::adaptive_interval(f, lo, hi, spec);
}

}  // namespace yukawa
