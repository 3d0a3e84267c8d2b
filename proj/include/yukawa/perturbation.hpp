#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "yukawa/hydrogenic.hpp"
#include "yukawa/quadrature.hpp"

namespace yukawa {

/// Raised when a closed form is requested for a state it does not exist for.
class UnsupportedStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One term c * r^p of the screening correction
///   dV(r) = -(A/r) e^{-alpha r} + A/r = A alpha - (A alpha^2/2) r + (A alpha^3/6) r^2 - ...
struct ExpansionTerm {
  int order = 1;
  double coefficient = 0.0;
  int power_of_r = 0;
};

/// The screening expansion is truncated after the r^2 term, i.e. after the
/// constant shift and two perturbing powers.
inline constexpr int kDefaultExpansionOrder = 3;

inline std::vector<ExpansionTerm> delta_v_terms(const PhysicalContext& ctx,
                                                int max_order = kDefaultExpansionOrder) {
  if (max_order < 1) throw std::invalid_argument("delta_v_terms: max_order must be >= 1");
  std::vector<ExpansionTerm> terms;
  terms.reserve(static_cast<std::size_t>(max_order));
  double c = ctx.coupling();
  for (int k = 1; k <= max_order; ++k) {
    c *= ctx.screening() / k;  // A alpha^k / k!
    terms.push_back({k, (k % 2 == 1) ? c : -c, k - 1});
  }
  return terms;
}

/// Energy decomposition E = eps + A alpha + de1 + de2.
struct EnergyBreakdown {
  double epsilon = 0.0;
  double constant_shift = 0.0;
  double de1 = 0.0;
  double de2 = 0.0;
  double total = 0.0;
};

/// First-order shift: the expectation of -(A alpha^2/2) r in the Coulomb state.
inline double first_order_energy(const PhysicalContext& ctx, const StateLabel& s) {
  const double alpha = ctx.screening();
  return -0.5 * ctx.coupling() * alpha * alpha * expectation_r(ctx, s);
}

/// Second-order shift: expectation of (A alpha^3/6) r^2 - dW1(r)^2 with the
/// linear first-order superpotential dW1 = -n' hbar alpha^2 r / (2 sqrt(2m)).
/// For n = 0 that superpotential is exact; for n >= 1 it is the node-free
/// approximation, which is what yields the closed excited-state coefficients.
inline double second_order_energy(const PhysicalContext& ctx, const StateLabel& s) {
  const double alpha = ctx.screening();
  const double np = s.principal();
  const double a2 = alpha * alpha;
  const double bracket = ctx.coupling() * a2 * alpha / 6.0 -
                         np * np * ctx.hbar() * ctx.hbar() * a2 * a2 / (8.0 * ctx.mass());
  return bracket * expectation_r2(ctx, s);
}

inline EnergyBreakdown total_energy(const PhysicalContext& ctx, const StateLabel& s) {
  EnergyBreakdown e;
  e.epsilon = coulomb_energy(ctx, s);
  e.constant_shift = ctx.coupling() * ctx.screening();
  e.de1 = first_order_energy(ctx, s);
  e.de2 = second_order_energy(ctx, s);
  e.total = e.epsilon + e.constant_shift + e.de1 + e.de2;
  return e;
}

enum class SuperpotentialMode { exact, approximate };

/// First-order superpotential correction dW1.
///
/// approximate: -(n+ell+1) hbar alpha^2 r / (2 sqrt(2m)) for every state.
/// exact:       the same line for n = 0; for n = 1 the full rational form,
///              which carries a double pole at the node of chi_1.
inline RadialEvaluator first_order_superpotential(const PhysicalContext& ctx, const StateLabel& s,
                                                  SuperpotentialMode mode) {
  const double hbar = ctx.hbar();
  const double m = ctx.mass();
  const double A = ctx.coupling();
  const double alpha = ctx.screening();
  const double root2m = std::sqrt(2.0 * m);

  if (mode == SuperpotentialMode::approximate || s.n == 0) {
    const double slope = -s.principal() * hbar * alpha * alpha / (2.0 * root2m);
    return [slope](double r) { return slope * r; };
  }
  if (s.n != 1) {
    throw UnsupportedStateError("exact first-order superpotential is only available for n = 0 and 1 (got n=" +
                                std::to_string(s.n) + ")");
  }
  const double l = s.ell;
  const double h2 = hbar * hbar;
  const double node = (l + 1.0) * (l + 2.0) * h2 / (A * m);
  const double guard = 1e-12 * ctx.bohr_radius();
  return [=](double r) {
    if (std::fabs(r - node) <= guard) {
      throw NodePoleError("exact first-order superpotential evaluated at the node of chi_1");
    }
    const double amr = A * m * r;
    const double num = amr * amr - (l + 1.0) * (2.0 * l + 5.0) * h2 * amr +
                       (l + 1.0) * (l + 1.0) * (l + 2.0) * (l + 4.0) * h2 * h2;
    const double den = amr - (l + 1.0) * (l + 2.0) * h2;
    return -(l + 2.0) * hbar * alpha * alpha * r * num / (2.0 * root2m * den * den);
  };
}

/// Integer coefficients, in powers of x = m A r / hbar^2, of the squared node
/// factor (x - (l+1)(l+2))^2 and of the quadratic it replaces in the n = 1
/// first-order superpotential.
struct NodeFactorCoefficients {
  std::array<std::int64_t, 3> squared_node;  ///< x^0, x^1, x^2
  std::array<std::int64_t, 3> numerator;     ///< x^0, x^1, x^2
};

inline NodeFactorCoefficients node_factor_coefficients(int ell) {
  if (ell < 0) throw std::invalid_argument("node_factor_coefficients: ell must be >= 0");
  const std::int64_t l = ell;
  const std::int64_t p = (l + 1) * (l + 2);
  return {{p * p, -2 * p, 1}, {(l + 1) * (l + 1) * (l + 2) * (l + 4), -(l + 1) * (2 * l + 5), 1}};
}

/// Ratio of the squared node factor to the quadratic numerator of the exact
/// n = 1 first-order superpotential. Tends to 1 for large r; replacing it by 1
/// is what turns the exact form into the linear approximation.
inline double node_factor_ratio(const PhysicalContext& ctx, int ell, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::domain_error("node_factor_ratio: r must be positive and finite");
  }
  const auto c = node_factor_coefficients(ell);
  const double x = ctx.mass() * ctx.coupling() * r / (ctx.hbar() * ctx.hbar());
  const auto eval = [x](const std::array<std::int64_t, 3>& k) {
    return static_cast<double>(k[0]) + x * (static_cast<double>(k[1]) + x * static_cast<double>(k[2]));
  };
  const double rhs = eval(c.numerator);
  if (rhs == 0.0) throw std::domain_error("node_factor_ratio: numerator quadratic vanishes");
  return eval(c.squared_node) / rhs;
}

namespace detail {

/// dW2(r) = (sqrt(2m)/hbar) / chi^2(r) * int_0^r chi^2(z) [de2 + dW1(z)^2 - (A alpha^3/6) z^2] dz
/// with the linear dW1. The integral over the whole half-line vanishes, so
/// beyond <r> it is evaluated as minus the tail integral, which keeps the
/// ratio accurate where chi^2 is small.
class NumericSecondOrderSuperpotential {
 public:
  NumericSecondOrderSuperpotential(const PhysicalContext& ctx, const StateLabel& s)
      : orbital_(ctx, s),
        de2_(second_order_energy(ctx, s)),
        w1_slope_(-s.principal() * ctx.hbar() * ctx.screening() * ctx.screening() /
                  (2.0 * std::sqrt(2.0 * ctx.mass()))),
        v2_coeff_(ctx.coupling() * std::pow(ctx.screening(), 3) / 6.0),
        prefactor_(std::sqrt(2.0 * ctx.mass()) / ctx.hbar()),
        split_(expectation_r(ctx, s)) {
    spec_.decay_scale = orbital_.density_decay_scale();
    spec_.rel_tol = 1e-12;
  }

  double operator()(double r) const {
    if (!(r >= 0.0) || !std::isfinite(r)) throw std::domain_error("r must be finite and non-negative");
    if (r == 0.0) return 0.0;
    const double guard = 1e-12 * orbital_.context().bohr_radius();
    for (double node : orbital_.nodes()) {
      if (std::fabs(r - node) <= guard) {
        throw NodePoleError("second-order superpotential evaluated at a node of chi");
      }
    }
    const double c = orbital_(r);
    const double weight = c * c;
    if (weight == 0.0) {
      if (r < split_) return 0.0;
      throw NodePoleError("second-order superpotential: chi^2 underflows at r = " + std::to_string(r));
    }
    const auto integrand = [this](double z) {
      const double cz = orbital_(z);
      const double w1 = w1_slope_ * z;
      return cz * cz * (de2_ + w1 * w1 - v2_coeff_ * z * z);
    };
    const double partial = r <= split_ ? integrate_partial(integrand, r, spec_)
                                       : -integrate_tail(integrand, r, spec_);
    return prefactor_ * partial / weight;
  }

 private:
  CoulombOrbital orbital_;
  double de2_;
  double w1_slope_;
  double v2_coeff_;
  double prefactor_;
  double split_;
  IntegrationSpec spec_;
};

}  // namespace detail

/// Coefficient K of the nodeless second-order superpotential dW2(r) = K r (m A r + (l+1)(l+2) hbar^2).
inline double ground_second_order_coefficient(const PhysicalContext& ctx, int ell) {
  const double l1 = ell + 1.0;
  const double hbar = ctx.hbar();
  const double alpha = ctx.screening();
  const double mA = ctx.mass() * ctx.coupling();
  return l1 * hbar * alpha * alpha * alpha * (4.0 * mA - 3.0 * alpha * hbar * hbar * l1 * l1) /
         (24.0 * std::sqrt(2.0 * ctx.mass()) * mA * mA);
}

/// Second-order superpotential correction dW2, the regular solution (dW2(0) = 0) of
///   2 W dW2 + dW1^2 - (hbar/sqrt(2m)) dW2' = (A alpha^3/6) r^2 - de2.
/// Closed form for n = 0; numerical quadrature for n >= 1, with poles at the
/// nodes of chi.
inline RadialEvaluator second_order_superpotential(const PhysicalContext& ctx, const StateLabel& s) {
  if (s.n == 0) {
    const double k = ground_second_order_coefficient(ctx, s.ell);
    const double mA = ctx.mass() * ctx.coupling();
    const double c0 = (s.ell + 1.0) * (s.ell + 2.0) * ctx.hbar() * ctx.hbar();
    return [=](double r) { return k * r * (mA * r + c0); };
  }
  auto impl = std::make_shared<const detail::NumericSecondOrderSuperpotential>(ctx, s);
  return [impl](double r) { return (*impl)(r); };
}

/// psi(r) = chi(r) phi(r) with phi = exp(-(sqrt(2m)/hbar) int_0^r (dW1 + dW2) dz),
/// renormalized to unit norm on [0, inf).
///
/// Only nodeless states are supported. For n >= 1 the second-order
/// superpotential has double poles at the nodes of chi, so phi has an
/// essential singularity there; construction raises NodePoleError.
class PerturbedWavefunction {
 public:
  PerturbedWavefunction(const PhysicalContext& ctx, const StateLabel& s) : orbital_(ctx, s) {
    if (s.n != 0) {
      throw NodePoleError("perturbed wavefunction: the second-order moderating function is singular at the " +
                          std::to_string(s.n) + " node(s) of chi for n >= 1");
    }
    const double alpha = ctx.screening();
    const double l1 = s.ell + 1.0;
    const double root2m_over_hbar = std::sqrt(2.0 * ctx.mass()) / ctx.hbar();
    quad_first_ = l1 * alpha * alpha / 4.0;
    const double k = ground_second_order_coefficient(ctx, s.ell);
    cubic_second_ = -root2m_over_hbar * k * ctx.mass() * ctx.coupling() / 3.0;
    quad_second_ = -root2m_over_hbar * k * (s.ell + 1.0) * (s.ell + 2.0) * ctx.hbar() * ctx.hbar() / 2.0;
    if (alpha == 0.0) return;
    if (!(cubic_second_ < 0.0)) {
      throw std::domain_error("perturbed wavefunction is not normalizable: screening too strong for the "
                              "truncated expansion (4 m A <= 3 alpha hbar^2 (l+1)^2)");
    }
    IntegrationSpec spec;
    spec.decay_scale = orbital_.density_decay_scale();
    spec.rel_tol = 1e-12;
    const double z = integrate_halfline(
        [this](double r) {
          const double v = unnormalized(r);
          return v * v;
        },
        spec);
    inv_norm_ = 1.0 / std::sqrt(z);
  }

  double operator()(double r) const { return inv_norm_ * unnormalized(r); }

  /// ln phi contribution of dW1: (l+1) alpha^2 r^2 / 4.
  double exponent_first(double r) const { return quad_first_ * r * r; }
  /// ln phi contribution of dW2.
  double exponent_second(double r) const { return (cubic_second_ * r + quad_second_) * r * r; }
  /// Factor applied to chi * phi to reach unit norm.
  double normalization() const noexcept { return inv_norm_; }
  const CoulombOrbital& orbital() const noexcept { return orbital_; }

 private:
  double unnormalized(double r) const {
    return orbital_(r) * std::exp(exponent_first(r) + exponent_second(r));
  }

  CoulombOrbital orbital_;
  double quad_first_ = 0.0;
  double cubic_second_ = 0.0;
  double quad_second_ = 0.0;
  double inv_norm_ = 1.0;
};

inline PerturbedWavefunction perturbed_wavefunction(const PhysicalContext& ctx, const StateLabel& s) {
  return PerturbedWavefunction(ctx, s);
}

/// Effective angular momentum for the same radial problem in N dimensions:
/// Lambda = (N + 2 ell - 3) / 2. Identity for N = 3; half-integer for even N.
inline double effective_ell_ndim(int dimensions, int ell) {
  if (dimensions < 2) throw std::invalid_argument("effective_ell_ndim: dimension must be >= 2");
  if (ell < 0) throw std::invalid_argument("effective_ell_ndim: ell must be >= 0");
  return (dimensions + 2.0 * ell - 3.0) / 2.0;
}

}  // namespace yukawa
