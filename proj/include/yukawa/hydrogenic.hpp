#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "yukawa/special_functions.hpp"

namespace yukawa {

/// Units and strengths fixing every formula: V(r) = -(A/r) exp(-alpha r)
/// for a particle of mass m, with action unit hbar.
class PhysicalContext {
 public:
  PhysicalContext(double hbar, double mass, double coupling, double screening)
      : hbar_(hbar), mass_(mass), coupling_(coupling), screening_(screening) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw std::invalid_argument("hbar must be positive");
    if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be positive");
    if (!(coupling > 0.0) || !std::isfinite(coupling)) {
      throw std::invalid_argument("coupling A must be positive");
    }
    if (!(screening >= 0.0) || !std::isfinite(screening)) {
      throw std::invalid_argument("screening alpha must be non-negative");
    }
  }

  double hbar() const noexcept { return hbar_; }
  double mass() const noexcept { return mass_; }
  double coupling() const noexcept { return coupling_; }
  double screening() const noexcept { return screening_; }

  /// a = hbar^2 / (m A)
  double bohr_radius() const noexcept { return hbar_ * hbar_ / (mass_ * coupling_); }
  /// hbar / sqrt(2m), the factor multiplying W' in the Riccati equation.
  double riccati_scale() const noexcept { return hbar_ / std::sqrt(2.0 * mass_); }
  /// hbar^2 / (2m)
  double kinetic_scale() const noexcept { return hbar_ * hbar_ / (2.0 * mass_); }

  PhysicalContext with_screening(double alpha) const {
    return PhysicalContext(hbar_, mass_, coupling_, alpha);
  }

 private:
  double hbar_;
  double mass_;
  double coupling_;
  double screening_;
};

/// Radial quantum number n (node count) and angular momentum ell.
struct StateLabel {
  int n = 0;
  int ell = 0;

  StateLabel() = default;
  StateLabel(int n_, int ell_) : n(n_), ell(ell_) {
    if (n < 0 || ell < 0) {
      throw std::invalid_argument("state label requires n >= 0 and ell >= 0 (got n=" +
                                  std::to_string(n) + ", ell=" + std::to_string(ell) + ")");
    }
  }

  int principal() const noexcept { return n + ell + 1; }

  friend bool operator==(const StateLabel&, const StateLabel&) = default;
};

/// "1s", "2p", "3d", ... with principal number n + ell + 1.
inline std::string spectroscopic_label(const StateLabel& s) {
  static constexpr char kLetters[] = "spdfghiklmnoqrtuv";
  const char letter = s.ell < static_cast<int>(sizeof(kLetters) - 1) ? kLetters[s.ell] : '?';
  return std::to_string(s.principal()) + letter;
}

/// Inverse of spectroscopic_label for the letters s..v.
inline StateLabel parse_spectroscopic_label(const std::string& label) {
  static constexpr std::string_view kLetters = "spdfghiklmnoqrtuv";
  if (label.size() < 2) throw std::invalid_argument("bad spectroscopic label '" + label + "'");
  const auto pos = kLetters.find(label.back());
  if (pos == std::string_view::npos) {
    throw std::invalid_argument("bad spectroscopic label '" + label + "'");
  }
  const int principal = std::stoi(label.substr(0, label.size() - 1));
  const int ell = static_cast<int>(pos);
  if (principal < ell + 1) throw std::invalid_argument("bad spectroscopic label '" + label + "'");
  return StateLabel(principal - ell - 1, ell);
}

/// Raised when a logarithmic derivative is evaluated at (or numerically on top
/// of) a node of the underlying wavefunction.
class NodePoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Highest principal number accepted when building Coulomb eigenfunctions.
inline constexpr int kMaxPrincipal = 20;

inline double coulomb_energy(const PhysicalContext& ctx, const StateLabel& s) {
  const double np = s.principal();
  return -ctx.mass() * ctx.coupling() * ctx.coupling() / (2.0 * ctx.hbar() * ctx.hbar() * np * np);
}

/// 2<r>/a = 3n'^2 - ell(ell+1), an exact integer.
inline std::int64_t mean_r_numerator(const StateLabel& s) {
  const std::int64_t np = s.principal();
  const std::int64_t l = s.ell;
  return 3 * np * np - l * (l + 1);
}

/// 2<r^2>/a^2 = n'^2 [5n'^2 + 1 - 3 ell(ell+1)], an exact integer.
inline std::int64_t mean_r2_numerator(const StateLabel& s) {
  const std::int64_t np = s.principal();
  const std::int64_t l = s.ell;
  return np * np * (5 * np * np + 1 - 3 * l * (l + 1));
}

/// <r> in the unperturbed Coulomb state; independent of the screening.
inline double expectation_r(const PhysicalContext& ctx, const StateLabel& s) {
  return 0.5 * ctx.bohr_radius() * static_cast<double>(mean_r_numerator(s));
}

/// <r^2> in the unperturbed Coulomb state.
inline double expectation_r2(const PhysicalContext& ctx, const StateLabel& s) {
  const double a = ctx.bohr_radius();
  return 0.5 * a * a * static_cast<double>(mean_r2_numerator(s));
}

/// Normalized Coulomb radial eigenfunction
///
///   chi(r) = N rho^{ell+1} exp(-rho/2) L_n^{2ell+1}(rho),  rho = 2r / (n' a),
///
/// with N^2 = n! / [a n'^2 (n+2ell+1)!], which makes the integral of chi^2
/// over [0, inf) equal to one. chi is positive near the origin and has
/// exactly n interior nodes, which are located once at construction.
class CoulombOrbital {
 public:
  CoulombOrbital(const PhysicalContext& ctx, const StateLabel& s)
      : ctx_(ctx), state_(s) {
    if (s.principal() > kMaxPrincipal) {
      throw std::out_of_range("Coulomb eigenfunctions are supported up to principal number " +
                              std::to_string(kMaxPrincipal) + " (got " +
                              std::to_string(s.principal()) + ")");
    }
    const double a = ctx.bohr_radius();
    const double np = s.principal();
    rho_per_r_ = 2.0 / (np * a);
    log_norm_ = 0.5 * (log_factorial(s.n) - std::log(a) - 2.0 * std::log(np) -
                       log_factorial(s.n + 2 * s.ell + 1));
    locate_nodes();
  }

  const PhysicalContext& context() const noexcept { return ctx_; }
  const StateLabel& state() const noexcept { return state_; }
  double energy() const { return coulomb_energy(ctx_, state_); }
  /// e-fold length of chi^2.
  double density_decay_scale() const noexcept { return 0.5 * state_.principal() * ctx_.bohr_radius(); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }

  double operator()(double r) const {
    check_radius(r);
    if (r == 0.0) return 0.0;
    const double rho = rho_per_r_ * r;
    const double log_envelope = log_norm_ + (state_.ell + 1) * std::log(rho) - 0.5 * rho;
    if (log_envelope < kLogUnderflow) return 0.0;  // avoids 0 * inf from the polynomial
    return std::exp(log_envelope) * poly(rho);
  }

  double derivative(double r) const {
    check_radius(r);
    const double rho = rho_per_r_ * r;
    // N rho^ell e^{-rho/2} [((ell+1) - rho/2) L + rho L'] * d(rho)/dr
    const double log_base = (state_.ell == 0 && rho == 0.0) ? log_norm_
                                                            : log_norm_ + state_.ell * std::log(rho) - 0.5 * rho;
    if (log_base < kLogUnderflow) return 0.0;
    const double base = std::exp(log_base);
    return rho_per_r_ * base * (((state_.ell + 1) - 0.5 * rho) * poly(rho) + rho * poly_d1(rho));
  }

  /// chi'/chi; a pole at every node and at the origin.
  double log_derivative(double r) const {
    check_pole(r);
    const double rho = rho_per_r_ * r;
    return rho_per_r_ * ((state_.ell + 1) / rho - 0.5 + poly_d1(rho) / poly(rho));
  }

  /// d/dr (chi'/chi), evaluated from Laguerre derivatives, not from the
  /// differential equation chi satisfies.
  double log_derivative_slope(double r) const {
    check_pole(r);
    const double rho = rho_per_r_ * r;
    const double p = poly(rho);
    const double d1 = poly_d1(rho);
    const double d2 = poly_d2(rho);
    return rho_per_r_ * rho_per_r_ * (-(state_.ell + 1) / (rho * rho) + (d2 * p - d1 * d1) / (p * p));
  }

 private:
  static constexpr double kLogUnderflow = -700.0;

  static void check_radius(double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw std::domain_error("radial coordinate must be finite and non-negative");
    }
  }

  void check_pole(double r) const {
    check_radius(r);
    if (r == 0.0) throw NodePoleError("logarithmic derivative is singular at r = 0");
    const double guard = 1e-12 * ctx_.bohr_radius();
    for (double node : nodes_) {
      if (std::fabs(r - node) <= guard) {
        throw NodePoleError("logarithmic derivative evaluated at a node of chi (r = " +
                            std::to_string(node) + ")");
      }
    }
    if (poly(rho_per_r_ * r) == 0.0) {
      throw NodePoleError("logarithmic derivative evaluated at a node of chi");
    }
  }

  double poly(double rho) const { return laguerre({state_.n, 2 * state_.ell + 1}, rho); }
  double poly_d1(double rho) const {
    return state_.n >= 1 ? -laguerre({state_.n - 1, 2 * state_.ell + 2}, rho) : 0.0;
  }
  double poly_d2(double rho) const {
    return state_.n >= 2 ? laguerre({state_.n - 2, 2 * state_.ell + 3}, rho) : 0.0;
  }

  // Sign changes of the Laguerre factor on a 4096-point scan of (0, 60 n' a),
  // refined by bisection to the resolution of double.
  void locate_nodes() {
    if (state_.n == 0) return;
    constexpr int kScan = 4096;
    const double upper = 60.0 * state_.principal() * ctx_.bohr_radius();
    const double h = upper / kScan;
    double r_prev = h * 1e-3;
    double f_prev = poly(rho_per_r_ * r_prev);
    for (int i = 1; i <= kScan; ++i) {
      const double r = i * h;
      const double f = poly(rho_per_r_ * r);
      if (f == 0.0) {
        nodes_.push_back(r);
      } else if ((f < 0.0) != (f_prev < 0.0) && f_prev != 0.0) {
        double lo = r_prev;
        double hi = r;
        double f_lo = f_prev;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          const double fm = poly(rho_per_r_ * mid);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((fm < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = fm;
          } else {
            hi = mid;
          }
        }
        nodes_.push_back(0.5 * (lo + hi));
      }
      r_prev = r;
      f_prev = f;
    }
  }

  PhysicalContext ctx_;
  StateLabel state_;
  double rho_per_r_ = 0.0;
  double log_norm_ = 0.0;
  std::vector<double> nodes_;
};

inline CoulombOrbital chi(const PhysicalContext& ctx, const StateLabel& s) {
  return CoulombOrbital(ctx, s);
}

/// Unperturbed superpotential W(r) = -(hbar/sqrt(2m)) chi'/chi. For n = 0 it
/// reduces to -(hbar/sqrt(2m)) (ell+1)/r + sqrt(m/2) A / ((ell+1) hbar); for
/// n >= 1 it has a pole at every node of chi, where evaluation raises
/// NodePoleError.
class Superpotential {
 public:
  Superpotential(const PhysicalContext& ctx, const StateLabel& s) : orbital_(ctx, s) {}

  double operator()(double r) const {
    return -orbital_.context().riccati_scale() * orbital_.log_derivative(r);
  }

  double derivative(double r) const {
    return -orbital_.context().riccati_scale() * orbital_.log_derivative_slope(r);
  }

  const CoulombOrbital& orbital() const noexcept { return orbital_; }
  const std::vector<double>& poles() const noexcept { return orbital_.nodes(); }

  /// Limit r -> infinity for the nodeless states.
  double asymptote() const {
    const auto& ctx = orbital_.context();
    return std::sqrt(ctx.mass() / 2.0) * ctx.coupling() /
           (orbital_.state().principal() * ctx.hbar());
  }

 private:
  CoulombOrbital orbital_;
};

inline Superpotential superpotential(const PhysicalContext& ctx, const StateLabel& s) {
  return Superpotential(ctx, s);
}

}  // namespace yukawa
