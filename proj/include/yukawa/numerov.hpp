#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "yukawa/hydrogenic.hpp"
#include "yukawa/quadrature.hpp"

namespace yukawa {

/// Radial mesh r_i = r_min * exp(i * step), uniform in ln r. The geometric
/// spacing resolves the cusp of deep potentials near the origin and the long
/// exponential tails of weakly bound states with the same point count.
struct RadialGrid {
  double r_min = 1e-6;
  double r_max = 100.0;
  double step = 1e-3;  ///< spacing in ln r

  int intervals() const {
    return static_cast<int>(std::ceil((std::log(r_max) - std::log(r_min)) / step));
  }

  void validate() const {
    if (!(r_min > 0.0) || !std::isfinite(r_min)) throw std::invalid_argument("RadialGrid: r_min must be positive");
    if (!(r_max > r_min) || !std::isfinite(r_max)) throw std::invalid_argument("RadialGrid: r_max must exceed r_min");
    if (!(step > 0.0)) throw std::invalid_argument("RadialGrid: step must be positive");
    if ((std::log(r_max) - std::log(r_min)) / step < 1000.0) {
      throw std::invalid_argument("RadialGrid: fewer than 1000 intervals between r_min and r_max");
    }
  }
};

struct ShootingResult {
  double energy = 0.0;
  int node_count = 0;
  double log_derivative_mismatch = 0.0;  ///< jump in u'/u at the matching radius
  bool converged = false;
  double matching_radius = 0.0;
  RadialGrid grid;
  std::vector<double> radii;  ///< grid points
  std::vector<double> u;      ///< matched solution u(r), unit norm
};

class NoBoundStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BracketingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ShootingOptions {
  int scan_points = 200;
  double energy_rel_tol = 1e-10;
  double mismatch_tol = 1e-6;  ///< on the jump in u'/u, inverse length units
  int max_iterations = 400;
};

/// -(A/r) e^{-alpha r} + ell(ell+1) hbar^2 / (2 m r^2); r = 0 is a domain error.
inline RadialEvaluator effective_potential(const PhysicalContext& ctx, int ell) {
  if (ell < 0) throw std::invalid_argument("effective_potential: ell must be >= 0");
  const double A = ctx.coupling();
  const double alpha = ctx.screening();
  const double barrier = ell * (ell + 1.0) * ctx.kinetic_scale();
  return [=](double r) {
    if (!(r > 0.0)) throw std::domain_error("effective potential is singular at r = 0");
    return -(A / r) * std::exp(-alpha * r) + barrier / (r * r);
  };
}

/// Strict sign changes in a sampled function, skipping samples whose
/// magnitude is below 1e-13 of the largest one.
inline int count_nodes(std::span<const double> u) {
  double peak = 0.0;
  for (double v : u) peak = std::max(peak, std::fabs(v));
  if (peak == 0.0) return 0;
  const double floor = 1e-13 * peak;
  int nodes = 0;
  int last_sign = 0;
  for (double v : u) {
    if (std::fabs(v) <= floor) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

/// Default mesh for a state with principal number n'.
inline RadialGrid default_grid(const PhysicalContext& ctx, const StateLabel& s) {
  const double a = ctx.bohr_radius();
  const double np = s.principal();
  RadialGrid g;
  g.r_min = 1e-6 * a;
  g.r_max = 60.0 * np * np * a;
  g.step = 1e-3;
  return g;
}

namespace detail {

// Radial equation u'' = (2m/hbar^2)(V_eff - E) u, rewritten on x = ln r with
// u = sqrt(r) y as y'' = k(x) y, k = (2m/hbar^2) r^2 (V - E) + (ell + 1/2)^2,
// and integrated with the Numerov three-term recursion.
class NumerovShooter {
 public:
  NumerovShooter(const PhysicalContext& ctx, int ell, const RadialGrid& grid)
      : ctx_(ctx), ell_(ell), grid_(grid) {
    grid_.validate();
    n_ = grid_.intervals();
    const double two_m_over_h2 = 1.0 / ctx.kinetic_scale();
    const double x0 = std::log(grid_.r_min);
    r_.resize(static_cast<std::size_t>(n_ + 1));
    q_.resize(r_.size());
    e_.resize(r_.size());
    veff_.resize(r_.size());
    const auto v = effective_potential(ctx, ell);
    for (int i = 0; i <= n_; ++i) {
      const double r = std::exp(x0 + i * grid_.step);
      const auto iu = static_cast<std::size_t>(i);
      r_[iu] = r;
      e_[iu] = two_m_over_h2 * r * r;
      q_[iu] = -two_m_over_h2 * ctx.coupling() * r * std::exp(-ctx.screening() * r);
      veff_[iu] = v(r);
    }
    centrifugal_ = (ell + 0.5) * (ell + 0.5);
    h2_12_ = grid_.step * grid_.step / 12.0;
  }

  int size() const { return n_ + 1; }
  const std::vector<double>& radii() const { return r_; }
  const RadialGrid& grid() const { return grid_; }

  double f(int i, double energy) const {
    const auto iu = static_cast<std::size_t>(i);
    return 1.0 - h2_12_ * (q_[iu] - e_[iu] * energy + centrifugal_);
  }

  /// Number of sign changes of the regular solution over the whole mesh,
  /// i.e. the number of Dirichlet eigenvalues below `energy`.
  int node_count(double energy) const {
    double y_prev = start_value(0);
    double y = start_value(1);
    double f_prev = f(0, energy);
    double f_cur = f(1, energy);
    int nodes = 0;
    for (int i = 1; i < n_; ++i) {
      const double f_next = f(i + 1, energy);
      double y_next = ((12.0 - 10.0 * f_cur) * y - f_prev * y_prev) / f_next;
      if (std::fabs(y_next) > kRescale) {
        y_next /= kRescale;
        y /= kRescale;
      }
      if ((y_next < 0.0) != (y < 0.0) && y_next != 0.0) ++nodes;
      y_prev = y;
      y = y_next;
      f_prev = f_cur;
      f_cur = f_next;
    }
    return nodes;
  }

  /// Index of the outermost classical turning point for `energy`, clamped to
  /// the interior; the mesh midpoint when there is none.
  int turning_index(double energy) const {
    for (int i = n_ - 2; i >= 2; --i) {
      if (veff_[static_cast<std::size_t>(i)] - energy < 0.0) return std::min(i + 1, n_ - 2);
    }
    return n_ / 2;
  }

  struct Match {
    double mismatch;        ///< jump in d(ln u)/dr at the matching point
    std::vector<double> y;  ///< combined solution on the full mesh
  };

  Match match(double energy, int icl) const {
    std::vector<double> y(static_cast<std::size_t>(n_ + 1), 0.0);
    // outward to icl + 1
    y[0] = start_value(0);
    y[1] = start_value(1);
    for (int i = 1; i <= icl; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      y[iu + 1] = ((12.0 - 10.0 * f(i, energy)) * y[iu] - f(i - 1, energy) * y[iu - 1]) / f(i + 1, energy);
      if (std::fabs(y[iu + 1]) > kRescale) {
        for (int j = 0; j <= i + 1; ++j) y[static_cast<std::size_t>(j)] /= kRescale;
      }
    }
    const auto ic = static_cast<std::size_t>(icl);
    const double y_out_c = y[ic];
    const double y_out_m = y[ic - 1];

    // inward from r_max (Dirichlet) to icl - 1
    std::vector<double> yin(static_cast<std::size_t>(n_ + 1), 0.0);
    yin[static_cast<std::size_t>(n_)] = 0.0;
    yin[static_cast<std::size_t>(n_ - 1)] = 1e-200;
    for (int i = n_ - 1; i >= icl; --i) {
      const auto iu = static_cast<std::size_t>(i);
      yin[iu - 1] = ((12.0 - 10.0 * f(i, energy)) * yin[iu] - f(i + 1, energy) * yin[iu + 1]) / f(i - 1, energy);
      if (std::fabs(yin[iu - 1]) > kRescale) {
        for (int j = i - 1; j <= n_; ++j) yin[static_cast<std::size_t>(j)] /= kRescale;
      }
    }
    if (yin[ic] == 0.0 || y_out_c == 0.0) {
      return {std::nan(""), {}};
    }
    const double scale = y_out_c / yin[ic];
    for (int j = icl; j <= n_; ++j) y[static_cast<std::size_t>(j)] = yin[static_cast<std::size_t>(j)] * scale;
    // Numerov defect of the glued function at icl, as a log-derivative jump in r.
    const double defect = f(icl + 1, energy) * y[ic + 1] + f(icl - 1, energy) * y_out_m -
                          (12.0 - 10.0 * f(icl, energy)) * y_out_c;
    const double mismatch = defect / (grid_.step * y_out_c * r_[ic]);
    return {mismatch, std::move(y)};
  }

 private:
  double start_value(int i) const {
    const double r = r_[static_cast<std::size_t>(i)];
    // u ~ r^{ell+1} (1 - r / ((ell+1) a)) near the Coulomb singularity
    return std::pow(r, ell_ + 0.5) * (1.0 - r / ((ell_ + 1.0) * ctx_.bohr_radius()));
  }

  static constexpr double kRescale = 1e150;

  PhysicalContext ctx_;
  int ell_;
  RadialGrid grid_;
  int n_ = 0;
  std::vector<double> r_, q_, e_, veff_;
  double centrifugal_ = 0.0;
  double h2_12_ = 0.0;
};

}  // namespace detail

/// Bound state of the full screened potential with `target_nodes` radial
/// nodes, by Numerov shooting on `grid`.
///
/// The window [1.5 eps_C, 0) (eps_C the Coulomb level of the same state) is
/// scanned at `scan_points` trial energies for a change in the Sturm node
/// count; node-count bisection isolates the single level, and bisection on
/// the log-derivative mismatch at the outer turning point converges it to
/// |dE| < energy_rel_tol |E|.
inline ShootingResult solve_bound_state(const PhysicalContext& ctx, int ell, int target_nodes,
                                        const RadialGrid& grid, const ShootingOptions& opts = {}) {
  if (target_nodes < 0) throw std::invalid_argument("solve_bound_state: target_nodes must be >= 0");
  const StateLabel state(target_nodes, ell);
  const detail::NumerovShooter shooter(ctx, ell, grid);

  const double window_low = 1.5 * coulomb_energy(ctx, state);
  std::vector<double> trial(static_cast<std::size_t>(opts.scan_points));
  for (int j = 0; j < opts.scan_points; ++j) {
    trial[static_cast<std::size_t>(j)] = window_low * (1.0 - static_cast<double>(j) / opts.scan_points);
  }
  if (shooter.node_count(trial.front()) > target_nodes) {
    throw NoBoundStateError("level with " + std::to_string(target_nodes) + " nodes (ell=" + std::to_string(ell) +
                            ") lies below the search window");
  }
  double lo = 0.0;
  double hi = 0.0;
  bool found = false;
  for (int j = 1; j < opts.scan_points; ++j) {
    if (shooter.node_count(trial[static_cast<std::size_t>(j)]) > target_nodes) {
      lo = trial[static_cast<std::size_t>(j - 1)];
      hi = trial[static_cast<std::size_t>(j)];
      found = true;
      break;
    }
  }
  if (!found) {
    throw NoBoundStateError("no bound state with " + std::to_string(target_nodes) + " nodes (ell=" +
                            std::to_string(ell) + ") in [" + std::to_string(window_low) + ", 0)");
  }

  // Isolate the level: N(lo) == target, N(hi) == target + 1, narrow bracket.
  int iterations = 0;
  int n_lo = shooter.node_count(lo);
  int n_hi = shooter.node_count(hi);
  while ((n_lo != target_nodes || n_hi != target_nodes + 1 || hi - lo > 1e-6 * std::fabs(lo)) &&
         iterations < opts.max_iterations) {
    const double mid = 0.5 * (lo + hi);
    const int n_mid = shooter.node_count(mid);
    if (n_mid <= target_nodes) {
      lo = mid;
      n_lo = n_mid;
    } else {
      hi = mid;
      n_hi = n_mid;
    }
    ++iterations;
  }

  const int icl = shooter.turning_index(0.5 * (lo + hi));
  double m_lo = shooter.match(lo, icl).mismatch;
  const double m_hi = shooter.match(hi, icl).mismatch;
  const bool mismatch_bracket = std::isfinite(m_lo) && std::isfinite(m_hi) && ((m_lo < 0.0) != (m_hi < 0.0));
  while (hi - lo > opts.energy_rel_tol * std::fabs(0.5 * (lo + hi)) && iterations < opts.max_iterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (mismatch_bracket) {
      const double m_mid = shooter.match(mid, icl).mismatch;
      if (std::isfinite(m_mid) && ((m_mid < 0.0) == (m_lo < 0.0))) {
        lo = mid;
        m_lo = m_mid;
      } else {
        hi = mid;
      }
    } else if (shooter.node_count(mid) <= target_nodes) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++iterations;
  }

  ShootingResult result;
  result.energy = 0.5 * (lo + hi);
  result.converged = hi - lo <= opts.energy_rel_tol * std::fabs(result.energy);
  result.grid = grid;
  result.matching_radius = shooter.radii()[static_cast<std::size_t>(icl)];
  auto matched = shooter.match(result.energy, icl);
  result.log_derivative_mismatch = matched.mismatch;
  if (!std::isfinite(matched.mismatch)) {
    throw BracketingError("matching failed at E = " + std::to_string(result.energy));
  }

  result.radii = shooter.radii();
  result.u.resize(matched.y.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < matched.y.size(); ++i) {
    result.u[i] = matched.y[i] * std::sqrt(result.radii[i]);
    // dr = r dx on the logarithmic mesh (trapezoid)
    const double w = (i == 0 || i + 1 == matched.y.size()) ? 0.5 : 1.0;
    norm += w * result.u[i] * result.u[i] * result.radii[i] * grid.step;
  }
  const double inv = 1.0 / std::sqrt(norm);
  for (double& v : result.u) v *= inv;

  // Interior nodes only: skip the first points next to r_min.
  result.node_count = count_nodes(std::span<const double>(result.u).subspan(2));
  if (result.node_count != target_nodes) {
    throw BracketingError("converged solution at E = " + std::to_string(result.energy) + " has " +
                          std::to_string(result.node_count) + " nodes, expected " +
                          std::to_string(target_nodes));
  }
  result.converged = result.converged && std::fabs(result.log_derivative_mismatch) <= opts.mismatch_tol;
  return result;
}

/// Same, on default_grid(), extending r_max until it lies at least 40 decay
/// lengths beyond the classical turning point of the converged level.
inline ShootingResult solve_bound_state(const PhysicalContext& ctx, int ell, int target_nodes,
                                        const ShootingOptions& opts = {}) {
  RadialGrid grid = default_grid(ctx, StateLabel(target_nodes, ell));
  for (int attempt = 0;; ++attempt) {
    ShootingResult result = solve_bound_state(ctx, ell, target_nodes, grid, opts);
    const double kappa = std::sqrt(2.0 * ctx.mass() * std::fabs(result.energy)) / ctx.hbar();
    const double needed = result.matching_radius + 40.0 / kappa;
    if (grid.r_max >= needed || attempt >= 6) return result;
    grid.r_max = 1.5 * needed;
  }
}

}  // namespace yukawa
