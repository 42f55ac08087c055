#pragma once

#include <algorithm>
#include <cmath>

#include "bgkale/core/error.hpp"

namespace bgkale {

struct EulerState {
  double rho = 1.0;
  double u = 0.0;
  double p = 1.0;
};

struct RiemannStar {
  double p = 0.0;
  double u = 0.0;
  double rho_left = 0.0;
  double rho_right = 0.0;
};

/// Exact solution of the 1D Euler Riemann problem for an ideal gas.
class ExactRiemann {
 public:
  ExactRiemann(EulerState left, EulerState right, double gamma = 5.0 / 3.0, double tol = 1e-12)
      : l_(left), r_(right), g_(gamma) {
    if (!(l_.rho > 0.0 && r_.rho > 0.0 && l_.p > 0.0 && r_.p > 0.0))
      throw ConfigError("Riemann data needs positive densities and pressures");
    if (!(gamma > 1.0)) throw ConfigError("gamma must exceed 1");
    cl_ = std::sqrt(g_ * l_.p / l_.rho);
    cr_ = std::sqrt(g_ * r_.p / r_.rho);
    if (2.0 * (cl_ + cr_) / (g_ - 1.0) <= r_.u - l_.u)
      throw ConfigError("Riemann data generates vacuum");
    solve_star(tol);
  }

  const RiemannStar& star() const { return star_; }
  double gamma() const { return g_; }
  const EulerState& left() const { return l_; }
  const EulerState& right() const { return r_; }

  /// Pressure function f_K(p) and its derivative.
  double f(double p, const EulerState& s, double c, double* df = nullptr) const {
    if (p > s.p) {
      const double a = 2.0 / ((g_ + 1.0) * s.rho);
      const double b = (g_ - 1.0) / (g_ + 1.0) * s.p;
      const double q = std::sqrt(a / (p + b));
      if (df) *df = q * (1.0 - 0.5 * (p - s.p) / (p + b));
      return (p - s.p) * q;
    }
    const double e = (g_ - 1.0) / (2.0 * g_);
    if (df) *df = std::pow(p / s.p, -(g_ + 1.0) / (2.0 * g_)) / (s.rho * c);
    return 2.0 * c / (g_ - 1.0) * (std::pow(p / s.p, e) - 1.0);
  }

  /// Self-similar state at xi = x / t.
  EulerState sample(double xi) const {
    const double g = g_;
    if (xi <= star_.u) {
      if (star_.p > l_.p) {
        const double sl = l_.u - cl_ * std::sqrt((g + 1.0) / (2.0 * g) * star_.p / l_.p +
                                                 (g - 1.0) / (2.0 * g));
        if (xi <= sl) return l_;
        return {star_.rho_left, star_.u, star_.p};
      }
      const double head = l_.u - cl_;
      const double cs = cl_ * std::pow(star_.p / l_.p, (g - 1.0) / (2.0 * g));
      const double tail = star_.u - cs;
      if (xi <= head) return l_;
      if (xi >= tail) return {star_.rho_left, star_.u, star_.p};
      const double k = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * cl_) * (l_.u - xi);
      return {l_.rho * std::pow(k, 2.0 / (g - 1.0)),
              2.0 / (g + 1.0) * (cl_ + 0.5 * (g - 1.0) * l_.u + xi),
              l_.p * std::pow(k, 2.0 * g / (g - 1.0))};
    }
    if (star_.p > r_.p) {
      const double sr = r_.u + cr_ * std::sqrt((g + 1.0) / (2.0 * g) * star_.p / r_.p +
                                               (g - 1.0) / (2.0 * g));
      if (xi >= sr) return r_;
      return {star_.rho_right, star_.u, star_.p};
    }
    const double head = r_.u + cr_;
    const double cs = cr_ * std::pow(star_.p / r_.p, (g - 1.0) / (2.0 * g));
    const double tail = star_.u + cs;
    if (xi >= head) return r_;
    if (xi <= tail) return {star_.rho_right, star_.u, star_.p};
    const double k = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * cr_) * (r_.u - xi);
    return {r_.rho * std::pow(k, 2.0 / (g - 1.0)),
            2.0 / (g + 1.0) * (-cr_ + 0.5 * (g - 1.0) * r_.u + xi),
            r_.p * std::pow(k, 2.0 * g / (g - 1.0))};
  }

  /// Contact and right shock speeds.
  double contact_speed() const { return star_.u; }
  double right_shock_speed() const {
    const double g = g_;
    return r_.u + cr_ * std::sqrt((g + 1.0) / (2.0 * g) * star_.p / r_.p + (g - 1.0) / (2.0 * g));
  }

 private:
  void solve_star(double tol) {
    const double du = r_.u - l_.u;
    // Two-rarefaction guess.
    const double e = (g_ - 1.0) / (2.0 * g_);
    double p = std::pow((cl_ + cr_ - 0.5 * (g_ - 1.0) * du) /
                            (cl_ / std::pow(l_.p, e) + cr_ / std::pow(r_.p, e)),
                        1.0 / e);
    p = std::max(p, 1e-14 * std::min(l_.p, r_.p));
    for (int it = 0; it < 200; ++it) {
      double dl = 0.0;
      double dr = 0.0;
      const double fl = f(p, l_, cl_, &dl);
      const double fr = f(p, r_, cr_, &dr);
      double next = p - (fl + fr + du) / (dl + dr);
      if (next <= 0.0) next = 0.5 * p;
      const double change = 2.0 * std::abs(next - p) / (next + p);
      p = next;
      if (change < tol) break;
    }
    star_.p = p;
    star_.u = 0.5 * (l_.u + r_.u) + 0.5 * (f(p, r_, cr_) - f(p, l_, cl_));
    star_.rho_left = star_density(l_);
    star_.rho_right = star_density(r_);
  }

  double star_density(const EulerState& s) const {
    const double q = star_.p / s.p;
    if (star_.p > s.p) {
      const double k = (g_ - 1.0) / (g_ + 1.0);
      return s.rho * (q + k) / (k * q + 1.0);
    }
    return s.rho * std::pow(q, 1.0 / g_);
  }

  EulerState l_;
  EulerState r_;
  double g_;
  double cl_ = 0.0;
  double cr_ = 0.0;
  RiemannStar star_;
};

inline EulerState euler_riemann_exact(const EulerState& left, const EulerState& right,
                                      double gamma, double xi) {
  return ExactRiemann(left, right, gamma).sample(xi);
}

}  // namespace bgkale
