#include "sinhproj/sinh_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sinhproj {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Root of an increasing concave g on (0,∞) by monotone Newton from a seed
// left of the root (tangents of a concave function overshoot from the left
// only up to the root, never past it).
template <class F, class DF>
double newton_increasing_concave(F g, DF dg, double seed) {
  double x = std::max(seed, 1e-12);
  while (g(x) >= 0.0 && x > 1e-12) x *= 0.5;
  for (int it = 0; it < 100; ++it) {
    double step = g(x) / dg(x);
    double next = x - step;
    if (!(next > x)) break;  // converged (or stalled) from the left
    x = next;
    if (std::abs(step) < 1e-13 * (1.0 + x)) break;
  }
  return x;
}

}  // namespace

SinhContour select_contour(double mu_lo, double mu_hi, double gam_lo,
                           double gam_hi, double kb, double kd) {
  if (!(mu_lo < mu_hi))
    throw std::invalid_argument("select_contour: empty strip window");
  if (!(gam_lo < gam_hi))
    throw std::invalid_argument("select_contour: empty angle cone");
  double sl = std::sin(gam_lo), sh = std::sin(gam_hi);
  double b0 = (mu_hi - mu_lo) / (sh - sl);
  SinhContour c;
  c.omega1 = mu_hi - b0 * sh;
  c.omega = 0.5 * (gam_lo + gam_hi);
  c.b = kb * b0;
  c.d = kd * 0.5 * (gam_hi - gam_lo);
  return c;
}

double trapezoid_step(double hardy_bound, double eps, double d) {
  if (!(d > 0.0)) throw std::invalid_argument("trapezoid_step: d must be > 0");
  double lg = std::log(std::max(hardy_bound / eps, 2.0));
  return 2.0 * kPi * d / lg;
}

double solve_truncation(double a1, double a2, double nu, double C1) {
  if (!(a2 > 0.0) || a1 < 0.0 || !(nu > 0.0))
    throw std::invalid_argument("solve_truncation: bad coefficients");
  if (C1 <= 1.0) return 1.0;

  if (nu <= 1.0) {
    auto g = [&](double x) {
      return a1 * x + a2 * std::pow(x, nu) + std::log(x) - C1;
    };
    auto dg = [&](double x) {
      return a1 + a2 * nu * std::pow(x, nu - 1.0) + 1.0 / x;
    };
    double seed = std::exp(C1 / 3.0);
    if (a1 > 0.0) seed = std::min(seed, C1 / (3.0 * a1));
    seed = std::min(seed, std::pow(C1 / (3.0 * a2), 1.0 / nu));
    return newton_increasing_concave(g, dg, seed);
  }

  // ν > 1: substitute Λ = t^{1/ν} so every power has exponent ≤ 1 and the
  // same monotone-Newton argument applies.
  double s = 1.0 / nu;
  auto g = [&](double t) {
    return a1 * std::pow(t, s) + a2 * t + s * std::log(t) - C1;
  };
  auto dg = [&](double t) {
    return a1 * s * std::pow(t, s - 1.0) + a2 + s / t;
  };
  double seed = std::min(std::exp(nu * C1 / 3.0), C1 / (3.0 * a2));
  if (a1 > 0.0) seed = std::min(seed, std::pow(C1 / (3.0 * a1), nu));
  double t = newton_increasing_concave(g, dg, seed);
  return std::pow(t, s);
}

double solve_series_cutoff(double a1, double C1) {
  if (!(a1 > 0.0))
    throw std::invalid_argument("solve_series_cutoff: a1 must be > 0");
  if (C1 <= 1.0) return 1.0;
  auto g = [&](double x) { return x + a1 * std::log(x) - C1; };
  auto dg = [&](double x) { return 1.0 + a1 / x; };
  return newton_increasing_concave(g, dg, 1.0);
}

}  // namespace sinhproj
