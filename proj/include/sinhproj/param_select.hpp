#pragma once

#include <vector>

#include "sinhproj/barrier_engine.hpp"
#include "sinhproj/levy_models.hpp"

namespace sinhproj {

// Cumulant-scaled half-width of the value grid: L1·sqrt(κ₂T + sqrt(κ₄T)).
double cumulant_width(const CharExp& model, double T, double L1);

// CDF of X_T at x from the finite Hilbert-transform inversion
//   F(x) ≈ 1/2 − (1/π) Σ_{n=1..N} Im[ e^{-i x u_n} E e^{i u_n X_T} ]/(n − 1/2),
// u_n = (n − 1/2)·dxi.
double cdf_estimate(const CharExp& model, double T, double x, double dxi,
                    int N);

// |Σ_k a^{-1/2} ϑ* β̄_k e^{x_k} − e^{(r−q)Δ̄}|: how well the projected
// transition kernel integrates e^x (exactly e^{(r−q)Δ̄} under the pricing
// measure).  x1, dx describe the coefficient grid.
double martingale_residual(const std::vector<double>& beta_bar, double x1,
                           double dx, double dt, double r, double q);

struct AutoResult {
  int ny = 0;
  double alpha = 0.0;
  ValueGrid grid;
  std::vector<double> beta_bar;
  int tail_doublings = 0;   // grid-width stage iterations
  int dist_doublings = 0;   // martingale stage iterations
};

struct AutoOptions {
  double L1 = 10.0;
  double eps_tail = 5e-8;    // mass beyond the far grid end
  double eps_dist = 1e-5;    // martingale residual target (per step × M)
  double widen = 1.1;        // α growth factor per tail failure
  int ny_cap = 1 << 17;      // hard stop
  double beta_eps = 1e-12;
};

// Automatic grid sizing for single-barrier pricing: grows the grid until the
// stray tail mass past the far end is below eps_tail, then doubles the
// resolution until the projected kernel reproduces the forward e^{(r−q)Δ̄}
// to eps_dist/M.  Throws if ny would exceed ny_cap.
AutoResult auto_params(const PricingRequest& req, const CharExp& model,
                       const AutoOptions& opt = {});

// A-priori error budgets ------------------------------------------------

// Bound on the mass the truncated state space ignores, as a log-moneyness
// half-width: smallest x beyond which the (discounted, dampened) payoff tail
// contributes less than eps to a down-and-out price with barrier h = ln(H/S0).
double tail_width_for_budget(const CharExp& model, double T, double K,
                             double x, double h, double eps);
// Same bound for a payoff capped at K (crude, strike-only version).
double tail_width_for_budget_bounded(const CharExp& model, double T, double K,
                                     double eps);

// sup bound  ρ_n = 2Γ(n/ν) / (c∞(0)^{n/ν} π ν D(n)) · Δ̄^{-n/ν}  on the n-th
// derivative of the transition density, D(n) = sup_φ (cos(νφ))^{n/ν} sin φ.
double density_derivative_bound(const CharExp& model, double dt, int n);

// Grid step for which the interpolation part of the error budget stays
// below eps (uses ρ₃ at Δ̄ = T/M).
double step_for_budget(const CharExp& model, double T, int M, double K,
                       double H, int ny, double eps);

}  // namespace sinhproj
