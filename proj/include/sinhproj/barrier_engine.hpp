#pragma once

#include <string>
#include <vector>

#include "sinhproj/levy_models.hpp"

namespace sinhproj {

enum class PayoffKind {
  european_call,
  european_put,
  up_out_call,
  up_out_put,
  down_out_call,
  down_out_put,
  double_out_call,
  double_out_put,
};

bool has_lower_barrier(PayoffKind k);
bool has_upper_barrier(PayoffKind k);
bool is_call(PayoffKind k);
PayoffKind payoff_from_string(const std::string& name);

struct PricingRequest {
  PayoffKind kind = PayoffKind::european_put;
  double S0 = 100.0;
  double K = 100.0;
  double L = 0.0;    // lower barrier (kinds with one)
  double U = 0.0;    // upper barrier (kinds with one)
  double T = 1.0;
  int M = 1;         // number of monitoring dates; Δ̄ = T/M
};

// Value grid in log-moneyness y = ln(S/S0): y_n = l + (n−1)Δ, n = 1..ny.
// Barrier ends sit exactly on y_1 / y_ny.  For single-barrier grids the free
// end is placed a cumulant-scaled width α away from the barrier; n0 is the
// index with y_{n0} ≤ 0 < y_{n0}+Δ used by the spot readout.
struct ValueGrid {
  double l = 0.0;
  double u = 0.0;
  double dx = 0.0;
  int ny = 0;
  int n0 = 0;

  double y(int n) const { return l + (n - 1) * dx; }  // n = 1..ny
};

// Grid construction from a width parameter L1 (α = L1·sqrt(c2 T + sqrt(c4 T))
// through the model's cumulants).  Throws if the request geometry is invalid.
ValueGrid build_grid(const PricingRequest& req, const CharExp& model, int ny,
                     double L1);

// Same, with the half-width α given directly.
ValueGrid build_grid_width(const PricingRequest& req, int ny, double alpha);

// Hat-averages of exponentials, ∫φ(u)e^{uΔ}du over u < 0 / u > 0 / all,
// by the same three-point Gauss rule per unit cell that the terminal
// coefficients use.
struct HatExpAverages {
  double below = 0.0;
  double above = 0.0;
  double full = 0.0;
};
HatExpAverages hat_exp_averages(double dx);

enum class BetaMethod { sinh, fft, fft_aa };

// Terminal B-spline payoff coefficients θ_{M,k}, k = 1..ny (closed forms).
std::vector<double> theta_terminal(const PricingRequest& req,
                                   const ValueGrid& grid);

// In-place update V ↦ θ for interior steps: one-sided 4-point rows at the
// grid ends, [1 10 1]/12 inside.
void theta_update(const std::vector<double>& v, std::vector<double>& theta);

// Backward induction over M monitoring dates given the transition
// coefficients β̄ on the difference grid x_j = (j − ny)Δ, j = 1..2ny.
double price_backward(const PricingRequest& req, const CharExp& model,
                      const std::vector<double>& beta_bar,
                      const ValueGrid& grid);

struct PriceResult {
  double price = 0.0;
  ValueGrid grid;
  int nx = 0;  // coefficient count = 2·ny
};

// Grid + transition coefficients + induction in one call.  For the fft
// methods the dual grid is Nyquist-paired to the state grid (ny samples
// across [−πa, πa], density period = grid span); fft_aa widens the period
// by `enlarge` to push the wrap-around out of the coefficient range.
PriceResult price_barrier(const PricingRequest& req, const CharExp& model,
                          int ny, double L1, BetaMethod method,
                          double eps = 1e-12, int enlarge = 6);

// European option priced on a [-α, α] value grid by a single induction step
// (M = 1) from the terminal coefficients.
PriceResult price_european_proj(const PricingRequest& req,
                                const CharExp& model, int ny, double L1,
                                BetaMethod method, double eps = 1e-12);

// European put/call by direct sinh-deformed Fourier inversion (no grid);
// calls go through put-call parity.
double price_european_sinh(const PricingRequest& req, const CharExp& model,
                           double eps = 1e-10);

}  // namespace sinhproj
