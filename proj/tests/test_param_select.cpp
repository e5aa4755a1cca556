#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "reference_values.hpp"
#include "sinhproj/barrier_engine.hpp"
#include "sinhproj/levy_models.hpp"
#include "sinhproj/param_select.hpp"
#include "sinhproj/proj_coefficients.hpp"

using sinhproj::AutoOptions;
using sinhproj::AutoResult;
using sinhproj::PayoffKind;
using sinhproj::PricingRequest;

namespace {

sinhproj::Kobol test1() {
  return sinhproj::Kobol::from_second_moment(1.2, 0.1, 11.0, -4.0, 0.02, 0.0);
}

sinhproj::Kobol test2() {
  return sinhproj::Kobol::from_second_moment(0.3, 0.1, 8.0, -9.0, 0.02, 0.0);
}

double rel(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("cumulant-scaled width") {
  const auto t1 = test1();
  CHECK(rel(sinhproj::cumulant_width(t1, 1.0, 8.0), refvals::cdf_alpha8_t1) <=
        1e-6);
  CHECK(sinhproj::cumulant_width(t1, 1.0, 10.0) >
        sinhproj::cumulant_width(t1, 1.0, 8.0));
  CHECK(sinhproj::cumulant_width(t1, 2.0, 8.0) >
        sinhproj::cumulant_width(t1, 1.0, 8.0));
}

TEST_CASE("cdf inversion matches the frozen sum") {
  const auto t1 = test1();
  const double got =
      sinhproj::cdf_estimate(t1, 1.0, refvals::cdf_probe_x,
                             refvals::cdf_probe_dxi,
                             static_cast<int>(refvals::cdf_probe_N));
  CHECK(std::abs(got - refvals::cdf_probe_val) <= 1e-12);
  CHECK_THROWS_AS(sinhproj::cdf_estimate(t1, 1.0, 0.0, -0.1, 16),
                  std::invalid_argument);
}

TEST_CASE("martingale residual is small on an adequate grid") {
  const auto t1 = test1();
  sinhproj::BetaRequest req;
  req.model = &t1;
  req.a = 64.0;
  req.dt = 1.0 / 12.0;
  req.x1 = -255.0 / 64.0;
  req.nx = 512;
  const std::vector<double> beta = sinhproj::beta_sinh(req);
  const double resid = sinhproj::martingale_residual(
      beta, req.x1, 1.0 / req.a, req.dt, t1.rate(), t1.dividend());
  CHECK(resid <= 1e-8);

  // Dropping half the coefficients discards positive mass.
  const std::vector<double> head(beta.begin(), beta.begin() + 256);
  const double crippled = sinhproj::martingale_residual(
      head, req.x1, 1.0 / req.a, req.dt, t1.rate(), t1.dividend());
  CHECK(crippled > resid);
}

TEST_CASE("automatic sizing of a down-and-out grid") {
  const auto t1 = test1();
  PricingRequest req;
  req.kind = PayoffKind::down_out_put;
  req.K = 105.0;
  req.L = 80.0;
  req.M = 24;

  const AutoResult res = sinhproj::auto_params(req, t1);
  CHECK(res.ny <= (1 << 17));
  CHECK(res.grid.l == std::log(0.8));
  CHECK(res.alpha >= sinhproj::cumulant_width(t1, 1.0, 10.0) - 1e-12);

  const double resid = sinhproj::martingale_residual(
      res.beta_bar, (1.0 - res.ny) * res.grid.dx, res.grid.dx, 1.0 / 24.0,
      t1.rate(), t1.dividend());
  CHECK(resid * req.M <= 1e-5);

  const double price = sinhproj::price_backward(req, t1, res.beta_bar,
                                                res.grid);
  CHECK(std::abs(price - 2.51154374) <= 5e-4);

  AutoOptions tiny;
  tiny.ny_cap = 64;
  CHECK_THROWS_AS(sinhproj::auto_params(req, t1, tiny), std::runtime_error);

  PricingRequest eur;
  eur.kind = PayoffKind::european_put;
  CHECK_THROWS_AS(sinhproj::auto_params(eur, t1), std::invalid_argument);
}

TEST_CASE("automatic sizing with a pinned double-barrier corridor") {
  const auto t2 = test2();
  PricingRequest req;
  req.kind = PayoffKind::double_out_put;
  req.L = 90.0;
  req.U = 110.0;
  req.M = 12;

  const AutoResult res = sinhproj::auto_params(req, t2);
  CHECK(res.ny <= (1 << 17));
  CHECK(res.tail_doublings == 0);
  CHECK(res.grid.l == std::log(0.9));
  CHECK(res.grid.u == std::log(1.1));

  const double price = sinhproj::price_backward(req, t2, res.beta_bar,
                                                res.grid);
  CHECK(std::abs(price - 0.09214241) <= 5e-4);
}

TEST_CASE("payoff-tail truncation width") {
  const auto t1 = test1();
  const double got = sinhproj::tail_width_for_budget(
      t1, 1.0, 100.0, std::log(100.0), std::log(80.0), 5e-8);
  CHECK(rel(got, refvals::budget_xM_t1) <= 1e-6);

  // Tighter budgets push the truncation point out.
  CHECK(sinhproj::tail_width_for_budget(t1, 1.0, 100.0, std::log(100.0),
                                        std::log(80.0), 5e-10) > got);

  const double bounded = sinhproj::tail_width_for_budget_bounded(
      t1, 1.0, 100.0, 5e-8);
  CHECK(bounded > 0.0);
  CHECK(sinhproj::tail_width_for_budget_bounded(t1, 1.0, 100.0, 5e-10) >
        bounded);

  CHECK_THROWS_AS(sinhproj::tail_width_for_budget(t1, 1.0, 100.0, 0.0,
                                                  std::log(120.0), 5e-8),
                  std::invalid_argument);
}

TEST_CASE("density derivative bound") {
  const auto t1 = test1();
  const double rho3 = sinhproj::density_derivative_bound(t1, 1.0 / 12.0, 3);
  CHECK(rel(rho3, refvals::budget_rho3_t1_dt12) <= 1e-10);

  // Undo the closed form to recover the sup factor D(3).
  const double nn = 3.0 / 1.2;
  const double d3 = 2.0 * std::tgamma(nn) /
                    (std::pow(refvals::kobol_t1_cinf, nn) * kPi * 1.2 * rho3 *
                     std::pow(1.0 / 12.0, nn));
  CHECK(rel(d3, refvals::budget_D3_t1) <= 1e-9);

  const auto t2 = test2();
  const double nn2 = 3.0 / 0.3;
  const double rho3_t2 = sinhproj::density_derivative_bound(t2, 1.0, 3);
  const double d3_t2 = 2.0 * std::tgamma(nn2) /
                       (std::pow(refvals::kobol_t2_cinf, nn2) * kPi * 0.3 *
                        rho3_t2);
  CHECK(rel(d3_t2, refvals::budget_D3_t2) <= 1e-9);
}

TEST_CASE("step size for the interpolation budget") {
  const auto t1 = test1();
  const double step =
      sinhproj::step_for_budget(t1, 1.0, 24, 105.0, 80.0, 256, 5e-8);
  const double rho3 = sinhproj::density_derivative_bound(t1, 1.0 / 24.0, 3);
  const double lhs = std::exp(-0.02) / (6.0 * 5e-8) * 255.0 * 25.0 * rho3;
  CHECK(rel(step, std::pow(lhs, -1.0 / 3.0)) <= 1e-12);

  CHECK(sinhproj::step_for_budget(t1, 1.0, 24, 105.0, 80.0, 256, 5e-9) < step);
  CHECK(sinhproj::step_for_budget(t1, 1.0, 24, 105.0, 80.0, 512, 5e-8) < step);
}
