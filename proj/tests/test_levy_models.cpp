#include "doctest.h"

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "reference_values.hpp"
#include "sinhproj/levy_models.hpp"

using namespace sinhproj;

namespace {

Kobol test1() { return Kobol::from_second_moment(1.2, 0.1, 11.0, -4.0, 0.02, 0.0); }
Kobol test2() { return Kobol::from_second_moment(0.3, 0.1, 8.0, -9.0, 0.02, 0.0); }
NormalTemperedStable nts_probe() {
  return NormalTemperedStable(0.9, 1.1, 7.0, -2.5, 0.02, 0.0);
}

double rel(double got, double want) {
  return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

}  // namespace

TEST_CASE("KoBoL second-moment parametrisation pins c, C0, c_inf, mu") {
  Kobol t1 = test1(), t2 = test2();
  CHECK(rel(t1.c(), refvals::kobol_t1_c) < 1e-14);
  CHECK(rel(t1.C0(), refvals::kobol_t1_C0) < 1e-13);
  CHECK(rel(t1.c_inf(), refvals::kobol_t1_cinf) < 1e-14);
  CHECK(std::fabs(t1.drift() - refvals::kobol_t1_mu) < 1e-13);
  CHECK(rel(t2.c(), refvals::kobol_t2_c) < 1e-14);
  CHECK(rel(t2.C0(), refvals::kobol_t2_C0) < 1e-13);
  CHECK(rel(t2.c_inf(), refvals::kobol_t2_cinf) < 1e-14);
  CHECK(std::fabs(t2.drift() - refvals::kobol_t2_mu) < 1e-13);
}

TEST_CASE("KoBoL psi0 at complex probes (branch/sign conventions)") {
  Kobol t1 = test1();
  int n = sizeof(refvals::kobol_t1_probe_xi_re) / sizeof(double);
  for (int i = 0; i < n; ++i) {
    cplx xi(refvals::kobol_t1_probe_xi_re[i], refvals::kobol_t1_probe_xi_im[i]);
    cplx want(refvals::kobol_t1_probe_psi0_re[i],
              refvals::kobol_t1_probe_psi0_im[i]);
    CHECK(std::abs(t1.psi0(xi) - want) < 1e-12 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("NTS probe model: drift, C0, strip, psi0 probes") {
  NormalTemperedStable m = nts_probe();
  CHECK(std::fabs(m.drift() - refvals::nts_mu) < 1e-13);
  CHECK(rel(m.C0(), refvals::nts_C0) < 1e-14);
  CHECK(m.strip_lo() == doctest::Approx(refvals::nts_strip_lo).epsilon(1e-15));
  CHECK(m.strip_hi() == doctest::Approx(refvals::nts_strip_hi).epsilon(1e-15));
  int n = sizeof(refvals::nts_probe_xi_re) / sizeof(double);
  for (int i = 0; i < n; ++i) {
    cplx xi(refvals::nts_probe_xi_re[i], refvals::nts_probe_xi_im[i]);
    cplx want(refvals::nts_probe_psi0_re[i], refvals::nts_probe_psi0_im[i]);
    CHECK(std::abs(m.psi0(xi) - want) < 1e-12 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("psi0 is real on the imaginary axis inside the strip") {
  Kobol t1 = test1();
  for (double w : {-3.9, -1.0, 0.5, 10.9}) {
    cplx v = t1.psi0(cplx(0.0, w));
    CHECK(std::fabs(v.imag()) < 1e-13 * (1.0 + std::abs(v)));
  }
}

TEST_CASE("martingale identity: E[e^{X_T}] = e^{(r-q)T}") {
  Kobol t1 = test1(), t2 = test2();
  NormalTemperedStable nts = nts_probe();
  BlackScholes bs(0.3, 0.02, 0.01);
  for (const CharExp* m : {(const CharExp*)&t1, (const CharExp*)&t2,
                           (const CharExp*)&nts, (const CharExp*)&bs}) {
    cplx growth = std::exp(-m->psi(cplx(0.0, -1.0)));
    double want = std::exp(m->rate() - m->dividend());
    CHECK(std::abs(growth - cplx(want, 0.0)) < 1e-12);
  }
}

TEST_CASE("characteristic function stays inside the unit disc") {
  Kobol t1 = test1();
  for (double xi : {0.1, 1.0, 7.5, 40.0, 333.0})
    CHECK(std::abs(t1.cf(0.25, cplx(xi, 0.0))) <= 1.0 + 1e-14);
  CHECK(std::abs(t1.cf(1.0, cplx(0.0, 0.0)) - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("finite-difference cumulants match the analytic values") {
  Kobol t1 = test1(), t2 = test2();
  NormalTemperedStable nts = nts_probe();
  CHECK(rel(cumulant(t1, 2), refvals::kobol_t1_kappa2) < 1e-8);
  CHECK(rel(cumulant(t2, 2), refvals::kobol_t2_kappa2) < 1e-8);
  CHECK(rel(cumulant(nts, 2), refvals::nts_kappa2) < 1e-8);
  CHECK(std::fabs(cumulant(t1, 4) - refvals::kobol_t1_kappa4) < 1e-6);
  CHECK(std::fabs(cumulant(t2, 4) - refvals::kobol_t2_kappa4) < 1e-6);
  CHECK(std::fabs(cumulant(nts, 4) - refvals::nts_kappa4) < 1e-6);
  BlackScholes bs(0.25, 0.0, 0.0);
  CHECK(rel(cumulant(bs, 2), 0.0625) < 1e-8);
  CHECK(std::fabs(cumulant(bs, 4)) < 1e-6);
}

TEST_CASE("cone half-angle gamma_nu = min(1, 1/nu) pi/2") {
  CHECK(test1().cone_half_angle() ==
        doctest::Approx(3.14159265358979324 / 2.4).epsilon(1e-15));
  CHECK(test2().cone_half_angle() ==
        doctest::Approx(3.14159265358979324 / 2.0).epsilon(1e-15));
  CHECK(BlackScholes(0.2, 0.0, 0.0).cone_half_angle() ==
        doctest::Approx(3.14159265358979324 / 4.0).epsilon(1e-15));
}

TEST_CASE("Black-Scholes drift and exponent") {
  BlackScholes bs(0.3, 0.02, 0.005);
  CHECK(bs.drift() == doctest::Approx(0.02 - 0.005 - 0.045).epsilon(1e-15));
  cplx v = bs.psi0(cplx(2.0, 1.0));
  CHECK(std::abs(v - 0.045 * cplx(2.0, 1.0) * cplx(2.0, 1.0)) < 1e-14);
}

TEST_CASE("parameter validation rejects bad models") {
  CHECK_THROWS_AS(Kobol(1.0, 0.1, 11.0, -4.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Kobol(2.3, 0.1, 11.0, -4.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Kobol(1.2, -0.1, 11.0, -4.0, 0.0, 0.0),
                  std::invalid_argument);
  // E[e^{X_t}] needs lambda_minus < -1
  CHECK_THROWS_AS(Kobol(1.2, 0.1, 11.0, -0.5, 0.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(Kobol::from_second_moment(1.2, -1.0, 11.0, -4.0, 0.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(NormalTemperedStable(0.9, 1.1, 7.0, 7.5, 0.0, 0.0),
                  std::invalid_argument);
  // E[e^{X_t}] needs alpha + beta > 1
  CHECK_THROWS_AS(NormalTemperedStable(0.9, 1.1, 3.0, -2.5, 0.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(NormalTemperedStable(0.9, -1.1, 7.0, -2.5, 0.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(BlackScholes(0.0, 0.0, 0.0), std::invalid_argument);
}
