#include "doctest.h"

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "reference_values.hpp"
#include "sinhproj/bspline_dual.hpp"

using namespace sinhproj;

TEST_CASE("pole heights match the frozen roots and an independent bisection") {
  DualGenerator g1(1), g2(2), g3(3);
  CHECK(std::fabs(g1.pole_height(1) - refvals::dual_v_p1[0]) < 1e-14);
  CHECK(std::fabs(g2.pole_height(1) - refvals::dual_v_p2[0]) < 1e-14);
  CHECK(std::fabs(g2.pole_height(2) - refvals::dual_v_p2[1]) < 1e-14);
  for (int j = 1; j <= 3; ++j)
    CHECK(std::fabs(g3.pole_height(j) - refvals::dual_v_p3[j - 1]) < 1e-14);
  for (int p = 1; p <= 3; ++p) {
    DualGenerator g(p);
    for (int j = 1; j <= p; ++j)
      CHECK(std::fabs(g.pole_height(j) - oracle::pole_height_bisect(p, j)) <
            1e-12);
  }
  // p=1: v = ln(2+sqrt(3))
  CHECK(g1.pole_height(1) ==
        doctest::Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-15));
  CHECK(g3.max_pole_height() == g3.pole_height(3));
}

TEST_CASE("denominator vanishes at the poles") {
  const double pi = 3.141592653589793238462643383279502884;
  for (int p = 1; p <= 3; ++p) {
    DualGenerator g(p);
    for (int j = 1; j <= p; ++j)
      for (int s : {1, -1}) {
        cplx pole(pi, s * g.pole_height(j));
        CHECK(std::abs(g.denom(pole)) < 1e-10);
        CHECK(std::abs(g.denom(pole + cplx(4.0 * pi, 0.0))) < 1e-10);
      }
  }
}

TEST_CASE("closed-form residues match the frozen first-column values") {
  auto check_cols = [](int p, const double* vre_up, const double* vim_up,
                       const double* vre_dn, const double* vim_dn) {
    DualGenerator g(p);
    for (int j = 1; j <= p; ++j) {
      cplx up = g.residue(0, j, +1), dn = g.residue(0, j, -1);
      CHECK(std::abs(up - cplx(vre_up[j - 1], vim_up[j - 1])) <
            1e-13 * std::abs(up));
      CHECK(std::abs(dn - cplx(vre_dn[j - 1], vim_dn[j - 1])) <
            1e-13 * std::abs(dn));
    }
  };
  check_cols(1, refvals::dual_res_up_p1_re, refvals::dual_res_up_p1_im,
             refvals::dual_res_dn_p1_re, refvals::dual_res_dn_p1_im);
  check_cols(2, refvals::dual_res_up_p2_re, refvals::dual_res_up_p2_im,
             refvals::dual_res_dn_p2_re, refvals::dual_res_dn_p2_im);
  check_cols(3, refvals::dual_res_up_p3_re, refvals::dual_res_up_p3_im,
             refvals::dual_res_dn_p3_re, refvals::dual_res_dn_p3_im);
}

TEST_CASE("linear-generator residue closed form: -6i sqrt(3)/xi^2") {
  const double pi = 3.141592653589793238462643383279502884;
  DualGenerator g(1);
  double v = g.pole_height(1);
  for (int ell : {0, 1, 5, -3}) {
    cplx xi((2.0 * ell + 1.0) * pi, v);
    cplx want = cplx(0.0, -6.0 * std::sqrt(3.0)) / (xi * xi);
    CHECK(std::abs(g.residue(ell, 1, +1) - want) < 1e-13 * std::abs(want));
  }
}

TEST_CASE("residues agree with a contour-integral quadrature") {
  for (int p = 1; p <= 3; ++p) {
    DualGenerator g(p);
    for (int j = 1; j <= p; ++j)
      for (int ell : {0, 2, -1})
        for (int s : {1, -1}) {
          cplx want = oracle::residue_contour(p, ell, j, s);
          CHECK(std::abs(g.residue(ell, j, s) - want) <
                1e-11 * std::abs(want));
        }
  }
}

TEST_CASE("dual transform at the frozen complex probes") {
  int n = sizeof(refvals::dual_probe_xi_re) / sizeof(double);
  auto check_probe = [&](int p, const double* re, const double* im) {
    DualGenerator g(p);
    for (int i = 0; i < n; ++i) {
      cplx xi(refvals::dual_probe_xi_re[i], refvals::dual_probe_xi_im[i]);
      cplx want(re[i], im[i]);
      CHECK(std::abs(g.dual_ft(xi) - want) < 1e-12 * (1.0 + std::abs(want)));
    }
  };
  check_probe(1, refvals::dual_probe_phitilde_p1_re,
              refvals::dual_probe_phitilde_p1_im);
  check_probe(2, refvals::dual_probe_phitilde_p2_re,
              refvals::dual_probe_phitilde_p2_im);
  check_probe(3, refvals::dual_probe_phitilde_p3_re,
              refvals::dual_probe_phitilde_p3_im);
}

TEST_CASE("dual transform basics: normalisation, evenness, filter identity") {
  for (int p = 1; p <= 3; ++p) {
    DualGenerator g(p);
    CHECK(std::abs(g.dual_ft(cplx(0.0, 0.0)) - cplx(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(g.denom(cplx(0.0, 0.0)) - cplx(1.0, 0.0)) < 1e-14);
    for (double xi : {0.37, 1.9, 2.6}) {
      cplx z(xi, 0.6);
      CHECK(std::abs(g.dual_ft(z) - g.dual_ft(-z)) < 1e-13);
      CHECK(std::abs(g.dual_ft(z) - g.gen_ft(z) / g.denom(z)) < 1e-12);
      CHECK(std::abs(g.dual_ft(z) - oracle::dual_ft_direct(p, z)) < 1e-12);
    }
    // deep in the upper half-plane the two evaluation forms must still agree
    cplx deep(2.2, 3.5);
    CHECK(std::abs(g.dual_ft(deep) - oracle::dual_ft_direct(p, deep)) <
          1e-10 * std::abs(g.dual_ft(deep)));
  }
}

TEST_CASE("generator partition of unity and support") {
  for (int p = 1; p <= 3; ++p) {
    DualGenerator g(p);
    for (double x : {0.0, 0.31, -1.7, 2.49}) {
      double s = 0.0;
      for (int k = -8; k <= 8; ++k) s += g.gen(x - k);
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(g.gen(0.5 * (p + 1) + 1e-9) == 0.0);
    CHECK(g.gen(-0.5 * (p + 1) - 1e-9) == 0.0);
    CHECK(g.gen(0.0) > 0.0);
  }
}
