#include "sinhproj/proj_coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sinhproj/sinh_quadrature.hpp"
#include "sinhproj/threading.hpp"

namespace sinhproj {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ψ⁰ seen through an optional reflection ξ → −ξ.  Coefficients with
// x'_k < 0 are computed by substituting η → −η in the integral, which turns
// them into the x' > 0 problem for the reflected exponent (the dual's FT is
// even, so its poles and residues are untouched).
struct PsiView {
  const CharExp* m;
  bool reflect;

  cplx operator()(cplx xi) const { return m->psi0(reflect ? -xi : xi); }
  double strip_hi() const { return reflect ? -m->strip_lo() : m->strip_hi(); }
};

struct ClassStats {
  int quad_nodes = 0;
  long residue_cols = 0;
};

// Everything below works in the rescaled frequency η = ξ/a with
// t = a·x' ≥ 0, so one unit of t per grid step:
//   I(t) = (1/2π) ∫ e^{i t η − Δ̄ ψ⁰(a η)} φ̂̃(η) dη,   β = a^{1/2}·I.

cplx integrand(const PsiView& psi, const DualGenerator& dual, double a,
               double dt, double t, cplx eta, cplx deta) {
  return deta * std::exp(cplx(0.0, t) * eta - dt * psi(a * eta)) *
         dual.dual_ft(eta) / (2.0 * kPi);
}

// One sign class sharing a single contour, sized at the smallest t (largest
// integrand).  `ts[i] = t0 − i` exactly, i = 0..n−1 for the class members in
// storage order.
ClassStats directional_class(const BetaRequest& req, const DualGenerator& dual,
                             const PsiView& psi, double t0, int n,
                             bool crossing, double* out) {
  const CharExp& m = *req.model;
  const double a = req.a, dt = req.dt;
  const double nu = m.order(), cinf = m.c_inf();
  const double gnu = m.cone_half_angle();
  const double vmax = dual.max_pole_height();
  const double tmin = t0 - (n - 1);  // ts decrease towards 0

  // ---- contour ----------------------------------------------------------
  SinhContour ct;
  double aperture;
  if (!crossing) {
    // t = 0: no oscillatory decay to exploit, keep the contour on the real
    // line and let the map's stretching do the acceleration.  The window and
    // strip angle only have to keep the y-strip clear of the first pole
    // column.
    double mwin = std::min({psi.strip_hi(), -req.model->strip_lo(), 3.0}) / a;
    mwin = std::min(mwin, 0.75 * dual.pole_height(1));
    double d0 = std::min(gnu, std::atan((dual.pole_height(1) - mwin) / kPi));
    ct = select_contour(-mwin, mwin, -d0, d0, req.kb, req.kd);
    aperture = 2.0 * d0;
  } else if (psi.strip_hi() / a > 1.25 * vmax &&
             [&] {
               // Room to put the whole contour above the top pole row.  The
               // kernel can grow along the imaginary axis (an order-2 model
               // grows like e^{Δ̄σ²(av)²/2}), and a waist parked high above
               // the rows turns the trapezoid into catastrophic
               // cancellation, so shrink the window top until the waist
               // factor is modest; give up on this placement if even a
               // window pinned just above the rows blows up.
               double mup = psi.strip_hi() / a;
               for (;;) {
                 ct = select_contour(vmax, mup, 0.0, gnu, req.kb, req.kd);
                 double waist = ct.omega1 + ct.b * std::sin(ct.omega);
                 if (std::abs(std::exp(-dt * psi(a * cplx(0.0, waist)))) <=
                     1e3)
                   return true;
                 if (mup <= 1.3 * vmax) return false;
                 mup = std::max(1.25 * vmax, 0.5 * mup);
               }
             }()) {
    aperture = gnu;
  } else {
    // Not enough strip: start low and escape past the pole rows by angle.
    // The slowest admissible ray from the window bottom reaches the top row
    // exactly at the first pole column.
    double mup = std::min(psi.strip_hi(), 3.0) / a;
    double mum = std::min(vmax, 0.5 * mup);
    double glo = std::atan((vmax - mum) / kPi);
    if (glo > 0.9 * gnu)
      throw std::runtime_error(
          "beta_sinh: the dual's pole rows leave no admissible contour "
          "angles for this model order");
    ct = select_contour(mum, mup, glo, gnu, req.kb, req.kd);
    aperture = gnu - glo;
  }

  if (crossing) {
    // The lower edge of the y-strip must still clear the top pole row at the
    // first column; shrink the strip if the safety factors put it too close.
    auto edge_im_at_first_column = [&](double dd) {
      double we = ct.omega - dd;
      double s = std::sin(we), c = std::cos(we);
      if (s <= 0.0) return ct.omega1;
      return ct.omega1 + s * std::sqrt(ct.b * ct.b + kPi * kPi / (c * c));
    };
    int guard = 0;
    while (edge_im_at_first_column(ct.d) <= 1.02 * vmax && ++guard <= 8)
      ct.d *= 0.7;
    if (guard > 8)
      throw std::runtime_error(
          "beta_sinh: cannot keep the accuracy strip clear of the dual's "
          "poles");
  }

  // ---- error budget: one third each to step, truncation, residue tail ----
  const double epsI = std::max(req.eps / (3.0 * std::sqrt(a)), 1e-15);

  // Hardy bound from strip-edge probes plus, when the contour has crossed
  // the pole rows, the first-column residue magnitudes over the residual
  // clearance of the strip.  The edge maximum need not sit over the waist
  // (the kernel hump drifts along the edge once e^{−Δ̄ψ} grows with height),
  // so probe a spread of y and charge a span factor for the norm.  The
  // central class can hold t of either sign; size it at the worst one.
  const double thard =
      crossing ? tmin : -std::max(std::abs(t0), std::abs(tmin));
  double hardy = 0.0;
  for (double yy : {0.0, 0.35, 0.7, 1.05, 1.4, 2.0, 2.8}) {
    cplx yp(yy, ct.d), ym(yy, -ct.d);
    hardy = std::max(
        hardy,
        std::abs(integrand(psi, dual, a, dt, thard, ct.map_c(yp),
                           ct.dmap_c(yp))) +
            std::abs(integrand(psi, dual, a, dt, thard, ct.map_c(ym),
                               ct.dmap_c(ym))));
  }
  hardy *= 30.0;
  if (crossing) {
    for (int j = 1; j <= dual.pole_rows(); ++j) {
      double vj = dual.pole_height(j);
      double term = 2.0 * std::abs(dual.residue(0, j, +1)) *
                    std::exp(-tmin * vj) *
                    std::abs(std::exp(-dt * psi(a * cplx(kPi, vj))));
      hardy += 2.0 * term / (aperture * (1.0 - req.kd) * kPi / 2.0);
    }
  }
  const double zeta = trapezoid_step(10.0 * hardy, epsI, ct.d);

  // Truncation of the deformed trapezoid, in absolute frequency Λ = a|η|.
  double eps1 = std::max(
      kPi * epsI * std::exp(-dt * std::abs(m.C0())) / a, 1e-300);
  double lam = solve_truncation((tmin / a) * std::sin(ct.omega),
                                dt * cinf * std::cos(nu * ct.omega), nu,
                                -std::log(eps1));
  double ylim = std::asinh(lam / (a * ct.b));
  int npts = std::max(4, static_cast<int>(std::ceil(ylim / zeta)));

  // ---- shared trapezoid weights -----------------------------------------
  std::vector<cplx> node(npts + 1), w(npts + 1);
  for (int jq = 0; jq <= npts; ++jq) {
    double y = jq * zeta;
    node[jq] = ct.map(y);
    w[jq] = zeta * ct.dmap(y) *
            std::exp(-dt * psi(a * node[jq])) * dual.dual_ft(node[jq]) /
            (2.0 * kPi);
  }
  w[0] *= 0.5;

  ClassStats stats;
  stats.quad_nodes = npts + 1;

  // ---- residue series (one run of columns per pole row) ------------------
  // Crossing the rows picks up  2 Re Σ_j e^{iπt} e^{−t v_j} J_j  with
  //   J_j = Σ_ℓ i · Res(φ̂̃; ξ_{ℓ,j}) · e^{i 2πℓ t0 − Δ̄ψ⁰(a ξ_{ℓ,j})},
  // ξ_{ℓ,j} = (2ℓ+1)π + i v_j.  J_j is shared by the class because t steps
  // by integers, which leaves e^{i2πℓt} unchanged.
  std::vector<cplx> jrow;
  if (crossing) {
    jrow.assign(dual.pole_rows() + 1, cplx(0.0, 0.0));
    for (int j = 1; j <= dual.pole_rows(); ++j) {
      double vj = dual.pole_height(j);
      double pref = 4.0 * kPi * std::abs(dual.residue(0, j, +1)) *
                    std::exp(-tmin * vj + dt * std::abs(m.C0()));
      if (!(pref > epsI)) continue;
      double c1 = std::log(pref / epsI) / (dt * cinf);
      double lam1 = solve_series_cutoff(1.0 / (nu * dt * cinf), c1);
      double cols = std::ceil(std::pow(lam1, 1.0 / nu) / (2.0 * a));
      long ncols = static_cast<long>(std::min(cols, 3.0e8));
      stats.residue_cols += ncols;
      cplx sum(0.0, 0.0), rot(1.0, 0.0);
      cplx step = std::exp(cplx(0.0, 2.0 * kPi * t0));
      for (long l = 0; l < ncols; ++l) {
        if (l % 1024 == 0)
          rot = std::exp(cplx(0.0, 2.0 * kPi * t0 * static_cast<double>(l)));
        cplx pole((2.0 * l + 1.0) * kPi, vj);
        sum += cplx(0.0, 1.0) * dual.residue(static_cast<int>(l), j, +1) *
               rot * std::exp(-dt * psi(a * pole));
        rot *= step;
      }
      jrow[j] = sum;
    }
  }

  // ---- assemble all coefficients of the class ----------------------------
  cplx phase0 = std::exp(cplx(0.0, kPi * t0));
  parallel_for(n, [&](int i) {
    double t = t0 - i;
    cplx acc(0.0, 0.0);
    for (int jq = 0; jq <= npts; ++jq)
      acc += w[jq] * std::exp(cplx(0.0, t) * node[jq]);
    double val = 2.0 * acc.real();
    if (crossing) {
      double par = (i % 2 == 0) ? 1.0 : -1.0;
      cplx sr(0.0, 0.0);
      for (int j = 1; j <= dual.pole_rows(); ++j)
        sr += std::exp(-t * dual.pole_height(j)) * jrow[j];
      val += 2.0 * (phase0 * par * sr).real();
    }
    out[i] = std::sqrt(a) * val;
  });
  return stats;
}

}  // namespace

std::vector<double> beta_sinh(const BetaRequest& req, BetaDiagnostics* diag) {
  if (!req.model) throw std::invalid_argument("beta_sinh: model is required");
  if (req.nx <= 0 || req.a <= 0.0 || req.dt <= 0.0 || req.eps <= 0.0)
    throw std::invalid_argument("beta_sinh: bad grid or tolerance");

  const DualGenerator dual(req.p);
  const double s0 = (req.model->drift() * req.dt - req.x1) * req.a;
  // t_k = s0 − (k−1) exactly, decreasing.  Columns with |t| < 1 gain nothing
  // from a pole-crossing contour (e^{itχ} barely decays) and for a fast
  // kernel they pay for the crossing in cancellation, so they prefer the
  // central class, whose real-axis nodes rely on the kernel decay alone.
  // That window is only admissible while its accuracy strip stays clear of
  // the dual's pole columns over the truncated range: the strip edge climbs
  // like sin(d)·cosh(y), so a slowly decaying kernel (small ν) sweeps it
  // past every column.  Admit the central class when the kernel is already
  // negligible at the second column; otherwise the crossing contours take
  // the central columns too (their hump is mild exactly when the kernel
  // decay is slow).  t steps by 1, so the central class holds at most two
  // columns and every crossing class then keeps t ≥ 1.
  const double tol = 1e-14 * req.a;
  const double epsI =
      std::max(req.eps / (3.0 * std::sqrt(req.a)), 1e-15);
  bool central_ok = true;
  for (int j = 1; j <= dual.pole_rows() && central_ok; ++j) {
    const cplx col2(3.0 * kPi, dual.pole_height(j));
    const double kup =
        std::abs(std::exp(-req.dt * req.model->psi0(req.a * col2)));
    const double kdn =
        std::abs(std::exp(-req.dt * req.model->psi0(-req.a * col2)));
    central_ok = std::max(kup, kdn) <= 1e-2 * epsI;
  }

  int up_end = 0;
  const double up_cut = central_ok ? 1.0 - tol : tol;
  while (up_end < req.nx && s0 - up_end >= up_cut) ++up_end;
  int sym_end = up_end;
  if (central_ok)
    while (sym_end < req.nx && s0 - sym_end > -1.0 + tol) ++sym_end;

  if (diag) {
    diag->quad_terms.assign(req.nx, 0);
    diag->residue_cols = 0;
  }
  auto record = [&](const ClassStats& st, int first, int count) {
    if (!diag) return;
    for (int i = 0; i < count; ++i) diag->quad_terms[first + i] = st.quad_nodes;
    diag->residue_cols += st.residue_cols;
  };

  std::vector<double> beta(req.nx);
  if (up_end > 0) {
    PsiView psi{req.model, false};
    record(directional_class(req, dual, psi, s0, up_end, true, beta.data()),
           0, up_end);
  }
  if (sym_end > up_end) {
    PsiView psi{req.model, false};
    record(directional_class(req, dual, psi, s0 - up_end, sym_end - up_end,
                             false, beta.data() + up_end),
           up_end, sym_end - up_end);
  }
  if (req.nx > sym_end) {
    // Reflected problem: t = (k−1) − s0 increases with k, so the class is
    // stored backwards (t0 belongs to the last coefficient).
    PsiView psi{req.model, true};
    int n = req.nx - sym_end;
    double t0 = (req.nx - 1) - s0;
    std::vector<double> rev(n);
    record(directional_class(req, dual, psi, t0, n, true, rev.data()),
           sym_end, n);
    for (int i = 0; i < n; ++i) beta[sym_end + i] = rev[n - 1 - i];
  }
  return beta;
}

std::vector<double> beta_sinh(const BetaRequest& req) {
  return beta_sinh(req, nullptr);
}

std::vector<double> beta_fft(const BetaRequest& req, double alpha_half,
                             int n_xi) {
  if (!req.model) throw std::invalid_argument("beta_fft: model is required");
  if (req.nx <= 0 || req.a <= 0.0 || req.dt <= 0.0)
    throw std::invalid_argument("beta_fft: bad grid");
  if (alpha_half <= 0.0 || n_xi <= 0)
    throw std::invalid_argument("beta_fft: bad frequency grid");

  const DualGenerator dual(req.p);
  const double dxi = kPi / alpha_half;
  const cplx mi(0.0, -1.0);

  // Per-frequency weights, shared by all coefficients.  Integer-node
  // trapezoid sampling (half weight at ξ = 0) keeps the implied density
  // periodization unsigned, so the wrap-around images add instead of
  // alternating in sign.
  std::vector<cplx> wn(n_xi);
  for (int nq = 0; nq < n_xi; ++nq) {
    double xi = nq * dxi;
    wn[nq] = (nq == 0 ? 0.5 : 1.0) * dxi *
             std::exp(-req.dt * req.model->psi(xi)) * dual.dual_ft(xi / req.a);
  }

  std::vector<double> beta(req.nx);
  parallel_for(req.nx, [&](int k) {
    double xk = req.x1 + k / req.a;
    cplx step = std::exp(mi * (dxi * xk));
    cplx rot(1.0, 0.0);
    cplx acc(0.0, 0.0);
    for (int nq = 0; nq < n_xi; ++nq) {
      if (nq % 1024 == 0) rot = std::exp(mi * (dxi * xk * nq));
      acc += wn[nq] * rot;
      rot *= step;
    }
    beta[k] = acc.real() / (kPi * std::sqrt(req.a));
  });
  return beta;
}

std::vector<double> beta_fft_aa(const BetaRequest& req, double alpha_half,
                                int n_xi, int enlarge) {
  if (enlarge < 1) throw std::invalid_argument("beta_fft_aa: enlarge >= 1");
  return beta_fft(req, alpha_half * enlarge, n_xi * enlarge);
}

std::vector<double> project_density(const std::vector<double>& beta, double a,
                                    double x1, int p,
                                    const std::vector<double>& x) {
  const DualGenerator dual(p);
  const double half_support = 0.5 * (p + 1);
  std::vector<double> vals(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    double u = a * (x[i] - x1);  // in grid units, coefficient k at u = k
    int klo = static_cast<int>(std::ceil(u - half_support));
    int khi = static_cast<int>(std::floor(u + half_support));
    klo = std::max(klo, 0);
    khi = std::min(khi, static_cast<int>(beta.size()) - 1);
    double s = 0.0;
    for (int k = klo; k <= khi; ++k) s += beta[k] * dual.gen(u - k);
    vals[i] = std::sqrt(a) * s;
  }
  return vals;
}

}  // namespace sinhproj
