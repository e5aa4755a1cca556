#include "sinhproj/param_select.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sinhproj/proj_coefficients.hpp"

namespace sinhproj {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Golden-section maximum of f on [lo, hi] (unimodal or boundary-attained).
template <class F>
double golden_max(F&& f, double lo, double hi) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return std::max(fc, fd);
}

// Two-dimensional Nelder–Mead, enough to polish a coarse grid scan.
template <class F>
double nelder_mead2(F&& f, double x0, double y0, double hx, double hy) {
  std::array<std::array<double, 2>, 3> p = {
      {{x0, y0}, {x0 + hx, y0}, {x0, y0 + hy}}};
  std::array<double, 3> v;
  for (int i = 0; i < 3; ++i) v[i] = f(p[i][0], p[i][1]);

  for (int it = 0; it < 400; ++it) {
    std::array<int, 3> ord = {0, 1, 2};
    std::sort(ord.begin(), ord.end(), [&](int a, int b) { return v[a] < v[b]; });
    const auto &pl = p[ord[0]], &ph = p[ord[2]];
    if (std::abs(v[ord[2]] - v[ord[0]]) <
            1e-13 * (1.0 + std::abs(v[ord[0]])) &&
        std::abs(ph[0] - pl[0]) + std::abs(ph[1] - pl[1]) < 1e-12)
      break;

    const double cx = (p[ord[0]][0] + p[ord[1]][0]) / 2.0;
    const double cy = (p[ord[0]][1] + p[ord[1]][1]) / 2.0;
    auto try_point = [&](double s) {
      return std::array<double, 2>{cx + s * (cx - ph[0]), cy + s * (cy - ph[1])};
    };

    auto pr = try_point(1.0);
    const double vr = f(pr[0], pr[1]);
    if (vr < v[ord[0]]) {
      auto pe = try_point(2.0);
      const double ve = f(pe[0], pe[1]);
      if (ve < vr) {
        p[ord[2]] = pe;
        v[ord[2]] = ve;
      } else {
        p[ord[2]] = pr;
        v[ord[2]] = vr;
      }
    } else if (vr < v[ord[1]]) {
      p[ord[2]] = pr;
      v[ord[2]] = vr;
    } else {
      auto pc = try_point(-0.5);
      const double vc = f(pc[0], pc[1]);
      if (vc < v[ord[2]]) {
        p[ord[2]] = pc;
        v[ord[2]] = vc;
      } else {
        for (int i : {ord[1], ord[2]}) {
          p[i][0] = (p[i][0] + p[ord[0]][0]) / 2.0;
          p[i][1] = (p[i][1] + p[ord[0]][1]) / 2.0;
          v[i] = f(p[i][0], p[i][1]);
        }
      }
    }
  }
  return std::min({v[0], v[1], v[2]});
}

}  // namespace

double cumulant_width(const CharExp& model, double T, double L1) {
  const double c2 = cumulant(model, 2);
  const double c4 = cumulant(model, 4);
  return L1 * std::sqrt(c2 * T + std::sqrt(c4 * T));
}

double cdf_estimate(const CharExp& model, double T, double x, double dxi,
                    int N) {
  if (N < 1 || dxi <= 0.0)
    throw std::invalid_argument("cdf_estimate: need N >= 1, dxi > 0");
  double s = 0.0;
  for (int n = 1; n <= N; ++n) {
    const double u = (n - 0.5) * dxi;
    const cplx term =
        std::exp(-T * model.psi(cplx(u, 0.0)) + cplx(0.0, -x * u));
    s += term.imag() / (n - 0.5);
  }
  return 0.5 - s / kPi;
}

double martingale_residual(const std::vector<double>& beta_bar, double x1,
                           double dx, double dt, double r, double q) {
  const double th = hat_exp_averages(dx).full;
  double s = 0.0;
  for (std::size_t k = 0; k < beta_bar.size(); ++k)
    s += beta_bar[k] * std::exp(x1 + static_cast<double>(k) * dx);
  return std::abs(th * s * std::sqrt(dx) - std::exp((r - q) * dt));
}

AutoResult auto_params(const PricingRequest& req, const CharExp& model,
                       const AutoOptions& opt) {
  const bool lo = has_lower_barrier(req.kind);
  const bool hi = has_upper_barrier(req.kind);
  if (!lo && !hi)
    throw std::invalid_argument("auto_params: payoff needs a barrier");
  if (req.M < 1) throw std::invalid_argument("auto_params: M < 1");

  const double T = req.T;
  const double dt = T / req.M;
  const double W = req.K;
  const double kw = std::log(W / req.S0);
  const double scale = std::max(req.S0, W);
  const double base = cumulant_width(model, T, opt.L1);

  AutoResult out;
  int N = dt <= 1.0 / 100.0 ? 1024 : dt <= 1.0 / 40.0 ? 512 : 256;

  // Stage 1: widen until the stray mass past the free grid end is budget.
  // A double barrier pins the grid to (L, U), so only stage 2 applies.
  double alpha;
  if (lo && hi) {
    alpha = 0.5 * (std::log(req.U / req.S0) - std::log(req.L / req.S0));
  } else if (lo) {
    const double l = std::log(req.L / req.S0);
    alpha = std::max(opt.widen * (std::max(0.0, kw) - l), base);
    for (;;) {
      const double dxi = kPi * (N - 1) / (alpha * N);
      const double tail =
          std::abs(1.0 - cdf_estimate(model, T, l + alpha, dxi, N));
      if (tail * scale <= opt.eps_tail) break;
      alpha *= opt.widen;
      N *= 2;
      ++out.tail_doublings;
      if (N > opt.ny_cap)
        throw std::runtime_error("auto_params: tail stage hit the grid cap");
    }
  } else {
    const double u = std::log(req.U / req.S0);
    alpha = std::max(opt.widen * (u - std::min(0.0, kw)), base);
    for (;;) {
      const double dxi = kPi * (N - 1) / (alpha * N);
      const double tail = std::abs(cdf_estimate(model, T, u - alpha, dxi, N));
      if (tail * scale <= opt.eps_tail) break;
      alpha *= opt.widen;
      N *= 2;
      ++out.tail_doublings;
      if (N > opt.ny_cap)
        throw std::runtime_error("auto_params: tail stage hit the grid cap");
    }
  }

  // Stage 2: double the resolution until the projected kernel carries the
  // forward e^{(r−q)Δ̄} well enough for M steps.  The pricing coefficients
  // of a double-barrier grid only span (L, U), so the residual is measured
  // on a cumulant-wide diagnostic grid at the same step.
  double resid = 2.0 * opt.eps_dist;
  N /= 2;
  out.dist_doublings = -1;
  while (resid > opt.eps_dist) {
    N *= 2;
    ++out.dist_doublings;
    if (N > opt.ny_cap)
      throw std::runtime_error("auto_params: resolution cap exceeded");
    out.grid = build_grid_width(req, N, alpha);

    BetaRequest breq;
    breq.model = &model;
    breq.a = 1.0 / out.grid.dx;
    breq.dt = dt;
    breq.x1 = (1.0 - N) * out.grid.dx;
    breq.nx = 2 * N;
    breq.eps = opt.beta_eps;
    out.beta_bar = beta_sinh(breq);

    if (lo && hi) {
      const double w = std::max(base, out.grid.u - out.grid.l);
      const int nd = static_cast<int>(std::ceil(w / out.grid.dx));
      BetaRequest dreq = breq;
      dreq.x1 = -nd * out.grid.dx;
      dreq.nx = 2 * nd + 1;
      const std::vector<double> diag = beta_sinh(dreq);
      resid = martingale_residual(diag, dreq.x1, out.grid.dx, dt,
                                  model.rate(), model.dividend()) *
              req.M;
    } else {
      resid = martingale_residual(out.beta_bar, breq.x1, out.grid.dx, dt,
                                  model.rate(), model.dividend()) *
              req.M;
    }
  }
  out.ny = N;
  out.alpha = alpha;
  return out;
}

double tail_width_for_budget(const CharExp& model, double T, double K,
                             double x, double h, double eps) {
  if (!(eps > 0.0) || !(K > std::exp(h)))
    throw std::invalid_argument("tail_width_for_budget: need eps > 0, K > e^h");
  const double r = model.rate();
  const double lan = std::log(eps / (K - std::exp(h)));
  auto psi_im = [&](double w) { return model.psi(cplx(0.0, w)).real(); };
  auto fn = [&](double wm, double wp) {
    if (!(wm < 0.0) || !(wp > 0.0) || wm <= model.strip_lo() ||
        wp >= model.strip_hi())
      return std::numeric_limits<double>::infinity();
    const double pp = psi_im(wp), pm = psi_im(wm);
    return (-(r + pp) * T + wp * std::log(K) - wm * x +
            T * std::max(pp - pm, 0.0) - lan) /
           (wp - wm);
  };

  double best = std::numeric_limits<double>::infinity();
  double bm = 0.5 * model.strip_lo(), bp = 0.5 * model.strip_hi();
  for (int i = 1; i <= 16; ++i) {
    const double wm = model.strip_lo() * i / 17.0;
    for (int j = 1; j <= 16; ++j) {
      const double wp = model.strip_hi() * j / 17.0;
      const double v = fn(wm, wp);
      if (v < best) {
        best = v;
        bm = wm;
        bp = wp;
      }
    }
  }
  const double hm = 0.02 * std::abs(model.strip_lo());
  const double hp = 0.02 * model.strip_hi();
  return nelder_mead2(fn, bm, bp, hm, hp);
}

double tail_width_for_budget_bounded(const CharExp& model, double T, double K,
                                     double eps) {
  if (!(eps > 0.0) || !(K > 0.0))
    throw std::invalid_argument(
        "tail_width_for_budget_bounded: need eps > 0, K > 0");
  const double r = model.rate();
  const double lan = std::log(eps / K);
  auto psi_im = [&](double w) { return model.psi(cplx(0.0, w)).real(); };
  auto fn = [&](double wm, double wp) {
    if (!(wm < 0.0) || !(wp > 0.0) || wm <= model.strip_lo() ||
        wp >= model.strip_hi())
      return std::numeric_limits<double>::infinity();
    const double pp = psi_im(wp), pm = psi_im(wm);
    return (-(r + pp) * T + T * std::max(pp - pm, 0.0) - lan) / (wp - wm);
  };

  double best = std::numeric_limits<double>::infinity();
  double bm = 0.5 * model.strip_lo(), bp = 0.5 * model.strip_hi();
  for (int i = 1; i <= 16; ++i) {
    const double wm = model.strip_lo() * i / 17.0;
    for (int j = 1; j <= 16; ++j) {
      const double wp = model.strip_hi() * j / 17.0;
      const double v = fn(wm, wp);
      if (v < best) {
        best = v;
        bm = wm;
        bp = wp;
      }
    }
  }
  const double hm = 0.02 * std::abs(model.strip_lo());
  const double hp = 0.02 * model.strip_hi();
  return nelder_mead2(fn, bm, bp, hm, hp);
}

double density_derivative_bound(const CharExp& model, double dt, int n) {
  if (n < 1) throw std::invalid_argument("density_derivative_bound: n < 1");
  const double nu = model.order();
  const double ci = model.c_inf();
  if (!(ci > 0.0))
    throw std::invalid_argument("density_derivative_bound: c_inf not positive");
  const double top = std::min(kPi / 2.0, kPi / (2.0 * nu));
  const double nn = static_cast<double>(n) / nu;
  const double dsup = golden_max(
      [&](double phi) { return std::pow(std::cos(phi * nu), nn) * std::sin(phi); },
      1e-12, top - 1e-12);
  return 2.0 * std::tgamma(nn) / (std::pow(ci, nn) * kPi * nu * dsup) *
         std::pow(dt, -nn);
}

double step_for_budget(const CharExp& model, double T, int M, double K,
                       double H, int ny, double eps) {
  if (M < 1 || ny < 2 || !(eps > 0.0) || !(K > H))
    throw std::invalid_argument("step_for_budget: bad arguments");
  const double rho3 = density_derivative_bound(model, T / M, 3);
  const double lhs =
      std::exp(-model.rate() * T) / (6.0 * eps) * (ny - 1) * (K - H) * rho3;
  return std::pow(lhs, -1.0 / 3.0);
}

}  // namespace sinhproj
