// Command-line front end: pricing runs, coefficient/density dumps, table
// regeneration, and the aliasing demonstration.  All output is CSV-ish text
// on stdout; every failure path exits nonzero with a one-line message.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sinhproj/barrier_engine.hpp"
#include "sinhproj/model_config.hpp"
#include "sinhproj/param_select.hpp"
#include "sinhproj/proj_coefficients.hpp"

namespace {

using namespace sinhproj;

std::unique_ptr<CharExp> load_model(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return model_from_json(arg);
  return model_from_file(arg);
}

std::vector<double> parse_list(const std::string& csv, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t next = csv.find(',', pos);
    if (next == std::string::npos) next = csv.size();
    try {
      out.push_back(std::stod(csv.substr(pos, next - pos)));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": bad list entry \"" +
                                  csv.substr(pos, next - pos) + "\"");
    }
    pos = next + 1;
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
  return out;
}

BetaMethod method_from_string(const std::string& s) {
  if (s == "sinh") return BetaMethod::sinh;
  if (s == "fft") return BetaMethod::fft;
  if (s == "fft-aa") return BetaMethod::fft_aa;
  throw std::invalid_argument("unknown method \"" + s + "\"");
}

struct ContractFlags {
  std::string model;
  std::string kind;
  double S0 = 100.0, K = 0.0, L = 0.0, U = 0.0, T = 1.0;
  int M = 1;

  void attach(CLI::App* cmd, bool barrier) {
    cmd->add_option("--model", model, "model config: JSON file path or inline JSON")
        ->required();
    cmd->add_option("--kind", kind, "payoff kind")->required();
    cmd->add_option("--S0", S0, "spot");
    cmd->add_option("--K", K, "strike")->required();
    cmd->add_option("--T", T, "maturity in years");
    if (barrier) {
      cmd->add_option("--L", L, "lower barrier");
      cmd->add_option("--U", U, "upper barrier");
      cmd->add_option("--M", M, "monitoring dates");
    }
  }

  PricingRequest request() const {
    PricingRequest req;
    req.kind = payoff_from_string(kind);
    req.S0 = S0;
    req.K = K;
    req.L = L;
    req.U = U;
    req.T = T;
    req.M = M;
    return req;
  }
};

// Grid, coefficients, and induction assembled from the public pieces so the
// run can report its own work counters and martingale residual.
struct GridRun {
  ValueGrid grid;
  std::vector<double> beta;
  BetaDiagnostics diag;
  double price = 0.0;
  double residual = 0.0;
};

GridRun run_grid_pricer(const PricingRequest& req, const CharExp& model,
                        int ny, double L1, BetaMethod method, double eps,
                        int enlarge) {
  GridRun run;
  run.grid = build_grid(req, model, ny, L1);
  const double dt = req.T / std::max(req.M, 1);

  BetaRequest breq;
  breq.model = &model;
  breq.a = 1.0 / run.grid.dx;
  breq.dt = dt;
  breq.x1 = (1.0 - ny) * run.grid.dx;
  breq.nx = 2 * ny;
  breq.eps = eps;
  switch (method) {
    case BetaMethod::sinh:
      run.beta = beta_sinh(breq, &run.diag);
      break;
    case BetaMethod::fft:
      run.beta = beta_fft(breq, ny * run.grid.dx, 2 * ny);
      run.diag.quad_terms.assign(breq.nx, 2 * ny);
      break;
    case BetaMethod::fft_aa:
      run.beta = beta_fft_aa(breq, ny * run.grid.dx, 2 * ny, enlarge);
      run.diag.quad_terms.assign(breq.nx, 2 * ny * enlarge);
      break;
  }
  run.residual = martingale_residual(run.beta, breq.x1, run.grid.dx, dt,
                                     model.rate(), model.dividend());
  run.price = price_backward(req, model, run.beta, run.grid);
  return run;
}

void print_run(const GridRun& run, int ny) {
  std::printf("price,%.8f\n", run.price);
  std::printf("ny,%d\n", ny);
  std::printf("nx,%d\n", 2 * ny);
  const auto [mn, mx] = std::minmax_element(run.diag.quad_terms.begin(),
                                            run.diag.quad_terms.end());
  std::printf("quad_terms,%d..%d\n", *mn, *mx);
  std::printf("residue_cols,%ld\n", run.diag.residue_cols);
  std::printf("martingale_residual,%.3e\n", run.residual);
}

int cmd_price_european(const ContractFlags& c, int ny, double L1,
                       const std::string& method, double eps) {
  auto model = load_model(c.model);
  PricingRequest req = c.request();
  if (has_lower_barrier(req.kind) || has_upper_barrier(req.kind))
    throw std::invalid_argument("price-european: kind has a barrier");
  if (ny == 0) {
    // no grid requested: direct sinh-deformed Fourier inversion
    std::printf("price,%.8f\n", price_european_sinh(req, *model, eps));
    std::printf("method,quad\n");
    return 0;
  }
  req.M = 1;
  GridRun run =
      run_grid_pricer(req, *model, ny, L1, method_from_string(method), eps, 6);
  print_run(run, ny);
  return 0;
}

int cmd_price_barrier(const ContractFlags& c, int ny, double L1,
                      const std::string& method, double eps, int enlarge) {
  auto model = load_model(c.model);
  PricingRequest req = c.request();
  if (!has_lower_barrier(req.kind) && !has_upper_barrier(req.kind))
    throw std::invalid_argument(
        "price-barrier: kind has no barrier (use price-european)");
  GridRun run = run_grid_pricer(req, *model, ny, L1,
                                method_from_string(method), eps, enlarge);
  print_run(run, ny);
  return 0;
}

int cmd_convergence_table(const ContractFlags& c, const std::string& ny_list,
                          double L1, const std::string& alt,
                          double reference, int enlarge, double eps) {
  auto model = load_model(c.model);
  PricingRequest req = c.request();

  std::vector<int> logs;
  for (double v : parse_list(ny_list, "--ny-list"))
    logs.push_back(static_cast<int>(v));

  struct Row {
    int log2ny;
    double ps, pf;
  };
  std::vector<Row> rows;
  const bool with_alt = alt != "none";
  const BetaMethod alt_method =
      with_alt ? method_from_string(alt) : BetaMethod::fft;
  for (int lg : logs) {
    const int ny = 1 << lg;
    Row row{lg, 0.0, 0.0};
    row.ps = price_barrier(req, *model, ny, L1, BetaMethod::sinh, eps).price;
    if (with_alt)
      row.pf =
          price_barrier(req, *model, ny, L1, alt_method, eps, enlarge).price;
    rows.push_back(row);
  }
  const double ref = std::isnan(reference) ? rows.back().ps : reference;

  std::printf("log2Ny,price_sinh,err_sinh,rate,price_fft,err_fft\n");
  double prev_err = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double err = std::abs(rows[i].ps - ref);
    std::printf("%d,%.8f,%.3e,", rows[i].log2ny, rows[i].ps, err);
    if (i > 0 && err > 0.0 && prev_err > 0.0)
      std::printf("%.2f", std::log2(prev_err / err));
    prev_err = err;
    if (with_alt)
      std::printf(",%.8f,%.3e\n", rows[i].pf, std::abs(rows[i].pf - ref));
    else
      std::printf(",,\n");
  }
  return 0;
}

int cmd_coeffs(const std::string& model_arg, int p, double a, double dt,
               double x1, int nx, const std::string& method, double eps) {
  auto model = load_model(model_arg);
  BetaRequest breq;
  breq.model = model.get();
  breq.p = p;
  breq.a = a;
  breq.dt = dt;
  breq.x1 = x1;
  breq.nx = nx;
  breq.eps = eps;

  std::vector<double> beta;
  BetaDiagnostics diag;
  if (method == "sinh") {
    beta = beta_sinh(breq, &diag);
  } else if (method == "fft") {
    beta = beta_fft(breq, 0.5 * nx / a, nx);
    diag.quad_terms.assign(nx, nx);
  } else {
    throw std::invalid_argument("coeffs: method must be sinh or fft");
  }

  std::printf("k,x_k,beta,n_terms,method\n");
  for (int k = 0; k < nx; ++k)
    std::printf("%d,%.10f,%.12e,%d,%s\n", k + 1, x1 + k / a, beta[k],
                diag.quad_terms[k], method.c_str());
  return 0;
}

int cmd_density(const std::string& model_arg, const std::string& dt_list,
                double a, double x1, int nx, int points, double eps) {
  auto model = load_model(model_arg);
  const std::vector<double> dts = parse_list(dt_list, "--dt-list");
  const double x2 = x1 + (nx - 1) / a;

  std::vector<double> xs(points);
  for (int i = 0; i < points; ++i)
    xs[i] = x1 + (x2 - x1) * i / (points - 1);

  std::vector<std::vector<double>> cols;
  for (double dt : dts) {
    BetaRequest breq;
    breq.model = model.get();
    breq.a = a;
    breq.dt = dt;
    breq.x1 = x1;
    breq.nx = nx;
    breq.eps = eps;
    cols.push_back(project_density(beta_sinh(breq), a, x1, 1, xs));
  }

  std::printf("x");
  for (double dt : dts) std::printf(",logp_dt%g", dt);
  std::printf("\n");
  for (int i = 0; i < points; ++i) {
    std::printf("%.10f", xs[i]);
    for (const auto& col : cols)
      std::printf(",%.10f", std::log(std::max(col[i], 1e-300)));
    std::printf("\n");
  }
  return 0;
}

int cmd_aliasing_demo(const std::string& model_arg, double dt, double a,
                      int points, double eps) {
  auto model = load_model(model_arg);

  auto grid_betas = [&](double half, BetaMethod mth) {
    BetaRequest breq;
    breq.model = model.get();
    breq.a = a;
    breq.dt = dt;
    breq.x1 = -half;
    breq.nx = static_cast<int>(std::lround(2.0 * half * a)) + 1;
    breq.eps = eps;
    if (mth == BetaMethod::sinh) return std::make_pair(beta_sinh(breq), breq);
    return std::make_pair(beta_fft(breq, half, breq.nx), breq);
  };

  const double narrow = 4.0, wide = 7.0;
  auto [bs_n, rq_n] = grid_betas(narrow, BetaMethod::sinh);
  auto [bf_n, rq_n2] = grid_betas(narrow, BetaMethod::fft);
  auto [bs_w, rq_w] = grid_betas(wide, BetaMethod::sinh);
  auto [bf_w, rq_w2] = grid_betas(wide, BetaMethod::fft);

  std::vector<double> xs(points);
  for (int i = 0; i < points; ++i)
    xs[i] = -narrow + 2.0 * narrow * i / (points - 1);

  auto logp = [&](const std::vector<double>& b, const BetaRequest& rq) {
    auto vals = project_density(b, a, rq.x1, 1, xs);
    for (double& v : vals) v = std::log(std::max(v, 1e-300));
    return vals;
  };
  const auto sn = logp(bs_n, rq_n), fn = logp(bf_n, rq_n2);
  const auto sw = logp(bs_w, rq_w), fw = logp(bf_w, rq_w2);

  std::printf("x,sinh_support4,fft_support4,sinh_support7,fft_support7\n");
  for (int i = 0; i < points; ++i)
    std::printf("%.10f,%.10f,%.10f,%.10f,%.10f\n", xs[i], sn[i], fn[i], sw[i],
                fw[i]);
  return 0;
}

int cmd_auto_params(const ContractFlags& c) {
  auto model = load_model(c.model);
  PricingRequest req = c.request();
  AutoResult res = auto_params(req, *model);
  const double price = price_backward(req, *model, res.beta_bar, res.grid);
  const double resid =
      martingale_residual(res.beta_bar, (1.0 - res.ny) * res.grid.dx,
                          res.grid.dx, req.T / req.M, model->rate(),
                          model->dividend());
  std::printf("ny,%d\n", res.ny);
  std::printf("alpha,%.10f\n", res.alpha);
  std::printf("tail_doublings,%d\n", res.tail_doublings);
  std::printf("dist_doublings,%d\n", res.dist_doublings);
  std::printf("price,%.8f\n", price);
  std::printf("martingale_residual,%.3e\n", resid);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sinh-accelerated B-spline projection pricer"};
  app.require_subcommand(1);

  // price-european ---------------------------------------------------------
  auto* pe = app.add_subcommand("price-european", "European put/call");
  ContractFlags pe_c;
  pe_c.attach(pe, false);
  int pe_ny = 0;
  double pe_l1 = 10.0, pe_eps = 1e-10;
  std::string pe_method = "sinh";
  pe->add_option("--Ny", pe_ny, "value-grid size (0 = direct quadrature)");
  pe->add_option("--L1", pe_l1, "grid half-width in cumulant units");
  pe->add_option("--method", pe_method, "sinh | fft | fft-aa");
  pe->add_option("--eps", pe_eps, "accuracy target");

  // price-barrier ----------------------------------------------------------
  auto* pb = app.add_subcommand("price-barrier", "discretely monitored knockout");
  ContractFlags pb_c;
  pb_c.attach(pb, true);
  int pb_ny = 512, pb_enlarge = 6;
  double pb_l1 = 8.0, pb_eps = 1e-12;
  std::string pb_method = "sinh";
  pb->add_option("--Ny", pb_ny, "value-grid size");
  pb->add_option("--L1", pb_l1, "grid half-width in cumulant units");
  pb->add_option("--method", pb_method, "sinh | fft | fft-aa");
  pb->add_option("--enlarge", pb_enlarge, "fft-aa frequency enlargement");
  pb->add_option("--eps", pb_eps, "coefficient accuracy target");

  // convergence-table ------------------------------------------------------
  auto* ct = app.add_subcommand("convergence-table",
                                "price over a ladder of grid sizes");
  ContractFlags ct_c;
  ct_c.attach(ct, true);
  std::string ct_nys = "5,6,7,8,9,10", ct_alt = "fft";
  double ct_l1 = 8.0, ct_ref = std::nan(""), ct_eps = 1e-12;
  int ct_enlarge = 6;
  ct->add_option("--ny-list", ct_nys, "comma list of log2(Ny)");
  ct->add_option("--L1", ct_l1, "grid half-width in cumulant units");
  ct->add_option("--alt-method", ct_alt, "second column: fft | fft-aa | none");
  ct->add_option("--reference", ct_ref,
                 "error reference (default: finest sinh price)");
  ct->add_option("--enlarge", ct_enlarge, "fft-aa frequency enlargement");
  ct->add_option("--eps", ct_eps, "coefficient accuracy target");

  // coeffs -------------------------------------------------------------------
  auto* co = app.add_subcommand("coeffs", "projection coefficients");
  std::string co_model, co_method = "sinh";
  int co_p = 1, co_nx = 0;
  double co_a = 0.0, co_dt = 1.0, co_x1 = 0.0, co_eps = 1e-12;
  co->add_option("--model", co_model, "model config")->required();
  co->add_option("--p", co_p, "B-spline order (1..3)");
  co->add_option("--a", co_a, "resolution (grid step 1/a)")->required();
  co->add_option("--dt", co_dt, "time increment");
  co->add_option("--x1", co_x1, "leftmost grid point")->required();
  co->add_option("--nx", co_nx, "coefficient count")->required();
  co->add_option("--method", co_method, "sinh | fft");
  co->add_option("--eps", co_eps, "accuracy target");

  // density ------------------------------------------------------------------
  auto* de = app.add_subcommand("density", "projected transition densities");
  std::string de_model, de_dts = "0.0833333333333333,0.25,1,2";
  double de_a = 32.0, de_x1 = -2.0, de_eps = 1e-12;
  int de_nx = 129, de_points = 201;
  de->add_option("--model", de_model, "model config")->required();
  de->add_option("--dt-list", de_dts, "comma list of time increments");
  de->add_option("--a", de_a, "resolution");
  de->add_option("--x1", de_x1, "leftmost grid point");
  de->add_option("--nx", de_nx, "coefficient count");
  de->add_option("--points", de_points, "output sample count");
  de->add_option("--eps", de_eps, "accuracy target");

  // aliasing-demo -------------------------------------------------------------
  auto* al = app.add_subcommand("aliasing-demo",
                                "sinh vs flat-FFT densities on two supports");
  std::string al_model;
  double al_dt = 1.0, al_a = 16.0, al_eps = 1e-12;
  int al_points = 201;
  al->add_option("--model", al_model, "model config")->required();
  al->add_option("--dt", al_dt, "time increment");
  al->add_option("--a", al_a, "resolution");
  al->add_option("--points", al_points, "output sample count");
  al->add_option("--eps", al_eps, "accuracy target");

  // auto-params ----------------------------------------------------------------
  auto* ap = app.add_subcommand("auto-params",
                                "automatic grid sizing for single barriers");
  ContractFlags ap_c;
  ap_c.attach(ap, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (pe->parsed())
      return cmd_price_european(pe_c, pe_ny, pe_l1, pe_method, pe_eps);
    if (pb->parsed())
      return cmd_price_barrier(pb_c, pb_ny, pb_l1, pb_method, pb_eps,
                               pb_enlarge);
    if (ct->parsed())
      return cmd_convergence_table(ct_c, ct_nys, ct_l1, ct_alt, ct_ref,
                                   ct_enlarge, ct_eps);
    if (co->parsed())
      return cmd_coeffs(co_model, co_p, co_a, co_dt, co_x1, co_nx, co_method,
                        co_eps);
    if (de->parsed())
      return cmd_density(de_model, de_dts, de_a, de_x1, de_nx, de_points,
                         de_eps);
    if (al->parsed())
      return cmd_aliasing_demo(al_model, al_dt, al_a, al_points, al_eps);
    if (ap->parsed()) return cmd_auto_params(ap_c);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
