#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "mpic/analysis.hpp"
#include "mpic/csv.hpp"
#include "mpic/run.hpp"

using namespace mpic;

namespace {

int cmd_run(const std::string& path, bool quiet) {
  RunConfig cfg = load_config(path);
  RunResult r = run(cfg, quiet ? nullptr : &std::cerr);
  std::printf("run: steps=%ld total=%.17g gauss_residual=%.3e div_b_max=%.3e diagnostics=%s\n",
              r.steps, r.last.energy.total(), r.last.gauss_residual, r.last.div_b_max,
              r.diagnostics.string().c_str());
  if (!r.slice.empty()) std::printf("slice: %s\n", r.slice.string().c_str());
  return 0;
}

int cmd_hodge(const std::vector<int>& orders, const std::vector<int>& grids,
              const std::string& variant, int quadrature, const std::string& output) {
  auto rows = hodge_convergence(orders, grids, parse_variant(variant), quadrature);
  std::printf("%-8s %5s %5s %3s %12s %7s %12s %7s %12s %12s\n", "variant", "order", "cells", "nq", "e1",
              "ord1", "e2", "ord2", "e1_l2", "e2_l2");
  for (const auto& r : rows)
    std::printf("%-8s %5d %5d %3d %12.4e %7.3f %12.4e %7.3f %12.4e %12.4e\n",
                to_string(r.variant).c_str(), r.order, r.cells, r.quadrature, r.e1, r.order_e1, r.e2,
                r.order_e2, r.e1_l2, r.e2_l2);
  if (!output.empty()) write_hodge_table(rows, output);
  return 0;
}

int cmd_dispersion(const std::string& slice_path, const std::string& config_path, int modes,
                   double bins, const std::string& output) {
  RunConfig cfg = load_config(config_path);
  BranchParams p = branch_params(cfg);
  SliceSeries s = read_slice(slice_path);
  Spectrum sp = power_spectrum(s.values, s.spacing, s.dt);
  if (!output.empty()) write_spectrum(sp, p, output);
  auto checks = check_ridges(sp, p, modes, bins);
  int ok = 0;
  for (const auto& c : checks) {
    std::printf("mode %d k=%.5f peak=%.5f branch=%.5f bins=%.2f %s\n", c.ik, c.k, c.omega_peak,
                c.omega_branch, c.distance_bins, c.ok ? "ok" : "off");
    ok += c.ok;
  }
  std::printf("dispersion: %d/%zu modes within %.1f bins\n", ok, checks.size(), bins);
  return ok == static_cast<int>(checks.size()) ? 0 : 3;
}

int cmd_fit(const std::string& path, const std::string& column, const std::vector<double>& window) {
  CsvTable t = read_csv(path);
  double g = growth_rate_fit(t.values("time"), t.values(column), window.at(0), window.at(1));
  std::printf("growth_rate %.10g\n", g);
  return 0;
}

int cmd_stencils(int order, double h) {
  const int p = order / 2 - 1;
  for (const auto& s : {build_h0(p, h), build_h1(p, h), build_h0_min(p, h)}) {
    const char* name = s.kind == StencilKind::h0 ? "h0" : s.kind == StencilKind::h1 ? "h1" : "h0_min";
    std::printf("%-7s", name);
    for (double c : s.coeffs) std::printf(" %.17g", c);
    std::printf("\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mimetic finite-difference electromagnetic particle-in-cell engine"};
  app.require_subcommand(1);

  std::string config, slice, output, variant = "natural", column = "magnetic_y", diag;
  bool quiet = false;
  std::vector<int> orders{2, 4, 6}, grids{16, 32, 64, 128};
  std::vector<double> window{100.0, 200.0};
  int quadrature = 0, modes = 8, order = 2;
  double bins = 2.0, h = 1.0;

  auto* run_cmd = app.add_subcommand("run", "Run a simulation from a config file");
  run_cmd->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
  run_cmd->add_flag("-q,--quiet", quiet, "Suppress progress output");

  auto* hodge_cmd = app.add_subcommand("hodge-convergence", "Hodge-operator error table");
  hodge_cmd->add_option("--orders", orders, "Hodge orders")->delimiter(',');
  hodge_cmd->add_option("--grids", grids, "Cells per axis")->delimiter(',');
  hodge_cmd->add_option("--variant", variant, "natural or minimal");
  hodge_cmd->add_option("--quadrature", quadrature, "Gauss points per axis, 0 for the table policy");
  hodge_cmd->add_option("-o,--output", output, "CSV output path");

  auto* disp_cmd = app.add_subcommand("dispersion", "Spectrum of a field slice against the R/L branches");
  disp_cmd->add_option("slice", slice, "Slice CSV")->required()->check(CLI::ExistingFile);
  disp_cmd->add_option("-c,--config", config, "Config of the run")->required()->check(CLI::ExistingFile);
  disp_cmd->add_option("--modes", modes, "Lowest nonzero k-modes to check");
  disp_cmd->add_option("--bins", bins, "Allowed distance in omega bins");
  disp_cmd->add_option("-o,--output", output, "Spectrum CSV output path");

  auto* fit_cmd = app.add_subcommand("fit-growth", "Exponential growth rate of an energy column");
  fit_cmd->add_option("diagnostics", diag, "Diagnostics CSV")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--column", column, "Energy column");
  fit_cmd->add_option("--window", window, "Fit window t0,t1")->delimiter(',')->expected(2);

  auto* st_cmd = app.add_subcommand("print-stencils", "Print the 1D Hodge stencils");
  st_cmd->add_option("--order", order, "Hodge order")->check(CLI::PositiveNumber);
  st_cmd->add_option("--spacing", h, "Cell size");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return cmd_run(config, quiet);
    if (*hodge_cmd) return cmd_hodge(orders, grids, variant, quadrature, output);
    if (*disp_cmd) return cmd_dispersion(slice, config, modes, bins, output);
    if (*fit_cmd) return cmd_fit(diag, column, window);
    if (*st_cmd) {
      if (order % 2 != 0) throw std::invalid_argument("order must be even");
      return cmd_stencils(order, h);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
