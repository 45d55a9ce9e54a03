#include "mpic/run.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <ostream>

#include "mpic/csv.hpp"

namespace mpic {

std::vector<double> DiagnosticsRow::values() const {
  return {static_cast<double>(step), time,           energy.kinetic,
          energy.electric,           energy.magnetic, energy.total(),
          gauss_residual,            div_b_max,       energy.magnetic_comp[0],
          energy.magnetic_comp[1],   energy.magnetic_comp[2]};
}

const std::vector<std::string>& diagnostics_columns() {
  static const std::vector<std::string> cols{
      "step",           "time",       "kinetic",    "electric",   "magnetic",  "total",
      "gauss_residual", "div_b_max",  "magnetic_x", "magnetic_y", "magnetic_z"};
  return cols;
}

DiagnosticsRow measure(const SimState& s, const Discretization& disc) {
  DiagnosticsRow r;
  r.step = s.step;
  r.time = s.time;
  r.energy = total_energy(s, disc);
  r.gauss_residual = gauss_residual(s, disc);
  r.div_b_max = div_b_max(s, disc);
  return r;
}

std::vector<double> field_slice(const SimState& s, const Discretization& disc, int axis,
                                int component) {
  const GridSpec& g = disc.grid;
  DofField e = apply_hodge(disc.h2_dual, s.d, g);
  std::vector<double> out(g.cells[axis], 0.0);
  const double scale = 1.0 / (g.spacings[component] * g.size() / g.cells[axis]);
  for (std::size_t n = 0; n < g.size(); ++n) out[g.unflatten(n)[axis]] += e[component][n] * scale;
  return out;
}

Simulation setup(const RunConfig& cfg) {
  GridSpec g = build_grid(cfg.lengths, cfg.cells, cfg.hodge_order);
  Simulation sim{Discretization::make(g, cfg.hodge_order, cfg.hodge_variant, cfg.kernel_degree), {}};
  std::vector<ParticleBatch> batches;
  for (const auto& sc : cfg.species) {
    SpeciesSpec spec = sc.spec;
    if (sc.per_cell > 0) spec.count = sc.per_cell * g.size();
    batches.push_back(sample_particles(spec, g));
  }
  InitOptions opt;
  opt.neutralize = cfg.neutralize;
  opt.quadrature = cfg.quadrature;
  const Vec3 b0 = cfg.b0;
  const Perturbation pert = cfg.perturbation;
  const double kp = 2.0 * std::numbers::pi * pert.mode / g.lengths[pert.axis];
  opt.magnetic = [b0, pert, kp](const Vec3& x) {
    Vec3 b = b0;
    b[pert.component] += pert.amplitude * std::cos(kp * x[pert.axis]);
    return b;
  };
  sim.state = init_fields(std::move(batches), sim.disc, opt);
  if (cfg.wave_amplitude != 0.0) {
    const double kw = 2.0 * std::numbers::pi * cfg.wave_mode / g.lengths[0];
    const double a = cfg.wave_amplitude;
    int nq = cfg.quadrature > 0 ? cfg.quadrature
                                : default_quadrature(cfg.hodge_order,
                                                     cfg.hodge_variant == HodgeVariant::minimal);
    DofField w = reduce_vector(
        2, Side::dual, [a, kw](const Vec3& x) { return Vec3{0.0, a * std::cos(kw * x[0]), 0.0}; }, g, nq);
    sim.state.d.axpy(1.0, w);
  }
  return sim;
}

RunResult run(const RunConfig& cfg, std::ostream* log) {
  const std::filesystem::path dir = output_directory(cfg);
  RunResult res;
  res.diagnostics = dir / (cfg.name + "_diagnostics.csv");
  CsvWriter diag(res.diagnostics, diagnostics_columns());
  long n = 0;
  try {
    Simulation sim = setup(cfg);
    const GridSpec& g = sim.disc.grid;
    if (log && !cfl_advisory_ok(cfg.dt, g))
      *log << "warning: dt = " << cfg.dt << " exceeds the smallest cell size\n";
    std::unique_ptr<CsvWriter> slice;
    if (cfg.slice) {
      const char* ax = "xyz";
      res.slice = dir / (cfg.name + "_slice.csv");
      std::vector<std::string> cols{"step", "time"};
      for (int i = 0; i < g.cells[cfg.slice_axis]; ++i) cols.push_back("e" + std::to_string(i));
      slice = std::make_unique<CsvWriter>(
          res.slice, cols,
          std::vector<std::string>{"axis=" + std::string(1, ax[cfg.slice_axis]) + " component=" +
                                   std::string(1, ax[cfg.slice_component]) +
                                   " spacing=" + format_double(g.spacings[cfg.slice_axis]) +
                                   " dt=" + format_double(cfg.dt * cfg.interval)});
    }
    auto record = [&]() {
      res.last = measure(sim.state, sim.disc);
      diag.row(res.last.values());
      if (slice) {
        std::vector<double> r{static_cast<double>(sim.state.step), sim.state.time};
        auto v = field_slice(sim.state, sim.disc, cfg.slice_axis, cfg.slice_component);
        r.insert(r.end(), v.begin(), v.end());
        slice->row(r);
      }
    };
    const long steps = cfg.steps();
    record();
    for (n = 1; n <= steps; ++n) {
      step(sim.state, sim.disc, cfg.dt);
      if (n % cfg.interval == 0) record();
      if (log && steps >= 10 && n % (steps / 10) == 0)
        *log << cfg.name << ": step " << n << "/" << steps << '\n';
    }
    res.steps = steps;
  } catch (const std::exception& e) {
    diag.comment("failed at step " + std::to_string(n) + ": " + e.what());
    throw;
  }
  return res;
}

}  // namespace mpic
