#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mpic/config.hpp"
#include "mpic/pic.hpp"

namespace mpic {

struct DiagnosticsRow {
  long step = 0;
  double time = 0.0;
  Energies energy;
  double gauss_residual = 0.0;
  double div_b_max = 0.0;

  std::vector<double> values() const;
};

const std::vector<std::string>& diagnostics_columns();
DiagnosticsRow measure(const SimState& s, const Discretization& disc);

// Average over the two transverse axes of E_component / h_component, one
// value per primal cell along `axis`.
std::vector<double> field_slice(const SimState& s, const Discretization& disc, int axis,
                                int component);

struct Simulation {
  Discretization disc;
  SimState state;
};

// Builds the grid and operators, samples particles and solves for the initial fields.
Simulation setup(const RunConfig& cfg);

struct RunResult {
  std::filesystem::path diagnostics;
  std::filesystem::path slice;
  long steps = 0;
  DiagnosticsRow last;
};

// Runs the configured experiment and writes <dir>/<name>_diagnostics.csv and,
// when enabled, <dir>/<name>_slice.csv. On error the failure is appended to
// the diagnostics file and the exception is rethrown.
RunResult run(const RunConfig& cfg, std::ostream* log = nullptr);

}  // namespace mpic
