#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mpic/grid.hpp"
#include "mpic/hodge.hpp"
#include "mpic/kernel.hpp"

namespace mpic {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpeciesConfig {
  SpeciesSpec spec;
  std::size_t per_cell = 0;  // when nonzero, overrides spec.count
};

// Single-mode cosine added to one component of the initial magnetic field:
// B_component += amplitude * cos(2 pi mode x_axis / L_axis).
struct Perturbation {
  double amplitude = 0.0;
  int component = 1;
  int axis = 0;
  int mode = 1;
};

struct RunConfig {
  Idx3 cells{8, 8, 8};
  Vec3 lengths{1.0, 1.0, 1.0};

  double dt = 0.0;
  double t_end = 0.0;
  int hodge_order = 2;
  HodgeVariant hodge_variant = HodgeVariant::natural;
  int kernel_degree = 1;
  int quadrature = 0;

  std::vector<SpeciesConfig> species;
  bool neutralize = true;
  Vec3 b0{0.0, 0.0, 0.0};
  Perturbation perturbation;
  // Vacuum standing wave E_y = amplitude * cos(2 pi mode x / L_x) at t = 0.
  double wave_amplitude = 0.0;
  int wave_mode = 1;

  int interval = 1;
  bool slice = false;
  int slice_axis = 0;
  int slice_component = 1;

  std::string output_dir = ".";
  std::string name = "run";

  long steps() const;
};

// Parses the flat `key = value` format; throws ConfigError naming the line.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

// MGEMPIC_OUTPUT_DIR, when set, replaces output.dir.
std::filesystem::path output_directory(const RunConfig& cfg);

}  // namespace mpic
