#pragma once

#include <optional>
#include <vector>

#include "mpic/derham.hpp"
#include "mpic/grid.hpp"
#include "mpic/hodge.hpp"
#include "mpic/kernel.hpp"

namespace mpic {

// Grid plus the Hodge operators and kernel degree shared by every substep.
struct Discretization {
  GridSpec grid;
  int order = 2;
  HodgeVariant variant = HodgeVariant::natural;
  int degree = 1;
  HodgeOp3D h2;       // primal 2-form -> dual 1-form
  HodgeOp3D h2_dual;  // dual 2-form -> primal 1-form

  static Discretization make(const GridSpec& g, int order, HodgeVariant variant, int degree);
};

struct SimState {
  std::vector<ParticleBatch> batches;
  DofField d;           // dual 2-form, electric flux
  DofField b;           // primal 2-form, magnetic flux
  DofField background;  // dual 3-form, uniform neutralizing charge
  double time = 0.0;
  long step = 0;
};

struct Energies {
  double kinetic = 0.0;
  double electric = 0.0;
  double magnetic = 0.0;
  Vec3 magnetic_comp{0.0, 0.0, 0.0};
  double total() const { return kinetic + electric + magnetic; }
};

Energies total_energy(const SimState& s, const Discretization& disc);

struct InitOptions {
  bool neutralize = false;
  VectorFn magnetic;  // background plus perturbation; empty for none
  int quadrature = 0; // 0 selects the default for the Hodge order
};

// Solves -Dd H2_dual^{-1} G phi = rho and returns D = -H2_dual^{-1} G phi.
DofField solve_gauss(const DofField& rho, const HodgeOp3D& h2_dual, const GridSpec& g);

SimState init_fields(std::vector<ParticleBatch> batches, const Discretization& disc,
                     const InitOptions& opt);

DofField total_charge(const SimState& s, const Discretization& disc);
// ||Dd D - rho|| / ||rho|| (absolute when rho vanishes).
double gauss_residual(const SimState& s, const Discretization& disc);
double div_b_max(const SimState& s, const Discretization& disc);

// Source-free Maxwell flows and the particle flows of the splitting.
void flow_b(SimState& s, const Discretization& disc, double tau);
void flow_e(SimState& s, const Discretization& disc, double tau);
void flow_axis(SimState& s, const Discretization& disc, int axis, double tau);

// Strang composition B E x y z y x E B; negative dt runs it backwards.
void step(SimState& s, const Discretization& disc, double dt);

bool cfl_advisory_ok(double dt, const GridSpec& g);

}  // namespace mpic
