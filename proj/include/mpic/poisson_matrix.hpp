#pragma once

#include <vector>

#include "mpic/pic.hpp"

namespace mpic {

// Dense structure matrix for tiny systems, used by tests only. The state
// vector is u = (X, V, D, B) with particle-major X and V and component-major
// field entries.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> a;
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

std::size_t state_dimension(const SimState& s, const Discretization& disc);
std::vector<double> state_to_vector(const SimState& s);
void vector_to_state(const std::vector<double>& u, SimState& s);

DenseMatrix assemble_poisson_matrix(const SimState& s, const Discretization& disc);
std::vector<double> hamiltonian_gradient(const SimState& s, const Discretization& disc);
// Right-hand sides of the equations of motion evaluated directly.
std::vector<double> equations_of_motion(const SimState& s, const Discretization& disc);

}  // namespace mpic
