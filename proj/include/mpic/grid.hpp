#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace mpic {

using Vec3 = std::array<double, 3>;
using Idx3 = std::array<int, 3>;

enum class Side { primal, dual };

// Periodic tensor-product grid. Primal nodes sit at m*h, dual nodes at (m+1/2)*h.
struct GridSpec {
  Vec3 lengths{};
  Idx3 cells{};
  Vec3 spacings{};

  std::size_t size() const {
    return static_cast<std::size_t>(cells[0]) * cells[1] * cells[2];
  }
  double cell_volume() const { return spacings[0] * spacings[1] * spacings[2]; }
  double volume() const { return lengths[0] * lengths[1] * lengths[2]; }

  static int wrap(int i, int m) {
    int r = i % m;
    return r < 0 ? r + m : r;
  }

  // x-fastest flat index with periodic wrapping on every axis.
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(wrap(i, cells[0])) +
           static_cast<std::size_t>(cells[0]) *
               (static_cast<std::size_t>(wrap(j, cells[1])) +
                static_cast<std::size_t>(cells[1]) * wrap(k, cells[2]));
  }
  Idx3 unflatten(std::size_t n) const {
    int i = static_cast<int>(n % cells[0]);
    n /= cells[0];
    int j = static_cast<int>(n % cells[1]);
    return {i, j, static_cast<int>(n / cells[1])};
  }
  std::size_t stride(int axis) const {
    return axis == 0 ? 1 : axis == 1 ? cells[0] : static_cast<std::size_t>(cells[0]) * cells[1];
  }

  double primal_node(int axis, int m) const { return m * spacings[axis]; }
  double dual_node(int axis, int m) const { return (m + 0.5) * spacings[axis]; }
};

// Minimum cells per axis for operators of the given (even) order.
int required_cells(int order);

// Throws std::invalid_argument for non-positive lengths or too few cells.
GridSpec build_grid(const Vec3& lengths, const Idx3& cells, int order = 2);

// Degrees of freedom of a k-form on the primal or dual grid.
struct DofField {
  int degree = 0;
  Side side = Side::primal;
  std::array<std::vector<double>, 3> comp;

  DofField() = default;
  DofField(int k, Side s, const GridSpec& g);

  int ncomp() const { return (degree == 1 || degree == 2) ? 3 : 1; }
  std::vector<double>& operator[](int c) { return comp[c]; }
  const std::vector<double>& operator[](int c) const { return comp[c]; }
  std::size_t total_size() const;

  void fill(double v);
  void axpy(double a, const DofField& x);
  bool all_finite() const;
};

void check_layout(const DofField& f, int k, Side s, const std::string& what);

// Index-matched pairing of a primal k-form with a dual (3-k)-form.
double duality_product(const DofField& a, const DofField& b);

// Plain dot product of two fields of identical layout.
double dot(const DofField& a, const DofField& b);
double norm2(const DofField& a);
double max_abs(const DofField& a);

}  // namespace mpic
