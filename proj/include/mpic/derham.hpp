#pragma once

#include <functional>
#include <vector>

#include "mpic/grid.hpp"

namespace mpic {

using ScalarFn = std::function<double(const Vec3&)>;
using VectorFn = std::function<Vec3(const Vec3&)>;

// Gauss-Legendre nodes and weights on [0,1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature gauss_legendre(int n);

// How a DoF samples the field along one axis: a point at (i+offset)h or an
// integral over [(i+offset)h, (i+offset+1)h].
struct AxisSampling {
  bool integral = false;
  double offset = 0.0;
};
AxisSampling axis_sampling(int degree, Side side, int component, int axis);

// Default quadrature points per cell and axis for a Hodge order.
int default_quadrature(int order, bool minimal);

DofField reduce_scalar(int degree, Side side, const ScalarFn& f, const GridSpec& g, int nq);
DofField reduce_vector(int degree, Side side, const VectorFn& f, const GridSpec& g, int nq);

// Periodic differences along one axis: forward (i+1)-(i) or backward (i)-(i-1).
void diff_axis(const std::vector<double>& in, std::vector<double>& out, const GridSpec& g,
               int axis, bool forward, double scale, bool accumulate);

DofField apply_grad(const DofField& phi, const GridSpec& g);
DofField apply_curl(const DofField& a, const GridSpec& g);
DofField apply_div(const DofField& b, const GridSpec& g);
DofField apply_grad_dual(const DofField& phi, const GridSpec& g);
DofField apply_curl_dual(const DofField& a, const GridSpec& g);
DofField apply_div_dual(const DofField& b, const GridSpec& g);

}  // namespace mpic
