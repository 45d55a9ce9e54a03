#include "mpic/derham.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mpic {

namespace {

// Legendre polynomial P_n and its derivative at x.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  if (n == 1) p0 = 1.0;
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

Quadrature gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("quadrature needs at least one point");
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p, dp;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(n, x, p, dp);
    q.nodes[n - 1 - i] = 0.5 * (x + 1.0);
    q.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

AxisSampling axis_sampling(int degree, Side side, int component, int axis) {
  bool along = axis == component;
  bool integral = false;
  switch (degree) {
    case 0: integral = false; break;
    case 1: integral = along; break;
    case 2: integral = !along; break;
    case 3: integral = true; break;
    default: throw std::invalid_argument("form degree must be in 0..3");
  }
  double offset = 0.0;
  if (side == Side::dual) offset = integral ? -0.5 : 0.5;
  return {integral, offset};
}

int default_quadrature(int order, bool minimal) {
  if (minimal && order == 2) return 4;
  return order / 2 + 2;
}

namespace {

struct AxisPoints {
  std::vector<double> x, w;  // per index: npts entries
  int npts = 1;
};

AxisPoints axis_points(const GridSpec& g, int axis, AxisSampling s, const Quadrature& q) {
  AxisPoints a;
  int m = g.cells[axis];
  double h = g.spacings[axis];
  a.npts = s.integral ? static_cast<int>(q.nodes.size()) : 1;
  a.x.resize(static_cast<std::size_t>(m) * a.npts);
  a.w.resize(a.x.size());
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < a.npts; ++k) {
      std::size_t n = static_cast<std::size_t>(i) * a.npts + k;
      if (s.integral) {
        a.x[n] = (i + s.offset + q.nodes[k]) * h;
        a.w[n] = q.weights[k] * h;
      } else {
        a.x[n] = (i + s.offset) * h;
        a.w[n] = 1.0;
      }
    }
  }
  return a;
}

template <class Eval>
void reduce_component(const GridSpec& g, int degree, Side side, int c, const Quadrature& q,
                      std::vector<double>& out, Eval&& eval) {
  AxisPoints ax[3];
  for (int a = 0; a < 3; ++a) ax[a] = axis_points(g, a, axis_sampling(degree, side, c, a), q);
  for (int k = 0; k < g.cells[2]; ++k)
    for (int j = 0; j < g.cells[1]; ++j)
      for (int i = 0; i < g.cells[0]; ++i) {
        double s = 0.0;
        for (int qz = 0; qz < ax[2].npts; ++qz) {
          std::size_t nz = static_cast<std::size_t>(k) * ax[2].npts + qz;
          for (int qy = 0; qy < ax[1].npts; ++qy) {
            std::size_t ny = static_cast<std::size_t>(j) * ax[1].npts + qy;
            double wyz = ax[2].w[nz] * ax[1].w[ny];
            for (int qx = 0; qx < ax[0].npts; ++qx) {
              std::size_t nx = static_cast<std::size_t>(i) * ax[0].npts + qx;
              double v = eval(Vec3{ax[0].x[nx], ax[1].x[ny], ax[2].x[nz]});
              if (!std::isfinite(v)) throw std::runtime_error("reduce: non-finite field value");
              s += wyz * ax[0].w[nx] * v;
            }
          }
        }
        out[g.index(i, j, k)] = s;
      }
}

}  // namespace

DofField reduce_scalar(int degree, Side side, const ScalarFn& f, const GridSpec& g, int nq) {
  if (degree != 0 && degree != 3)
    throw std::invalid_argument("reduce: scalar fields reduce to 0- or 3-forms only");
  DofField out(degree, side, g);
  Quadrature q = gauss_legendre(nq);
  reduce_component(g, degree, side, 0, q, out[0], f);
  return out;
}

DofField reduce_vector(int degree, Side side, const VectorFn& f, const GridSpec& g, int nq) {
  if (degree != 1 && degree != 2)
    throw std::invalid_argument("reduce: vector fields reduce to 1- or 2-forms only");
  DofField out(degree, side, g);
  Quadrature q = gauss_legendre(nq);
  for (int c = 0; c < 3; ++c)
    reduce_component(g, degree, side, c, q, out[c], [&](const Vec3& x) { return f(x)[c]; });
  return out;
}

void diff_axis(const std::vector<double>& in, std::vector<double>& out, const GridSpec& g,
               int axis, bool forward, double scale, bool accumulate) {
  const int mx = g.cells[0], my = g.cells[1], mz = g.cells[2];
  const int m = g.cells[axis];
  const std::size_t st = g.stride(axis);
  if (!accumulate) std::fill(out.begin(), out.end(), 0.0);
  for (int k = 0; k < mz; ++k)
    for (int j = 0; j < my; ++j)
      for (int i = 0; i < mx; ++i) {
        int pos = axis == 0 ? i : axis == 1 ? j : k;
        std::size_t n = g.index(i, j, k);
        std::size_t nb;
        if (forward)
          nb = pos + 1 < m ? n + st : n - st * (m - 1);
        else
          nb = pos > 0 ? n - st : n + st * (m - 1);
        double d = forward ? in[nb] - in[n] : in[n] - in[nb];
        out[n] += scale * d;
      }
}

namespace {

DofField grad_impl(const DofField& phi, const GridSpec& g, Side s) {
  check_layout(phi, 0, s, "grad");
  DofField out(1, s, g);
  bool fwd = s == Side::primal;
  for (int a = 0; a < 3; ++a) diff_axis(phi[0], out[a], g, a, fwd, 1.0, false);
  return out;
}

DofField curl_impl(const DofField& a, const GridSpec& g, Side s) {
  check_layout(a, 1, s, "curl");
  DofField out(2, s, g);
  bool fwd = s == Side::primal;
  for (int c = 0; c < 3; ++c) {
    int c1 = (c + 1) % 3, c2 = (c + 2) % 3;
    diff_axis(a[c2], out[c], g, c1, fwd, 1.0, true);
    diff_axis(a[c1], out[c], g, c2, fwd, -1.0, true);
  }
  return out;
}

DofField div_impl(const DofField& b, const GridSpec& g, Side s) {
  check_layout(b, 2, s, "div");
  DofField out(3, s, g);
  bool fwd = s == Side::primal;
  for (int a = 0; a < 3; ++a) diff_axis(b[a], out[0], g, a, fwd, 1.0, true);
  return out;
}

}  // namespace

DofField apply_grad(const DofField& phi, const GridSpec& g) { return grad_impl(phi, g, Side::primal); }
DofField apply_curl(const DofField& a, const GridSpec& g) { return curl_impl(a, g, Side::primal); }
DofField apply_div(const DofField& b, const GridSpec& g) { return div_impl(b, g, Side::primal); }
DofField apply_grad_dual(const DofField& phi, const GridSpec& g) { return grad_impl(phi, g, Side::dual); }
DofField apply_curl_dual(const DofField& a, const GridSpec& g) { return curl_impl(a, g, Side::dual); }
DofField apply_div_dual(const DofField& b, const GridSpec& g) { return div_impl(b, g, Side::dual); }

}  // namespace mpic
