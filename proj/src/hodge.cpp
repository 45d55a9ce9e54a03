#include "mpic/hodge.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mpic/derham.hpp"

namespace mpic {

double lagrange(int lo, int hi, int a, double u) {
  double v = 1.0;
  for (int b = lo; b <= hi; ++b)
    if (b != a) v *= (u - b) / (a - b);
  return v;
}

double lagrange_deriv(int lo, int hi, int a, double u) {
  double s = 0.0;
  for (int c = lo; c <= hi; ++c) {
    if (c == a) continue;
    double t = 1.0 / (a - c);
    for (int b = lo; b <= hi; ++b)
      if (b != a && b != c) t *= (u - b) / (a - b);
    s += t;
  }
  return s;
}

double histopolation(int p, int a, double u) {
  double s = 0.0;
  for (int b = a + 1; b <= p + 1; ++b) s += lagrange_deriv(-p, p + 1, b, u);
  return s;
}

namespace {

void locate(double x, double h, std::size_t m, int& cell, double& u) {
  double t = x / h;
  double fl = std::floor(t);
  u = t - fl;
  cell = GridSpec::wrap(static_cast<int>(static_cast<long long>(fl) % static_cast<long long>(m)),
                        static_cast<int>(m));
}

}  // namespace

double interp_i0(std::span<const double> f, double h, int p, double x) {
  int m = static_cast<int>(f.size()), i;
  double u;
  locate(x, h, f.size(), i, u);
  double s = 0.0;
  for (int a = -p; a <= p + 1; ++a) s += f[GridSpec::wrap(i + a, m)] * lagrange(-p, p + 1, a, u);
  return s;
}

double interp_i0_deriv(std::span<const double> f, double h, int p, double x) {
  int m = static_cast<int>(f.size()), i;
  double u;
  locate(x, h, f.size(), i, u);
  double s = 0.0;
  for (int a = -p; a <= p + 1; ++a)
    s += f[GridSpec::wrap(i + a, m)] * lagrange_deriv(-p, p + 1, a, u);
  return s / h;
}

double interp_i1(std::span<const double> g, double h, int p, double x) {
  int m = static_cast<int>(g.size()), i;
  double u;
  locate(x, h, g.size(), i, u);
  double s = 0.0;
  for (int a = -p; a <= p; ++a) s += g[GridSpec::wrap(i + a, m)] * histopolation(p, a, u);
  return s / h;
}

HodgeVariant parse_variant(const std::string& s) {
  if (s == "natural") return HodgeVariant::natural;
  if (s == "minimal") return HodgeVariant::minimal;
  throw std::invalid_argument("unknown hodge variant '" + s + "' (natural|minimal)");
}

std::string to_string(HodgeVariant v) { return v == HodgeVariant::natural ? "natural" : "minimal"; }

double Stencil1D::sum() const {
  double s = 0.0;
  for (double c : coeffs) s += c;
  return s;
}

double Stencil1D::symbol(double theta) const {
  double s = 0.0;
  for (int o = -width; o <= width; ++o) s += at(o) * std::cos(o * theta);
  return s;
}

namespace {

// Exact integral of a Lagrange polynomial on nodes lo..hi over [a,b].
double integrate_lagrange(int lo, int hi, int node, double a, double b) {
  Quadrature q = gauss_legendre(hi - lo + 2);
  double s = 0.0;
  for (std::size_t k = 0; k < q.nodes.size(); ++k)
    s += q.weights[k] * lagrange(lo, hi, node, a + (b - a) * q.nodes[k]);
  return s * (b - a);
}

}  // namespace

Stencil1D build_h0(int p, double h) {
  Stencil1D s{StencilKind::h0, p, h, p + 1, {}};
  s.coeffs.assign(2 * s.width + 1, 0.0);
  for (int o = -p - 1; o <= p + 1; ++o) {
    double c = 0.0;
    if (o >= -p) c += integrate_lagrange(-p, p + 1, o, 0.0, 0.5);
    if (o + 1 <= p + 1) c += integrate_lagrange(-p, p + 1, o + 1, 0.5, 1.0);
    s.coeffs[o + s.width] = c * h;
  }
  return s;
}

Stencil1D build_h1(int p, double h) {
  Stencil1D s{StencilKind::h1, p, h, p, {}};
  s.coeffs.assign(2 * s.width + 1, 0.0);
  for (int a = -p; a <= p; ++a) s.coeffs[a + p] = histopolation(p, a, 0.5) / h;
  return s;
}

Stencil1D build_h0_min(int p, double h) {
  Stencil1D s{StencilKind::h0_min, p, h, p, {}};
  s.coeffs.assign(2 * s.width + 1, 0.0);
  for (int a = -p; a <= p; ++a) s.coeffs[a + p] = h * integrate_lagrange(-p, p, a, -0.5, 0.5);
  return s;
}

void apply_stencil(const Stencil1D& s, const std::vector<double>& in, std::vector<double>& out,
                   const GridSpec& g, int axis) {
  const int m = g.cells[axis];
  const std::size_t st = g.stride(axis);
  const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
  const std::size_t s1 = g.stride(a1), s2 = g.stride(a2);
  std::vector<double> line(m), res(m);
  out.resize(in.size());
  for (int j2 = 0; j2 < g.cells[a2]; ++j2)
    for (int j1 = 0; j1 < g.cells[a1]; ++j1) {
      std::size_t base = j1 * s1 + j2 * s2;
      for (int i = 0; i < m; ++i) line[i] = in[base + i * st];
      for (int i = 0; i < m; ++i) {
        double v = 0.0;
        for (int o = -s.width; o <= s.width; ++o) v += s.at(o) * line[GridSpec::wrap(i + o, m)];
        res[i] = v;
      }
      for (int i = 0; i < m; ++i) out[base + i * st] = res[i];
    }
}

int HodgeOp3D::in_degree() const {
  return (target == HodgeTarget::H2 || target == HodgeTarget::H2_dual) ? 2 : 3;
}

Side HodgeOp3D::in_side() const {
  return (target == HodgeTarget::H2 || target == HodgeTarget::H3) ? Side::primal : Side::dual;
}

double HodgeOp3D::symbol(int c, const Vec3& theta) const {
  double s = 1.0;
  for (int a = 0; a < 3; ++a) s *= factors[c][a].symbol(theta[a]);
  return s;
}

HodgeOp3D assemble_hodge(HodgeTarget target, int order, HodgeVariant variant, const GridSpec& g) {
  if (order < 2 || order % 2 != 0) throw std::invalid_argument("hodge order must be even and >= 2");
  int p = order / 2 - 1;
  for (int a = 0; a < 3; ++a)
    if (g.cells[a] < 2 * p + 3)
      throw std::invalid_argument("hodge order " + std::to_string(order) + " needs at least " +
                                  std::to_string(2 * p + 3) + " cells per axis");
  HodgeOp3D op;
  op.target = target;
  op.order = order;
  op.variant = variant;
  bool vec = target == HodgeTarget::H2 || target == HodgeTarget::H2_dual;
  op.ncomp = vec ? 3 : 1;
  op.factors.resize(op.ncomp);
  for (int c = 0; c < op.ncomp; ++c)
    for (int a = 0; a < 3; ++a) {
      double h = g.spacings[a];
      if (vec && a == c)
        op.factors[c][a] = variant == HodgeVariant::natural ? build_h0(p, h) : build_h0_min(p, h);
      else
        op.factors[c][a] = build_h1(p, h);
    }
  return op;
}

DofField apply_hodge(const HodgeOp3D& op, const DofField& f, const GridSpec& g) {
  check_layout(f, op.in_degree(), op.in_side(), "apply_hodge");
  DofField out(op.out_degree(), op.out_side(), g);
  std::vector<double> tmp(g.size());
  for (int c = 0; c < op.ncomp; ++c) {
    apply_stencil(op.factors[c][0], f[c], out[c], g, 0);
    apply_stencil(op.factors[c][1], out[c], tmp, g, 1);
    apply_stencil(op.factors[c][2], tmp, out[c], g, 2);
  }
  return out;
}

struct Spectral3::Impl {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan fwd = nullptr, bwd = nullptr;
};

Spectral3::Spectral3(const GridSpec& g) : impl_(std::make_unique<Impl>()), g_(g) {
  const int mx = g.cells[0], my = g.cells[1], mz = g.cells[2];
  nspec_ = static_cast<std::size_t>(mx / 2 + 1) * my * mz;
  impl_->real = fftw_alloc_real(g.size());
  impl_->spec = fftw_alloc_complex(nspec_);
  impl_->fwd = fftw_plan_dft_r2c_3d(mz, my, mx, impl_->real, impl_->spec, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft_c2r_3d(mz, my, mx, impl_->spec, impl_->real, FFTW_ESTIMATE);
}

Spectral3::~Spectral3() {
  fftw_destroy_plan(impl_->fwd);
  fftw_destroy_plan(impl_->bwd);
  fftw_free(impl_->real);
  fftw_free(impl_->spec);
}

Vec3 Spectral3::theta(std::size_t n) const {
  const std::size_t nx = g_.cells[0] / 2 + 1;
  std::size_t kx = n % nx, rest = n / nx;
  std::size_t ky = rest % g_.cells[1], kz = rest / g_.cells[1];
  const double tp = 2.0 * std::numbers::pi;
  return {tp * kx / g_.cells[0], tp * ky / g_.cells[1], tp * kz / g_.cells[2]};
}

void Spectral3::forward(const std::vector<double>& in, std::vector<std::complex<double>>& out) {
  std::copy(in.begin(), in.end(), impl_->real);
  fftw_execute(impl_->fwd);
  out.resize(nspec_);
  for (std::size_t n = 0; n < nspec_; ++n) out[n] = {impl_->spec[n][0], impl_->spec[n][1]};
}

void Spectral3::backward(std::vector<std::complex<double>>& in, std::vector<double>& out) {
  for (std::size_t n = 0; n < nspec_; ++n) {
    impl_->spec[n][0] = in[n].real();
    impl_->spec[n][1] = in[n].imag();
  }
  fftw_execute(impl_->bwd);
  out.resize(g_.size());
  const double inv = 1.0 / static_cast<double>(g_.size());
  for (std::size_t n = 0; n < g_.size(); ++n) out[n] = impl_->real[n] * inv;
}

DofField apply_hodge_inverse(const HodgeOp3D& op, const DofField& f, const GridSpec& g) {
  check_layout(f, op.out_degree(), op.out_side(), "apply_hodge_inverse");
  DofField out(op.in_degree(), op.in_side(), g);
  Spectral3 fft(g);
  std::vector<std::complex<double>> spec;
  for (int c = 0; c < op.ncomp; ++c) {
    fft.forward(f[c], spec);
    for (std::size_t n = 0; n < spec.size(); ++n) spec[n] /= op.symbol(c, fft.theta(n));
    fft.backward(spec, out[c]);
  }
  return out;
}

}  // namespace mpic
