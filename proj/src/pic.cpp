#include "mpic/pic.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace mpic {

Discretization Discretization::make(const GridSpec& g, int order, HodgeVariant variant, int degree) {
  check_kernel(degree, g);
  Discretization d;
  d.grid = g;
  d.order = order;
  d.variant = variant;
  d.degree = degree;
  d.h2 = assemble_hodge(HodgeTarget::H2, order, variant, g);
  d.h2_dual = assemble_hodge(HodgeTarget::H2_dual, order, variant, g);
  return d;
}

Energies total_energy(const SimState& s, const Discretization& disc) {
  Energies e;
  for (const auto& b : s.batches) {
    double k = 0.0;
    for (std::size_t p = 0; p < b.size(); ++p)
      k += b.w[p] * (b.v[0][p] * b.v[0][p] + b.v[1][p] * b.v[1][p] + b.v[2][p] * b.v[2][p]);
    e.kinetic += 0.5 * b.mass * k;
  }
  DofField ef = apply_hodge(disc.h2_dual, s.d, disc.grid);
  e.electric = 0.5 * duality_product(ef, s.d);
  DofField hf = apply_hodge(disc.h2, s.b, disc.grid);
  for (int c = 0; c < 3; ++c) {
    double m = 0.0;
    for (std::size_t n = 0; n < hf[c].size(); ++n) m += s.b[c][n] * hf[c][n];
    e.magnetic_comp[c] = 0.5 * m;
    e.magnetic += 0.5 * m;
  }
  return e;
}

DofField solve_gauss(const DofField& rho, const HodgeOp3D& h2_dual, const GridSpec& g) {
  check_layout(rho, 3, Side::dual, "solve_gauss");
  Spectral3 fft(g);
  std::vector<std::complex<double>> rh, dh(fft.spectral_size());
  fft.forward(rho[0], rh);
  std::vector<std::complex<double>> phi(rh.size());
  for (std::size_t n = 0; n < rh.size(); ++n) {
    Vec3 th = fft.theta(n);
    double den = 0.0;
    for (int a = 0; a < 3; ++a) den += std::norm(std::polar(1.0, th[a]) - 1.0) / h2_dual.symbol(a, th);
    phi[n] = den > 0.0 ? rh[n] / den : 0.0;
  }
  DofField d(2, Side::dual, g);
  for (int a = 0; a < 3; ++a) {
    for (std::size_t n = 0; n < rh.size(); ++n) {
      Vec3 th = fft.theta(n);
      dh[n] = -(std::polar(1.0, th[a]) - 1.0) / h2_dual.symbol(a, th) * phi[n];
    }
    fft.backward(dh, d[a]);
  }
  return d;
}

DofField total_charge(const SimState& s, const Discretization& disc) {
  DofField rho(3, Side::dual, disc.grid);
  for (const auto& b : s.batches) scatter_charge_into(b, disc.degree, disc.grid, rho);
  if (s.background.total_size() == rho.total_size()) rho.axpy(1.0, s.background);
  return rho;
}

SimState init_fields(std::vector<ParticleBatch> batches, const Discretization& disc,
                     const InitOptions& opt) {
  const GridSpec& g = disc.grid;
  SimState s;
  s.batches = std::move(batches);
  s.background = DofField(3, Side::dual, g);
  DofField rho = total_charge(s, disc);
  double sum = 0.0, abs_sum = 0.0;
  for (double v : rho[0]) sum += v;
  for (const auto& b : s.batches)
    for (double w : b.w) abs_sum += std::abs(b.charge * w);
  if (opt.neutralize) {
    s.background.fill(-sum / static_cast<double>(g.size()));
    rho.axpy(1.0, s.background);
  } else if (std::abs(sum) > 1e-12 * abs_sum) {
    throw std::invalid_argument("net charge " + std::to_string(sum) +
                                " is nonzero; enable the neutralizing background");
  }
  s.d = solve_gauss(rho, disc.h2_dual, g);
  int nq = opt.quadrature > 0 ? opt.quadrature
                              : default_quadrature(disc.order, disc.variant == HodgeVariant::minimal);
  s.b = opt.magnetic ? reduce_vector(2, Side::primal, opt.magnetic, g, nq) : DofField(2, Side::primal, g);
  return s;
}

double gauss_residual(const SimState& s, const Discretization& disc) {
  DofField rho = total_charge(s, disc);
  DofField div = apply_div_dual(s.d, disc.grid);
  double nr = norm2(rho);
  div.axpy(-1.0, rho);
  double r = norm2(div);
  return nr > 0.0 ? r / nr : r;
}

double div_b_max(const SimState& s, const Discretization& disc) {
  return max_abs(apply_div(s.b, disc.grid));
}

void flow_b(SimState& s, const Discretization& disc, double tau) {
  DofField h = apply_hodge(disc.h2, s.b, disc.grid);
  s.d.axpy(tau, apply_curl_dual(h, disc.grid));
}

void flow_e(SimState& s, const Discretization& disc, double tau) {
  DofField e = apply_hodge(disc.h2_dual, s.d, disc.grid);
  for (auto& b : s.batches) kick(b, tau, e, disc.degree, disc.grid);
  s.b.axpy(-tau, apply_curl(e, disc.grid));
}

void flow_axis(SimState& s, const Discretization& disc, int axis, double tau) {
  for (auto& b : s.batches) push_axis(b, axis, tau, s.b, s.d, disc.degree, disc.grid);
}

void step(SimState& s, const Discretization& disc, double dt) {
  const double h = 0.5 * dt;
  flow_b(s, disc, h);
  flow_e(s, disc, h);
  flow_axis(s, disc, 0, h);
  flow_axis(s, disc, 1, h);
  flow_axis(s, disc, 2, dt);
  flow_axis(s, disc, 1, h);
  flow_axis(s, disc, 0, h);
  flow_e(s, disc, h);
  flow_b(s, disc, h);
  s.time += dt;
  s.step += dt >= 0.0 ? 1 : -1;
}

bool cfl_advisory_ok(double dt, const GridSpec& g) {
  double hmin = std::min({g.spacings[0], g.spacings[1], g.spacings[2]});
  return std::abs(dt) <= hmin;
}

}  // namespace mpic
