#include "mpic/kernel.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

namespace mpic {

namespace {

constexpr int kMaxW = kMaxKernelDegree + 3;

// Periodic wrap for indices at most one period outside [0, m).
inline int wrap_near(int i, int m) { return i < 0 ? i + m : (i >= m ? i - m : i); }

// Uniform B-spline values N_P(t + j), j = 0..P, for t in [0,1).
template <int P>
inline void uniform_basis(double t, double* b) {
  if constexpr (P == 0) {
    b[0] = 1.0;
  } else {
    uniform_basis<P - 1>(t, b);
    constexpr double inv = 1.0 / P;
    b[P] = (1 - t) * b[P - 1] * inv;
    for (int j = P - 1; j > 0; --j) b[j] = ((t + j) * b[j] + (P + 1 - t - j) * b[j - 1]) * inv;
    b[0] = t * b[0] * inv;
  }
}

// Values B_P(m + off - xi) for m = first .. first + P.
template <int P>
inline int shifted_basis(double xi, double off, double* w) {
  double s = off - xi + 0.5 * (P + 1);
  int fl = static_cast<int>(s);
  if (s < fl) --fl;
  uniform_basis<P>(s - fl, w);
  return -fl;
}

// Point weights at dual nodes and integral weights over dual cells along one
// axis, with flat-index offsets already wrapped and multiplied by the stride.
template <int P>
struct AxisWeights {
  double pt[P + 1];
  double in[P + 2];
  int ipt[P + 1];
  int iin[P + 2];

  void fill(double x, const GridSpec& g, int axis) {
    const double h = g.spacings[axis];
    const int m = g.cells[axis];
    const int st = static_cast<int>(g.stride(axis));
    double xi = x / h;
    int f0 = shifted_basis<P>(xi, 0.5, pt);
    int f1 = shifted_basis<P + 1>(xi, 0.0, in);
    for (int j = 0; j <= P; ++j) {
      pt[j] /= h;
      ipt[j] = wrap_near(f0 + j, m) * st;
    }
    for (int j = 0; j <= P + 1; ++j) iin[j] = wrap_near(f1 + j, m) * st;
  }
};

inline double contract(const double* f, int na, const int* ia, const double* wa, int nb,
                       const int* ib, const double* wb, int nc, const int* ic, const double* wc) {
  double s = 0.0;
  for (int k = 0; k < nc; ++k)
    for (int j = 0; j < nb; ++j) {
      const double wbc = wb[j] * wc[k];
      const int o = ib[j] + ic[k];
      double sa = 0.0;
      for (int i = 0; i < na; ++i) sa += f[o + ia[i]] * wa[i];
      s += wbc * sa;
    }
  return s;
}

inline void deposit(double* f, double scale, int na, const int* ia, const double* wa, int nb,
                    const int* ib, const double* wb, int nc, const int* ic, const double* wc) {
  for (int k = 0; k < nc; ++k)
    for (int j = 0; j < nb; ++j) {
      const double wbc = scale * wb[j] * wc[k];
      const int o = ib[j] + ic[k];
      for (int i = 0; i < na; ++i) f[o + ia[i]] += wbc * wa[i];
    }
}

// Fixed-size variants so the loops unroll.
template <int NA, int NB, int NC>
inline double contract(const double* f, const int* ia, const double* wa, const int* ib,
                       const double* wb, const int* ic, const double* wc) {
  double s = 0.0;
  for (int k = 0; k < NC; ++k)
    for (int j = 0; j < NB; ++j) {
      const double* fo = f + ib[j] + ic[k];
      double sa = 0.0;
      for (int i = 0; i < NA; ++i) sa += fo[ia[i]] * wa[i];
      s += wb[j] * wc[k] * sa;
    }
  return s;
}

template <int NA, int NB, int NC>
inline void deposit(double* f, double scale, const int* ia, const double* wa, const int* ib,
                    const double* wb, const int* ic, const double* wc) {
  for (int k = 0; k < NC; ++k)
    for (int j = 0; j < NB; ++j) {
      const double wbc = scale * wb[j] * wc[k];
      double* fo = f + ib[j] + ic[k];
      for (int i = 0; i < NA; ++i) fo[ia[i]] += wbc * wa[i];
    }
}

// Dual 2-form component a: point along a, integrals across.
template <int P>
inline double contract_face(const double* f, const AxisWeights<P>* w, int a) {
  const int b = (a + 1) % 3, c = (a + 2) % 3;
  return contract<P + 1, P + 2, P + 2>(f, w[a].ipt, w[a].pt, w[b].iin, w[b].in, w[c].iin, w[c].in);
}

// Dual 1-form component a: integral along a, points across.
template <int P>
inline double contract_edge(const double* f, const AxisWeights<P>* w, int a) {
  const int b = (a + 1) % 3, c = (a + 2) % 3;
  return contract<P + 2, P + 1, P + 1>(f, w[a].iin, w[a].in, w[b].ipt, w[b].pt, w[c].ipt, w[c].pt);
}

template <int P>
void fill_all(AxisWeights<P>* w, const Vec3& x, const GridSpec& g) {
  for (int a = 0; a < 3; ++a) w[a].fill(x[a], g, a);
}

template <int P>
Vec3 gather_edge_t(const DofField& e, const Vec3& x, const GridSpec& g) {
  AxisWeights<P> w[3];
  fill_all(w, x, g);
  return {contract_face(e[0].data(), w, 0), contract_face(e[1].data(), w, 1),
          contract_face(e[2].data(), w, 2)};
}

template <int P>
Vec3 gather_B_t(const DofField& b, const Vec3& x, const GridSpec& g) {
  AxisWeights<P> w[3];
  fill_all(w, x, g);
  return {contract_edge(b[0].data(), w, 0), contract_edge(b[1].data(), w, 1),
          contract_edge(b[2].data(), w, 2)};
}

template <int P>
void scatter_charge_t(const ParticleBatch& batch, const GridSpec& g, DofField& rho) {
  AxisWeights<P> w[3];
  double* r = rho[0].data();
  for (std::size_t p = 0; p < batch.size(); ++p) {
    fill_all(w, batch.position(p), g);
    deposit<P + 2, P + 2, P + 2>(r, batch.w[p] * batch.charge, w[0].iin, w[0].in, w[1].iin,
                                 w[1].in, w[2].iin, w[2].in);
  }
}

template <int P>
void apply_S2_t(const Vec3& x, const Vec3& vec, const GridSpec& g, DofField& out) {
  AxisWeights<P> w[3];
  fill_all(w, x, g);
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    deposit<P + 1, P + 2, P + 2>(out[a].data(), vec[a], w[a].ipt, w[a].pt, w[b].iin, w[b].in,
                                 w[c].iin, w[c].in);
  }
}

inline double wrap_position(double x, double l) {
  double r = x - l * std::floor(x / l);
  return r >= l ? 0.0 : r;
}

template <int P>
void kick_t(ParticleBatch& batch, double tau, const DofField& e, const GridSpec& g) {
  const double qm = tau * batch.charge / batch.mass;
  AxisWeights<P> w[3];
  for (std::size_t p = 0; p < batch.size(); ++p) {
    fill_all(w, batch.position(p), g);
    for (int a = 0; a < 3; ++a) batch.v[a][p] += qm * contract_face(e[a].data(), w, a);
  }
}

template <int P>
void push_axis_t(ParticleBatch& batch, int a, double tau, const DofField& bf, DofField& d,
                 const GridSpec& g) {
  const int b = (a + 1) % 3, c = (a + 2) % 3;
  const double h = g.spacings[a];
  const int m = g.cells[a];
  const int st = static_cast<int>(g.stride(a));
  const double half = 0.5 * m;
  const double qm = batch.charge / batch.mass;
  const double len = g.lengths[a];
  std::vector<double> flux(m + 2 * P + 8);
  std::vector<int> iflux(flux.size());
  AxisWeights<P> wb, wc;
  double in0[P + 2], in1[P + 2];
  double* da = d[a].data();
  const double* bb = bf[b].data();
  const double* bc = bf[c].data();
  for (std::size_t p = 0; p < batch.size(); ++p) {
    const double xi0 = batch.x[a][p] / h;
    const double dxi = tau * batch.v[a][p] / h;
    if (!(std::abs(dxi) <= half))
      throw std::runtime_error("particle moved " + std::to_string(dxi) +
                               " cells in one substep (limit " + std::to_string(half) +
                               "); reduce dt");
    if (dxi == 0.0) continue;
    wb.fill(batch.x[b][p], g, b);
    wc.fill(batch.x[c][p], g, c);
    int f0 = shifted_basis<P + 1>(xi0, 0.0, in0);
    int f1 = shifted_basis<P + 1>(xi0 + dxi, 0.0, in1);
    int n;
    double c0 = 0.0, c1 = 0.0;
    if (f0 == f1) {
      n = P + 2;
      for (int k = 0; k < n; ++k) {
        c0 += in0[k];
        c1 += in1[k];
        flux[k] = c0 - c1;
        iflux[k] = wrap_near(f0 + k, m) * st;
      }
    } else {
      int lo = std::min(f0, f1), hi = std::max(f0, f1) + P + 1;
      n = hi - lo + 1;
      for (int k = 0; k < n; ++k) {
        int mm = lo + k;
        if (mm >= f0 && mm <= f0 + P + 1) c0 += in0[mm - f0];
        if (mm >= f1 && mm <= f1 + P + 1) c1 += in1[mm - f1];
        flux[k] = c0 - c1;
        iflux[k] = wrap_near(mm, m) * st;
      }
    }
    const double* fl = flux.data();
    const int* il = iflux.data();
    double ib, ic;
    // time integrals of v_a b_c and v_a b_b along the path
    if (n == P + 2) {
      deposit<P + 2, P + 2, P + 2>(da, -batch.w[p] * batch.charge, il, fl, wb.iin, wb.in, wc.iin,
                                   wc.in);
      ic = contract<P + 2, P + 1, P + 2>(bc, il, fl, wb.ipt, wb.pt, wc.iin, wc.in);
      ib = contract<P + 2, P + 2, P + 1>(bb, il, fl, wb.iin, wb.in, wc.ipt, wc.pt);
    } else {
      deposit(da, -batch.w[p] * batch.charge, n, il, fl, P + 2, wb.iin, wb.in, P + 2, wc.iin,
              wc.in);
      ic = contract(bc, n, il, fl, P + 1, wb.ipt, wb.pt, P + 2, wc.iin, wc.in);
      ib = contract(bb, n, il, fl, P + 2, wb.iin, wb.in, P + 1, wc.ipt, wc.pt);
    }
    batch.v[c][p] += qm * ib;
    batch.v[b][p] -= qm * ic;
    batch.x[a][p] = wrap_position(batch.x[a][p] + tau * batch.v[a][p], len);
  }
}

#define MPIC_DISPATCH(deg, fn, ...)                                   \
  switch (deg) {                                                       \
    case 0: return fn<0>(__VA_ARGS__);                                 \
    case 1: return fn<1>(__VA_ARGS__);                                 \
    case 2: return fn<2>(__VA_ARGS__);                                 \
    case 3: return fn<3>(__VA_ARGS__);                                 \
    case 4: return fn<4>(__VA_ARGS__);                                 \
    default: throw std::invalid_argument("kernel degree must be in 0..4"); \
  }

}  // namespace

double bspline(int p, double x) {
  double h = 0.5 * (p + 1);
  if (x <= -h || x >= h) return 0.0;
  double s = x + h;  // in (0, p+1)
  int j = static_cast<int>(std::floor(s));
  double t = s - j;
  double w[kMaxW + 1];
  switch (p) {
    case 0: uniform_basis<0>(t, w); break;
    case 1: uniform_basis<1>(t, w); break;
    case 2: uniform_basis<2>(t, w); break;
    case 3: uniform_basis<3>(t, w); break;
    case 4: uniform_basis<4>(t, w); break;
    case 5: uniform_basis<5>(t, w); break;
    default: throw std::invalid_argument("bspline degree must be in 0..5");
  }
  return w[j];
}

double bspline_antideriv(int p, double x) {
  double h = 0.5 * (p + 1);
  if (x <= -h) return 0.0;
  if (x >= h) return 1.0;
  double s = 0.0;
  for (int j = 0; j <= p + 1; ++j) s += bspline(p + 1, x - 0.5 - j);
  return s;
}

void ParticleBatch::resize(std::size_t n) {
  for (int a = 0; a < 3; ++a) {
    x[a].resize(n);
    v[a].resize(n);
  }
  w.resize(n);
}

void ParticleBatch::add(const Vec3& pos, const Vec3& vel, double weight) {
  for (int a = 0; a < 3; ++a) {
    x[a].push_back(pos[a]);
    v[a].push_back(vel[a]);
  }
  w.push_back(weight);
}

void check_kernel(int degree, const GridSpec& g) {
  if (degree < 0 || degree > kMaxKernelDegree)
    throw std::invalid_argument("kernel degree must be in 0..4");
  for (int a = 0; a < 3; ++a)
    if (degree + 1 > g.cells[a] / 2)
      throw std::invalid_argument("kernel of degree " + std::to_string(degree) +
                                  " is wider than half the domain on axis " + std::to_string(a));
}

Vec3 gather_edge(const DofField& e, const Vec3& x, int degree, const GridSpec& g) {
  check_layout(e, 1, Side::primal, "gather_edge");
  MPIC_DISPATCH(degree, gather_edge_t, e, x, g)
}

Vec3 gather_E(const DofField& d, const HodgeOp3D& h2_dual, const Vec3& x, int degree,
              const GridSpec& g) {
  return gather_edge(apply_hodge(h2_dual, d, g), x, degree, g);
}

Vec3 gather_B(const DofField& b, const Vec3& x, int degree, const GridSpec& g) {
  check_layout(b, 2, Side::primal, "gather_B");
  MPIC_DISPATCH(degree, gather_B_t, b, x, g)
}

void scatter_charge_into(const ParticleBatch& batch, int degree, const GridSpec& g, DofField& rho) {
  check_layout(rho, 3, Side::dual, "scatter_charge");
  MPIC_DISPATCH(degree, scatter_charge_t, batch, g, rho)
}

DofField scatter_charge(const ParticleBatch& batch, int degree, const GridSpec& g) {
  DofField rho(3, Side::dual, g);
  scatter_charge_into(batch, degree, g, rho);
  return rho;
}

void apply_S2(const Vec3& x, const Vec3& vec, int degree, const GridSpec& g, DofField& out) {
  check_layout(out, 2, Side::dual, "apply_S2");
  MPIC_DISPATCH(degree, apply_S2_t, x, vec, g, out)
}

Vec3 apply_S2_transpose(const DofField& field, const Vec3& x, int degree, const GridSpec& g) {
  if (field.ncomp() != 3) throw std::invalid_argument("apply_S2_transpose: vector field expected");
  MPIC_DISPATCH(degree, gather_edge_t, field, x, g)
}

Vec3 apply_R1(const Vec3& x, const DofField& b, const Vec3& vec, int degree, const GridSpec& g) {
  Vec3 bs = gather_B(b, x, degree, g);
  return {vec[1] * bs[2] - vec[2] * bs[1], vec[2] * bs[0] - vec[0] * bs[2],
          vec[0] * bs[1] - vec[1] * bs[0]};
}

void push_axis(ParticleBatch& batch, int axis, double tau, const DofField& b, DofField& d,
               int degree, const GridSpec& g) {
  check_layout(b, 2, Side::primal, "push_axis");
  check_layout(d, 2, Side::dual, "push_axis");
  MPIC_DISPATCH(degree, push_axis_t, batch, axis, tau, b, d, g)
}

void kick(ParticleBatch& batch, double tau, const DofField& e, int degree, const GridSpec& g) {
  check_layout(e, 1, Side::primal, "kick");
  MPIC_DISPATCH(degree, kick_t, batch, tau, e, g)
}

Sampling parse_sampling(const std::string& s) {
  if (s == "hammersley") return Sampling::hammersley;
  if (s == "random") return Sampling::random;
  throw std::invalid_argument("unknown sampling '" + s + "' (hammersley|random)");
}

double radical_inverse(std::uint64_t n, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (n > 0) {
    r += f * static_cast<double>(n % base);
    n /= base;
    f *= inv;
  }
  return r;
}

double inverse_normal_cdf(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("inverse_normal_cdf: argument outside (0,1)");
  return std::sqrt(2.0) * boost::math::erf_inv(2.0 * u - 1.0);
}

ParticleBatch sample_particles(const SpeciesSpec& s, const GridSpec& g) {
  if (s.count == 0) throw std::invalid_argument("species '" + s.label + "' has zero particles");
  if (!(s.mass > 0.0)) throw std::invalid_argument("species '" + s.label + "' needs positive mass");
  if (!(s.density > 0.0))
    throw std::invalid_argument("species '" + s.label + "' needs positive density");
  for (double t : s.thermal)
    if (!(t >= 0.0) || !std::isfinite(t))
      throw std::invalid_argument("species '" + s.label + "' has an invalid thermal spread");
  ParticleBatch b;
  b.label = s.label;
  b.charge = s.charge;
  b.mass = s.mass;
  b.resize(s.count);
  const double weight = s.density * g.volume() / static_cast<double>(s.count);
  std::mt19937_64 rng(s.seed);
  auto uniform = [&rng]() { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
  static constexpr unsigned primes[5] = {2, 3, 5, 7, 11};
  for (std::size_t p = 0; p < s.count; ++p) {
    double u[6];
    if (s.sampling == Sampling::hammersley) {
      u[0] = (static_cast<double>(p) + 0.5) / static_cast<double>(s.count);
      for (int d = 0; d < 5; ++d) u[d + 1] = radical_inverse(p + 1, primes[d]);
    } else {
      for (double& ud : u) ud = uniform();
    }
    for (int a = 0; a < 3; ++a) {
      b.x[a][p] = wrap_position(u[a] * g.lengths[a], g.lengths[a]);
      b.v[a][p] = s.drift[a] + (s.thermal[a] > 0.0 ? s.thermal[a] * inverse_normal_cdf(u[a + 3]) : 0.0);
    }
    b.w[p] = weight;
  }
  return b;
}

}  // namespace mpic
