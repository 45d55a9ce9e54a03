#include "mpic/analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mpic/csv.hpp"
#include "mpic/derham.hpp"

namespace mpic {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double dof_error(const DofField& a, const DofField& b) {
  double s = 0.0;
  for (int c = 0; c < a.ncomp(); ++c)
    for (std::size_t n = 0; n < a[c].size(); ++n) {
      double d = a[c][n] - b[c][n];
      s += d * d;
    }
  return std::sqrt(s);
}

}  // namespace

int hodge_table_quadrature(int order, HodgeVariant variant) {
  if (variant == HodgeVariant::minimal && order == 2) return 4;
  return std::max(1, order / 2);
}

HodgeErrorRow hodge_errors(int order, HodgeVariant variant, int cells, int quadrature) {
  const double l = 4.0 * std::numbers::pi;
  GridSpec g = build_grid({l, l, l}, {cells, cells, cells}, order);
  const VectorFn f = [](const Vec3& x) {
    double c = std::cos(x[0] + x[1] + x[2]);
    return Vec3{c, -2.0 * c, c};
  };
  HodgeErrorRow r;
  r.variant = variant;
  r.order = order;
  r.cells = cells;
  r.quadrature = quadrature;
  {
    DofField f1 = reduce_vector(1, Side::primal, f, g, quadrature);
    DofField tf2 = reduce_vector(2, Side::dual, f, g, quadrature);
    r.e1 = dof_error(f1, apply_hodge(assemble_hodge(HodgeTarget::H2_dual, order, variant, g), tf2, g));
  }
  {
    DofField tf1 = reduce_vector(1, Side::dual, f, g, quadrature);
    DofField f2 = reduce_vector(2, Side::primal, f, g, quadrature);
    r.e2 = dof_error(tf1, apply_hodge(assemble_hodge(HodgeTarget::H2, order, variant, g), f2, g));
  }
  const double sh = std::sqrt(g.spacings[0]);
  r.e1_l2 = sh * r.e1;
  r.e2_l2 = sh * r.e2;
  r.order_e1 = r.order_e2 = kNaN;
  return r;
}

std::vector<HodgeErrorRow> hodge_convergence(const std::vector<int>& orders,
                                             const std::vector<int>& grids, HodgeVariant variant,
                                             int quadrature) {
  std::vector<HodgeErrorRow> rows;
  for (int order : orders) {
    const int nq = quadrature > 0 ? quadrature : hodge_table_quadrature(order, variant);
    for (std::size_t i = 0; i < grids.size(); ++i) {
      HodgeErrorRow r = hodge_errors(order, variant, grids[i], nq);
      if (i > 0) {
        const HodgeErrorRow& p = rows.back();
        const double ratio = std::log2(static_cast<double>(r.cells) / p.cells);
        r.order_e1 = std::log2(p.e1_l2 / r.e1_l2) / ratio;
        r.order_e2 = std::log2(p.e2_l2 / r.e2_l2) / ratio;
      }
      rows.push_back(r);
    }
  }
  return rows;
}

void write_hodge_table(const std::vector<HodgeErrorRow>& rows, const std::filesystem::path& path) {
  CsvWriter w(path, {"variant_minimal", "order", "cells", "quadrature", "e1", "order_e1", "e2",
                     "order_e2", "e1_l2", "e2_l2"});
  for (const auto& r : rows)
    w.row({r.variant == HodgeVariant::minimal ? 1.0 : 0.0, static_cast<double>(r.order),
           static_cast<double>(r.cells), static_cast<double>(r.quadrature), r.e1, r.order_e1, r.e2,
           r.order_e2, r.e1_l2, r.e2_l2});
}

BranchParams branch_params(const RunConfig& cfg) {
  BranchParams p;
  p.omega_p2 = 0.0;
  const double b = std::hypot(cfg.b0[0], cfg.b0[1], cfg.b0[2]);
  bool have_e = false, have_i = false;
  for (const auto& sc : cfg.species) {
    const SpeciesSpec& s = sc.spec;
    p.omega_p2 += s.density * s.charge * s.charge / s.mass;
    const double wc = std::abs(s.charge) * b / s.mass;
    if (s.charge < 0.0 && !have_e) {
      p.omega_ce = wc;
      have_e = true;
    } else if (s.charge > 0.0 && !have_i) {
      p.omega_ci = wc;
      have_i = true;
    }
  }
  return p;
}

double branch_polynomial(Branch b, double k, double w, const BranchParams& p) {
  const double s = b == Branch::R ? 1.0 : -1.0;
  const double den = (w - s * p.omega_ce) * (w + s * p.omega_ci);
  return w * w * (den - p.omega_p2) - k * k * den;
}

std::vector<double> branch_roots(Branch b, double k, const BranchParams& p, double omega_max) {
  std::vector<double> roots;
  const int n = 20000;
  const double dw = omega_max / n;
  double w0 = 1e-9 * omega_max;
  double f0 = branch_polynomial(b, k, w0, p);
  for (int i = 1; i <= n; ++i) {
    double w1 = i * dw;
    double f1 = branch_polynomial(b, k, w1, p);
    if (f1 == 0.0) {
      roots.push_back(w1);
    } else if ((f0 < 0.0) != (f1 < 0.0) && f0 != 0.0) {
      double lo = w0, hi = w1, flo = f0;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = branch_polynomial(b, k, mid, p);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    w0 = w1;
    f0 = f1;
  }
  return roots;
}

Spectrum power_spectrum(const std::vector<std::vector<double>>& series, double dx, double dt) {
  const int nt = static_cast<int>(series.size());
  if (nt < 4) throw std::invalid_argument("power_spectrum: need at least 4 samples in time");
  const int nx = static_cast<int>(series[0].size());
  if (nx < 2) throw std::invalid_argument("power_spectrum: need at least 2 points in space");
  for (const auto& r : series)
    if (static_cast<int>(r.size()) != nx) throw std::invalid_argument("power_spectrum: ragged series");
  const int nwh = nt / 2 + 1;
  double* in = fftw_alloc_real(static_cast<std::size_t>(nx) * nt);
  fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(nx) * nwh);
  fftw_plan plan = fftw_plan_dft_r2c_2d(nx, nt, in, out, FFTW_ESTIMATE);
  for (int t = 0; t < nt; ++t) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * t / (nt - 1));
    for (int x = 0; x < nx; ++x) in[static_cast<std::size_t>(x) * nt + t] = w * series[t][x];
  }
  fftw_execute(plan);
  Spectrum s;
  s.nk = nx / 2 + 1;
  s.nw = nwh;
  s.dk = 2.0 * std::numbers::pi / (nx * dx);
  s.dw = 2.0 * std::numbers::pi / (nt * dt);
  s.power.assign(static_cast<std::size_t>(s.nk) * s.nw, 0.0);
  auto mag2 = [&](int kx, int w) {
    const fftw_complex& c = out[static_cast<std::size_t>(kx) * nwh + w];
    return c[0] * c[0] + c[1] * c[1];
  };
  for (int ik = 0; ik < s.nk; ++ik)
    for (int iw = 0; iw < nwh; ++iw) {
      double v = mag2(ik, iw);
      const int mirror = (nx - ik) % nx;
      if (mirror != ik) v += mag2(mirror, iw);
      s.power[static_cast<std::size_t>(ik) * s.nw + iw] = v;
    }
  fftw_destroy_plan(plan);
  fftw_free(in);
  fftw_free(out);
  return s;
}

std::vector<RidgeCheck> check_ridges(const Spectrum& s, const BranchParams& p, int modes,
                                     double max_bins) {
  std::vector<RidgeCheck> out;
  const double wmax = s.dw * (s.nw - 1);
  for (int ik = 1; ik <= modes && ik < s.nk; ++ik) {
    RidgeCheck c;
    c.ik = ik;
    c.k = ik * s.dk;
    int best = 1;
    for (int iw = 1; iw < s.nw; ++iw)
      if (s.at(ik, iw) > s.at(ik, best)) best = iw;
    c.omega_peak = best * s.dw;
    c.distance_bins = std::numeric_limits<double>::infinity();
    for (Branch b : {Branch::R, Branch::L})
      for (double r : branch_roots(b, c.k, p, 2.0 * wmax)) {
        double d = std::abs(r - c.omega_peak) / s.dw;
        if (d < c.distance_bins) {
          c.distance_bins = d;
          c.omega_branch = r;
        }
      }
    c.ok = c.distance_bins <= max_bins;
    out.push_back(c);
  }
  return out;
}

SliceSeries read_slice(const std::filesystem::path& path) {
  CsvTable t = read_csv(path);
  SliceSeries s;
  const std::size_t tc = t.column("time");
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i].size() > 1 && t.columns[i][0] == 'e') cols.push_back(i);
  if (cols.empty()) throw std::runtime_error("'" + path.string() + "' has no field columns");
  for (const auto& r : t.rows) {
    s.time.push_back(r[tc]);
    std::vector<double> v;
    for (std::size_t c : cols) v.push_back(r[c]);
    s.values.push_back(std::move(v));
  }
  if (s.time.size() < 2) throw std::runtime_error("'" + path.string() + "' has fewer than 2 samples");
  s.dt = (s.time.back() - s.time.front()) / (s.time.size() - 1);
  for (std::size_t i = 1; i < s.time.size(); ++i)
    if (std::abs(s.time[i] - s.time[i - 1] - s.dt) > 1e-6 * s.dt)
      throw std::runtime_error("non-uniform sampling at row " + std::to_string(i));
  if (auto it = t.meta.find("spacing"); it != t.meta.end()) s.spacing = std::stod(it->second);
  return s;
}

void write_spectrum(const Spectrum& s, const BranchParams& p, const std::filesystem::path& path) {
  CsvWriter w(path, {"k", "omega", "power", "r1", "r2", "l1", "l2"});
  const double wmax = s.dw * (s.nw - 1);
  for (int ik = 0; ik < s.nk; ++ik) {
    const double k = ik * s.dk;
    auto r = branch_roots(Branch::R, k, p, 2.0 * wmax);
    auto l = branch_roots(Branch::L, k, p, 2.0 * wmax);
    auto pick = [](const std::vector<double>& v, std::size_t i) { return i < v.size() ? v[i] : kNaN; };
    for (int iw = 0; iw < s.nw; ++iw)
      w.row({k, iw * s.dw, s.at(ik, iw), pick(r, 0), pick(r, 1), pick(l, 0), pick(l, 1)});
  }
}

double growth_rate_fit(const std::vector<double>& time, const std::vector<double>& energy,
                       double t0, double t1) {
  if (time.size() != energy.size()) throw std::invalid_argument("growth_rate_fit: size mismatch");
  double n = 0, st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < time.size(); ++i) {
    if (time[i] < t0 || time[i] > t1) continue;
    if (!(energy[i] > 0.0)) throw std::invalid_argument("growth_rate_fit: non-positive energy in window");
    const double y = 0.5 * std::log(energy[i]);
    n += 1;
    st += time[i];
    sy += y;
    stt += time[i] * time[i];
    sty += time[i] * y;
  }
  if (n < 2) throw std::invalid_argument("growth_rate_fit: fewer than 2 samples in window");
  const double den = n * stt - st * st;
  if (!(den > 0.0)) throw std::invalid_argument("growth_rate_fit: degenerate window");
  return (n * sty - st * sy) / den;
}

}  // namespace mpic
