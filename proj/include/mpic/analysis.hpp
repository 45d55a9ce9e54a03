#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mpic/config.hpp"
#include "mpic/hodge.hpp"

namespace mpic {

// Hodge errors for F = (cos s, -2 cos s, cos s), s = x + y + z, on [0, 4 pi]^3.
struct HodgeErrorRow {
  HodgeVariant variant = HodgeVariant::natural;
  int order = 2;
  int cells = 16;
  int quadrature = 1;
  double e1 = 0.0, e2 = 0.0;        // plain 2-norm over all DoFs
  double e1_l2 = 0.0, e2_l2 = 0.0;  // grid L2 norm, sqrt(h) * DoF norm
  double order_e1 = 0.0, order_e2 = 0.0;  // NaN on the first grid
};

// order/2 points, raised to 4 for the Yee (minimal, order 2) operator.
int hodge_table_quadrature(int order, HodgeVariant variant);

HodgeErrorRow hodge_errors(int order, HodgeVariant variant, int cells, int quadrature);
// Observed orders are log2 ratios of the grid L2 errors between successive grids.
std::vector<HodgeErrorRow> hodge_convergence(const std::vector<int>& orders,
                                             const std::vector<int>& grids, HodgeVariant variant,
                                             int quadrature = 0);
void write_hodge_table(const std::vector<HodgeErrorRow>& rows, const std::filesystem::path& path);

// Cold two-fluid parallel-propagation modes with cyclotron frequencies as magnitudes.
struct BranchParams {
  double omega_p2 = 1.0;  // total plasma frequency squared
  double omega_ce = 0.0;  // electron cyclotron frequency
  double omega_ci = 0.0;  // ion cyclotron frequency
};
enum class Branch { R, L };

// Plasma frequency from all species, cyclotron frequencies from the first
// negative and first positive species, using |b0|.
BranchParams branch_params(const RunConfig& cfg);

// Residual of the branch relation with the poles multiplied out.
double branch_polynomial(Branch b, double k, double omega, const BranchParams& p);
// Positive roots in (0, omega_max], ascending, by sign scan and bisection.
std::vector<double> branch_roots(Branch b, double k, const BranchParams& p, double omega_max);

// Power |E(k, omega)|^2 for k >= 0 and omega >= 0, folding both signs of k.
struct Spectrum {
  int nk = 0, nw = 0;
  double dk = 0.0, dw = 0.0;
  std::vector<double> power;  // power[ik * nw + iw]
  double at(int ik, int iw) const { return power[static_cast<std::size_t>(ik) * nw + iw]; }
};

// series[t][x] sampled at spacing dx and interval dt; Hann window in time.
Spectrum power_spectrum(const std::vector<std::vector<double>>& series, double dx, double dt);

struct RidgeCheck {
  int ik = 0;
  double k = 0.0;
  double omega_peak = 0.0;
  double omega_branch = 0.0;
  double distance_bins = 0.0;
  bool ok = false;
};

// Compares the spectral maximum over omega > 0 at each of the lowest nonzero
// k-modes with the closest positive root of either branch.
std::vector<RidgeCheck> check_ridges(const Spectrum& s, const BranchParams& p, int modes,
                                     double max_bins);

struct SliceSeries {
  std::vector<double> time;
  std::vector<std::vector<double>> values;
  double spacing = 1.0;
  double dt = 0.0;
};
// Reads a slice CSV written by run(); throws on non-uniform time sampling.
SliceSeries read_slice(const std::filesystem::path& path);

void write_spectrum(const Spectrum& s, const BranchParams& p, const std::filesystem::path& path);

// Least-squares slope of log(energy)/2 against time on [t0, t1].
double growth_rate_fit(const std::vector<double>& time, const std::vector<double>& energy,
                       double t0, double t1);

}  // namespace mpic
