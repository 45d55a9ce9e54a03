#pragma once

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mpic/grid.hpp"

namespace mpic {

// Lagrange polynomial on the integer nodes lo..hi, equal to one at node a.
double lagrange(int lo, int hi, int a, double u);
double lagrange_deriv(int lo, int hi, int a, double u);

// Histopolation basis of the sliding window with half-width p, in units of 1/h:
// integrates to delta_{a,g} over the unit cells [g, g+1], g = -p..p.
double histopolation(int p, int a, double u);

// 1D periodic interpolation of point values f_m = f(m h) and histopolation of
// cell integrals g_m over [m h, (m+1) h].
double interp_i0(std::span<const double> f, double h, int p, double x);
double interp_i0_deriv(std::span<const double> f, double h, int p, double x);
double interp_i1(std::span<const double> g, double h, int p, double x);

enum class StencilKind { h0, h1, h0_min };
enum class HodgeVariant { natural, minimal };

HodgeVariant parse_variant(const std::string& s);
std::string to_string(HodgeVariant v);

// Symmetric circulant stencil: out_i = sum_o coeff[o + width] in_{i+o}.
struct Stencil1D {
  StencilKind kind = StencilKind::h1;
  int p = 0;
  double h = 1.0;
  int width = 0;
  std::vector<double> coeffs;

  double at(int offset) const { return coeffs[offset + width]; }
  double sum() const;
  double symbol(double theta) const;
};

Stencil1D build_h0(int p, double h);
Stencil1D build_h1(int p, double h);
Stencil1D build_h0_min(int p, double h);

void apply_stencil(const Stencil1D& s, const std::vector<double>& in, std::vector<double>& out,
                   const GridSpec& g, int axis);

enum class HodgeTarget { H2, H2_dual, H3, H3_dual };

// Kronecker product of 1D stencils per component and axis.
struct HodgeOp3D {
  HodgeTarget target = HodgeTarget::H2;
  int order = 2;
  HodgeVariant variant = HodgeVariant::natural;
  int ncomp = 3;
  std::vector<std::array<Stencil1D, 3>> factors;

  int in_degree() const;
  Side in_side() const;
  int out_degree() const { return 3 - in_degree(); }
  Side out_side() const { return in_side() == Side::primal ? Side::dual : Side::primal; }
  double symbol(int c, const Vec3& theta) const;
};

HodgeOp3D assemble_hodge(HodgeTarget target, int order, HodgeVariant variant, const GridSpec& g);
DofField apply_hodge(const HodgeOp3D& op, const DofField& f, const GridSpec& g);

// Real-to-complex 3D transform on the grid, x fastest.
class Spectral3 {
 public:
  explicit Spectral3(const GridSpec& g);
  ~Spectral3();
  Spectral3(const Spectral3&) = delete;
  Spectral3& operator=(const Spectral3&) = delete;

  std::size_t spectral_size() const { return nspec_; }
  // Angles (2 pi k_a / M_a) of spectral entry n.
  Vec3 theta(std::size_t n) const;
  void forward(const std::vector<double>& in, std::vector<std::complex<double>>& out);
  // Unnormalized inverse scaled by 1/N.
  void backward(std::vector<std::complex<double>>& in, std::vector<double>& out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  GridSpec g_;
  std::size_t nspec_ = 0;
};

// Inverse of a Hodge operator applied by division with its circulant symbol.
DofField apply_hodge_inverse(const HodgeOp3D& op, const DofField& f, const GridSpec& g);

}  // namespace mpic
