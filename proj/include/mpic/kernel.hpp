#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpic/grid.hpp"
#include "mpic/hodge.hpp"

namespace mpic {

constexpr int kMaxKernelDegree = 4;

// Centered cardinal B-spline of degree p, support [-(p+1)/2, (p+1)/2].
double bspline(int p, double x);
// Integral of bspline(p, .) from -inf to x.
double bspline_antideriv(int p, double x);

struct ParticleBatch {
  std::string label;
  double charge = -1.0;
  double mass = 1.0;
  std::array<std::vector<double>, 3> x, v;
  std::vector<double> w;

  std::size_t size() const { return w.size(); }
  void resize(std::size_t n);
  void add(const Vec3& pos, const Vec3& vel, double weight);
  Vec3 position(std::size_t i) const { return {x[0][i], x[1][i], x[2][i]}; }
  Vec3 velocity(std::size_t i) const { return {v[0][i], v[1][i], v[2][i]}; }
};

// Throws if the kernel support exceeds half the domain on any axis.
void check_kernel(int degree, const GridSpec& g);

// Weighted field reductions of the particle kernel S(x - X).
Vec3 gather_E(const DofField& d, const HodgeOp3D& h2_dual, const Vec3& x, int degree,
              const GridSpec& g);
// Gather of an already computed primal 1-form E = H2_dual * D.
Vec3 gather_edge(const DofField& e, const Vec3& x, int degree, const GridSpec& g);
Vec3 gather_B(const DofField& b, const Vec3& x, int degree, const GridSpec& g);

// Dual 3-form of sum_p w_p q R3(S_p).
DofField scatter_charge(const ParticleBatch& batch, int degree, const GridSpec& g);
void scatter_charge_into(const ParticleBatch& batch, int degree, const GridSpec& g, DofField& rho);

// Deposit vec_a * R2^a(S) into a dual 2-form, and its index-matched transpose.
void apply_S2(const Vec3& x, const Vec3& vec, int degree, const GridSpec& g, DofField& out);
Vec3 apply_S2_transpose(const DofField& field, const Vec3& x, int degree, const GridSpec& g);

// vec x b with b_a = B^a . R1^a(S).
Vec3 apply_R1(const Vec3& x, const DofField& b, const Vec3& vec, int degree, const GridSpec& g);

// Per-axis substep of duration tau for all particles of a batch: streams along
// `axis`, rotates the transverse velocity in the frozen B and subtracts the
// exactly time-integrated current from D.
void push_axis(ParticleBatch& batch, int axis, double tau, const DofField& b, DofField& d,
               int degree, const GridSpec& g);

// Velocity kick with frozen E (primal 1-form).
void kick(ParticleBatch& batch, double tau, const DofField& e, int degree, const GridSpec& g);

enum class Sampling { hammersley, random };
Sampling parse_sampling(const std::string& s);

struct SpeciesSpec {
  std::string label = "electrons";
  double charge = -1.0;
  double mass = 1.0;
  double density = 1.0;
  std::size_t count = 0;
  Vec3 thermal{0.0, 0.0, 0.0};
  Vec3 drift{0.0, 0.0, 0.0};
  Sampling sampling = Sampling::hammersley;
  std::uint64_t seed = 1;
};

double radical_inverse(std::uint64_t n, unsigned base);
double inverse_normal_cdf(double u);

// Uniform positions, anisotropic Maxwellian velocities, equal weights.
ParticleBatch sample_particles(const SpeciesSpec& s, const GridSpec& g);

}  // namespace mpic
