#include "mpic/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace mpic {

int required_cells(int order) {
  int p = order / 2 - 1;
  return std::max(4, 2 * p + 3);
}

GridSpec build_grid(const Vec3& lengths, const Idx3& cells, int order) {
  if (order < 2 || order % 2 != 0)
    throw std::invalid_argument("operator order must be even and >= 2");
  int need = required_cells(order);
  GridSpec g;
  for (int a = 0; a < 3; ++a) {
    if (!(lengths[a] > 0.0) || !std::isfinite(lengths[a]))
      throw std::invalid_argument("domain length must be positive on axis " + std::to_string(a));
    if (cells[a] < need)
      throw std::invalid_argument("axis " + std::to_string(a) + " has " + std::to_string(cells[a]) +
                                  " cells, order " + std::to_string(order) + " needs at least " +
                                  std::to_string(need));
    g.lengths[a] = lengths[a];
    g.cells[a] = cells[a];
    g.spacings[a] = lengths[a] / cells[a];
  }
  return g;
}

DofField::DofField(int k, Side s, const GridSpec& g) : degree(k), side(s) {
  if (k < 0 || k > 3) throw std::invalid_argument("form degree must be in 0..3");
  for (int c = 0; c < ncomp(); ++c) comp[c].assign(g.size(), 0.0);
}

std::size_t DofField::total_size() const {
  std::size_t n = 0;
  for (int c = 0; c < ncomp(); ++c) n += comp[c].size();
  return n;
}

void DofField::fill(double v) {
  for (int c = 0; c < ncomp(); ++c) std::fill(comp[c].begin(), comp[c].end(), v);
}

void DofField::axpy(double a, const DofField& x) {
  check_layout(x, degree, side, "axpy");
  for (int c = 0; c < ncomp(); ++c) {
    auto& y = comp[c];
    const auto& xc = x.comp[c];
    for (std::size_t n = 0; n < y.size(); ++n) y[n] += a * xc[n];
  }
}

bool DofField::all_finite() const {
  for (int c = 0; c < ncomp(); ++c)
    for (double v : comp[c])
      if (!std::isfinite(v)) return false;
  return true;
}

static const char* side_name(Side s) { return s == Side::primal ? "primal" : "dual"; }

void check_layout(const DofField& f, int k, Side s, const std::string& what) {
  if (f.degree != k || f.side != s)
    throw std::invalid_argument(what + ": expected " + side_name(s) + " " + std::to_string(k) +
                                "-form, got " + side_name(f.side) + " " +
                                std::to_string(f.degree) + "-form");
}

double duality_product(const DofField& a, const DofField& b) {
  if (a.side != Side::primal || b.side != Side::dual)
    throw std::invalid_argument("duality_product: first argument primal, second dual");
  if (a.degree + b.degree != 3)
    throw std::invalid_argument("duality_product: degrees must be complementary");
  double s = 0.0;
  for (int c = 0; c < a.ncomp(); ++c) {
    if (a.comp[c].size() != b.comp[c].size())
      throw std::invalid_argument("duality_product: grid mismatch");
    for (std::size_t n = 0; n < a.comp[c].size(); ++n) s += a.comp[c][n] * b.comp[c][n];
  }
  return s;
}

double dot(const DofField& a, const DofField& b) {
  check_layout(b, a.degree, a.side, "dot");
  double s = 0.0;
  for (int c = 0; c < a.ncomp(); ++c)
    for (std::size_t n = 0; n < a.comp[c].size(); ++n) s += a.comp[c][n] * b.comp[c][n];
  return s;
}

double norm2(const DofField& a) { return std::sqrt(dot(a, a)); }

double max_abs(const DofField& a) {
  double m = 0.0;
  for (int c = 0; c < a.ncomp(); ++c)
    for (double v : a.comp[c]) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace mpic
