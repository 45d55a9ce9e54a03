#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include "mpic/grid.hpp"

namespace testing {

inline mpic::DofField random_field(int k, mpic::Side s, const mpic::GridSpec& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  mpic::DofField f(k, s, g);
  for (int c = 0; c < f.ncomp(); ++c)
    for (auto& v : f[c]) v = u(rng);
  return f;
}

inline mpic::GridSpec raw_grid(mpic::Idx3 cells, mpic::Vec3 lengths = {1.0, 1.0, 1.0}) {
  mpic::GridSpec g;
  g.cells = cells;
  g.lengths = lengths;
  for (int a = 0; a < 3; ++a) g.spacings[a] = lengths[a] / cells[a];
  return g;
}

// Row-major dense matrix.
struct Dense {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;
  Dense() = default;
  Dense(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

inline Dense identity(std::size_t n) {
  Dense m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

inline Dense kron(const Dense& a, const Dense& b) {
  Dense m(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      for (std::size_t k = 0; k < b.rows; ++k)
        for (std::size_t l = 0; l < b.cols; ++l) m(i * b.rows + k, j * b.cols + l) = a(i, j) * b(k, l);
  return m;
}

inline Dense scaled(const Dense& a, double s) {
  Dense m = a;
  for (auto& v : m.a) v *= s;
  return m;
}

inline Dense transpose(const Dense& a) {
  Dense m(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) m(j, i) = a(i, j);
  return m;
}

// Block matrix from a grid of equally sized blocks; empty blocks are zero.
inline Dense blocks(const std::vector<std::vector<Dense>>& b, std::size_t br, std::size_t bc) {
  Dense m(br * b.size(), bc * b[0].size());
  for (std::size_t I = 0; I < b.size(); ++I)
    for (std::size_t J = 0; J < b[I].size(); ++J) {
      if (b[I][J].rows == 0) continue;
      for (std::size_t i = 0; i < br; ++i)
        for (std::size_t j = 0; j < bc; ++j) m(I * br + i, J * bc + j) = b[I][J](i, j);
    }
  return m;
}

inline std::vector<double> flatten(const mpic::DofField& f) {
  std::vector<double> v;
  for (int c = 0; c < f.ncomp(); ++c) v.insert(v.end(), f[c].begin(), f[c].end());
  return v;
}

inline std::vector<double> matvec(const Dense& m, const std::vector<double>& x) {
  std::vector<double> y(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) y[i] += m(i, j) * x[j];
  return y;
}

inline double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace testing
