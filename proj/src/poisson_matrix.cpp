#include "mpic/poisson_matrix.hpp"

#include <stdexcept>

namespace mpic {

namespace {

std::size_t particle_count(const SimState& s) {
  std::size_t n = 0;
  for (const auto& b : s.batches) n += b.size();
  return n;
}

DenseMatrix curl_matrix(const GridSpec& g) {
  const std::size_t n = 3 * g.size();
  DenseMatrix c{n, std::vector<double>(n * n, 0.0)};
  DofField unit(1, Side::primal, g);
  for (std::size_t j = 0; j < n; ++j) {
    unit[static_cast<int>(j / g.size())][j % g.size()] = 1.0;
    DofField col = apply_curl(unit, g);
    for (std::size_t i = 0; i < n; ++i) c(i, j) = col[static_cast<int>(i / g.size())][i % g.size()];
    unit[static_cast<int>(j / g.size())][j % g.size()] = 0.0;
  }
  return c;
}

}  // namespace

std::size_t state_dimension(const SimState& s, const Discretization& disc) {
  return 6 * particle_count(s) + 6 * disc.grid.size();
}

std::vector<double> state_to_vector(const SimState& s) {
  std::vector<double> u;
  for (const auto& b : s.batches)
    for (std::size_t p = 0; p < b.size(); ++p)
      for (int a = 0; a < 3; ++a) u.push_back(b.x[a][p]);
  for (const auto& b : s.batches)
    for (std::size_t p = 0; p < b.size(); ++p)
      for (int a = 0; a < 3; ++a) u.push_back(b.v[a][p]);
  for (int c = 0; c < 3; ++c) u.insert(u.end(), s.d[c].begin(), s.d[c].end());
  for (int c = 0; c < 3; ++c) u.insert(u.end(), s.b[c].begin(), s.b[c].end());
  return u;
}

void vector_to_state(const std::vector<double>& u, SimState& s) {
  std::size_t k = 0;
  for (auto& b : s.batches)
    for (std::size_t p = 0; p < b.size(); ++p)
      for (int a = 0; a < 3; ++a) b.x[a][p] = u[k++];
  for (auto& b : s.batches)
    for (std::size_t p = 0; p < b.size(); ++p)
      for (int a = 0; a < 3; ++a) b.v[a][p] = u[k++];
  for (int c = 0; c < 3; ++c)
    for (auto& v : s.d[c]) v = u[k++];
  for (int c = 0; c < 3; ++c)
    for (auto& v : s.b[c]) v = u[k++];
}

DenseMatrix assemble_poisson_matrix(const SimState& s, const Discretization& disc) {
  const GridSpec& g = disc.grid;
  const std::size_t np = particle_count(s);
  if (np > 2 || g.size() > 64) throw std::invalid_argument("dense Poisson matrix limited to 2 particles on 4^3");
  const std::size_t n1 = 3 * g.size();
  const std::size_t ox = 0, ov = 3 * np, od = 6 * np, ob = od + n1;
  DenseMatrix j{ob + n1, std::vector<double>((ob + n1) * (ob + n1), 0.0)};

  std::size_t p = 0;
  for (const auto& b : s.batches)
    for (std::size_t i = 0; i < b.size(); ++i, ++p) {
      const double wm = b.w[i] * b.mass, qm = b.charge / b.mass;
      const Vec3 x = b.position(i);
      for (int a = 0; a < 3; ++a) {
        j(ox + 3 * p + a, ov + 3 * p + a) = 1.0 / wm;
        j(ov + 3 * p + a, ox + 3 * p + a) = -1.0 / wm;
      }
      // v x b as a matrix acting on v
      const Vec3 bs = gather_B(s.b, x, disc.degree, g);
      const double r[3][3] = {{0.0, bs[2], -bs[1]}, {-bs[2], 0.0, bs[0]}, {bs[1], -bs[0], 0.0}};
      for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) j(ov + 3 * p + a, ov + 3 * p + c) = qm / wm * r[a][c];
      for (int a = 0; a < 3; ++a) {
        Vec3 unit{0.0, 0.0, 0.0};
        unit[a] = 1.0;
        DofField col(2, Side::dual, g);
        apply_S2(x, unit, disc.degree, g, col);
        for (std::size_t n = 0; n < g.size(); ++n) {
          const double v = col[a][n];
          if (v == 0.0) continue;
          j(ov + 3 * p + a, od + a * g.size() + n) = qm * v;
          j(od + a * g.size() + n, ov + 3 * p + a) = -qm * v;
        }
      }
    }

  const DenseMatrix c = curl_matrix(g);
  for (std::size_t r = 0; r < n1; ++r)
    for (std::size_t q = 0; q < n1; ++q) {
      const double v = c(q, r);
      if (v == 0.0) continue;
      j(od + r, ob + q) = v;
      j(ob + q, od + r) = -v;
    }
  return j;
}

std::vector<double> hamiltonian_gradient(const SimState& s, const Discretization& disc) {
  std::vector<double> gr;
  std::size_t np = particle_count(s);
  gr.assign(3 * np, 0.0);
  for (const auto& b : s.batches)
    for (std::size_t p = 0; p < b.size(); ++p)
      for (int a = 0; a < 3; ++a) gr.push_back(b.w[p] * b.mass * b.v[a][p]);
  DofField e = apply_hodge(disc.h2_dual, s.d, disc.grid);
  DofField h = apply_hodge(disc.h2, s.b, disc.grid);
  for (int c = 0; c < 3; ++c) gr.insert(gr.end(), e[c].begin(), e[c].end());
  for (int c = 0; c < 3; ++c) gr.insert(gr.end(), h[c].begin(), h[c].end());
  return gr;
}

std::vector<double> equations_of_motion(const SimState& s, const Discretization& disc) {
  const GridSpec& g = disc.grid;
  std::vector<double> r;
  for (const auto& b : s.batches)
    for (std::size_t p = 0; p < b.size(); ++p)
      for (int a = 0; a < 3; ++a) r.push_back(b.v[a][p]);
  DofField e = apply_hodge(disc.h2_dual, s.d, g);
  DofField dd = apply_curl_dual(apply_hodge(disc.h2, s.b, g), g);
  for (const auto& b : s.batches)
    for (std::size_t p = 0; p < b.size(); ++p) {
      const Vec3 x = b.position(p), v = b.velocity(p);
      const Vec3 es = gather_edge(e, x, disc.degree, g);
      const Vec3 vb = apply_R1(x, s.b, v, disc.degree, g);
      for (int a = 0; a < 3; ++a) r.push_back(b.charge / b.mass * (es[a] + vb[a]));
      Vec3 cur;
      for (int a = 0; a < 3; ++a) cur[a] = -b.w[p] * b.charge * v[a];
      apply_S2(x, cur, disc.degree, g, dd);
    }
  DofField db = apply_curl(e, g);
  for (int c = 0; c < 3; ++c) r.insert(r.end(), dd[c].begin(), dd[c].end());
  for (int c = 0; c < 3; ++c)
    for (double v : db[c]) r.push_back(-v);
  return r;
}

}  // namespace mpic
