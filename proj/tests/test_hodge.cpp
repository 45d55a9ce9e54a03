#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "mpic/derham.hpp"
#include "mpic/hodge.hpp"
#include "support.hpp"

using namespace mpic;

namespace {

void check_stencil(const Stencil1D& s, std::vector<double> expect, double scale) {
  REQUIRE(s.coeffs.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK(s.coeffs[i] == doctest::Approx(expect[i] * scale).epsilon(1e-13));
}

double integrate(const std::function<double(double)>& f, double a, double b, int n = 12) {
  Quadrature q = gauss_legendre(n);
  double s = 0.0;
  for (std::size_t k = 0; k < q.nodes.size(); ++k) s += q.weights[k] * f(a + (b - a) * q.nodes[k]);
  return s * (b - a);
}

}  // namespace

TEST_CASE("lagrange and histopolation bases") {
  for (int p = 0; p <= 4; ++p) {
    for (int a = -p; a <= p + 1; ++a)
      for (int b = -p; b <= p + 1; ++b) CHECK(lagrange(-p, p + 1, a, b) == doctest::Approx(a == b ? 1.0 : 0.0));
    for (double u : {0.0, 0.13, 0.5, 0.77}) {
      double s = 0.0, ds = 0.0;
      for (int a = -p; a <= p + 1; ++a) {
        s += lagrange(-p, p + 1, a, u);
        ds += lagrange_deriv(-p, p + 1, a, u);
      }
      CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(std::abs(ds) < 1e-11);
    }
    for (int a = -p; a <= p; ++a)
      for (int c = -p; c <= p; ++c) {
        double v = integrate([&](double u) { return histopolation(p, a, u); }, c, c + 1);
        CHECK(v == doctest::Approx(a == c ? 1.0 : 0.0).epsilon(1e-12));
      }
  }
}

TEST_CASE("stencils match the reference coefficients") {
  const double h = 0.37;
  check_stencil(build_h0(0, h), {1, 6, 1}, h / 8);
  check_stencil(build_h0(1, h), {-7, 44, 310, 44, -7}, h / 384);
  check_stencil(build_h0(2, h), {163, -1114, 4909, 38164, 4909, -1114, 163}, h / 46080);
  check_stencil(build_h0_min(0, h), {1}, h);
  check_stencil(build_h0_min(1, h), {1, 22, 1}, h / 24);
  // outer entries: -17h/5760 on both sides
  check_stencil(build_h0_min(2, h), {-17, 308, 5178, 308, -17}, h / 5760);
  check_stencil(build_h1(0, h), {1}, 1 / h);
  check_stencil(build_h1(1, h), {-1, 26, -1}, 1 / (24 * h));
  check_stencil(build_h1(2, h), {9, -116, 2134, -116, 9}, 1 / (1920 * h));
}

TEST_CASE("stencil sum rules, symmetry and widths up to order 12") {
  for (int p = 0; p <= 5; ++p) {
    const double h = 0.3 + 0.1 * p;
    Stencil1D a = build_h0(p, h), b = build_h1(p, h), c = build_h0_min(p, h);
    CHECK(a.coeffs.size() == static_cast<std::size_t>(2 * p + 3));
    CHECK(b.coeffs.size() == static_cast<std::size_t>(2 * p + 1));
    CHECK(c.coeffs.size() == static_cast<std::size_t>(2 * p + 1));
    CHECK(a.sum() == doctest::Approx(h).epsilon(1e-13));
    CHECK(c.sum() == doctest::Approx(h).epsilon(1e-13));
    CHECK(b.sum() == doctest::Approx(1 / h).epsilon(1e-12));
    for (const Stencil1D* s : {&a, &b, &c})
      for (int o = 1; o <= s->width; ++o) CHECK(s->at(o) == doctest::Approx(s->at(-o)).epsilon(1e-12));
  }
}

TEST_CASE("interpolation and histopolation operators") {
  const int m = 24;
  const double l = 2.0 * std::numbers::pi, h = l / m;
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ux(0.0, l);
  for (int p = 0; p <= 3; ++p) {
    std::vector<double> f(m), g(m);
    auto fn = [](double x) { return std::sin(x) + 0.5 * std::cos(2 * x); };
    for (int i = 0; i < m; ++i) {
      f[i] = fn(i * h);
      g[i] = integrate(fn, i * h, (i + 1) * h);
    }
    for (int j = 0; j < m; ++j) CHECK(interp_i0(f, h, p, j * h) == doctest::Approx(f[j]).epsilon(1e-12));
    // re-reducing the histopolant gives back the cell integrals
    for (int j = 0; j < m; ++j)
      CHECK(integrate([&](double x) { return interp_i1(g, h, p, x); }, j * h, (j + 1) * h) ==
            doctest::Approx(g[j]).epsilon(1e-12));
    // d/dx i0 f = i1 (d f)
    std::vector<double> df(m);
    for (int i = 0; i < m; ++i) df[i] = f[(i + 1) % m] - f[i];
    for (int t = 0; t < 50; ++t) {
      double x = ux(rng);
      CHECK(std::abs(interp_i0_deriv(f, h, p, x) - interp_i1(df, h, p, x)) < 1e-11);
    }
    std::vector<double> c(m, 2.5 * h);
    for (int t = 0; t < 10; ++t) CHECK(interp_i1(c, h, p, ux(rng)) == doctest::Approx(2.5).epsilon(1e-12));
  }
  // cubic reproduction away from the periodic seam
  std::vector<double> f(m);
  for (int i = 0; i < m; ++i) f[i] = std::pow(i * h - 3.0, 3);
  std::uniform_real_distribution<double> mid(6 * h, 16 * h);
  for (int t = 0; t < 20; ++t) {
    double x = mid(rng);
    CHECK(interp_i0(f, h, 1, x) == doctest::Approx(std::pow(x - 3.0, 3)).epsilon(1e-12));
  }
}

TEST_CASE("hodge reproduces constant fields") {
  GridSpec g = build_grid({1.0, 1.5, 0.8}, {7, 8, 9}, 6);
  const Vec3 e0{0.3, -1.2, 2.0};
  for (int order : {2, 4, 6})
    for (auto var : {HodgeVariant::natural, HodgeVariant::minimal}) {
      DofField d = reduce_vector(2, Side::dual, [&](const Vec3&) { return e0; }, g, 2);
      DofField e = apply_hodge(assemble_hodge(HodgeTarget::H2_dual, order, var, g), d, g);
      CHECK(e.degree == 1);
      CHECK(e.side == Side::primal);
      for (int c = 0; c < 3; ++c)
        for (double v : e[c]) CHECK(v == doctest::Approx(e0[c] * g.spacings[c]).epsilon(1e-12));
      DofField b = reduce_vector(2, Side::primal, [&](const Vec3&) { return e0; }, g, 2);
      DofField hb = apply_hodge(assemble_hodge(HodgeTarget::H2, order, var, g), b, g);
      for (int c = 0; c < 3; ++c)
        for (double v : hb[c]) CHECK(v == doctest::Approx(e0[c] * g.spacings[c]).epsilon(1e-12));
      DofField r = reduce_scalar(3, Side::primal, [](const Vec3&) { return 1.5; }, g, 2);
      DofField hr = apply_hodge(assemble_hodge(HodgeTarget::H3, order, var, g), r, g);
      for (double v : hr[0]) CHECK(v == doctest::Approx(1.5).epsilon(1e-12));
    }
}

TEST_CASE("hodge symmetry") {
  GridSpec g = build_grid({1.0, 1.0, 1.0}, {7, 8, 7}, 6);
  std::mt19937_64 rng(17);
  for (int order : {2, 4, 6})
    for (auto var : {HodgeVariant::natural, HodgeVariant::minimal})
      for (auto tgt : {HodgeTarget::H2, HodgeTarget::H2_dual, HodgeTarget::H3, HodgeTarget::H3_dual}) {
        HodgeOp3D op = assemble_hodge(tgt, order, var, g);
        DofField a = testing::random_field(op.in_degree(), op.in_side(), g, rng);
        DofField b = testing::random_field(op.in_degree(), op.in_side(), g, rng);
        double ab = duality_product(op.in_side() == Side::primal ? a : apply_hodge(op, a, g),
                                    op.in_side() == Side::primal ? apply_hodge(op, b, g) : b);
        double ba = duality_product(op.in_side() == Side::primal ? b : apply_hodge(op, b, g),
                                    op.in_side() == Side::primal ? apply_hodge(op, a, g) : a);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-13));
      }
}

TEST_CASE("hodge operators are positive definite (dense eigenvalues)") {
  for (int order : {2, 4, 6}) {
    int m = order == 6 ? 7 : 6;
    GridSpec g = build_grid({1.0, 1.2, 0.9}, {m, m, m}, order);
    const std::size_t n = g.size();
    for (auto var : {HodgeVariant::natural, HodgeVariant::minimal})
      for (auto tgt : {HodgeTarget::H2, HodgeTarget::H2_dual, HodgeTarget::H3}) {
        HodgeOp3D op = assemble_hodge(tgt, order, var, g);
        for (int c = 0; c < op.ncomp; ++c) {
          Eigen::MatrixXd a(n, n);
          DofField unit(op.in_degree(), op.in_side(), g);
          for (std::size_t j = 0; j < n; ++j) {
            unit[c][j] = 1.0;
            DofField col = apply_hodge(op, unit, g);
            for (std::size_t i = 0; i < n; ++i) a(i, j) = col[c][i];
            unit[c][j] = 0.0;
          }
          CHECK((a - a.transpose()).cwiseAbs().maxCoeff() < 1e-13 * a.cwiseAbs().maxCoeff());
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
          CHECK(es.eigenvalues().minCoeff() > 0.0);
        }
      }
  }
}

TEST_CASE("spectral inverse") {
  GridSpec g = build_grid({1.0, 2.0, 1.5}, {8, 6, 7}, 4);
  std::mt19937_64 rng(19);
  for (auto tgt : {HodgeTarget::H2, HodgeTarget::H2_dual, HodgeTarget::H3, HodgeTarget::H3_dual}) {
    HodgeOp3D op = assemble_hodge(tgt, 4, HodgeVariant::natural, g);
    DofField a = testing::random_field(op.in_degree(), op.in_side(), g, rng);
    DofField back = apply_hodge_inverse(op, apply_hodge(op, a, g), g);
    back.axpy(-1.0, a);
    CHECK(max_abs(back) < 1e-12);
  }
}

TEST_CASE("assembly guards") {
  GridSpec g = build_grid({1, 1, 1}, {5, 5, 5}, 4);
  CHECK_THROWS_AS(assemble_hodge(HodgeTarget::H2, 6, HodgeVariant::natural, g), std::invalid_argument);
  CHECK_THROWS_AS(assemble_hodge(HodgeTarget::H2, 3, HodgeVariant::natural, g), std::invalid_argument);
  HodgeOp3D op = assemble_hodge(HodgeTarget::H2, 4, HodgeVariant::natural, g);
  DofField wrong(2, Side::dual, g);
  CHECK_THROWS_AS(apply_hodge(op, wrong, g), std::invalid_argument);
  CHECK(parse_variant("minimal") == HodgeVariant::minimal);
  CHECK_THROWS_AS(parse_variant("yee"), std::invalid_argument);
}
