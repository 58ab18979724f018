#include "support.hpp"

#include "trirep/families.hpp"
#include "trirep/poly.hpp"

#include <doctest.h>

#include <vector>

using namespace trirep;
using trirep::testing::Rng;

namespace {

MonicRecurrence<double> real_recurrence(const FamilySpec& spec, int count) {
  return to_real(family_recurrence(spec, count));
}

TridiagonalOperator<double> symmetric(std::vector<double> diag, std::vector<double> off) {
  return TridiagonalOperator<double>(Eigen::Map<Eigen::VectorXd>(off.data(), off.size()),
                                     Eigen::Map<Eigen::VectorXd>(diag.data(), diag.size()),
                                     Eigen::Map<Eigen::VectorXd>(off.data(), off.size()));
}

}  // namespace

TEST_CASE("monic_eval") {
  const auto rec = real_recurrence(JacobiFamily{0, 0}, 10);
  CHECK(monic_eval(rec, 0, 0.37) == 1.0);
  CHECK(monic_eval(rec, 1, 0.37) == 0.37 - rec.diag(0));
  CHECK(monic_eval(rec, 2, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(monic_eval(rec, 11, 0.0), Error);
  CHECK_THROWS_AS(monic_eval(rec, -1, 0.0), Error);

  const auto crec = family_recurrence(ContinuousHahnFamily{0.5, 0.5, 0.5, 0.5}, 4);
  CHECK(std::abs(monic_eval(crec, 2, Complex(0, 1)) - (Complex(-1) - crec.lambda(1))) <= 1e-15);
}

TEST_CASE("jacobi_matrix") {
  const auto legendre = real_recurrence(JacobiFamily{0, 0}, 3);
  const auto one = jacobi_matrix(legendre, 1);
  CHECK(one.dim() == 1);
  CHECK(one.diag(0) == legendre.diag(0));

  const auto J = jacobi_matrix(legendre, 3);
  CHECK(J.is_symmetric());
  CHECK(J.sub(0) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-15));
  CHECK(J.sub(1) == doctest::Approx(std::sqrt(4.0 / 15.0)).epsilon(1e-15));

  const auto H = jacobi_matrix(real_recurrence(HahnFamily{0, 0, 1}, 2), 2);
  CHECK(H.dense().isApprox((Eigen::Matrix2d() << 0.5, 0.5, 0.5, 0.5).finished(), 1e-15));

  MonicRecurrence<double> bad{Eigen::Vector3d(0, -0.1, 0.2), Eigen::Vector3d(0, 0, 0)};
  CHECK_THROWS_AS(jacobi_matrix(bad, 3), Error);
  try {
    jacobi_matrix(bad, 3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveLambda);
  }
}

TEST_CASE("spectrum") {
  const auto two = spectrum(symmetric({0.5, 0.5}, {0.5}));
  CHECK(std::abs(two(0)) <= 1e-15);
  CHECK(two(1) == doctest::Approx(1.0).epsilon(1e-15));

  const auto hahn = spectrum(jacobi_matrix(real_recurrence(HahnFamily{0, 0, 3}, 4), 4));
  for (int s = 0; s < 4; ++s) CHECK(std::abs(hahn(s) - s) <= 1e-10);

  const auto diag = spectrum(symmetric({3.0, -1.0, 2.0}, {0.0, 0.0}));
  CHECK(diag(0) == -1.0);
  CHECK(diag(1) == 2.0);
  CHECK(diag(2) == 3.0);
}

TEST_CASE("quadrature") {
  const auto one = quadrature(symmetric({0.4}, {}), 3.0);
  CHECK(one.nodes(0) == 0.4);
  CHECK(one.weights(0) == 3.0);

  const auto two = quadrature(symmetric({0.5, 0.5}, {0.5}));
  CHECK(two.weights(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(two.weights(1) == doctest::Approx(0.5).epsilon(1e-14));

  const auto gl = quadrature(jacobi_matrix(real_recurrence(JacobiFamily{0, 0}, 2), 2));
  CHECK(gl.nodes(0) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(gl.nodes(1) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(gl.weights(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(gl.weights(1) == doctest::Approx(0.5).epsilon(1e-14));

  SUBCASE("mass rescaling keeps node order and scales weights") {
    const auto J = jacobi_matrix(real_recurrence(HahnFamily{0.3, 0.7, 9}, 10), 10);
    const auto q1 = quadrature(J, 1.0);
    const auto q5 = quadrature(J, 5.0);
    CHECK(q1.nodes == q5.nodes);
    CHECK((q5.weights - 5.0 * q1.weights).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(q1.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
    for (int s = 1; s < q1.dim(); ++s) CHECK(q1.nodes(s) > q1.nodes(s - 1));
  }
}

TEST_CASE("gram_check") {
  const auto legendre = real_recurrence(JacobiFamily{0, 0}, 31);
  const auto quad = quadrature(jacobi_matrix(legendre, 30));
  CHECK(gram_check(legendre, quad, 0) == 0.0);
  CHECK(gram_check(legendre, quad, 20) <= 1e-10);
  CHECK_THROWS_AS(gram_check(legendre, quad, 30), Error);

  const auto hahn = real_recurrence(HahnFamily{0.3, 0.7, 12}, 13);
  CHECK(gram_check(hahn, quadrature(jacobi_matrix(hahn, 13)), 12) <= 1e-10);

  SUBCASE("top degree on a large Hahn lattice") {
    const auto h24 = real_recurrence(HahnFamily{0.862, -0.678, 24}, 25);
    CHECK(gram_check(h24, quadrature(jacobi_matrix(h24, 25)), 24) <= 1e-10);
  }

  SUBCASE("nodes far from the roots of p_dim are used as given") {
    const auto rec = real_recurrence(JacobiFamily{0, 0}, 3);
    SpectralData rule;
    rule.nodes = Eigen::Vector2d(-0.5, 0.5);
    rule.weights = Eigen::Vector2d(0.5, 0.5);
    CHECK(gram_check(rec, rule, 1) == 0.0);
    rule.weights = Eigen::Vector2d(0.25, 0.75);
    // p_1(x) = x, so G_10 = 0.25, G_00 = 1 and G_11 = 0.25.
    CHECK(gram_check(rec, rule, 1) == doctest::Approx(0.5).epsilon(1e-15));
  }

  SUBCASE("Gauss exactness up to degree 2 dim - 1") {
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
      const JacobiFamily fam{rng.uniform(-0.9, 3), rng.uniform(-0.9, 3)};
      const int dim = rng.integer(2, 30);
      const auto rec = real_recurrence(fam, dim + 1);
      CHECK(gram_check(rec, quadrature(jacobi_matrix(rec, dim)), dim - 1) <= 1e-10);
    }
  }
}

TEST_CASE("eigenvalues are the roots of p_dim") {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const HahnFamily fam{rng.uniform(-0.9, 3), rng.uniform(-0.9, 3), rng.integer(2, 25)};
    const int dim = rng.integer(1, fam.N + 1);
    const auto rec = real_recurrence(fam, fam.N + 1);
    const auto J = jacobi_matrix(rec, dim);
    const double norm = J.diag.cwiseAbs().maxCoeff() + (dim > 1 ? 2.0 * J.sub.cwiseAbs().maxCoeff() : 0.0);
    for (double x : spectrum(J)) {
      const auto p = monic_eval_all(rec, dim, x);
      // p_dim'(x) by differentiating the recurrence; an eigenvalue error of
      // order eps (1 + |J|) moves p_dim(x) by about |p_dim'(x)| times that.
      double dp_prev = 0.0, dp = 1.0;
      for (int k = 1; k < dim; ++k) {
        const double next = p(k) + (x - rec.diag(k)) * dp - rec.lambda(k) * dp_prev;
        dp_prev = dp;
        dp = next;
      }
      const double local = std::abs(dp) * (1.0 + norm);
      CHECK(std::abs(p(dim)) <= 1e-8 * local);
    }
  }
}

TEST_CASE("bilattice_check") {
  const std::vector<double> bi = {0, 0.4, 1, 1.4, 2, 2.4};
  const auto r = bilattice_check(bi, 1.0);
  CHECK(r.is_bilattice);
  CHECK(r.offset_even == 0.0);
  CHECK(r.offset_odd == doctest::Approx(0.4));

  const std::vector<double> uniform = {0, 1, 2, 3};
  const auto u = bilattice_check(uniform, 1.0);
  CHECK(u.is_bilattice);
  CHECK(u.offset_odd == 1.0);

  const std::vector<double> broken = {0, 0.4, 1, 1.5, 2, 2.4};
  CHECK_FALSE(bilattice_check(broken, 1.0).is_bilattice);
  CHECK_FALSE(bilattice_check(bi, 2.0).is_bilattice);
  CHECK(bilattice_check(bi).spacing == doctest::Approx(1.0));

  SUBCASE("para-Krawtchouk spectra") {
    const auto rec = real_recurrence(ParaKrawtchoukFamily{7, 0.3}, 8);
    const auto nodes = spectrum(jacobi_matrix(rec, 8));
    const auto check = bilattice_check(std::span<const double>(nodes.data(), nodes.size()));
    CHECK(check.is_bilattice);
    CHECK(check.spacing == doctest::Approx(2.0));

    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
      const double gamma = trial % 2 ? rng.uniform(0.05, 0.95) : rng.uniform(1.05, 1.95);
      const int N = rng.integer(3, 25);
      const auto r2 = real_recurrence(ParaKrawtchoukFamily{N, gamma}, N + 1);
      const auto x = spectrum(jacobi_matrix(r2, N + 1));
      CHECK_MESSAGE(bilattice_check(std::span<const double>(x.data(), x.size()), 2.0).is_bilattice,
                    "N=" << N << " gamma=" << gamma);
    }
  }
}

TEST_CASE("roots interlace") {
  const std::vector<FamilySpec> families = {JacobiFamily{0.4, -0.3}, JacobiFamily{2.5, 1.0},
                                            HahnFamily{0.3, 0.7, 24}, ParaKrawtchoukFamily{24, 0.6},
                                            ContinuousHahnFamily{{0.6, 0.3}, {0.9, -0.2}, {0.6, -0.3}, {0.9, 0.2}}};
  for (const auto& fam : families) {
    const auto rec = real_recurrence(fam, 22);
    for (int n = 1; n <= 20; ++n) {
      CHECK_MESSAGE(strictly_interlaces(polynomial_roots(rec, n), polynomial_roots(rec, n + 1)),
                    family_name(fam) << " n=" << n);
    }
  }
  CHECK_FALSE(strictly_interlaces(Eigen::Vector2d(0, 3), Eigen::Vector3d(-1, 1, 2)));
}

TEST_CASE("Hahn lattice for random parameters") {
  Rng rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const HahnFamily fam{rng.uniform(-0.9, 3), rng.uniform(-0.9, 3), rng.integer(1, 25)};
    const auto nodes = spectrum(jacobi_matrix(real_recurrence(fam, fam.N + 1), fam.N + 1));
    for (int s = 0; s <= fam.N; ++s) CHECK(std::abs(nodes(s) - s) <= 1e-8);
  }
}
