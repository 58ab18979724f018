#include "support.hpp"

#include "trirep/algebra.hpp"
#include "trirep/families.hpp"

#include <doctest.h>

using namespace trirep;
using trirep::testing::Rng;

namespace {

AlgebraParams<double> seeds(double delta, double phi0, double delta0, double v0, double b0) {
  return {delta, phi0, delta0, v0, b0};
}

}  // namespace

TEST_CASE("phi and delta sequences are affine in n") {
  CHECK(solve_phi(seeds(0, 0.5, 0, 0, 0), 3) == 3.5);
  CHECK(solve_phi(seeds(0, 0, 0, 0, 0), 0) == 0.0);
  CHECK(solve_phi(seeds(0, -2, 0, 0, 0), 7) == 5.0);
  CHECK(solve_delta_seq(seeds(0, 0, 4, 0, 0), 4) == 0.0);
  CHECK(solve_delta_seq(seeds(0, 0, 0.25, 0, 0), 1) == -0.75);
  CHECK(solve_delta_seq(seeds(0, 0, -1, 0, 0), 0) == -1.0);
  CHECK_THROWS_AS(solve_phi(seeds(0, 0, 0, 0, 0), -1), Error);
}

TEST_CASE("solve_v") {
  const auto p = seeds(-0.25, 0.3, 2.9, 0.7, 0.1);
  CHECK(solve_v(p, 0) == 0.7);

  SUBCASE("vanishing prefactor kills every later entry") {
    const auto q = seeds(0, 0, -1, 1, 0);
    for (int n = 1; n < 10; ++n) CHECK(solve_v(q, n) == 0.0);
  }
  SUBCASE("small gap") {
    // (-4)(-2) / ((-4)(-6)); the forward recurrence gives mu_0 v_0 / mu_2 = (-2)/(-6).
    const auto q = seeds(0, 0, -3, 1, 0);
    CHECK(solve_v(q, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(trirep::testing::v_by_recurrence(q, 1)[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("closed form agrees with the recurrence off the lattice") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const auto q = trirep::testing::generic_params(rng, -0.25);
      const auto oracle = trirep::testing::v_by_recurrence(q, 40);
      for (int n = 0; n <= 40; ++n) CHECK(rel_deviation(solve_v(q, n), oracle[n]) <= 1e-12);
    }
  }
  SUBCASE("lattice points fall back to the recurrence") {
    // gap = 1: mu_1 = 0 makes the closed form 0/0, the recurrence gives v_1 = -v_0.
    const auto q = seeds(-1, 0, 1, 0.5, 0);
    CHECK(solve_v(q, 1) == doctest::Approx(-0.5));
    // gap = 3: mu_2 = 0 while mu_0 v_0 != 0, no solution.
    CHECK_THROWS_AS(solve_v(seeds(-1, 0, 3, 0.5, 0), 1), Error);
    try {
      solve_v(seeds(-1, 0, 3, 0.5, 0), 1);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateParameters);
    }
  }
}

TEST_CASE("solve_b") {
  CHECK(solve_b(seeds(0, 0.3, 2.1, 0.4, -1.25), 0) == -1.25);
  const auto zero_prefactor = seeds(0, 0, -1, 1, 0);
  for (int n = 0; n < 6; ++n) CHECK(solve_b(zero_prefactor, n) == 0.0);
  // 1/2 (-2) (1/3 - 1)
  CHECK(solve_b(seeds(0, 0, -3, 1, 0), 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("solve_kappa") {
  const auto legendre = seeds(0, 0, -1, 1, 0);
  CHECK(solve_kappa(legendre, 0) == 0.0);
  CHECK(solve_kappa(legendre, 1) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(solve_kappa(legendre, 2) == doctest::Approx(-1.0 / 15.0).epsilon(1e-15));

  SUBCASE("closed form agrees with the forward relation") {
    Rng rng(12);
    for (double delta : {0.0, 0.25, -0.25, -1.0}) {
      for (int trial = 0; trial < 25; ++trial) {
        const auto p = trirep::testing::generic_params(rng, delta);
        const auto oracle = trirep::testing::kappa_by_recurrence(p, 30);
        for (int n = 1; n <= 30; ++n) {
          const double scale = std::abs(oracle[n]) + 1e-12;
          CHECK(std::abs(solve_kappa(p, n) - oracle[n]) <= 1e-9 * scale);
        }
      }
    }
  }
  SUBCASE("telescoped sum equals the direct sum") {
    Rng rng(13);
    for (double delta : {0.0, 0.25, -0.25, -1.0}) {
      for (int trial = 0; trial < 25; ++trial) {
        const auto p = trirep::testing::generic_params(rng, delta);
        long double sum = 0;
        double magnitude = 0;
        for (int n = 1; n <= 50; ++n) {
          const double vk = solve_v(p, n - 1);
          const double term = (p.delta + vk * vk) * (p.gap() - 2.0 * (n - 1));
          sum += term;
          magnitude += std::abs(term);
          const double closed = detail::telescoped_sum_closed(p, n);
          CHECK(std::abs(closed - static_cast<double>(sum)) <= 1e-12 * magnitude);
        }
      }
    }
  }
}

TEST_CASE("build_representation examples") {
  SUBCASE("one-dimensional") {
    const auto rep = build_representation(seeds(-0.25, 0.3, 1.7, 0.5, 4.0), 1);
    REQUIRE(rep.X.dim() == 1);
    CHECK(rep.Z.diag(0) == 0.5);
    CHECK(rep.X.diag(0) == 4.0);
    CHECK(relation_residual(rep.X, rep.Z, -0.25) == 0.0);
  }
  SUBCASE("Hahn seeds close at dimension four") {
    const auto p = hahn_params(0, 0, 3);
    const auto rep = build_representation(p, 10);
    CHECK(rep.coeffs.closed);
    REQUIRE(rep.coeffs.dim() == 4);
    CHECK(rep.coeffs.a(3) == 0.0);
    CHECK(rep.coeffs.w(3) == 0.0);
    CHECK(relation_residual(rep) <= 1e-12);
    CHECK(relation_residual(rep.X, rep.Z, p.delta, ResidualWindow::Full) <= 1e-12);
  }
  SUBCASE("Legendre products") {
    const auto rep = build_representation(seeds(0, 0, -1, 1, 0), 3);
    CHECK(rep.coeffs.lambda(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(rep.coeffs.lambda(2) == doctest::Approx(4.0 / 15.0).epsilon(1e-15));
    for (int n = 0; n < 3; ++n) CHECK(rep.coeffs.b(n) == 0.0);
  }
  SUBCASE("matrix layout") {
    const auto rep = build_representation(seeds(-0.25, 0.4, 2.3, 0.9, 0.2), 5);
    const auto& r = rep.coeffs;
    for (int n = 0; n < 4; ++n) {
      CHECK(rep.X.sub(n) == r.a(n));
      CHECK(rep.X.sup(n) == r.c(n + 1));
      CHECK(rep.Z.sub(n) == r.w(n));
      CHECK(rep.Z.sup(n) == r.u(n + 1));
    }
  }
  SUBCASE("interior zero without truncation is rejected") {
    // gap = 2 and Delta + v_0^2 = 0 leave kappa_1 undetermined.
    CHECK_THROWS_AS(build_representation(seeds(-0.25, 0, 2, 0.5, 0), 5), Error);
    try {
      build_representation(seeds(-0.25, 0, 2, 0.5, 0), 5);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ZeroKappaInterior);
    }
  }
  CHECK_THROWS_AS(build_representation(seeds(0, 0, 2.5, 1, 0), 0), Error);
}

TEST_CASE("relation_residual examples") {
  TridiagonalOperator<double> X(1), Z(1);
  X.diag(0) = 0.0;
  Z.diag(0) = 0.5;
  CHECK(relation_residual(X, Z, -0.25) == 0.0);
  Z.diag(0) = 1.0;
  CHECK(relation_residual(X, Z, -0.25) == 0.75);
  CHECK_THROWS_AS(relation_residual(X, TridiagonalOperator<double>(2), -0.25), Error);
}

TEST_CASE("pencil_shift and scale_params") {
  const auto p = seeds(-0.25, 1, 3, 0.5, 2);
  CHECK(pencil_shift(p, 0.0) == p);
  CHECK(pencil_shift(p, 2.0) == seeds(-0.25, -1, 1, 0.5, 1));
  CHECK(pencil_shift(pencil_shift(p, 1.7), -1.7) == p);

  CHECK(scale_params(seeds(-1, 0.2, 0.3, 0.4, 0.5), 0.5).delta == -0.25);
  CHECK(scale_params(p, 1.0) == p);
  CHECK_THROWS_AS(scale_params(p, 0.0), Error);
}

TEST_CASE("truncation_conditions examples") {
  CHECK(contains_dimension(truncation_conditions(seeds(0.3, 2, 5, 0.1, 0)), 3));
  CHECK(contains_dimension(truncation_conditions(seeds(-0.25, 2, 5, 0.1, 0)), 3));

  const auto hahn = truncation_conditions(hahn_params(0.3, 0.7, 6));
  REQUIRE(hahn.size() == 1);
  CHECK(hahn[0] == Truncation{6, TruncationKind::RootPlus});

  CHECK(truncation_conditions(seeds(0, 0.1, 2.6, 0.8, 0)).empty());
  CHECK(truncation_conditions(seeds(0, 0.0, -1.0, 1.0, 0)).empty());
}

TEST_CASE("relation holds for random seeds") {
  Rng rng(21);
  for (double delta : {0.0, 0.25, -0.25, -1.0}) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto p = trirep::testing::generic_params(rng, delta);
      const auto rep = build_representation(p, 51);
      CHECK_FALSE(rep.coeffs.closed);
      CHECK(relation_residual(rep) <= 1e-10 * residual_scale(rep));
    }
  }
}

TEST_CASE("representation conditions hold for built sequences") {
  Rng rng(22);
  for (double delta : {0.0, 0.25, -0.25, -1.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto rep = build_representation(trirep::testing::generic_params(rng, delta), 51);
      const auto conds = representation_conditions(rep.coeffs);
      CHECK(conds.size() > 200);
      for (const auto& c : conds) CHECK(c.normalized() <= 1e-12);
    }
  }
  const auto closed = build_representation(hahn_params(0.3, 0.7, 6), 20);
  for (const auto& c : representation_conditions(closed.coeffs)) CHECK(c.normalized() <= 1e-12);
}

TEST_CASE("products do not depend on the gauge") {
  Rng rng(23);
  for (double delta : {0.0, 0.25, -0.25, -1.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto p = trirep::testing::generic_params(rng, delta);
      std::vector<double> custom(31);
      for (auto& w : custom) w = rng.uniform(0.3, 3.0) * rng.sign();
      const auto r1 = build_representation(p, 31, GaugeChoice::split_sqrt()).coeffs;
      const auto r2 = build_representation(p, 31, GaugeChoice::unit_w()).coeffs;
      const auto r3 = build_representation(p, 31, GaugeChoice::custom(custom)).coeffs;
      for (int n = 0; n < 31; ++n) {
        CHECK(rel_deviation(r2.lambda(n), r1.lambda(n)) <= 1e-12);
        CHECK(rel_deviation(r3.lambda(n), r1.lambda(n)) <= 1e-12);
        CHECK(r2.b(n) == r1.b(n));
        CHECK(r3.b(n) == r1.b(n));
      }
    }
  }
}

TEST_CASE("pencil covariance") {
  Rng rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = trirep::testing::generic_params(rng, trial % 2 ? -0.25 : 0.25);
    const double mu = rng.uniform(-5.0, 5.0);
    const auto base = build_representation(p, 21);
    const auto shifted = build_representation(pencil_shift(p, -mu), 21);
    const auto pencil = base.X + mu * base.Z;
    for (int n = 0; n < 21; ++n) CHECK(rel_deviation(shifted.X.diag(n), pencil.diag(n)) <= 1e-12);
    for (int n = 0; n < 20; ++n) {
      CHECK(rel_deviation(shifted.X.sub(n), pencil.sub(n)) <= 1e-12);
      CHECK(rel_deviation(shifted.X.sup(n), pencil.sup(n)) <= 1e-12);
    }
  }
}

TEST_CASE("scaling multiplies both generators") {
  Rng rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = trirep::testing::generic_params(rng, -1.0);
    const double omega = rng.uniform(0.1, 3.0);
    const auto base = build_representation(p, 15);
    const auto scaled = build_representation(scale_params(p, omega), 15);
    CHECK((scaled.X.dense() - omega * base.X.dense()).cwiseAbs().maxCoeff() <=
          1e-12 * omega * base.X.max_abs_entry());
    CHECK((scaled.Z.dense() - omega * base.Z.dense()).cwiseAbs().maxCoeff() <=
          1e-12 * omega * base.Z.max_abs_entry());
    CHECK(relation_residual(scaled) <= 1e-10 * residual_scale(scaled));
  }
}

TEST_CASE("complex seeds") {
  const auto p = chahn_params({0.6, 0.3}, {0.9, -0.2}, {0.6, -0.3}, {0.9, 0.2});
  const auto rep = build_representation(p, 31);
  CHECK(relation_residual(rep) <= 1e-10 * residual_scale(rep));
  AlgebraParams<Complex> bad{-0.25, {0.1, 0.2}, 1.3, 0.5, 0};
  CHECK_THROWS_AS(build_representation(bad, 5), Error);
}
