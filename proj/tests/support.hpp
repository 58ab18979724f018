#pragma once

#include "trirep/algebra.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace trirep::testing {

struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }
  double sign() { return integer(0, 1) ? 1.0 : -1.0; }

  /// Uniform in (lo, hi) but at least `margin` away from every integer.
  double off_lattice(double lo, double hi, double margin = 0.05) {
    for (;;) {
      const double x = uniform(lo, hi);
      if (std::abs(x - std::round(x)) >= margin) return x;
    }
  }
};

/// Seeds whose gap delta0 - phi0 avoids the integer lattice, so every
/// kappa_n is non-zero and the closed forms apply.
inline AlgebraParams<double> generic_params(Rng& rng, double delta) {
  AlgebraParams<double> p;
  p.delta = delta;
  p.phi0 = rng.uniform(-3.0, 3.0);
  p.delta0 = p.phi0 + rng.off_lattice(-8.0, 8.0);
  p.v0 = rng.uniform(0.2, 2.0) * rng.sign();
  p.b0 = rng.uniform(-2.0, 2.0);
  return p;
}

/// v_n by the forward recurrence mu_{k+2} v_{k+1} = mu_k v_k, no shortcuts.
template <FieldScalar Scalar>
std::vector<Scalar> v_by_recurrence(const AlgebraParams<Scalar>& p, int n_max) {
  std::vector<Scalar> v{p.v0};
  auto mu = [&](int m) { return p.gap() - static_cast<double>(2 * m - 1); };
  for (int k = 0; k < n_max; ++k) v.push_back(mu(k) * v.back() / mu(k + 2));
  return v;
}

/// kappa_n by the forward relation Delta + v_k^2 = (gap-2k-2) kappa_{k+1} - (gap-2k+2) kappa_k.
template <FieldScalar Scalar>
std::vector<Scalar> kappa_by_recurrence(const AlgebraParams<Scalar>& p, int n_max) {
  const auto v = v_by_recurrence(p, n_max);
  const Scalar g = p.gap();
  std::vector<Scalar> kappa{Scalar(0)};
  for (int k = 0; k < n_max; ++k) {
    kappa.push_back((p.delta + v[k] * v[k] + (g - 2.0 * k + 2.0) * kappa[k]) / (g - 2.0 * k - 2.0));
  }
  return kappa;
}

inline double rel(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace trirep::testing
