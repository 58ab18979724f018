#pragma once

// Parameter maps from the four orthogonal-polynomial families to algebra seeds,
// and the closed-form monic recurrence coefficients of each family.
//
//   Delta = 0      Jacobi(alpha, beta)
//   Delta = +1/4   continuous Hahn(a, b, c, d)
//   Delta = -1/4   Hahn(alpha, beta, N)          Delta-dependent truncation
//   Delta = -1     para-Krawtchouk(N, gamma)     gap truncation, reached as t -> 0

#include "trirep/algebra.hpp"
#include "trirep/poly.hpp"
#include "trirep/scalar.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace trirep {

struct JacobiFamily {
  double alpha = 0.0;
  double beta = 0.0;
};

struct ContinuousHahnFamily {
  Complex a, b, c, d;
};

struct HahnFamily {
  double alpha = 0.0;
  double beta = 0.0;
  int N = 1;
};

struct ParaKrawtchoukFamily {
  int N = 1;
  double gamma = 0.5;
  /// Regulator used when a single representation is built from the family.
  double t = 1e-6;
};

using FamilySpec = std::variant<JacobiFamily, ContinuousHahnFamily, HahnFamily, ParaKrawtchoukFamily>;

template <FieldScalar Scalar>
struct MonicCoefficient {
  Scalar lambda{};
  Scalar b{};
};

AlgebraParams<double> jacobi_params(double alpha, double beta);
MonicCoefficient<double> jacobi_monic_coeffs(double alpha, double beta, int n);

AlgebraParams<Complex> chahn_params(Complex a, Complex b, Complex c, Complex d);
MonicCoefficient<Complex> chahn_monic_coeffs(Complex a, Complex b, Complex c, Complex d, int n);

AlgebraParams<double> hahn_params(double alpha, double beta, int N);
MonicCoefficient<double> hahn_monic_coeffs(double alpha, double beta, int N, int n);

struct ParitySplit {
  int j = 0;
  int p = 0;
};

/// N = 2j + p with p in {0, 1}.
ParitySplit parity_split(int N);

AlgebraParams<double> parakrawtchouk_params(int N, double gamma, double t);
MonicCoefficient<double> parakrawtchouk_monic_coeffs(int N, double gamma, int n);

std::string family_name(const FamilySpec& spec);

/// Regime warnings (parameters outside the positive-definite or bilattice
/// ranges). Throws InvalidArgument for parameters no map accepts.
std::vector<std::string> family_warnings(const FamilySpec& spec);

/// N for the finite families, nullopt for Jacobi and continuous Hahn.
std::optional<int> family_truncation(const FamilySpec& spec);

/// Algebra seeds of the family; para-Krawtchouk uses its regulator t.
AlgebraParams<Complex> family_params(const FamilySpec& spec);

/// Closed-form recurrence for n = 0..count-1.
MonicRecurrence<Complex> family_recurrence(const FamilySpec& spec, int count);

/// Polynomial extrapolation of f(h) to h = 0 through all the given points.
double extrapolate_to_zero(std::span<const double> h, std::span<const double> f);

struct CompareRecord {
  int n = 0;
  Complex lambda_general;
  Complex lambda_closed;
  Complex b_general;
  Complex b_closed;
  double rel_err = 0.0;
};

struct FamilyReport {
  std::string family;
  bool complex_valued = false;
  int n_max = 0;
  double tol = 0.0;
  double max_rel_err = 0.0;
  bool passed = false;
  std::vector<CompareRecord> records;
  std::vector<std::string> warnings;
};

struct LimitOptions {
  /// Regulator values for the para-Krawtchouk limit.
  std::vector<double> t_values{1e-4, 1e-5, 1e-6};
};

/// Runs the general solution on the family's seeds and compares (lambda_n, b_n)
/// with the family's closed forms for n <= n_max.
FamilyReport family_compare(const FamilySpec& spec, int n_max, double tol,
                            const LimitOptions& limit = {});

}  // namespace trirep
