#pragma once

#include "trirep/algebra.hpp"
#include "trirep/errors.hpp"
#include "trirep/scalar.hpp"
#include "trirep/tridiagonal.hpp"

#include <optional>
#include <span>

namespace trirep {

/// Monic three-term recurrence x p_n = p_{n+1} + b_n p_n + lambda_n p_{n-1},
/// p_0 = 1, p_{-1} = 0. lambda(0) is stored as zero so both vectors share indices.
template <FieldScalar Scalar>
struct MonicRecurrence {
  Vector<Scalar> lambda;
  Vector<Scalar> diag;

  Eigen::Index size() const noexcept { return diag.size(); }
};

template <FieldScalar Scalar>
MonicRecurrence<Scalar> recurrence_from(const RepCoefficients<Scalar>& r) {
  MonicRecurrence<Scalar> rec;
  rec.diag = r.b;
  rec.lambda.resize(r.dim());
  for (Eigen::Index n = 0; n < r.dim(); ++n) rec.lambda(n) = r.lambda(n);
  return rec;
}

/// p_0(x), ..., p_{n_max}(x). Needs n_max <= rec.size().
template <FieldScalar Scalar>
Vector<Scalar> monic_eval_all(const MonicRecurrence<Scalar>& rec, int n_max, const Scalar& x) {
  if (n_max < 0 || n_max > rec.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "degree " + std::to_string(n_max) + " outside 0.." + std::to_string(rec.size()));
  }
  Vector<Scalar> p(n_max + 1);
  p(0) = Scalar(1);
  if (n_max >= 1) p(1) = x - rec.diag(0);
  for (int n = 1; n < n_max; ++n) p(n + 1) = (x - rec.diag(n)) * p(n) - rec.lambda(n) * p(n - 1);
  return p;
}

template <FieldScalar Scalar>
Scalar monic_eval(const MonicRecurrence<Scalar>& rec, int n, const Scalar& x) {
  return monic_eval_all(rec, n, x)(n);
}

/// Real view of a recurrence whose imaginary parts are below `tol` (relative).
MonicRecurrence<double> to_real(const MonicRecurrence<Complex>& rec, double tol = 1e-12);

/// Symmetric tridiagonal matrix with diagonal b_n and off-diagonal sqrt(lambda_n).
TridiagonalOperator<double> jacobi_matrix(const MonicRecurrence<double>& rec, int dim);

/// Ascending eigenvalues of a real symmetric tridiagonal matrix, each refined
/// by Newton steps on the characteristic polynomial.
Eigen::VectorXd spectrum(const TridiagonalOperator<double>& J);

struct SpectralData {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  /// Number of weights below 1e-300 that were flushed to zero.
  int flushed = 0;

  Eigen::Index dim() const noexcept { return nodes.size(); }
};

/// Gauss rule of the Jacobi matrix: eigenvalues (refined as in spectrum) and
/// squared first eigenvector components, scaled to `total_mass`.
SpectralData quadrature(const TridiagonalOperator<double>& J, double total_mass = 1.0);

/// max_{m,n <= n_max} |G_mn / sqrt(G_mm G_nn) - delta_mn| under the rule `quad`.
/// Accumulated in long double, with nodes refined onto the roots of p_dim.
double gram_check(const MonicRecurrence<double>& rec, const SpectralData& quad, int n_max);

struct BilatticeResult {
  bool is_bilattice = false;
  double offset_even = 0.0;
  double offset_odd = 0.0;
  double spacing = 0.0;
};

/// Whether sorted nodes split into two interleaved progressions with a common
/// step, i.e. nodes[s+2] - nodes[s] is the same for every s. The step is taken
/// from the data unless `spacing` is given; a uniform lattice of that step
/// also passes, with offsets nodes[0] and nodes[1].
BilatticeResult bilattice_check(std::span<const double> nodes,
                                std::optional<double> spacing = std::nullopt,
                                double tol = 1e-8);

/// Zeros of p_n, as eigenvalues of the leading n x n Jacobi matrix.
Eigen::VectorXd polynomial_roots(const MonicRecurrence<double>& rec, int n);

/// inner (size k) strictly interlaces outer (size k+1).
bool strictly_interlaces(const Eigen::VectorXd& inner, const Eigen::VectorXd& outer);

}  // namespace trirep
