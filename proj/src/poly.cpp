#include "trirep/poly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace trirep {

MonicRecurrence<double> to_real(const MonicRecurrence<Complex>& rec, double tol) {
  MonicRecurrence<double> out;
  out.lambda.resize(rec.size());
  out.diag.resize(rec.size());
  for (Eigen::Index n = 0; n < rec.size(); ++n) {
    const Complex l = rec.lambda(n);
    const Complex b = rec.diag(n);
    if (std::abs(l.imag()) > tol * std::max(1.0, std::abs(l)) ||
        std::abs(b.imag()) > tol * std::max(1.0, std::abs(b))) {
      throw Error(ErrorCode::InvalidArgument,
                  "recurrence is not real at n=" + std::to_string(n));
    }
    out.lambda(n) = l.real();
    out.diag(n) = b.real();
  }
  return out;
}

TridiagonalOperator<double> jacobi_matrix(const MonicRecurrence<double>& rec, int dim) {
  if (dim < 1 || dim > rec.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "dimension " + std::to_string(dim) + " outside 1.." + std::to_string(rec.size()));
  }
  Eigen::VectorXd off(dim - 1);
  for (int n = 1; n < dim; ++n) {
    const double l = rec.lambda(n);
    if (!(l > 0.0)) {
      throw Error(ErrorCode::NonPositiveLambda,
                  "lambda_" + std::to_string(n) + " = " + std::to_string(l));
    }
    off(n - 1) = std::sqrt(l);
  }
  return {off, rec.diag.head(dim), off};
}

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_tridiagonal(
    const TridiagonalOperator<double>& J, int options) {
  if (J.dim() < 1) throw Error(ErrorCode::DimensionMismatch, "empty matrix");
  if (!J.is_symmetric()) throw Error(ErrorCode::InvalidArgument, "matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(J.diag, J.sub, options);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "tridiagonal QL iteration did not converge");
  }
  return es;
}

// Newton correction d(x)/d'(x) for the characteristic polynomial of J,
// rescaled as it goes so large dimensions do not overflow.
double newton_step(const TridiagonalOperator<double>& J, double x) {
  double d_prev = 1.0, d = x - J.diag(0);
  double dd_prev = 0.0, dd = 1.0;
  for (Eigen::Index k = 1; k < J.dim(); ++k) {
    const double b2 = J.sub(k - 1) * J.sub(k - 1);
    const double d_next = (x - J.diag(k)) * d - b2 * d_prev;
    const double dd_next = d + (x - J.diag(k)) * dd - b2 * dd_prev;
    d_prev = d;
    d = d_next;
    dd_prev = dd;
    dd = dd_next;
    const double m = std::max(std::abs(d), std::abs(dd));
    if (m > 1e100) {
      d /= m;
      d_prev /= m;
      dd /= m;
      dd_prev /= m;
    }
  }
  return dd == 0.0 ? 0.0 : d / dd;
}

// A few Newton steps on each eigenvalue. Steps larger than the solver's own
// error bound are rejected, so a node can never jump to a neighbouring root.
void polish(const TridiagonalOperator<double>& J, Eigen::VectorXd& nodes) {
  const double norm = J.max_abs_entry();
  const double bound = 1e-10 * (1.0 + norm);
  const Eigen::VectorXd original = nodes;
  for (Eigen::Index s = 0; s < nodes.size(); ++s) {
    double x = nodes(s);
    for (int it = 0; it < 3; ++it) {
      const double step = newton_step(J, x);
      if (!std::isfinite(step) || std::abs(x - step - nodes(s)) > bound) break;
      x -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
    }
    nodes(s) = x;
  }
  if (!std::is_sorted(nodes.begin(), nodes.end())) nodes = original;
}

}  // namespace

Eigen::VectorXd spectrum(const TridiagonalOperator<double>& J) {
  Eigen::VectorXd nodes = solve_tridiagonal(J, Eigen::EigenvaluesOnly).eigenvalues();
  polish(J, nodes);
  return nodes;
}

SpectralData quadrature(const TridiagonalOperator<double>& J, double total_mass) {
  const auto es = solve_tridiagonal(J, Eigen::ComputeEigenvectors);
  SpectralData out;
  out.nodes = es.eigenvalues();
  polish(J, out.nodes);
  out.weights = total_mass * es.eigenvectors().row(0).transpose().array().square();
  for (Eigen::Index s = 0; s < out.weights.size(); ++s) {
    if (std::abs(out.weights(s)) < 1e-300) {
      out.weights(s) = 0.0;
      ++out.flushed;
    }
  }
  return out;
}

namespace {

using Wide = long double;

// Newton on p_dim in extended precision. A double-rounded node is off by an
// ulp, and p_n for n near dim can vanish within 1e-6 of a node, so the Gram
// entries are evaluated at the refined root rather than the stored node.
Wide refine_root(const MonicRecurrence<double>& rec, int dim, double node) {
  const Wide bound = 1e-10L * (1 + std::abs(node));
  Wide x = node;
  for (int it = 0; it < 4; ++it) {
    Wide p_prev = 0, p = 1, dp_prev = 0, dp = 0;
    for (int n = 0; n < dim; ++n) {
      const Wide l = n > 0 ? Wide(rec.lambda(n)) : 0;
      const Wide t = x - Wide(rec.diag(n));
      const Wide p_next = t * p - l * p_prev;
      const Wide dp_next = p + t * dp - l * dp_prev;
      p_prev = p;
      p = p_next;
      dp_prev = dp;
      dp = dp_next;
    }
    if (dp == 0 || !std::isfinite(static_cast<double>(p / dp))) break;
    const Wide next = x - p / dp;
    if (std::abs(next - Wide(node)) > bound) break;
    x = next;
  }
  return x;
}

}  // namespace

double gram_check(const MonicRecurrence<double>& rec, const SpectralData& quad, int n_max) {
  if (n_max < 0) throw Error(ErrorCode::IndexOutOfRange, "n_max must be >= 0");
  if (n_max >= quad.dim()) {
    throw Error(ErrorCode::ExactnessViolation,
                "degree " + std::to_string(n_max) + " needs more than " +
                    std::to_string(quad.dim()) + " nodes");
  }
  if (n_max > rec.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "degree " + std::to_string(n_max) + " needs more recurrence coefficients");
  }
  const int dim = static_cast<int>(quad.dim());
  const bool can_refine = rec.size() >= dim;
  std::vector<std::vector<Wide>> P(dim, std::vector<Wide>(n_max + 1));
  for (int s = 0; s < dim; ++s) {
    const Wide x = can_refine ? refine_root(rec, dim, quad.nodes(s)) : Wide(quad.nodes(s));
    Wide p_prev = 0, p = 1;
    P[s][0] = 1;
    for (int n = 0; n < n_max; ++n) {
      const Wide next = (x - Wide(rec.diag(n))) * p - (n > 0 ? Wide(rec.lambda(n)) * p_prev : 0);
      p_prev = p;
      p = next;
      P[s][n + 1] = p;
    }
  }
  auto entry = [&](int m, int n) {
    Wide acc = 0;
    for (int s = 0; s < dim; ++s) acc += Wide(quad.weights(s)) * P[s][m] * P[s][n];
    return acc;
  };
  std::vector<Wide> norms(n_max + 1);
  for (int m = 0; m <= n_max; ++m) {
    const Wide d = entry(m, m);
    if (!(d > 0) || !std::isfinite(static_cast<double>(d))) return std::numeric_limits<double>::infinity();
    norms[m] = std::sqrt(d);
  }
  // Normalized diagonal entries are 1 by construction.
  Wide worst = 0;
  for (int m = 0; m <= n_max; ++m) {
    for (int n = 0; n < m; ++n) worst = std::max(worst, std::abs(entry(m, n)) / (norms[m] * norms[n]));
  }
  return static_cast<double>(worst);
}

BilatticeResult bilattice_check(std::span<const double> nodes, std::optional<double> spacing,
                                double tol) {
  BilatticeResult out;
  if (nodes.size() < 4) return out;
  out.offset_even = nodes[0];
  out.offset_odd = nodes[1];
  out.spacing = spacing.value_or(nodes[2] - nodes[0]);
  if (!(out.spacing > 0.0)) return out;
  auto steps_match = [&](std::size_t stride) {
    for (std::size_t s = 0; s + stride < nodes.size(); ++s)
      if (std::abs(nodes[s + stride] - nodes[s] - out.spacing) > tol) return false;
    return true;
  };
  // A uniform lattice of the same step counts as the degenerate case where
  // the second progression starts one step after the first.
  out.is_bilattice = steps_match(2) || (spacing.has_value() && steps_match(1));
  return out;
}

Eigen::VectorXd polynomial_roots(const MonicRecurrence<double>& rec, int n) {
  if (n == 0) return {};
  return spectrum(jacobi_matrix(rec, n));
}

bool strictly_interlaces(const Eigen::VectorXd& inner, const Eigen::VectorXd& outer) {
  if (outer.size() != inner.size() + 1) return false;
  for (Eigen::Index i = 0; i < inner.size(); ++i) {
    if (!(outer(i) < inner(i) && inner(i) < outer(i + 1))) return false;
  }
  return true;
}

}  // namespace trirep
