#pragma once

// Tridiagonal representations of the algebra [Z, X] = Z^2 + Delta.
//
// The generators act on a ladder basis |n>, n = 0..M, as
//   X|n> = c_n |n-1> + b_n |n> + a_n |n+1>,
//   Z|n> = u_n |n-1> + v_n |n> + w_n |n+1>,   c_0 = u_0 = 0.
// Every coefficient is fixed by the seed (Delta, phi0, delta0, v0, b0) up to the
// split of kappa_n = u_n w_{n-1} into its two factors (the gauge).

#include "trirep/errors.hpp"
#include "trirep/scalar.hpp"
#include "trirep/tridiagonal.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace trirep {

template <FieldScalar Scalar>
struct AlgebraParams {
  double delta = 0.0;
  Scalar phi0{};
  Scalar delta0{};
  Scalar v0{};
  Scalar b0{};

  /// delta0 - phi0; every closed form depends on the seeds through this gap.
  Scalar gap() const { return delta0 - phi0; }

  Scalar b0_tilde() const { return b0 - 0.5 * (delta0 + phi0 + 1.0) * v0; }

  static AlgebraParams from_b0_tilde(double delta, Scalar phi0, Scalar delta0, Scalar v0,
                                     Scalar b0_tilde) {
    return {delta, phi0, delta0, v0, b0_tilde + 0.5 * (delta0 + phi0 + 1.0) * v0};
  }

  bool operator==(const AlgebraParams&) const = default;
};

struct GaugeChoice {
  enum class Kind { SplitSqrt, UnitW, Custom };

  Kind kind = Kind::SplitSqrt;
  /// Custom gauge: seeds[n] is w_n.
  std::vector<double> seeds;

  static GaugeChoice split_sqrt() { return {Kind::SplitSqrt, {}}; }
  static GaugeChoice unit_w() { return {Kind::UnitW, {}}; }
  static GaugeChoice custom(std::vector<double> w) { return {Kind::Custom, std::move(w)}; }

  bool operator==(const GaugeChoice&) const = default;
};

template <FieldScalar Scalar>
struct RepCoefficients {
  AlgebraParams<Scalar> params;
  GaugeChoice gauge;
  /// True when kappa_{N+1} = 0 closed the representation at dimension N+1 = dim().
  bool closed = false;
  Vector<Scalar> a, b, c;
  Vector<Scalar> u, v, w;
  Vector<Scalar> kappa;

  Eigen::Index dim() const noexcept { return b.size(); }

  /// Monic recurrence coefficient a_{n-1} c_n (zero at n = 0).
  Scalar lambda(Eigen::Index n) const { return n == 0 ? Scalar(0) : a(n - 1) * c(n); }
};

template <FieldScalar Scalar>
struct Representation {
  RepCoefficients<Scalar> coeffs;
  TridiagonalOperator<Scalar> X;
  TridiagonalOperator<Scalar> Z;
};

enum class ResidualWindow { Full, Interior };

enum class TruncationKind {
  Gap,        // delta0 - phi0 = N, any Delta
  RootPlus,   // Delta != 0, '+' root of the quadratic factor of kappa
  RootMinus,  // Delta != 0, '-' root
};

struct Truncation {
  int n = 0;
  TruncationKind kind = TruncationKind::Gap;

  bool operator==(const Truncation&) const = default;
};

struct TruncationOptions {
  int max_n = 1024;
  /// Relative tolerance on the Delta-dependent condition.
  double tolerance = 1e-9;
  /// Absolute tolerance on delta0 - phi0 = N; zero demands equality.
  double gap_tolerance = 0.0;
};

namespace detail {

inline void require_index(int n) {
  if (n < 0) throw Error(ErrorCode::IndexOutOfRange, "index must be >= 0, got " + std::to_string(n));
}

template <FieldScalar Scalar>
double gap_scale(const AlgebraParams<Scalar>& p, int n) {
  return std::abs(p.phi0) + std::abs(p.delta0) + 2.0 * std::abs(n) + 1.0;
}

/// mu_m = delta0 - phi0 - 2m + 1, the integrating factor of the v recurrence.
template <FieldScalar Scalar>
Scalar mu(const AlgebraParams<Scalar>& p, int m) {
  return p.gap() - static_cast<double>(2 * m - 1);
}

template <FieldScalar Scalar>
bool mu_vanishes(const AlgebraParams<Scalar>& p, int m) {
  return negligible(mu(p, m), gap_scale(p, m));
}

/// gap - 2k, the coefficient met by the kappa recurrence.
template <FieldScalar Scalar>
bool even_gap_vanishes(const AlgebraParams<Scalar>& p, int k) {
  return negligible(Scalar(p.gap() - 2.0 * k), gap_scale(p, k));
}

// v_n = v0 mu_0 mu_1 / (mu_n mu_{n+1}) after cancelling mu_2..mu_{n-1}; valid
// only if none of the cancelled or denominator factors vanish.
template <FieldScalar Scalar>
bool v_closed_form_valid(const AlgebraParams<Scalar>& p, int n) {
  for (int m = std::min(n, 2); m <= n + 1; ++m)
    if (mu_vanishes(p, m)) return false;
  return true;
}

template <FieldScalar Scalar>
Scalar v_forward(const AlgebraParams<Scalar>& p, int n) {
  Scalar v = p.v0;
  for (int k = 0; k < n; ++k) {
    const Scalar lhs_coeff = mu(p, k + 2);
    const bool rhs_zero = mu_vanishes(p, k) || v == Scalar(0);
    if (mu_vanishes(p, k + 2)) {
      if (!rhs_zero) {
        throw Error(ErrorCode::DegenerateParameters,
                    "v recurrence has no solution at n=" + std::to_string(k + 1));
      }
      v = Scalar(0);
    } else {
      v = rhs_zero ? Scalar(0) : mu(p, k) * v / lhs_coeff;
    }
  }
  return v;
}

template <FieldScalar Scalar>
Scalar v_value(const AlgebraParams<Scalar>& p, int n) {
  if (n == 0) return p.v0;
  if (!v_closed_form_valid(p, n)) return v_forward(p, n);
  const Scalar g = p.gap();
  return (g - 1.0) * (g + 1.0) * p.v0 / (mu(p, n) * mu(p, n + 1));
}

/// Factors of the kappa_n numerator whose zeros are the truncation conditions.
template <FieldScalar Scalar>
bool truncation_factor_vanishes(const AlgebraParams<Scalar>& p, int n) {
  const Scalar g = p.gap();
  const Scalar gap_factor = g - static_cast<double>(n - 1);
  if (negligible(gap_factor, gap_scale(p, n))) return true;
  const Scalar m = mu(p, n);
  const Scalar quad = p.delta * m * m + p.v0 * p.v0 * (g - 1.0) * (g - 1.0);
  const double quad_scale =
      std::abs(p.delta) * std::norm(m) + std::norm(p.v0) * std::norm(g - 1.0);
  return negligible(quad, quad_scale);
}

template <FieldScalar Scalar>
struct KappaValue {
  Scalar value{};
  /// Set when the value is zero because a truncation condition holds at n-1.
  bool closes = false;
};

template <FieldScalar Scalar>
bool kappa_closed_form_valid(const AlgebraParams<Scalar>& p, int n) {
  for (int m = 1; m <= n; ++m)
    if (mu_vanishes(p, m)) return false;
  // The closed-form denominator carries gap - 2n + 2, which is the bare gap at n = 1.
  if (n == 1 && even_gap_vanishes(p, 0)) return false;
  for (int k = 1; k <= n; ++k)
    if (even_gap_vanishes(p, k)) return false;
  return true;
}

template <FieldScalar Scalar>
Scalar telescoped_sum_closed(const AlgebraParams<Scalar>& p, int n) {
  const Scalar g = p.gap();
  const Scalar m = mu(p, n);
  return static_cast<double>(n) * (g - static_cast<double>(n - 1)) *
         (p.delta * m * m + p.v0 * p.v0 * (g - 1.0) * (g - 1.0)) / (m * m);
}

template <FieldScalar Scalar>
KappaValue<Scalar> kappa_value(const AlgebraParams<Scalar>& p, int n) {
  if (n == 0) return {};
  const Scalar g = p.gap();
  if (kappa_closed_form_valid(p, n)) {
    if (truncation_factor_vanishes(p, n)) return {Scalar(0), true};
    const Scalar value =
        telescoped_sum_closed(p, n) / ((g - 2.0 * n) * (g - 2.0 * n + 2.0));
    return {value, false};
  }
  // Un-telescoped relation:
  //   Delta + v_k^2 = (gap - 2(k+1)) kappa_{k+1} - (gap - 2(k-1)) kappa_k.
  Scalar kappa(0);
  bool closes = false;
  for (int k = 0; k < n; ++k) {
    const Scalar vk = v_value(p, k);
    const Scalar carried = (g - 2.0 * k + 2.0) * kappa;
    const Scalar rhs = p.delta + vk * vk + carried;
    const double scale = std::abs(p.delta) + std::norm(vk) + std::abs(carried);
    const bool rhs_zero = negligible(rhs, scale);
    if (even_gap_vanishes(p, k + 1)) {
      if (!rhs_zero) {
        throw Error(ErrorCode::DegenerateParameters,
                    "kappa recurrence has no solution at n=" + std::to_string(k + 1));
      }
      kappa = Scalar(0);
      closes = false;
    } else if (rhs_zero) {
      kappa = Scalar(0);
      closes = truncation_factor_vanishes(p, k + 1);
    } else {
      kappa = rhs / (g - 2.0 * (k + 1));
      closes = false;
    }
  }
  return {kappa, closes};
}

template <FieldScalar Scalar>
void check_field(const AlgebraParams<Scalar>& p) {
  if constexpr (is_complex_v<Scalar>) {
    const bool has_imag = p.phi0.imag() != 0.0 || p.delta0.imag() != 0.0 ||
                          p.v0.imag() != 0.0 || p.b0.imag() != 0.0;
    if (has_imag && !(p.delta > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "complex seeds are only allowed when Delta > 0");
    }
  }
}

}  // namespace detail

template <FieldScalar Scalar>
Scalar solve_phi(const AlgebraParams<Scalar>& p, int n) {
  detail::require_index(n);
  return p.phi0 + static_cast<double>(n);
}

template <FieldScalar Scalar>
Scalar solve_delta_seq(const AlgebraParams<Scalar>& p, int n) {
  detail::require_index(n);
  return p.delta0 - static_cast<double>(n);
}

/// Diagonal of Z. Falls back to the forward recurrence mu_{n+2} v_{n+1} = mu_n v_n
/// when the closed form meets a vanishing factor.
template <FieldScalar Scalar>
Scalar solve_v(const AlgebraParams<Scalar>& p, int n) {
  detail::require_index(n);
  return detail::v_value(p, n);
}

template <FieldScalar Scalar>
Scalar solve_b(const AlgebraParams<Scalar>& p, int n) {
  detail::require_index(n);
  if (n == 0) return p.b0;
  return 0.5 * (p.delta0 + p.phi0 + 1.0) * (detail::v_value(p, n) - p.v0) + p.b0;
}

/// kappa_n = u_n w_{n-1}; kappa_0 = 0. Exactly zero when a truncation condition
/// holds at n-1.
template <FieldScalar Scalar>
Scalar solve_kappa(const AlgebraParams<Scalar>& p, int n) {
  detail::require_index(n);
  return detail::kappa_value(p, n).value;
}

/// Builds X and Z on the first `size` basis vectors. Stops early at dimension
/// N+1 when kappa_{N+1} vanishes because of a truncation condition.
template <FieldScalar Scalar>
Representation<Scalar> build_representation(const AlgebraParams<Scalar>& p, int size,
                                            const GaugeChoice& gauge = GaugeChoice::split_sqrt()) {
  if (size < 1) throw Error(ErrorCode::InvalidArgument, "size must be >= 1");
  detail::check_field(p);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<Scalar> kappa{Scalar(0)};
  bool closed = false;
  Scalar boundary_kappa(nan);
  for (int n = 1; n <= size; ++n) {
    detail::KappaValue<Scalar> k;
    try {
      k = detail::kappa_value(p, n);
    } catch (const Error& e) {
      // kappa_{M+1} only feeds a_M and w_M, which sit outside the matrices.
      if (n == size && e.code() == ErrorCode::DegenerateParameters) break;
      throw;
    }
    if (k.value == Scalar(0)) {
      if (k.closes) {
        closed = true;
        break;
      }
      if (n < size) {
        throw Error(ErrorCode::ZeroKappaInterior,
                    "kappa_" + std::to_string(n) + " vanishes without a truncation condition");
      }
    }
    if (n == size) {
      boundary_kappa = k.value;
    } else {
      kappa.push_back(k.value);
    }
  }
  const auto dim = static_cast<Eigen::Index>(kappa.size());

  if (gauge.kind == GaugeChoice::Kind::Custom) {
    if (static_cast<Eigen::Index>(gauge.seeds.size()) < dim) {
      throw Error(ErrorCode::InvalidArgument, "custom gauge needs one w seed per basis vector");
    }
    for (Eigen::Index i = 0; i < dim; ++i)
      if (gauge.seeds[i] == 0.0) throw Error(ErrorCode::InvalidArgument, "custom gauge seed is zero");
  }
  auto w_factor = [&](const Scalar& kap, Eigen::Index idx) -> Scalar {
    switch (gauge.kind) {
      case GaugeChoice::Kind::SplitSqrt: return Scalar(std::sqrt(std::abs(kap)));
      case GaugeChoice::Kind::UnitW: return Scalar(1.0);
      case GaugeChoice::Kind::Custom: return Scalar(gauge.seeds[idx]);
    }
    return Scalar(1.0);
  };

  RepCoefficients<Scalar> r;
  r.params = p;
  r.gauge = gauge;
  r.closed = closed;
  r.a.resize(dim);
  r.b.resize(dim);
  r.c.resize(dim);
  r.u.resize(dim);
  r.v.resize(dim);
  r.w.resize(dim);
  r.kappa.resize(dim);

  for (Eigen::Index n = 0; n < dim; ++n) {
    const int ni = static_cast<int>(n);
    r.kappa(n) = kappa[n];
    r.v(n) = detail::v_value(p, ni);
    r.b(n) = solve_b(p, ni);
  }
  for (Eigen::Index n = 0; n + 1 < dim; ++n) r.w(n) = w_factor(kappa[n + 1], n);
  if (closed) {
    r.w(dim - 1) = Scalar(0);
  } else if (std::isnan(real_part(boundary_kappa))) {
    r.w(dim - 1) = Scalar(nan);
  } else if (boundary_kappa == Scalar(0)) {
    r.w(dim - 1) = Scalar(0);
  } else {
    r.w(dim - 1) = w_factor(boundary_kappa, dim - 1);
  }
  r.u(0) = Scalar(0);
  for (Eigen::Index n = 1; n < dim; ++n) r.u(n) = kappa[n] / r.w(n - 1);
  for (Eigen::Index n = 0; n < dim; ++n) {
    r.c(n) = (p.phi0 + static_cast<double>(n)) * r.u(n);
    r.a(n) = (p.delta0 - static_cast<double>(n)) * r.w(n);
  }

  Representation<Scalar> rep;
  const Eigen::Index off = dim - 1;
  rep.X = TridiagonalOperator<Scalar>(r.a.head(off), r.b, r.c.tail(off));
  rep.Z = TridiagonalOperator<Scalar>(r.w.head(off), r.v, r.u.tail(off));
  rep.coeffs = std::move(r);
  return rep;
}

/// max |ZX - XZ - Z^2 - Delta I| over the chosen window. The interior window
/// drops the last two rows and columns, which truncation of a semi-infinite
/// representation corrupts.
template <FieldScalar Scalar>
double relation_residual(const TridiagonalOperator<Scalar>& X, const TridiagonalOperator<Scalar>& Z,
                         double delta, ResidualWindow window = ResidualWindow::Full) {
  if (X.dim() != Z.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "X has dim " + std::to_string(X.dim()) +
                                                  ", Z has dim " + std::to_string(Z.dim()));
  }
  const auto d = X.dim();
  if (d < 1) throw Error(ErrorCode::DimensionMismatch, "empty operators");
  const Matrix<Scalar> x = X.dense();
  const Matrix<Scalar> z = Z.dense();
  const Matrix<Scalar> r =
      z * x - x * z - z * z - Scalar(delta) * Matrix<Scalar>::Identity(d, d);
  const auto k = window == ResidualWindow::Full ? d : std::max<Eigen::Index>(d - 2, 0);
  if (k == 0) return 0.0;
  return r.topLeftCorner(k, k).cwiseAbs().maxCoeff();
}

template <FieldScalar Scalar>
double relation_residual(const Representation<Scalar>& rep) {
  return relation_residual(rep.X, rep.Z, rep.coeffs.params.delta,
                           rep.coeffs.closed ? ResidualWindow::Full : ResidualWindow::Interior);
}

/// 1 + (largest entry of X or Z)^2, the natural scale of the residual.
template <FieldScalar Scalar>
double residual_scale(const Representation<Scalar>& rep) {
  const double m = std::max(rep.X.max_abs_entry(), rep.Z.max_abs_entry());
  return 1.0 + m * m;
}

/// Seeds of the representation whose X-operator is X - mu Z.
template <FieldScalar Scalar>
AlgebraParams<Scalar> pencil_shift(const AlgebraParams<Scalar>& p, double mu) {
  return {p.delta, p.phi0 - mu, p.delta0 - mu, p.v0, p.b0 - mu * p.v0};
}

/// Seeds for (omega X, omega Z), which satisfy the relation with omega^2 Delta.
template <FieldScalar Scalar>
AlgebraParams<Scalar> scale_params(const AlgebraParams<Scalar>& p, double omega) {
  if (omega == 0.0) throw Error(ErrorCode::ZeroScale, "omega must be non-zero");
  return {omega * omega * p.delta, p.phi0, p.delta0, omega * p.v0, omega * p.b0};
}

template <FieldScalar Scalar>
std::vector<Truncation> truncation_conditions(const AlgebraParams<Scalar>& p,
                                              const TruncationOptions& opts = {}) {
  std::vector<Truncation> out;
  const Complex g(p.gap());
  const double g_scale = std::max(1.0, std::abs(g));
  if (std::abs(g.imag()) <= kZeroTol * g_scale) {
    const double n = std::round(g.real());
    if (n >= 1 && n <= opts.max_n && std::abs(g.real() - n) <= opts.gap_tolerance) {
      out.push_back({static_cast<int>(n), TruncationKind::Gap});
    }
  }
  if (p.delta != 0.0) {
    const Complex root = std::sqrt(Complex(-1.0 / p.delta));
    const Complex lead = -g - 1.0;                 // phi0 - delta0 - 1
    const Complex tail = (-g + 1.0) * Complex(p.v0) * root;
    for (int sign : {+1, -1}) {
      const Complex np1 = -0.5 * (lead + static_cast<double>(sign) * tail);
      const double tol = opts.tolerance * std::max(1.0, std::abs(np1));
      if (std::abs(np1.imag()) > tol) continue;
      const double m = std::round(np1.real());
      if (std::abs(np1.real() - m) > tol) continue;
      const double n = m - 1.0;
      if (n >= 1 && n <= opts.max_n) {
        out.push_back(
            {static_cast<int>(n), sign > 0 ? TruncationKind::RootPlus : TruncationKind::RootMinus});
      }
    }
  }
  return out;
}

inline bool contains_dimension(const std::vector<Truncation>& list, int n) {
  for (const auto& t : list)
    if (t.n == n) return true;
  return false;
}

/// Residual of one of the five coefficient conditions that make the ladder
/// actions a representation; `equation` runs 0..4 in the order of the
/// |n-2>, |n-1>, |n>, |n+1>, |n+2> components.
template <FieldScalar Scalar>
struct ConditionResidual {
  int equation = 0;
  int n = 0;
  Scalar value{};
  double scale = 0.0;

  double normalized() const { return std::abs(value) / std::max(scale, kAbsFloor); }
};

template <FieldScalar Scalar>
std::vector<ConditionResidual<Scalar>> representation_conditions(const RepCoefficients<Scalar>& r) {
  const auto dim = static_cast<int>(r.dim());
  const double delta = r.params.delta;
  auto at = [&](const Vector<Scalar>& s, int k) -> Scalar {
    if (k < 0 || k >= dim) return Scalar(0);
    return s(k);
  };
  // A closed representation has no coefficients past N (zero padding); an
  // open one can only be checked where every referenced index is stored.
  const int last_low = dim - 1;                        // equations 0, 1
  const int last_high = r.closed ? dim - 1 : dim - 2;  // equations 2, 3, 4

  std::vector<ConditionResidual<Scalar>> out;
  auto push = [&](int eq, int n, std::initializer_list<Scalar> terms) {
    Scalar sum(0);
    double scale = 0.0;
    for (const auto& t : terms) {
      if (std::isnan(real_part(t))) return;  // unknown boundary coefficient
      sum += t;
      scale += std::abs(t);
    }
    out.push_back({eq, n, sum, scale});
  };
  const auto &a = r.a, &b = r.b, &c = r.c, &u = r.u, &v = r.v, &w = r.w;
  for (int n = 1; n <= last_low; ++n) {
    push(0, n, {at(c, n) * at(u, n - 1), -at(c, n - 1) * at(u, n), -at(u, n - 1) * at(u, n)});
    push(1, n, {at(b, n) * at(u, n), -at(b, n - 1) * at(u, n), at(c, n) * at(v, n - 1),
                -at(u, n) * at(v, n - 1), -at(c, n) * at(v, n), -at(u, n) * at(v, n)});
  }
  for (int n = 0; n <= last_high; ++n) {
    push(2, n, {Scalar(-delta), -at(a, n - 1) * at(u, n), at(a, n) * at(u, n + 1),
                -at(v, n) * at(v, n), at(c, n) * at(w, n - 1), -at(u, n) * at(w, n - 1),
                -at(c, n + 1) * at(w, n), -at(u, n + 1) * at(w, n)});
    push(3, n, {at(a, n) * at(v, n + 1), -at(a, n) * at(v, n), at(b, n) * at(w, n),
                -at(b, n + 1) * at(w, n), -at(v, n) * at(w, n), -at(v, n + 1) * at(w, n)});
    push(4, n, {at(a, n) * at(w, n + 1), -at(a, n + 1) * at(w, n), -at(w, n) * at(w, n + 1)});
  }
  return out;
}

}  // namespace trirep
