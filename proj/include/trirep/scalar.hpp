#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>

namespace trirep {

using Complex = std::complex<double>;

template <typename T>
concept FieldScalar = std::same_as<T, double> || std::same_as<T, Complex>;

template <typename T>
inline constexpr bool is_complex_v = std::same_as<T, Complex>;

template <FieldScalar Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <FieldScalar Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Relative threshold below which an expression counts as an exact zero.
inline constexpr double kZeroTol = 1e-12;

/// Absolute floor shared by every relative comparison.
inline constexpr double kAbsFloor = 1e-14;

/// `scale` is the magnitude of the terms that produced x.
template <FieldScalar Scalar>
bool negligible(const Scalar& x, double scale) {
  return std::abs(x) <= kZeroTol * scale;
}

/// |x - ref| / |ref|, with errors below kAbsFloor counted as zero.
inline double rel_deviation(double x, double ref) {
  const double err = std::abs(x - ref);
  if (err <= kAbsFloor) return 0.0;
  return err / std::max(std::abs(ref), kAbsFloor);
}

/// Componentwise on (re, im).
inline double rel_deviation(const Complex& x, const Complex& ref) {
  return std::max(rel_deviation(x.real(), ref.real()), rel_deviation(x.imag(), ref.imag()));
}

inline double real_part(double x) { return x; }
inline double real_part(const Complex& x) { return x.real(); }
inline double imag_part(double) { return 0.0; }
inline double imag_part(const Complex& x) { return x.imag(); }

}  // namespace trirep
