#pragma once

#include "trirep/errors.hpp"
#include "trirep/scalar.hpp"

#include <string>

namespace trirep {

/// Banded matrix with only the three central diagonals stored.
/// Entry (i+1, i) is sub[i], (i, i) is diag[i], (i, i+1) is sup[i].
template <FieldScalar Scalar>
struct TridiagonalOperator {
  Vector<Scalar> sub;
  Vector<Scalar> diag;
  Vector<Scalar> sup;

  TridiagonalOperator() = default;

  explicit TridiagonalOperator(Eigen::Index dim)
      : sub(Vector<Scalar>::Zero(dim > 0 ? dim - 1 : 0)),
        diag(Vector<Scalar>::Zero(dim)),
        sup(Vector<Scalar>::Zero(dim > 0 ? dim - 1 : 0)) {}

  TridiagonalOperator(Vector<Scalar> sub_, Vector<Scalar> diag_, Vector<Scalar> sup_)
      : sub(std::move(sub_)), diag(std::move(diag_)), sup(std::move(sup_)) {
    const auto d = diag.size();
    const auto off = d > 0 ? d - 1 : 0;
    if (sub.size() != off || sup.size() != off) {
      throw Error(ErrorCode::DimensionMismatch,
                  "off-diagonals must have length dim-1 (dim=" + std::to_string(d) + ")");
    }
  }

  Eigen::Index dim() const noexcept { return diag.size(); }

  Matrix<Scalar> dense() const {
    const auto d = dim();
    Matrix<Scalar> m = Matrix<Scalar>::Zero(d, d);
    m.diagonal() = diag;
    if (d > 1) {
      m.template diagonal<-1>() = sub;
      m.template diagonal<1>() = sup;
    }
    return m;
  }

  double max_abs_entry() const {
    double m = diag.size() ? diag.cwiseAbs().maxCoeff() : 0.0;
    if (sub.size()) m = std::max(m, sub.cwiseAbs().maxCoeff());
    if (sup.size()) m = std::max(m, sup.cwiseAbs().maxCoeff());
    return m;
  }

  bool is_symmetric() const { return sub == sup; }
};

template <FieldScalar Scalar>
TridiagonalOperator<Scalar> operator+(const TridiagonalOperator<Scalar>& a,
                                      const TridiagonalOperator<Scalar>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "operator sum");
  return {a.sub + b.sub, a.diag + b.diag, a.sup + b.sup};
}

template <FieldScalar Scalar>
TridiagonalOperator<Scalar> operator*(const Scalar& s, const TridiagonalOperator<Scalar>& a) {
  return {s * a.sub, s * a.diag, s * a.sup};
}

}  // namespace trirep
