#pragma once

#include <Eigen/Dense>

#include <algorithm>

namespace sipg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Dense real matrix tagged with whether it is meant to be symmetric.
struct OperatorMatrix {
  Matrix m;
  bool symmetric = false;

  OperatorMatrix() = default;
  OperatorMatrix(Matrix mat, bool sym) : m(std::move(mat)), symmetric(sym) {}

  Eigen::Index rows() const { return m.rows(); }
  Eigen::Index cols() const { return m.cols(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m(i, j); }

  // max |a_ij - a_ji| relative to max |a_ij|.
  double symmetry_residual() const {
    if (m.rows() != m.cols()) return kNotSquare;
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    return (m - m.transpose()).cwiseAbs().maxCoeff() / scale;
  }

  static constexpr double kNotSquare = 1e300;
};

}  // namespace sipg
