#pragma once

#include "config.hpp"
#include "operator_matrix.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace sipg {

// DoF layout: index 2c is u_c^+ (left end of cell c), 2c+1 is u_c^- (right end).
enum DofType : int { kPlus = 0, kMinus = 1 };

// One stencil coefficient in units of 1/h^2: row (cell c, row_type) couples to
// column (cell c + cell_offset, col_type).
struct StencilEntry {
  int row_type;
  int cell_offset;
  int col_type;
  double value;
};

inline std::vector<StencilEntry> operator_stencil(double delta0, double inv_gamma) {
  const double diag = delta0 + inv_gamma / 3.0;
  const double mass = inv_gamma / 6.0;
  return {
      {kPlus, -1, kPlus, -0.5},   {kPlus, -1, kMinus, 1.0 - delta0},
      {kPlus, 0, kPlus, diag},    {kPlus, 0, kMinus, mass},
      {kPlus, 1, kPlus, -0.5},    {kMinus, -1, kMinus, -0.5},
      {kMinus, 0, kPlus, mass},   {kMinus, 0, kMinus, diag},
      {kMinus, 1, kPlus, 1.0 - delta0}, {kMinus, 1, kMinus, -0.5},
  };
}

inline std::vector<StencilEntry> smoother_stencil(SmootherKind kind, double delta0, double inv_gamma) {
  const double diag = delta0 + inv_gamma / 3.0;
  if (kind == SmootherKind::Cell) {
    const double mass = inv_gamma / 6.0;
    return {{kPlus, 0, kPlus, diag},
            {kPlus, 0, kMinus, mass},
            {kMinus, 0, kPlus, mass},
            {kMinus, 0, kMinus, diag}};
  }
  return {{kPlus, 0, kPlus, diag},
          {kPlus, -1, kMinus, 1.0 - delta0},
          {kMinus, 0, kMinus, diag},
          {kMinus, 1, kPlus, 1.0 - delta0}};
}

// Expands a stencil into a 2J x 2J matrix scaled by 1/h^2. Periodic mode wraps
// cell indices; Dirichlet mode drops couplings to cells outside the mesh.
inline Matrix expand_stencil(const ProblemConfig& cfg, const std::vector<StencilEntry>& st) {
  const int J = cfg.J;
  const double scale = 1.0 / (cfg.h() * cfg.h());
  Matrix m = Matrix::Zero(2 * J, 2 * J);
  for (int c = 0; c < J; ++c) {
    for (const auto& e : st) {
      int col_cell = c + e.cell_offset;
      if (col_cell < 0 || col_cell >= J) {
        if (cfg.bc == BoundaryMode::Dirichlet) continue;
        col_cell = (col_cell % J + J) % J;
      }
      m(2 * c + e.row_type, 2 * col_cell + e.col_type) += scale * e.value;
    }
  }
  return m;
}

inline OperatorMatrix assemble_operator(const ProblemConfig& cfg) {
  cfg.validate();
  return {expand_stencil(cfg, operator_stencil(cfg.delta0, cfg.inv_gamma())), true};
}

// Index sets of the smoother blocks. Cell blocks are {2c, 2c+1}; point blocks
// pair u_c^- with u_{c+1}^+, and under Dirichlet the first and last DoF stand alone.
inline std::vector<std::vector<int>> smoother_blocks(const ProblemConfig& cfg, SmootherKind kind) {
  const int J = cfg.J;
  std::vector<std::vector<int>> blocks;
  if (kind == SmootherKind::Cell) {
    for (int c = 0; c < J; ++c) blocks.push_back({2 * c, 2 * c + 1});
    return blocks;
  }
  if (cfg.bc == BoundaryMode::Dirichlet) {
    blocks.push_back({0});
    for (int c = 0; c + 1 < J; ++c) blocks.push_back({2 * c + 1, 2 * c + 2});
    blocks.push_back({2 * J - 1});
  } else {
    for (int c = 0; c < J; ++c) blocks.push_back({2 * c + 1, (2 * c + 2) % (2 * J)});
  }
  return blocks;
}

inline void check_block_invertible(const Matrix& blk, int index) {
  const double scale = blk.cwiseAbs().maxCoeff();
  const double det = blk.determinant();
  if (!(scale > 0.0) || std::abs(det) <= 1e-13 * std::pow(scale, static_cast<double>(blk.rows())))
    throw SingularBlock("singular smoother block " + std::to_string(index), index);
}

// Block-diagonal part of A over the smoother blocks (D itself, not its inverse).
inline OperatorMatrix assemble_smoother(const ProblemConfig& cfg, SmootherKind kind) {
  cfg.validate();
  const Matrix A = assemble_operator(cfg).m;
  const auto blocks = smoother_blocks(cfg, kind);
  Matrix D = Matrix::Zero(A.rows(), A.cols());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& idx = blocks[b];
    Matrix blk(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) {
        blk(i, j) = A(idx[i], idx[j]);
        D(idx[i], idx[j]) = A(idx[i], idx[j]);
      }
    check_block_invertible(blk, static_cast<int>(b));
  }
  return {std::move(D), true};
}

struct Transfer {
  OperatorMatrix R;
  OperatorMatrix P;
};

// Restriction onto the mesh of doubled cell size and P = 2 R^T. Coarse cell m
// is made of fine cells 2m and 2m+1, so no wrap is needed in either mode.
inline Transfer assemble_transfer(int J) {
  if (J < 4 || J % 2 != 0)
    throw InvalidArgument("J must be an even integer >= 4, got " + std::to_string(J));
  Matrix R = Matrix::Zero(J, 2 * J);
  for (int m = 0; m < J / 2; ++m) {
    const int f = 4 * m;
    R(2 * m, f) = 0.5;
    R(2 * m, f + 1) = 0.25;
    R(2 * m, f + 2) = 0.25;
    R(2 * m + 1, f + 1) = 0.25;
    R(2 * m + 1, f + 2) = 0.25;
    R(2 * m + 1, f + 3) = 0.5;
  }
  Matrix P = 2.0 * R.transpose();
  return {{std::move(R), false}, {std::move(P), false}};
}

inline OperatorMatrix assemble_coarse(const OperatorMatrix& A, const OperatorMatrix& R,
                                      const OperatorMatrix& P) {
  if (A.rows() != A.cols() || R.cols() != A.rows() || P.rows() != A.cols() || P.cols() != R.rows())
    throw InvalidArgument("assemble_coarse: dimension mismatch");
  const bool galerkin_pair = (P.m - 2.0 * R.m.transpose()).cwiseAbs().maxCoeff() == 0.0;
  return {R.m * A.m * P.m, A.symmetric && galerkin_pair};
}

}  // namespace sipg
