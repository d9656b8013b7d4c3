#pragma once

#include "assembly.hpp"
#include "dense_eigen.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sipg {

class SingularCoarseOperator : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Orthonormal basis of the numerical kernel of a symmetric matrix.
inline Matrix symmetric_kernel(const Matrix& m, double rel_tol = 1e-10) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const auto& ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) <= rel_tol * scale) idx.push_back(i);
  Matrix N(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) N.col(j) = es.eigenvectors().col(idx[j]);
  return N;
}

}  // namespace detail

// Solves A0 x = b. A symmetric semidefinite A0 (periodic Poisson) is inverted on
// the complement of its kernel: x = (A0 + N N^T)^{-1} b - N N^T b.
class CoarseSolver {
public:
  CoarseSolver() = default;
  explicit CoarseSolver(const OperatorMatrix& A0) {
    if (A0.rows() != A0.cols()) throw InvalidArgument("coarse operator not square");
    if (A0.symmetric) {
      kernel_ = detail::symmetric_kernel(A0.m);
      lu_.compute(A0.m + kernel_ * kernel_.transpose());
    } else {
      Eigen::FullPivLU<Matrix> check(A0.m);
      check.setThreshold(1e-12);
      if (!check.isInvertible())
        throw SingularCoarseOperator("coarse operator is singular (rank " +
                                     std::to_string(check.rank()) + " of " +
                                     std::to_string(A0.rows()) + ")");
      kernel_.resize(A0.rows(), 0);
      lu_.compute(A0.m);
    }
  }

  Vector solve(const Vector& b) const {
    Vector x = lu_.solve(b);
    if (kernel_.cols() > 0) x -= kernel_ * (kernel_.transpose() * b);
    return x;
  }

  Matrix solve(const Matrix& b) const {
    Matrix x = lu_.solve(b);
    if (kernel_.cols() > 0) x -= kernel_ * (kernel_.transpose() * b);
    return x;
  }

  Eigen::Index kernel_dim() const { return kernel_.cols(); }

private:
  Eigen::PartialPivLU<Matrix> lu_;
  Matrix kernel_;
};

// Immutable data of the two-level preconditioner
// M^{-1} g = alpha D^{-1} g + P A0^{-1} R (g - A alpha D^{-1} g).
class TwoLevelComponents {
public:
  TwoLevelComponents(OperatorMatrix A, std::vector<std::vector<int>> blocks, Transfer transfer,
                     double alpha)
      : A_(std::move(A)), blocks_(std::move(blocks)), R_(std::move(transfer.R)),
        P_(std::move(transfer.P)), alpha_(alpha) {
    if (A_.rows() != A_.cols()) throw InvalidArgument("operator not square");
    if (!(alpha_ >= 0.0) || std::isinf(alpha_)) throw InvalidArgument("alpha must be finite and >= 0");
    D_ = OperatorMatrix(Matrix::Zero(A_.rows(), A_.cols()), A_.symmetric);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const auto& idx = blocks_[b];
      Matrix blk(idx.size(), idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) {
          blk(i, j) = A_.m(idx[i], idx[j]);
          D_.m(idx[i], idx[j]) = blk(i, j);
        }
      check_block_invertible(blk, static_cast<int>(b));
      block_lu_.emplace_back(blk);
    }
    A0_ = assemble_coarse(A_, R_, P_);
    coarse_ = CoarseSolver(A0_);
    if (coarse_.kernel_dim() > 0 && A_.symmetric) fine_kernel_ = detail::symmetric_kernel(A_.m);
    else fine_kernel_.resize(A_.rows(), 0);
  }

  TwoLevelComponents(const ProblemConfig& cfg, SmootherKind kind, double alpha)
      : TwoLevelComponents(assemble_operator(cfg), smoother_blocks(cfg, kind),
                           assemble_transfer(cfg.J), alpha) {}

  const OperatorMatrix& A() const { return A_; }
  const OperatorMatrix& D() const { return D_; }
  const OperatorMatrix& R() const { return R_; }
  const OperatorMatrix& P() const { return P_; }
  const OperatorMatrix& A0() const { return A0_; }
  double alpha() const { return alpha_; }
  const CoarseSolver& coarse() const { return coarse_; }
  // Orthonormal kernel basis of A; empty unless the coarse operator is singular.
  const Matrix& fine_kernel() const { return fine_kernel_; }
  Eigen::Index size() const { return A_.rows(); }

  Vector apply_smoother_inverse(const Vector& g) const {
    Vector x = Vector::Zero(g.size());
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const auto& idx = blocks_[b];
      Vector gb(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) gb(i) = g(idx[i]);
      const Vector xb = block_lu_[b].solve(gb);
      for (std::size_t i = 0; i < idx.size(); ++i) x(idx[i]) = xb(i);
    }
    return x;
  }

  Matrix apply_smoother_inverse(const Matrix& g) const {
    Matrix x(g.rows(), g.cols());
    for (Eigen::Index j = 0; j < g.cols(); ++j) x.col(j) = apply_smoother_inverse(Vector(g.col(j)));
    return x;
  }

private:
  OperatorMatrix A_, D_;
  std::vector<std::vector<int>> blocks_;
  std::vector<Eigen::PartialPivLU<Matrix>> block_lu_;
  OperatorMatrix R_, P_, A0_;
  CoarseSolver coarse_;
  Matrix fine_kernel_;
  double alpha_;
};

inline Vector apply_preconditioner(const TwoLevelComponents& tl, const Vector& g) {
  if (g.size() != tl.size()) throw InvalidArgument("apply_preconditioner: vector length mismatch");
  const Vector x = tl.alpha() * tl.apply_smoother_inverse(g);
  const Vector r = g - tl.A().m * x;
  return x + tl.P().m * tl.coarse().solve(Vector(tl.R().m * r));
}

// E = (I - P A0^{-1} R A)(I - alpha D^{-1} A).
inline OperatorMatrix build_iteration_matrix(const TwoLevelComponents& tl) {
  const Eigen::Index n = tl.size();
  const Matrix& A = tl.A().m;
  const Matrix I = Matrix::Identity(n, n);
  const Matrix S = I - tl.alpha() * tl.apply_smoother_inverse(A);
  const Matrix C = I - tl.P().m * tl.coarse().solve(Matrix(tl.R().m * A));
  return {C * S, false};
}

// E restricted to the complement of ker A. For a nonsingular A this is E itself.
inline OperatorMatrix iteration_matrix_on_range(const TwoLevelComponents& tl) {
  OperatorMatrix E = build_iteration_matrix(tl);
  const Matrix& N = tl.fine_kernel();
  if (N.cols() > 0) E.m = E.m - (E.m * N) * N.transpose();
  return E;
}

enum class SolveStatus { Converged, MaxIterations, Diverged };

struct IterationHistory {
  std::vector<double> residual_norms;
  int iterations = 0;
  bool converged = false;
  SolveStatus status = SolveStatus::MaxIterations;

  // Geometric mean of the last (up to) 10 residual ratios.
  double convergence_factor(int window = 10) const {
    const int n = static_cast<int>(residual_norms.size()) - 1;
    if (n < 1) return 0.0;
    const int w = std::min(window, n);
    const double first = residual_norms[n - w];
    const double last = residual_norms[n];
    if (first == 0.0) return 0.0;
    return std::pow(last / first, 1.0 / w);
  }
};

inline constexpr double kDivergenceFactor = 1e8;

// Stationary iteration u <- u + M^{-1}(f - A u) from u = 0.
inline IterationHistory stationary_solve(const TwoLevelComponents& tl, const Vector& f, double tol,
                                         int maxit) {
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (maxit < 1) throw InvalidArgument("maxit must be >= 1");
  if (f.size() != tl.size()) throw InvalidArgument("stationary_solve: vector length mismatch");
  IterationHistory hist;
  Vector u = Vector::Zero(f.size());
  Vector r = f;
  const double r0 = r.norm();
  hist.residual_norms.push_back(r0);
  if (r0 == 0.0) {
    hist.converged = true;
    hist.status = SolveStatus::Converged;
    return hist;
  }
  for (int it = 1; it <= maxit; ++it) {
    u += apply_preconditioner(tl, r);
    r = f - tl.A().m * u;
    const double rn = r.norm();
    hist.residual_norms.push_back(rn);
    hist.iterations = it;
    if (rn <= tol * r0) {
      hist.converged = true;
      hist.status = SolveStatus::Converged;
      return hist;
    }
    if (!std::isfinite(rn) || rn > kDivergenceFactor * r0) {
      hist.status = SolveStatus::Diverged;
      return hist;
    }
  }
  return hist;
}

}  // namespace sipg
