#pragma once

#include "assembly.hpp"
#include "config.hpp"
#include "rd_coefficients.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace sipg {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

struct Frequency {
  int k;
  int J;
  double ck;

  double theta() const { return 2.0 * std::numbers::pi * k / J; }
};

inline Frequency make_frequency(int k, int J) {
  if (J < 4 || J % 2 != 0) throw InvalidArgument("J must be an even integer >= 4");
  if (k < 1 || k > J / 2)
    throw InvalidArgument("frequency index k=" + std::to_string(k) + " outside 1..J/2");
  return {k, J, std::cos(4.0 * std::numbers::pi * k / J)};
}

struct SymbolSet {
  CMatrix Ahat;   // 4x4
  CMatrix Dhat;   // 4x4
  CMatrix Rhat;   // 2x4
  CMatrix Phat;   // 4x2
  CMatrix A0hat;  // 2x2
  CMatrix Ehat;   // 4x4
};

struct EigenPair {
  double lambda_plus;
  double lambda_minus;
};

namespace detail {

// Position of a DoF in units of h: u_c^+ sits at c - 1 and u_c^- at c (cells 1-based).
inline double dof_position(int cell, int type) { return type == kPlus ? cell - 1.0 : cell; }

// Moore-Penrose inverse of a Hermitian matrix.
inline CMatrix hermitian_pinv(const CMatrix& m, double rel_tol = 1e-12) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  const auto& ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  Eigen::VectorXcd inv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    inv(i) = std::abs(ev(i)) > rel_tol * scale ? 1.0 / ev(i) : 0.0;
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

// 4x4 symbol of a stencil on the mode pair (theta - pi, theta) for both DoF
// types, ordered [(theta-pi,+), (theta-pi,-), (theta,+), (theta,-)], taken over
// the coarse cell made of fine cells 1 and 2.
inline CMatrix stencil_symbol(const std::vector<StencilEntry>& st, double theta, double scale) {
  const double pi = std::numbers::pi;
  const double freq[4] = {theta - pi, theta - pi, theta, theta};
  const int type[4] = {kPlus, kMinus, kPlus, kMinus};
  CMatrix S = CMatrix::Zero(4, 4);
  const cdouble I(0.0, 1.0);
  for (int cell = 1; cell <= 2; ++cell)
    for (const auto& e : st)
      for (int a = 0; a < 4; ++a) {
        if (type[a] != e.row_type) continue;
        for (int b = 0; b < 4; ++b) {
          if (type[b] != e.col_type) continue;
          const double xr = dof_position(cell, e.row_type);
          const double xc = dof_position(cell + e.cell_offset, e.col_type);
          S(a, b) += 0.5 * scale * e.value * std::exp(I * (freq[b] * xc - freq[a] * xr));
        }
      }
  return S;
}

inline CMatrix restriction_symbol(double theta) {
  const double pi = std::numbers::pi;
  const double freq[4] = {theta - pi, theta - pi, theta, theta};
  const int type[4] = {kPlus, kMinus, kPlus, kMinus};
  struct Tap {
    int cell, type;
    double w;
  };
  // Coarse U^+ sits at 0 and U^- at 2 (units of h).
  const std::vector<Tap> rows[2] = {{{1, kPlus, 0.5}, {1, kMinus, 0.25}, {2, kPlus, 0.25}},
                                    {{1, kMinus, 0.25}, {2, kPlus, 0.25}, {2, kMinus, 0.5}}};
  const double coarse_pos[2] = {0.0, 2.0};
  const cdouble I(0.0, 1.0);
  CMatrix R = CMatrix::Zero(2, 4);
  for (int T = 0; T < 2; ++T)
    for (const auto& t : rows[T])
      for (int b = 0; b < 4; ++b) {
        if (type[b] != t.type) continue;
        const double xc = dof_position(t.cell, t.type);
        R(T, b) += t.w * std::exp(I * (freq[b] * xc - theta * coarse_pos[T])) / std::sqrt(2.0);
      }
  return R;
}

}  // namespace detail

// Fourier symbols at angle theta = 2 pi k / J (continuous theta admitted).
inline SymbolSet symbol_blocks_theta(double theta, const ProblemConfig& cfg, SmootherKind kind,
                                     double alpha) {
  cfg.validate();
  const double scale = 1.0 / (cfg.h() * cfg.h());
  SymbolSet s;
  s.Ahat = detail::stencil_symbol(operator_stencil(cfg.delta0, cfg.inv_gamma()), theta, scale);
  s.Dhat = detail::stencil_symbol(smoother_stencil(kind, cfg.delta0, cfg.inv_gamma()), theta, scale);
  s.Rhat = detail::restriction_symbol(theta);
  s.Phat = 2.0 * s.Rhat.adjoint();
  s.A0hat = s.Rhat * s.Ahat * s.Phat;
  const CMatrix I = CMatrix::Identity(4, 4);
  const CMatrix coarse = I - s.Phat * detail::hermitian_pinv(s.A0hat) * s.Rhat * s.Ahat;
  const CMatrix smooth = I - alpha * s.Dhat.partialPivLu().solve(s.Ahat);
  s.Ehat = coarse * smooth;
  return s;
}

inline SymbolSet symbol_blocks(const Frequency& freq, const ProblemConfig& cfg, SmootherKind kind,
                               double alpha) {
  return symbol_blocks_theta(freq.theta(), cfg, kind, alpha);
}

inline std::vector<cdouble> eigenvalues(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  std::vector<cdouble> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

// The two largest-modulus eigenvalues of Ehat; the other two vanish.
inline std::pair<cdouble, cdouble> symbol_nonzero_eigenvalues(const CMatrix& Ehat) {
  auto ev = eigenvalues(Ehat);
  std::sort(ev.begin(), ev.end(), [](cdouble x, cdouble y) { return std::abs(x) > std::abs(y); });
  return {ev[0], ev[1]};
}

// Real square root of a radicand that must be nonnegative up to roundoff.
inline double checked_sqrt(double rad, double scale, const char* where) {
  if (rad < 0.0) {
    if (rad < -1e-12 * std::max(1.0, scale))
      throw InvalidArgument(std::string(where) + ": negative radicand " + std::to_string(rad));
    return 0.0;
  }
  return std::sqrt(rad);
}

namespace closed_form {

inline EigenPair poisson_point(double c, double d, double alpha) {
  const double den = (2.0 * d - 1.0) * (4.0 * d - c - 1.0);
  if (std::abs(4.0 * d - c - 1.0) < 1e-14) throw InvalidArgument("poisson_point: vanishing denominator");
  const double num = -1.0 + 8.0 * d - 10.0 * d * d - (2.0 * d * d - 4.0 * d + 1.0) * c;
  // (c+1)(1-d)(c-f-)(c-f+) expanded to a real polynomial in c.
  const double n1 = horner(d, {1.0, -6.0, 8.0, -8.0, 4.0});
  const double n0 = horner(d, {0.0, -1.0, 8.0, -8.0, 4.0});
  const double quad = (1.0 - d) * c * c + n1 * c + n0;
  const double rad = (c + 1.0) * quad;
  const double scale = (1.0 + std::abs(c)) * (std::abs((1.0 - d) * c * c) + std::abs(n1 * c) + std::abs(n0));
  const double s = checked_sqrt(rad, scale, "poisson_point");
  return {1.0 + alpha * (num + s) / den, 1.0 + alpha * (num - s) / den};
}

inline EigenPair poisson_cell(double c, double d, double alpha) {
  if (std::abs(4.0 * d - c - 1.0) < 1e-14) throw InvalidArgument("poisson_cell: vanishing denominator");
  const double den = d * (4.0 * d - c - 1.0);
  const double num = 2.0 + d * (c - 4.0 * d - 1.0);
  // (d^2-2)(c-f-)(c-f+) expanded to a real polynomial in c.
  const double q2 = d * d - 2.0;
  const double q1 = -2.0 * d * (4.0 * d * d - 7.0 * d + 2.0);
  const double q0 = horner(d, {6.0, -28.0, 65.0, -56.0, 16.0});
  const double rad = q2 * c * c + q1 * c + q0;
  const double scale = std::abs(q2 * c * c) + std::abs(q1 * c) + std::abs(q0);
  const double s = checked_sqrt(rad, scale, "poisson_cell");
  return {1.0 + alpha * (num + s) / den, 1.0 + alpha * (num - s) / den};
}

// Evaluates (n0 + n1 x + n2 x^2 +- sqrt(sum r_i x^i)) / (d0 + d1 x + d2 x^2).
template <std::size_t N>
inline EigenPair rd_quotient(const std::array<double, N>& c, std::size_t rad_first, std::size_t rad_last,
                             double x, const char* where) {
  const double num = c[1] + x * (c[2] + x * c[3]);
  double rad = 0.0, scale = 0.0, xp = 1.0;
  for (std::size_t i = rad_first; i <= rad_last; ++i, xp *= x) {
    rad += c[i] * xp;
    scale += std::abs(c[i] * xp);
  }
  const std::size_t dd = rad_last + 1;
  const double den = c[dd] + x * (c[dd + 1] + x * c[dd + 2]);
  const double den_scale = std::abs(c[dd]) + std::abs(c[dd + 1] * x) + std::abs(c[dd + 2] * x * x);
  if (std::abs(den) <= 1e-14 * den_scale)
    throw InvalidArgument(std::string(where) + ": vanishing denominator");
  const double s = checked_sqrt(rad, scale, where);
  const double lp = (num + s) / den, lm = (num - s) / den;
  return {std::max(lp, lm), std::min(lp, lm)};
}

inline EigenPair rd_point(const std::array<double, 13>& c, double x) {
  return rd_quotient(c, 4, 9, x, "rd_point");
}

inline EigenPair rd_cell(const std::array<double, 12>& c, double x) {
  return rd_quotient(c, 4, 8, x, "rd_cell");
}

}  // namespace closed_form

// Closed-form nonzero eigenvalues of Ehat as functions of c_k = cos(4 pi k / J)
// for fixed (delta0, gamma, alpha); reaction-diffusion coefficients are computed
// once, in the basis c_k - 1.
class ClosedFormSpectrum {
public:
  ClosedFormSpectrum(const ProblemConfig& cfg, SmootherKind kind, double alpha)
      : kind_(kind), delta0_(cfg.delta0), alpha_(alpha), poisson_(cfg.poisson()) {
    if (!(cfg.delta0 >= 1.0) || std::isinf(cfg.delta0)) throw InvalidArgument("delta0 must be >= 1");
    if (std::isnan(cfg.gamma) || cfg.gamma <= 0.0) throw InvalidArgument("gamma must be positive or inf");
    if (!poisson_) {
      if (kind == SmootherKind::Point) point_ = rd_point_coefficients_shifted(alpha, cfg.delta0, cfg.gamma);
      else cell_ = rd_cell_coefficients_shifted(alpha, cfg.delta0, cfg.gamma);
    }
  }

  EigenPair operator()(double ck) const {
    if (!(ck >= -1.0 - 1e-15 && ck <= 1.0 + 1e-15)) throw InvalidArgument("c_k outside [-1, 1]");
    ck = std::clamp(ck, -1.0, 1.0);
    EigenPair e;
    if (poisson_) {
      e = kind_ == SmootherKind::Point ? closed_form::poisson_point(ck, delta0_, alpha_)
                                       : closed_form::poisson_cell(ck, delta0_, alpha_);
    } else {
      const double y = ck - 1.0;
      e = kind_ == SmootherKind::Point ? closed_form::rd_point(point_, y) : closed_form::rd_cell(cell_, y);
    }
    if (e.lambda_plus < e.lambda_minus) std::swap(e.lambda_plus, e.lambda_minus);
    return e;
  }

private:
  SmootherKind kind_;
  double delta0_, alpha_;
  bool poisson_;
  std::array<double, 13> point_{};
  std::array<double, 12> cell_{};
};

inline EigenPair eigs_closed_form(double ck, const ProblemConfig& cfg, SmootherKind kind, double alpha) {
  return ClosedFormSpectrum(cfg, kind, alpha)(ck);
}

enum class LfaMode { IntegerK, DenseGrid };

inline constexpr int kDenseGridPoints = 1001;

inline double dense_grid_c(int i) { return -1.0 + 2.0 * i / (kDenseGridPoints - 1); }

// max over frequencies of max(|lambda+|, |lambda-|). IntegerK uses k = 1..J/2 of
// cfg.J; DenseGrid samples c_k on 1001 equispaced points of [-1, 1].
inline double lfa_spectral_radius(const ProblemConfig& cfg, SmootherKind kind, double alpha,
                                  LfaMode mode = LfaMode::IntegerK) {
  const ClosedFormSpectrum spectrum(cfg, kind, alpha);
  double rho = 0.0;
  auto visit = [&](double c) {
    const auto e = spectrum(c);
    rho = std::max({rho, std::abs(e.lambda_plus), std::abs(e.lambda_minus)});
  };
  if (mode == LfaMode::DenseGrid) {
    for (int i = 0; i < kDenseGridPoints; ++i) visit(dense_grid_c(i));
  } else {
    for (int k = 1; k <= cfg.J / 2; ++k) visit(make_frequency(k, cfg.J).ck);
  }
  return rho;
}

struct BlockDiagonalizationResidual {
  double off_block;   // max |(Q* C Q)_ij| outside the 2x2 diagonal blocks
  double unitarity;   // max |(Q* Q - I)_ij|
};

// Unitary matrix of grid functions: block column n carries frequency
// n/2 + 1 - J/2 (n even, 0-based) or (n+1)/2 (n odd), one column per DoF type.
inline CMatrix grid_function_basis(int J) {
  const double h = 1.0 / J;
  const cdouble I(0.0, 1.0);
  CMatrix Q = CMatrix::Zero(2 * J, 2 * J);
  for (int n = 0; n < J; ++n) {
    const double f = (n % 2 == 0) ? n / 2 + 1 - J / 2 : (n + 1) / 2;
    for (int m = 0; m < J; ++m) {
      Q(2 * m, 2 * n) = std::sqrt(h) * std::exp(I * (2.0 * std::numbers::pi * f * m * h));
      Q(2 * m + 1, 2 * n + 1) = std::sqrt(h) * std::exp(I * (2.0 * std::numbers::pi * f * (m + 1) * h));
    }
  }
  return Q;
}

inline BlockDiagonalizationResidual verify_block_diagonalization(const Matrix& C) {
  if (C.rows() != C.cols() || C.rows() % 2 != 0) throw InvalidArgument("C must be 2J x 2J");
  const int J = static_cast<int>(C.rows() / 2);
  const CMatrix Q = grid_function_basis(J);
  const CMatrix M = Q.adjoint() * C.cast<cdouble>() * Q;
  BlockDiagonalizationResidual res{0.0, 0.0};
  for (int i = 0; i < 2 * J; ++i)
    for (int j = 0; j < 2 * J; ++j)
      if (i / 2 != j / 2) res.off_block = std::max(res.off_block, std::abs(M(i, j)));
  res.unitarity = (Q.adjoint() * Q - CMatrix::Identity(2 * J, 2 * J)).cwiseAbs().maxCoeff();
  return res;
}

// Builds the block-circulant C with block (p, (p + offset) mod J) = block, then verifies.
inline BlockDiagonalizationResidual verify_block_diagonalization(
    const std::vector<std::pair<int, Eigen::Matrix2d>>& blocks, int J) {
  if (J < 2 || J % 2 != 0 || J > 64) throw InvalidArgument("J must be even and <= 64");
  Matrix C = Matrix::Zero(2 * J, 2 * J);
  for (int p = 0; p < J; ++p)
    for (const auto& [offset, blk] : blocks) {
      const int q = ((p + offset) % J + J) % J;
      C.block<2, 2>(2 * p, 2 * q) += blk;
    }
  return verify_block_diagonalization(C);
}

}  // namespace sipg
