#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sipg;
using sipg_test::match_distance;

namespace {

ProblemConfig periodic(int J, double d, double g) { return {J, d, g, BoundaryMode::Periodic}; }

double theta_of(double c) { return std::acos(std::clamp(c, -1.0, 1.0)) / 2.0; }

const SmootherKind kKinds[] = {SmootherKind::Cell, SmootherKind::Point};

}  // namespace

TEST(Frequency, RangeAndCosine) {
  EXPECT_THROW(make_frequency(0, 16), InvalidArgument);
  EXPECT_THROW(make_frequency(9, 16), InvalidArgument);
  EXPECT_THROW(make_frequency(1, 7), InvalidArgument);
  EXPECT_NEAR(make_frequency(4, 16).ck, -1.0, 1e-15);
  EXPECT_NEAR(make_frequency(8, 16).ck, 1.0, 1e-15);
  EXPECT_NEAR(make_frequency(2, 16).ck, 0.0, 1e-15);
  EXPECT_NEAR(make_frequency(3, 16).theta(), 3.0 * std::numbers::pi / 8.0, 1e-15);
}

TEST(Symbols, ProlongationIsTwiceRestrictionAdjoint) {
  const auto s = symbol_blocks(make_frequency(3, 16), periodic(16, 2.0, 1.0), SmootherKind::Point, 0.8);
  EXPECT_LT((s.Phat - 2.0 * s.Rhat.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((s.A0hat - s.Rhat * s.Ahat * s.Phat).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((s.Ahat - s.Ahat.adjoint()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Symbols, TwoZeroEigenvalues) {
  for (auto kind : kKinds)
    for (double d : {1.0, 1.3, 2.0, 10.0})
      for (double g : {1.0 / 32, 1.0, 32.0, kInf})
        for (int k = 1; k <= 8; ++k) {
          const auto cfg = periodic(16, d, g);
          if (cfg.poisson() && k == 8) continue;
          auto ev = eigenvalues(symbol_blocks(make_frequency(k, 16), cfg, kind, 0.9).Ehat);
          std::sort(ev.begin(), ev.end(), [](cdouble a, cdouble b) { return std::abs(a) < std::abs(b); });
          EXPECT_LT(std::abs(ev[0]), 1e-10);
          EXPECT_LT(std::abs(ev[1]), 1e-10);
        }
}

// The constant mode lives at k = J/2; there the Poisson symbol carries
// eigenvalue 1 in place of one of the zeros.
TEST(Symbols, PoissonConstantModeConvention) {
  for (auto kind : kKinds) {
    const auto cfg = periodic(16, 2.0, kInf);
    const auto ev = eigenvalues(symbol_blocks(make_frequency(8, 16), cfg, kind, 0.8).Ehat);
    const auto e = eigs_closed_form(1.0, cfg, kind, 0.8);
    EXPECT_LT(match_distance(ev, {1.0, e.lambda_plus, e.lambda_minus, 0.0}), 1e-10);
  }
}

TEST(Symbols, DenseMultisetMatchJ16) {
  for (auto kind : kKinds)
    for (double d : {1.2, 2.0, 4.0})
      for (double g : {kInf, 1.0, 1.0 / 16})
        for (double alpha : {0.7, 1.0}) {
          const auto cfg = periodic(16, d, g);
          const Matrix E = build_iteration_matrix(TwoLevelComponents(cfg, kind, alpha)).m;
          std::vector<cdouble> sym;
          for (int k = 1; k <= 8; ++k) {
            const auto ev = eigenvalues(symbol_blocks(make_frequency(k, 16), cfg, kind, alpha).Ehat);
            sym.insert(sym.end(), ev.begin(), ev.end());
          }
          EXPECT_LT(match_distance(eigenvalues_dense(E), sym), 1e-9)
              << to_string(kind) << " d=" << d << " g=" << g << " a=" << alpha;
        }
}

TEST(ClosedForm, PoissonMatchesSymbols) {
  for (auto kind : kKinds)
    for (double d : {1.0, 1.1, 1.41964, 1.5, 2.0, 4.0, 10.0})
      for (double alpha : {0.0, 0.5, 0.9, 1.3})
        for (double c : {-1.0, -0.73, -0.2, 0.0, 0.4, 0.999}) {
          const auto cfg = periodic(16, d, kInf);
          const auto [z1, z2] = symbol_nonzero_eigenvalues(symbol_blocks_theta(theta_of(c), cfg, kind, alpha).Ehat);
          const auto e = eigs_closed_form(c, cfg, kind, alpha);
          const double scale = std::max(1.0, std::abs(e.lambda_plus));
          EXPECT_LT(match_distance({z1, z2}, {e.lambda_plus, e.lambda_minus}), 1e-8 * scale)
              << to_string(kind) << " d=" << d << " a=" << alpha << " c=" << c;
        }
}

TEST(ClosedForm, ReactionDiffusionMatchesSymbols) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> Ud(1.0, 10.0), Ul(std::log(1.0 / 32), std::log(32.0)), Ua(0.3, 2.0),
      Uc(-1.0, 1.0);
  for (auto kind : kKinds)
    for (int i = 0; i < 200; ++i) {
      const double d = Ud(rng), g = std::exp(Ul(rng)), alpha = Ua(rng), c = Uc(rng);
      const auto cfg = periodic(16, d, g);
      const auto [z1, z2] = symbol_nonzero_eigenvalues(symbol_blocks_theta(theta_of(c), cfg, kind, alpha).Ehat);
      const auto e = eigs_closed_form(c, cfg, kind, alpha);
      const double scale = std::max(std::abs(e.lambda_plus), std::abs(e.lambda_minus));
      EXPECT_LT(match_distance({z1, z2}, {e.lambda_plus, e.lambda_minus}), 1e-8 * scale)
          << to_string(kind) << " d=" << d << " g=" << g << " a=" << alpha << " c=" << c;
    }
}

TEST(ClosedForm, ReactionDiffusionAtIntervalEnds) {
  for (auto kind : kKinds)
    for (double c : {-1.0, 1.0}) {
      const auto cfg = periodic(16, 1.0, 0.25);
      const auto [z1, z2] = symbol_nonzero_eigenvalues(symbol_blocks_theta(theta_of(c), cfg, kind, 0.8).Ehat);
      const auto e = eigs_closed_form(c, cfg, kind, 0.8);
      EXPECT_LT(match_distance({z1, z2}, {e.lambda_plus, e.lambda_minus}), 1e-8);
    }
}

TEST(ClosedForm, AlphaZeroGivesUnitEigenvalues) {
  for (auto kind : kKinds)
    for (double g : {kInf, 0.5}) {
      const auto e = eigs_closed_form(0.3, periodic(16, 2.0, g), kind, 0.0);
      EXPECT_NEAR(e.lambda_plus, 1.0, 1e-12);
      EXPECT_NEAR(e.lambda_minus, 1.0, 1e-12);
      EXPECT_NEAR(lfa_spectral_radius(periodic(16, 2.0, g), kind, 0.0), 1.0, 1e-12);
    }
}

TEST(ClosedForm, LargeGammaDegeneratesToPoisson) {
  for (auto kind : kKinds)
    for (double d : {1.2, 2.0, 5.0})
      for (int i = 0; i <= 20; ++i) {
        const double c = -1.0 + 0.1 * i;
        const auto rd = eigs_closed_form(c, periodic(16, d, 1e10), kind, 0.9);
        const auto po = eigs_closed_form(c, periodic(16, d, kInf), kind, 0.9);
        EXPECT_NEAR(rd.lambda_plus, po.lambda_plus, 1e-5);
        EXPECT_NEAR(rd.lambda_minus, po.lambda_minus, 1e-5);
      }
}

TEST(ClosedForm, TabulatedAndShiftedCoefficientsAgree) {
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> Ud(1.0, 10.0), Ul(std::log(1.0 / 32), std::log(32.0)), Ua(0.3, 2.0),
      Uc(-1.0, 0.9);
  for (int i = 0; i < 200; ++i) {
    const double d = Ud(rng), g = std::exp(Ul(rng)), a = Ua(rng), c = Uc(rng);
    const auto p0 = closed_form::rd_point(rd_point_coefficients(a, d, g), c);
    const auto p1 = closed_form::rd_point(rd_point_coefficients_shifted(a, d, g), c - 1.0);
    const auto c0 = closed_form::rd_cell(rd_cell_coefficients(a, d, g), c);
    const auto c1 = closed_form::rd_cell(rd_cell_coefficients_shifted(a, d, g), c - 1.0);
    const double sp = std::max(1.0, std::abs(p0.lambda_minus)), sc = std::max(1.0, std::abs(c0.lambda_minus));
    EXPECT_NEAR(p0.lambda_plus, p1.lambda_plus, 1e-9 * sp);
    EXPECT_NEAR(p0.lambda_minus, p1.lambda_minus, 1e-9 * sp);
    EXPECT_NEAR(c0.lambda_plus, c1.lambda_plus, 1e-9 * sc);
    EXPECT_NEAR(c0.lambda_minus, c1.lambda_minus, 1e-9 * sc);
  }
}

TEST(ClosedForm, HornerAndScaledPolynomial) {
  EXPECT_EQ(horner(2.0, {1.0, 3.0, 4.0}), 1.0 + 6.0 + 16.0);
  EXPECT_EQ(gpoly(0.5, 2, {1.0, 3.0, 4.0}), horner(0.5, {1.0, 3.0, 4.0}));
  EXPECT_NEAR(gpoly(10.0, 3, {1.0, 3.0, 4.0}), 431.0 / 1000.0, 1e-15);
}

TEST(ClosedForm, RejectsOutOfRangeArguments) {
  EXPECT_THROW(eigs_closed_form(1.5, periodic(16, 2.0, kInf), SmootherKind::Point, 1.0), InvalidArgument);
  EXPECT_THROW(eigs_closed_form(0.0, periodic(16, 0.5, kInf), SmootherKind::Point, 1.0), InvalidArgument);
  EXPECT_THROW(eigs_closed_form(0.0, periodic(16, 2.0, -1.0), SmootherKind::Cell, 1.0), InvalidArgument);
}

TEST(Symbols, NonzeroEigenvaluesAreReal) {
  for (auto kind : kKinds)
    for (double d : {1.0, 1.5, 3.0, 20.0})
      for (double g : {1.0 / 16, 1.0, kInf})
        for (int k = 1; k < 32; ++k) {
          const auto [z1, z2] = symbol_nonzero_eigenvalues(
              symbol_blocks(make_frequency(k, 64), periodic(64, d, g), kind, 1.1).Ehat);
          EXPECT_LT(std::abs(z1.imag()), 1e-10);
          EXPECT_LT(std::abs(z2.imag()), 1e-10);
        }
}

TEST(SpectralRadius, IntegerKMatchesDense) {
  for (auto kind : kKinds)
    for (double d : {1.2, 2.0})
      for (double g : {kInf, 0.25})
        for (double alpha : {0.6, 0.9, 1.2}) {
          const auto cfg = periodic(16, d, g);
          EXPECT_NEAR(lfa_spectral_radius(cfg, kind, alpha), dense_rho(cfg, kind, alpha), 1e-9)
              << to_string(kind) << " d=" << d << " g=" << g << " a=" << alpha;
        }
}

TEST(SpectralRadius, DenseGridDominatesIntegerK) {
  const auto cfg = periodic(64, 1.7, kInf);
  for (double alpha : {0.5, 0.8, 1.1})
    EXPECT_GE(lfa_spectral_radius(cfg, SmootherKind::Cell, alpha, LfaMode::DenseGrid) + 1e-12,
              lfa_spectral_radius(cfg, SmootherKind::Cell, alpha, LfaMode::IntegerK));
  EXPECT_DOUBLE_EQ(dense_grid_c(0), -1.0);
  EXPECT_DOUBLE_EQ(dense_grid_c(kDenseGridPoints - 1), 1.0);
}

TEST(SpectralRadius, CellMinimumAtNinetyHundredthsForThreeHalves) {
  const auto cfg = periodic(64, 1.5, kInf);
  double best = 1e300, arg = 0.0;
  for (int i = 50; i <= 150; ++i) {
    const double a = 0.01 * i;
    const double r = lfa_spectral_radius(cfg, SmootherKind::Cell, a, LfaMode::DenseGrid);
    if (r < best) {
      best = r;
      arg = a;
    }
  }
  EXPECT_NEAR(arg, 0.9, 1e-9);
  EXPECT_NEAR(best, 0.2, 1e-9);
}

TEST(BlockDiagonalization, RandomBlockCirculant) {
  std::mt19937 rng(5);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::pair<int, Eigen::Matrix2d>> blocks;
    for (int off : {-1, 0, 1, 3}) {
      Eigen::Matrix2d b;
      b << nd(rng), nd(rng), nd(rng), nd(rng);
      blocks.emplace_back(off, b);
    }
    const auto r = verify_block_diagonalization(blocks, 8);
    EXPECT_LT(r.off_block, 1e-10);
    EXPECT_LT(r.unitarity, 1e-12);
  }
}

TEST(BlockDiagonalization, OperatorAndUnitarityAtJ64) {
  const auto cfg = periodic(64, 2.0, 1.0);
  const Matrix A = assemble_operator(cfg).m * (cfg.h() * cfg.h());
  const auto r = verify_block_diagonalization(A);
  EXPECT_LT(r.off_block, 1e-10);
  EXPECT_LT(r.unitarity, 1e-12);
}

TEST(BlockDiagonalization, RejectsBadSizes) {
  EXPECT_THROW(verify_block_diagonalization(Matrix::Zero(5, 5)), InvalidArgument);
  EXPECT_THROW(verify_block_diagonalization({}, 66), InvalidArgument);
}

TEST(CheckedSqrt, ToleratesRoundoffOnly) {
  EXPECT_EQ(checked_sqrt(4.0, 1.0, "t"), 2.0);
  EXPECT_EQ(checked_sqrt(-1e-14, 1.0, "t"), 0.0);
  EXPECT_THROW(checked_sqrt(-1e-6, 1.0, "t"), InvalidArgument);
}
