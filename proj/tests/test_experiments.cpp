#include "test_support.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sipg;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SIPG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sipg_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Formatting, RealRoundTrip) {
  EXPECT_EQ(format_real(kInf), "inf");
  EXPECT_EQ(format_real(0.5), "0.5");
  const double x = 9.0 / 13.0;
  EXPECT_EQ(parse_real(format_real(x)), x);
  EXPECT_EQ(parse_real("inf"), kInf);
  EXPECT_THROW(parse_real("1.5x"), InvalidArgument);
  EXPECT_THROW(parse_real(""), InvalidArgument);
}

TEST(Formatting, GridParsing) {
  EXPECT_EQ(parse_grid("2"), std::vector<double>{2.0});
  EXPECT_EQ(parse_grid("1,1.5,inf"), (std::vector<double>{1.0, 1.5, kInf}));
  const auto r = parse_grid("1:0.25:2");
  ASSERT_EQ(r.size(), 5u);
  EXPECT_DOUBLE_EQ(r.back(), 2.0);
  EXPECT_EQ(parse_grid("0.5:0.01:1.2").size(), 71u);
  EXPECT_TRUE(parse_grid("2:0.1:1").empty());
  EXPECT_TRUE(parse_grid("").empty());
  EXPECT_THROW(parse_grid("1:0:2"), InvalidArgument);
  EXPECT_THROW(parse_grid("1:2"), InvalidArgument);
  EXPECT_THROW(parse_grid("1,,2"), InvalidArgument);
}

TEST(ParallelMap, PreservesOrder) {
  const auto v = parallel_map<int>(100, [](std::size_t i) { return static_cast<int>(i * i); });
  for (int i = 0; i < 100; ++i) EXPECT_EQ(v[i], i * i);
  EXPECT_TRUE(parallel_map<int>(0, [](std::size_t) { return 0; }).empty());
}

TEST(Spectrum, RowsPerFrequency) {
  const auto rows = cmd_spectrum({16, 2.0, kInf, BoundaryMode::Periodic}, SmootherKind::Cell, 0.8);
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].k, static_cast<int>(i) + 1);
    EXPECT_GE(rows[i].lambda_plus, rows[i].lambda_minus);
  }
}

TEST(Spectrum, CurvesTouchAtQuarterFrequency) {
  const auto rows = cmd_spectrum({64, 1.0, kInf, BoundaryMode::Periodic}, SmootherKind::Point, 1.0);
  EXPECT_NEAR(rows[15].ck, -1.0, 1e-15);
  EXPECT_NEAR(rows[15].lambda_plus, rows[15].lambda_minus, 1e-10);
}

TEST(Spectrum, AlphaZeroIsIdentity) {
  for (const auto& r : cmd_spectrum({16, 1.5, 0.5, BoundaryMode::Periodic}, SmootherKind::Point, 0.0)) {
    EXPECT_NEAR(r.lambda_plus, 1.0, 1e-12);
    EXPECT_NEAR(r.lambda_minus, 1.0, 1e-12);
  }
}

TEST(Spectrum, CsvHeader) {
  std::ostringstream os;
  write_spectrum_csv(os, cmd_spectrum({8, 2.0, kInf, BoundaryMode::Periodic}, SmootherKind::Point, 1.0));
  const std::string csv = os.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,c_k,lambda_plus,lambda_minus");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(Optimize, PoissonPointAgrees) {
  const auto rep = cmd_optimize(SmootherKind::Point, 2.0, kInf);
  EXPECT_NEAR(rep.alpha_formula, 9.0 / 13.0, 1e-15);
  EXPECT_TRUE(rep.agree());
  EXPECT_EQ(rep.tolerance, 1e-6);
  EXPECT_EQ(rep.branch, "point");
}

TEST(Optimize, ReactionCellAgreesWithinLooseTolerance) {
  const auto rep = cmd_optimize(SmootherKind::Cell, 2.0, 0.5);
  EXPECT_EQ(rep.tolerance, 2e-3);
  EXPECT_TRUE(rep.agree()) << rep.alpha_formula << " vs " << rep.alpha_numeric;
}

TEST(Optimize, DenseColumnAndReport) {
  const auto rep = cmd_optimize(SmootherKind::Cell, 1.5, kInf, ProblemConfig{32, 0.0, 0.0, BoundaryMode::Dirichlet});
  ASSERT_TRUE(rep.rho_dense.has_value());
  EXPECT_NEAR(*rep.rho_dense, rep.rho_formula, 0.05);
  std::ostringstream os;
  write_optimize_report(os, rep);
  EXPECT_NE(os.str().find("branch,cell-mid"), std::string::npos);
  EXPECT_NE(os.str().find("agreement,ok"), std::string::npos);
  EXPECT_NE(os.str().find("rho_dense,"), std::string::npos);
}

TEST(Sweep, RowOrderDeltaGammaAlpha) {
  SweepSpec s;
  s.delta0s = {1.5, 2.0};
  s.gammas = {kInf, 1.0};
  s.alphas = {0.6, 0.8, 1.0};
  s.J = 16;
  const auto rows = cmd_sweep(s);
  ASSERT_EQ(rows.size(), 12u);
  std::size_t i = 0;
  for (double d : s.delta0s)
    for (double g : s.gammas)
      for (double a : s.alphas) {
        EXPECT_EQ(rows[i].delta0, d);
        EXPECT_EQ(rows[i].gamma, g);
        EXPECT_EQ(rows[i].alpha, a);
        EXPECT_FALSE(rows[i].rho_dense.has_value());
        ++i;
      }
}

TEST(Sweep, DeterministicCsv) {
  SweepSpec s;
  s.delta0s = parse_grid("1.2:0.4:2");
  s.gammas = {kInf, 0.25};
  s.alphas = parse_grid("0.5:0.25:1.5");
  s.J = 16;
  s.dense = true;
  std::ostringstream a, b;
  write_sweep_csv(a, cmd_sweep(s), true);
  write_sweep_csv(b, cmd_sweep(s), true);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "delta0,gamma,alpha,rho_lfa,rho_dense");
}

TEST(Sweep, RejectsEmptyGrids) {
  SweepSpec s;
  s.delta0s = {2.0};
  s.gammas = {kInf};
  EXPECT_THROW(cmd_sweep(s), InvalidArgument);
  s.alpha_opt = true;
  EXPECT_NO_THROW(cmd_sweep(s));
  s.gammas.clear();
  EXPECT_THROW(cmd_sweep(s), InvalidArgument);
  s.gammas = {-1.0};
  EXPECT_THROW(cmd_sweep(s), InvalidArgument);
}

TEST(Sweep, UniqueInteriorMinimumNearOptimum) {
  SweepSpec s;
  s.delta0s = {2.0};
  s.gammas = {kInf};
  s.alphas = parse_grid("0.5:0.01:1.2");
  s.kind = SmootherKind::Point;
  const auto rows = cmd_sweep(s);
  std::size_t arg = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].rho_lfa < rows[arg].rho_lfa) arg = i;
  EXPECT_GT(arg, 0u);
  EXPECT_LT(arg, rows.size() - 1);
  EXPECT_NEAR(rows[arg].alpha, 9.0 / 13.0, 0.01);
  int local_minima = 0;
  for (std::size_t i = 1; i + 1 < rows.size(); ++i)
    if (rows[i].rho_lfa < rows[i - 1].rho_lfa && rows[i].rho_lfa < rows[i + 1].rho_lfa) ++local_minima;
  EXPECT_EQ(local_minima, 1);
}

TEST(Validate, AllChecksPass) {
  const auto rep = cmd_validate();
  std::ostringstream os;
  write_validation_report(os, rep);
  EXPECT_TRUE(rep.all_passed()) << os.str();
  EXPECT_GE(rep.checks.size(), 9u);
}

TEST(Validate, CoefficientPerturbationIsCaught) {
  ValidateOptions opt;
  opt.J = 16;
  opt.perturbation = CoefficientPerturbation{SmootherKind::Point, 3, 1e-3};
  const auto rep = cmd_validate(opt);
  EXPECT_FALSE(rep.all_passed());
}

TEST(Validate, QuarterFrequencyCheckSkippedWhenUndefined) {
  ValidateOptions opt;
  opt.J = 6;
  opt.bc = BoundaryMode::Periodic;
  const auto rep = cmd_validate(opt);
  const auto it = std::find_if(rep.checks.begin(), rep.checks.end(),
                               [](const CheckResult& c) { return c.invariant == "spectrum touch at k=J/4"; });
  ASSERT_NE(it, rep.checks.end());
  EXPECT_TRUE(it->skipped);
  EXPECT_NE(it->note.find("warning"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("spectrum --delta0 2 --cells 16"), 0);
  EXPECT_EQ(run_cli("optimize --smoother point --delta0 2"), 0);
  EXPECT_EQ(run_cli("spectrum --delta0 0.5"), 2);
  EXPECT_EQ(run_cli("spectrum --cells 7"), 2);
  EXPECT_EQ(run_cli("spectrum --smoother jacobi"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("sweep --delta0 2 --alpha 2:0.1:1"), 2);
  EXPECT_EQ(run_cli("validate --cells 16 --perturb point:3:1e-3"), 1);
}

TEST(Cli, SweepOutputIsByteIdentical) {
  const auto a = temp_path("a.csv"), b = temp_path("b.csv");
  const std::string args = "sweep --smoother cell --delta0 1.2:0.3:2.1 --gamma inf,0.5 --alpha 0.6:0.2:1.2 --cells 16 --dense --out ";
  ASSERT_EQ(run_cli(args + a.string()), 0);
  ASSERT_EQ(run_cli(args + b.string()), 0);
  const auto sa = slurp(a);
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, slurp(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}
