#include <sipg/sipg.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string smoother = "point";
  std::string delta0 = "2";
  std::string gamma = "inf";
  std::string alpha = "opt";
  int cells = 64;
  std::string bc = "dirichlet";
  std::string out = "-";
};

class Output {
public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw sipg::InvalidArgument("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

double single_value(const std::string& text, const char* name) {
  const auto v = sipg::parse_grid(text);
  if (v.size() != 1) throw sipg::InvalidArgument(std::string("--") + name + " expects a single value");
  return v.front();
}

void add_common(CLI::App* cmd, Common& c, bool with_alpha, bool with_bc) {
  cmd->add_option("--smoother", c.smoother, "cell or point")->check(CLI::IsMember({"cell", "point"}));
  cmd->add_option("--delta0", c.delta0, "penalty: value, list a,b,c or range start:step:stop");
  cmd->add_option("--gamma", c.gamma, "reaction scaling: value, inf or list");
  if (with_alpha) cmd->add_option("--alpha", c.alpha, "relaxation: value, opt or range");
  cmd->add_option("--cells", c.cells, "mesh cell count J");
  if (with_bc) cmd->add_option("--bc", c.bc, "periodic or dirichlet")->check(CLI::IsMember({"periodic", "dirichlet"}));
  cmd->add_option("--out", c.out, "output path or - for stdout");
}

int run_spectrum(const Common& c) {
  const auto kind = sipg::parse_smoother(c.smoother);
  const double d = single_value(c.delta0, "delta0");
  const double g = single_value(c.gamma, "gamma");
  const double a = c.alpha == "opt" ? sipg::alpha_opt(kind, d, g).alpha_opt : single_value(c.alpha, "alpha");
  const sipg::ProblemConfig cfg{c.cells, d, g, sipg::BoundaryMode::Periodic};
  const auto rows = sipg::cmd_spectrum(cfg, kind, a);
  Output out(c.out);
  sipg::write_spectrum_csv(out.stream(), rows);
  return kExitOk;
}

int run_optimize(const Common& c, bool dense) {
  const auto kind = sipg::parse_smoother(c.smoother);
  const double d = single_value(c.delta0, "delta0");
  const double g = single_value(c.gamma, "gamma");
  std::optional<sipg::ProblemConfig> dcfg;
  if (dense) dcfg = sipg::ProblemConfig{c.cells, d, g, sipg::parse_boundary(c.bc)};
  const auto rep = sipg::cmd_optimize(kind, d, g, dcfg);
  Output out(c.out);
  sipg::write_optimize_report(out.stream(), rep);
  return rep.agree() ? kExitOk : kExitValidation;
}

int run_sweep(const Common& c, bool dense) {
  sipg::SweepSpec spec;
  spec.kind = sipg::parse_smoother(c.smoother);
  spec.delta0s = sipg::parse_grid(c.delta0);
  spec.gammas = sipg::parse_grid(c.gamma);
  spec.alpha_opt = c.alpha == "opt";
  if (!spec.alpha_opt) spec.alphas = sipg::parse_grid(c.alpha);
  spec.J = c.cells;
  spec.bc = sipg::parse_boundary(c.bc);
  spec.dense = dense;
  const auto rows = sipg::cmd_sweep(spec);
  Output out(c.out);
  sipg::write_sweep_csv(out.stream(), rows, dense);
  return kExitOk;
}

int run_validate(const Common& c, const std::string& perturb) {
  sipg::ValidateOptions opt;
  opt.J = c.cells;
  opt.bc = sipg::parse_boundary(c.bc);
  if (opt.J < 4 || opt.J % 2 != 0) throw sipg::InvalidArgument("--cells must be an even integer >= 4");
  if (!perturb.empty()) {
    // kind:index:amount
    const auto p1 = perturb.find(':'), p2 = perturb.rfind(':');
    if (p1 == std::string::npos || p1 == p2) throw sipg::InvalidArgument("--perturb expects kind:index:amount");
    opt.perturbation = sipg::CoefficientPerturbation{sipg::parse_smoother(perturb.substr(0, p1)),
                                                     std::stoi(perturb.substr(p1 + 1, p2 - p1 - 1)),
                                                     sipg::parse_real(perturb.substr(p2 + 1))};
  }
  const auto rep = sipg::cmd_validate(opt);
  Output out(c.out);
  sipg::write_validation_report(out.stream(), rep);
  for (const auto& chk : rep.checks)
    if (chk.skipped) std::cerr << "warning: " << chk.invariant << ": " << chk.note << '\n';
  return rep.all_passed() ? kExitOk : kExitValidation;
}

int run_crossover(const Common& c) {
  const double g = single_value(c.gamma, "gamma");
  const auto br = sipg::crossover_check(g, 1e-3);
  Output out(c.out);
  out.stream() << "gamma,delta_lo,delta_hi\n"
               << sipg::format_real(g) << ',' << sipg::format_real(br.lo) << ',' << sipg::format_real(br.hi)
               << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-level SIPG solver analysis: LFA, optimal relaxation and dense validation"};
  app.require_subcommand(1);

  Common spectrum_c, optimize_c, sweep_c, validate_c, crossover_c;
  bool optimize_dense = false, sweep_dense = false;
  std::string perturb;

  auto* spectrum = app.add_subcommand("spectrum", "closed-form two-grid eigenvalues per frequency");
  add_common(spectrum, spectrum_c, true, false);
  auto* optimize = app.add_subcommand("optimize", "closed-form vs numeric optimal relaxation");
  add_common(optimize, optimize_c, false, true);
  optimize->add_flag("--dense", optimize_dense, "also report dense rho(E) on the --cells/--bc mesh");
  auto* sweep = app.add_subcommand("sweep", "spectral radius over a (delta0, gamma, alpha) grid");
  add_common(sweep, sweep_c, true, true);
  sweep->add_flag("--dense", sweep_dense, "add the dense-matrix rho column");
  auto* validate = app.add_subcommand("validate", "run the invariant suite");
  add_common(validate, validate_c, false, true);
  validate->add_option("--perturb", perturb, "test hook: kind:index:amount added to one RD coefficient")
      ->group("");
  auto* crossover = app.add_subcommand("crossover", "bracket the point/cell crossover penalty");
  add_common(crossover, crossover_c, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*spectrum) return run_spectrum(spectrum_c);
    if (*optimize) return run_optimize(optimize_c, optimize_dense);
    if (*sweep) return run_sweep(sweep_c, sweep_dense);
    if (*validate) return run_validate(validate_c, perturb);
    if (*crossover) return run_crossover(crossover_c);
  } catch (const sipg::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sipg::NonUnimodalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}
