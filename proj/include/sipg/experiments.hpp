#pragma once

#include "lfa.hpp"
#include "optimal_params.hpp"
#include "two_level.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace sipg {

// 17 significant digits; "inf" for infinities.
inline std::string format_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_real(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF") return kInf;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

// Parses "x", "x,y,z" or "start:step:stop" (inclusive) into a list of values.
inline std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(parse_real(item));
    if (parts.size() != 3) throw InvalidArgument("range must be start:step:stop, got '" + text + "'");
    const double start = parts[0], step = parts[1], stop = parts[2];
    if (!(step > 0.0) || std::isinf(step)) throw InvalidArgument("range step must be positive");
    if (stop < start) return out;
    const long n = std::lround(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InvalidArgument("empty entry in list '" + text + "'");
    out.push_back(parse_real(item));
  }
  return out;
}

// Evaluates f(0..n-1) on a small thread pool; results keep index order.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f) {
  std::vector<T> out(n);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = f(i);
    }));
  for (auto& j : jobs) j.get();
  return out;
}

struct SpectrumRow {
  int k;
  double ck;
  double lambda_plus;
  double lambda_minus;
};

inline std::vector<SpectrumRow> cmd_spectrum(const ProblemConfig& cfg, SmootherKind kind, double alpha) {
  cfg.validate();
  std::vector<SpectrumRow> rows;
  for (int k = 1; k <= cfg.J / 2; ++k) {
    const auto f = make_frequency(k, cfg.J);
    const auto e = eigs_closed_form(f.ck, cfg, kind, alpha);
    rows.push_back({k, f.ck, e.lambda_plus, e.lambda_minus});
  }
  return rows;
}

inline void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows) {
  os << "k,c_k,lambda_plus,lambda_minus\n";
  for (const auto& r : rows)
    os << r.k << ',' << format_real(r.ck) << ',' << format_real(r.lambda_plus) << ','
       << format_real(r.lambda_minus) << '\n';
}

struct OptimizeReport {
  SmootherKind kind;
  double delta0;
  double gamma;
  double alpha_formula;
  double alpha_numeric;
  double rho_formula;
  double rho_numeric;
  std::string branch;
  double tolerance;
  std::optional<double> rho_dense;
  bool agree() const { return std::abs(alpha_formula - alpha_numeric) <= tolerance; }
};

// Agreement tolerance between closed form and numeric oracle.
inline double optimum_tolerance(SmootherKind kind, double gamma) {
  if (std::isinf(gamma)) return 1e-6;
  return kind == SmootherKind::Cell ? 2e-3 : 1e-4;
}

inline OptimizeReport cmd_optimize(SmootherKind kind, double delta0, double gamma,
                                   std::optional<ProblemConfig> dense_cfg = std::nullopt) {
  const auto f = alpha_opt(kind, delta0, gamma);
  ProblemConfig cfg{64, delta0, gamma, BoundaryMode::Periodic};
  const auto n = alpha_opt_numeric(cfg, kind);
  OptimizeReport rep{kind, delta0, gamma, f.alpha_opt, n.alpha_opt, f.rho_predicted, n.rho_predicted,
                     f.branch, optimum_tolerance(kind, gamma), std::nullopt};
  if (dense_cfg) {
    ProblemConfig dc = *dense_cfg;
    dc.delta0 = delta0;
    dc.gamma = gamma;
    rep.rho_dense = dense_rho(dc, kind, f.alpha_opt);
  }
  return rep;
}

inline void write_optimize_report(std::ostream& os, const OptimizeReport& r) {
  os << "smoother," << to_string(r.kind) << '\n'
     << "delta0," << format_real(r.delta0) << '\n'
     << "gamma," << format_real(r.gamma) << '\n'
     << "branch," << r.branch << '\n'
     << "alpha_opt_formula," << format_real(r.alpha_formula) << '\n'
     << "alpha_opt_numeric," << format_real(r.alpha_numeric) << '\n'
     << "rho_formula," << format_real(r.rho_formula) << '\n'
     << "rho_numeric," << format_real(r.rho_numeric) << '\n';
  if (r.rho_dense) os << "rho_dense," << format_real(*r.rho_dense) << '\n';
  os << "tolerance," << format_real(r.tolerance) << '\n'
     << "agreement," << (r.agree() ? "ok" : "MISMATCH") << '\n';
}

struct SweepSpec {
  std::vector<double> delta0s;
  std::vector<double> gammas;
  std::vector<double> alphas;  // ignored when alpha_opt is set
  bool alpha_opt = false;
  SmootherKind kind = SmootherKind::Point;
  int J = 64;
  BoundaryMode bc = BoundaryMode::Dirichlet;
  bool dense = false;

  void validate() const {
    if (delta0s.empty()) throw InvalidArgument("delta0 grid is empty");
    if (gammas.empty()) throw InvalidArgument("gamma grid is empty");
    if (!alpha_opt && alphas.empty()) throw InvalidArgument("alpha grid is empty");
    for (double g : gammas)
      if (std::isnan(g) || g <= 0.0) throw InvalidArgument("gamma entries must be positive or inf");
    for (double d : delta0s) ProblemConfig{J, d, 1.0, bc}.validate();
  }
};

struct SweepRow {
  double delta0, gamma, alpha, rho_lfa;
  std::optional<double> rho_dense;
};

// Rows ordered delta0 outer, gamma middle, alpha inner; rho_lfa uses k = 1..J/2.
inline std::vector<SweepRow> cmd_sweep(const SweepSpec& spec) {
  spec.validate();
  struct Point {
    double d, g, a;
  };
  std::vector<Point> pts;
  for (double d : spec.delta0s)
    for (double g : spec.gammas) {
      if (spec.alpha_opt) pts.push_back({d, g, std::nan("")});
      else
        for (double a : spec.alphas) pts.push_back({d, g, a});
    }
  return parallel_map<SweepRow>(pts.size(), [&](std::size_t i) {
    auto p = pts[i];
    if (spec.alpha_opt) p.a = alpha_opt(spec.kind, p.d, p.g).alpha_opt;
    const ProblemConfig lcfg{spec.J, p.d, p.g, BoundaryMode::Periodic};
    SweepRow row{p.d, p.g, p.a, lfa_spectral_radius(lcfg, spec.kind, p.a), std::nullopt};
    if (spec.dense) row.rho_dense = dense_rho({spec.J, p.d, p.g, spec.bc}, spec.kind, p.a);
    return row;
  });
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, bool dense) {
  os << "delta0,gamma,alpha,rho_lfa" << (dense ? ",rho_dense" : "") << '\n';
  for (const auto& r : rows) {
    os << format_real(r.delta0) << ',' << format_real(r.gamma) << ',' << format_real(r.alpha) << ','
       << format_real(r.rho_lfa);
    if (dense) os << ',' << (r.rho_dense ? format_real(*r.rho_dense) : std::string("nan"));
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// Validation suite

struct CheckResult {
  std::string module;
  std::string invariant;
  std::string params;
  double observed = 0.0;
  double expected = 0.0;
  bool passed = false;
  bool skipped = false;
  std::string note;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.skipped && !c.passed) return false;
    return true;
  }
};

struct CoefficientPerturbation {
  SmootherKind kind;
  int index;      // 1-based coefficient index
  double amount;  // added to the coefficient
};

struct ValidateOptions {
  int J = 64;
  BoundaryMode bc = BoundaryMode::Dirichlet;
  std::optional<CoefficientPerturbation> perturbation;
};

// Greedy nearest-unused matching distance between two eigenvalue multisets.
inline double multiset_distance(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  if (a.size() != b.size()) return kInf;
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& z : a) {
    std::size_t best = b.size();
    double bd = kInf;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (!used[i] && std::abs(b[i] - z) < bd) {
        bd = std::abs(b[i] - z);
        best = i;
      }
    used[best] = true;
    worst = std::max(worst, bd);
  }
  return worst;
}

inline std::vector<cdouble> symbol_spectrum_union(const ProblemConfig& cfg, SmootherKind kind, double alpha) {
  std::vector<cdouble> all;
  for (int k = 1; k <= cfg.J / 2; ++k) {
    const auto ev = eigenvalues(symbol_blocks(make_frequency(k, cfg.J), cfg, kind, alpha).Ehat);
    all.insert(all.end(), ev.begin(), ev.end());
  }
  return all;
}

inline std::string describe(SmootherKind kind, double d, double g, double a = std::nan("")) {
  std::ostringstream os;
  os << "kind=" << to_string(kind) << " delta0=" << format_real(d) << " gamma=" << format_real(g);
  if (!std::isnan(a)) os << " alpha=" << format_real(a);
  return os.str();
}

// Closed-form eigenvalues with an optional coefficient perturbation, for the
// coefficient table check.
inline EigenPair perturbed_closed_form(double c, const ProblemConfig& cfg, SmootherKind kind, double alpha,
                                       const std::optional<CoefficientPerturbation>& p) {
  if (kind == SmootherKind::Point) {
    auto co = rd_point_coefficients(alpha, cfg.delta0, cfg.gamma);
    if (p && p->kind == kind && p->index >= 1 && p->index <= 12) co[p->index] += p->amount;
    return closed_form::rd_point(co, c);
  }
  auto co = rd_cell_coefficients(alpha, cfg.delta0, cfg.gamma);
  if (p && p->kind == kind && p->index >= 1 && p->index <= 11) co[p->index] += p->amount;
  return closed_form::rd_cell(co, c);
}

inline ValidationReport cmd_validate(const ValidateOptions& opt = {}) {
  ValidationReport rep;
  auto add = [&](CheckResult c) { rep.checks.push_back(std::move(c)); };
  const SmootherKind kinds[2] = {SmootherKind::Cell, SmootherKind::Point};

  // Block diagonalization of block-circulant matrices.
  {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double off = 0.0, uni = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::pair<int, Eigen::Matrix2d>> blocks;
      for (int o = -3; o <= 3; ++o) {
        Eigen::Matrix2d b;
        b << U(rng), U(rng), U(rng), U(rng);
        blocks.emplace_back(o, b);
      }
      const auto r = verify_block_diagonalization(blocks, 8);
      off = std::max(off, r.off_block);
      uni = std::max(uni, r.unitarity);
    }
    const auto ra = verify_block_diagonalization(assemble_operator({8, 2.0, kInf, BoundaryMode::Periodic}).m);
    off = std::max(off, ra.off_block / (64.0 * 64.0));
    add({"lfa", "block diagonalization off-block residual", "J=8, 20 random + SIPG", off, 0.0, off < 1e-10});
    add({"lfa", "grid-function basis unitarity", "J=8", uni, 0.0, uni < 1e-12});
  }

  // Symbol/dense equivalence on a periodic mesh.
  {
    const int J = opt.J >= 4 && opt.J % 2 == 0 && opt.J <= 32 ? opt.J : 16;
    double worst = 0.0;
    std::string where;
    for (auto kind : kinds)
      for (double d : {1.2, 2.0, 4.0})
        for (double g : {kInf, 1.0, 1.0 / 16})
          for (double a : {0.7, 1.0}) {
            const ProblemConfig cfg{J, d, g, BoundaryMode::Periodic};
            TwoLevelComponents tl(cfg, kind, a);
            const double dist = multiset_distance(eigenvalues_dense(build_iteration_matrix(tl).m),
                                                  symbol_spectrum_union(cfg, kind, a));
            if (dist >= worst) {
              worst = dist;
              where = describe(kind, d, g, a);
            }
          }
    add({"lfa", "symbol/dense eigenvalue multiset equality", "J=" + std::to_string(J) + ", worst " + where,
         worst, 0.0, worst < 1e-9});
  }

  // Closed forms vs 4x4 symbol eigenvalues, including the tabulated coefficients.
  {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> Ud(1.0, 10.0), Ul(std::log(1.0 / 32), std::log(32.0)),
        Ua(0.3, 2.0), Uc(-1.0, 1.0);
    for (auto kind : kinds) {
      double worst = 0.0;
      for (int s = 0; s < 50; ++s) {
        const double d = Ud(rng), g = std::exp(Ul(rng)), a = Ua(rng), c = Uc(rng);
        const ProblemConfig cfg{64, d, g, BoundaryMode::Periodic};
        const auto e = perturbed_closed_form(c, cfg, kind, a, opt.perturbation);
        const auto [z1, z2] = symbol_nonzero_eigenvalues(symbol_blocks_theta(std::acos(c) / 2, cfg, kind, a).Ehat);
        const double hi = std::max(z1.real(), z2.real()), lo = std::min(z1.real(), z2.real());
        const double scale = std::max({1.0, std::abs(hi), std::abs(lo)});
        worst = std::max(worst, std::max(std::abs(e.lambda_plus - hi), std::abs(e.lambda_minus - lo)) / scale);
      }
      add({"lfa", "reaction-diffusion closed form vs symbol (" + to_string(kind) + ")", "50 random samples",
           worst, 0.0, worst < 1e-8});
    }
    for (auto kind : kinds) {
      double worst = 0.0;
      for (double d : {1.0, 1.2, 1.5, 2.0, 4.0, 10.0})
        for (double c : {-1.0, -0.5, 0.0, 0.3, 0.9})
          for (double a : {0.5, 1.0}) {
            const ProblemConfig cfg{64, d, kInf, BoundaryMode::Periodic};
            const auto e = eigs_closed_form(c, cfg, kind, a);
            const auto [z1, z2] = symbol_nonzero_eigenvalues(symbol_blocks_theta(std::acos(c) / 2, cfg, kind, a).Ehat);
            worst = std::max({worst, std::abs(e.lambda_plus - std::max(z1.real(), z2.real())),
                              std::abs(e.lambda_minus - std::min(z1.real(), z2.real()))});
          }
      add({"lfa", "Poisson closed form vs symbol (" + to_string(kind) + ")", "delta0 x c_k x alpha lattice",
           worst, 0.0, worst < 1e-8});
    }
  }

  // Curves touch at k = J/4 for the point smoother at delta0 = 1.
  if (opt.J % 4 != 0) {
    add({"experiments_cli", "spectrum touch at k=J/4", "J=" + std::to_string(opt.J), 0, 0, true, true,
         "warning: k=J/4 undefined for J not divisible by 4, check skipped"});
  } else {
    const auto rows = cmd_spectrum({opt.J, 1.0, kInf, BoundaryMode::Periodic}, SmootherKind::Point, 1.0);
    const auto& r = rows[opt.J / 4 - 1];
    const double gap = std::abs(r.lambda_plus - r.lambda_minus);
    add({"experiments_cli", "spectrum touch at k=J/4", "point delta0=1 alpha=1", gap, 0.0, gap < 1e-10});
  }

  // Threshold identities.
  {
    const auto t = thresholds(1.0);
    add({"optimal_params", "delta_tilde_plus", "", t.delta_tilde_plus, 1.41964,
         std::abs(t.delta_tilde_plus - 1.41964) < 1e-5});
    add({"optimal_params", "crossover delta_c", "", t.delta_c_crossover, 2.19149,
         std::abs(t.delta_c_crossover - 2.19149) < 1e-5});
    const double gc = t.gamma_c_cell;
    const double gap = std::abs(Thresholds::delta_c1_of(gc) - Thresholds::delta_c2_of(gc));
    add({"optimal_params", "gamma_c cell root", "delta_c1 = delta_c2", gc, 0.16607,
         std::abs(gc - 0.16607) < 1e-4 && gap < 1e-4});
  }

  // Equioscillation at the Poisson optimum.
  for (auto kind : kinds) {
    double worst = 0.0;
    for (double d : {1.1, 1.3, Thresholds::tilde_plus(), 1.45, 1.5, 2.0, 4.0}) {
      const double a = alpha_opt_poisson(kind, d).alpha_opt;
      double mx = -kInf, mn = kInf;
      for (int i = 0; i < kDenseGridPoints; ++i) {
        const auto e = eigs_closed_form(dense_grid_c(i), {64, d, kInf, BoundaryMode::Periodic}, kind, a);
        mx = std::max(mx, e.lambda_plus);
        mn = std::min(mn, e.lambda_minus);
      }
      worst = std::max(worst, std::abs(mx + mn));
    }
    add({"optimal_params", "equioscillation (" + to_string(kind) + ")", "Poisson delta0 grid", worst, 0.0,
         worst < 1e-8});
  }

  // Continuity of the branch formulas at their thresholds.
  {
    namespace af = alpha_formulas;
    double worst = 0.0;
    const double tp = Thresholds::tilde_plus();
    worst = std::max(worst, std::abs(af::poisson_cell_low(tp) - af::poisson_cell_mid(tp)));
    worst = std::max(worst, std::abs(af::poisson_cell_mid(1.5) - af::poisson_cell_high(1.5)));
    for (double g : {0.5, 1.0, 4.0}) {
      const double dp = Thresholds::delta_c_plus_of(g);
      worst = std::max(worst, std::abs(af::rd_point_2(dp, g) - af::rd_point_3(dp, g)));
    }
    for (double d : {1.5, 2.0, 5.0}) {
      const double gc = Thresholds::gamma_c_point(d);
      worst = std::max(worst, std::abs(af::rd_point_1(d, gc) - af::rd_point_3(d, gc)));
    }
    for (double g : {0.5, 2.0}) {
      const auto t = thresholds(g);
      worst = std::max(worst, std::abs(af::rd_cell_1(t.delta_c1, g) - af::rd_cell_2(t.delta_c1, g)));
      worst = std::max(worst, std::abs(af::rd_cell_2(t.delta_c2, g) - af::rd_cell_4(t.delta_c2, g)));
      worst = std::max(worst, std::abs(af::rd_cell_4(t.delta_c3, g) - af::rd_cell_5(t.delta_c3, g)));
      worst = std::max(worst, std::abs(af::rd_cell_5(t.delta_c4, g) - af::rd_cell_1(t.delta_c4, g)));
    }
    for (double g : {0.05, 0.1}) {
      const auto t = thresholds(g);
      worst = std::max(worst, std::abs(af::rd_cell_1(t.delta_c2, g) - af::rd_cell_3(t.delta_c2, g)));
      worst = std::max(worst, std::abs(af::rd_cell_3(t.delta_c1, g) - af::rd_cell_4(t.delta_c1, g)));
      worst = std::max(worst, std::abs(af::rd_cell_4(t.delta_c3, g) - af::rd_cell_5(t.delta_c3, g)));
      worst = std::max(worst, std::abs(af::rd_cell_5(t.delta_c4, g) - af::rd_cell_1(t.delta_c4, g)));
    }
    add({"optimal_params", "branch continuity at thresholds", "Poisson cell, RD point at delta_c+ and gamma_c, RD cell", worst, 0.0,
         worst < 1e-6});
  }

  // Dense Dirichlet rho vs LFA at the closed-form optimum.
  {
    const int J = opt.J;
    double worst = 0.0;
    for (auto kind : kinds)
      for (double d : {1.2, 1.5, 2.0}) {
        const auto r = alpha_opt_poisson(kind, d);
        const double dense = dense_rho({J, d, kInf, opt.bc}, kind, r.alpha_opt);
        worst = std::max(worst, std::abs(dense - r.rho_predicted));
      }
    add({"two_level", "dense rho vs LFA at alpha_opt", "J=" + std::to_string(J) + " " + to_string(opt.bc), worst,
         0.0, worst < 0.05});
  }
  return rep;
}

inline void write_validation_report(std::ostream& os, const ValidationReport& rep) {
  for (const auto& c : rep.checks) {
    os << (c.skipped ? "SKIP" : c.passed ? "PASS" : "FAIL") << " [" << c.module << "] " << c.invariant;
    if (!c.params.empty()) os << " (" << c.params << ")";
    os << " observed=" << format_real(c.observed) << " expected=" << format_real(c.expected);
    if (!c.note.empty()) os << " " << c.note;
    os << '\n';
  }
  os << (rep.all_passed() ? "all checks passed" : "validation FAILED") << '\n';
}

}  // namespace sipg
