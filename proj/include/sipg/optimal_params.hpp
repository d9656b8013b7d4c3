#pragma once

#include "golden_section.hpp"
#include "lfa.hpp"
#include "thresholds.hpp"
#include "two_level.hpp"


#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sipg {

struct RelaxationResult {
  double alpha_opt;
  double rho_predicted;
  std::string branch;
  std::vector<std::pair<std::string, double>> thresholds_used;
};

namespace alpha_formulas {

inline double poisson_point(double d) { return (2 * d - 1) * (2 * d - 1) / (6 * d * d - 6 * d + 1); }
inline double poisson_cell_low(double d) { return d * (2 * d - 1) / (2 * d * d - 1); }
inline double poisson_cell_mid(double d) {
  return 2 * d * d * (2 * d - 1) /
         (d * std::abs(2 * d * d - 4 * d + 1) + 2 * d * d * d + 4 * d * d - 5 * d + 1);
}
inline double poisson_cell_high(double d) { return 2 * d * d / (2 * d * d + d - 1); }

inline double rd_point_1(double d, double g) {
  return 8 * (3 * g + 1) * (2 * d * g + 1) * (3 * (2 * d - 1) * g + 1) /
         ((12 * d * g + 5) * (12 * (2 * d - 1) * g * g + 8 * d * g + 1));
}
inline double rd_point_2(double d, double g) {
  const double t = 3 * (2 * d - 1) * g + 1;
  return 8 * (3 * g + 1) * t * t /
         ((6 * g + 1) * (9 * g * (4 * (6 * (d - 1) * d + 1) * g + 8 * d - 5) + 5));
}
inline double rd_point_3(double d, double g) {
  return 4 * (3 * g + 1) * (2 * d * g + 1) * (3 * (2 * d - 1) * g + 1) /
         (g * (108 * d * (2 * d - 1) * g * g + 6 * (d * (6 * d + 19) - 8) * g + 19 * d + 9) + 2);
}

inline double rd_cell_1(double d, double g) {
  return 2 * (2 * d * g + 1) * (6 * d * g + 1) * (3 * (2 * d - 1) * g + 1) /
         (3 * g * (24 * d * (2 * d * d - 1) * g * g + 2 * (18 * d * d + d - 6) * g + 9 * d - 1) + 2);
}
inline double rd_cell_2(double d, double g) {
  return (2 * d * g + 1) * (6 * d * g + 1) / (g * (6 * (4 * d - 1) * g + 5 * d + 6) + 1);
}
inline double rd_cell_3(double d, double g) {
  return (3 * g + 1) * (2 * d * g + 1) * (6 * d * g + 1) * (3 * (2 * d - 1) * g + 1) /
         (3 * g *
              (18 * d * (8 * (d - 1) * d + 1) * g * g * g + 6 * (4 * d * (2 * d * (d + 1) - 3) + 1) * g * g +
               (d * (31 * d - 6) - 8) * g + 6 * d - 2) +
          1);
}
inline double rd_cell_4(double d, double g) {
  return 2 * (3 * g + 1) * (2 * d * g + 1) * (6 * d * g + 1) /
         ((3 * (d + 1) * g + 2) * (12 * (2 * d - 1) * g * g + 8 * d * g + 1));
}
inline double rd_cell_5(double d, double g) {
  return 2 * (3 * g + 1) * (2 * d * g + 1) * (6 * d * g + 1) /
         (g * (36 * d * (2 * d + 1) * g * g + 6 * (d * (4 * d + 9) + 4) * g + 13 * d + 15) + 2);
}

}  // namespace alpha_formulas

inline double predicted_rho(SmootherKind kind, double delta0, double gamma, double alpha) {
  ProblemConfig cfg{64, delta0, gamma, BoundaryMode::Periodic};
  return lfa_spectral_radius(cfg, kind, alpha, LfaMode::DenseGrid);
}

inline RelaxationResult alpha_opt_poisson(SmootherKind kind, double delta0) {
  if (!(delta0 >= 1.0) || std::isinf(delta0)) throw InvalidArgument("delta0 must be >= 1");
  RelaxationResult r;
  if (kind == SmootherKind::Point) {
    r.alpha_opt = alpha_formulas::poisson_point(delta0);
    r.branch = "point";
  } else {
    const double tp = Thresholds::tilde_plus();
    r.thresholds_used = {{"delta_tilde_plus", tp}, {"delta_tilde_minus", 1.5}};
    if (delta0 <= tp) {
      r.alpha_opt = alpha_formulas::poisson_cell_low(delta0);
      r.branch = "cell-low";
    } else if (delta0 <= 1.5) {
      r.alpha_opt = alpha_formulas::poisson_cell_mid(delta0);
      r.branch = "cell-mid";
    } else {
      r.alpha_opt = alpha_formulas::poisson_cell_high(delta0);
      r.branch = "cell-high";
    }
  }
  r.rho_predicted = predicted_rho(kind, delta0, kInf, r.alpha_opt);
  return r;
}

// Branch selection of the reaction-diffusion tables; a point exactly on a
// threshold goes to the first-listed branch.
inline RelaxationResult alpha_opt_rd(SmootherKind kind, double delta0, double gamma) {
  if (!(delta0 >= 1.0) || std::isinf(delta0)) throw InvalidArgument("delta0 must be >= 1");
  if (std::isnan(gamma) || gamma <= 0.0) throw InvalidArgument("gamma must be positive");
  if (std::isinf(gamma)) return alpha_opt_poisson(kind, delta0);
  const double d = delta0, g = gamma;
  RelaxationResult r;
  if (kind == SmootherKind::Point) {
    const double gc = Thresholds::gamma_c_point(d);
    r.thresholds_used.emplace_back("gamma_c", gc);
    if (g <= gc) {
      const double dm = Thresholds::delta_c_minus_of(g);
      r.thresholds_used.emplace_back("delta_c_minus", dm);
      if (d <= dm) {
        r.alpha_opt = alpha_formulas::rd_point_1(d, g);
        r.branch = "point-1";
      } else {
        r.alpha_opt = alpha_formulas::rd_point_2(d, g);
        r.branch = "point-2";
      }
    } else {
      const double dp = Thresholds::delta_c_plus_of(g);
      r.thresholds_used.emplace_back("delta_c_plus", dp);
      if (d <= dp) {
        r.alpha_opt = alpha_formulas::rd_point_2(d, g);
        r.branch = "point-2";
      } else {
        r.alpha_opt = alpha_formulas::rd_point_3(d, g);
        r.branch = "point-3";
      }
    }
  } else {
    const Thresholds t = thresholds(g);
    r.thresholds_used = {{"gamma_c_cell", t.gamma_c_cell}, {"delta_c1", t.delta_c1},
                         {"delta_c2", t.delta_c2},         {"delta_c3", t.delta_c3},
                         {"delta_c4", t.delta_c4}};
    int branch = 0;
    if (g >= t.gamma_c_cell) {
      if ((d >= 1.0 && d <= t.delta_c1) || d >= t.delta_c4) branch = 1;
      else if (d <= t.delta_c2) branch = 2;
      else if (d <= t.delta_c3) branch = 4;
      else branch = 5;
    } else {
      if (d <= t.delta_c2 || d >= t.delta_c4) branch = 1;
      else if (d <= t.delta_c1) branch = 3;
      else if (d <= t.delta_c3) branch = 4;
      else branch = 5;
    }
    switch (branch) {
      case 1: r.alpha_opt = alpha_formulas::rd_cell_1(d, g); break;
      case 2: r.alpha_opt = alpha_formulas::rd_cell_2(d, g); break;
      case 3: r.alpha_opt = alpha_formulas::rd_cell_3(d, g); break;
      case 4: r.alpha_opt = alpha_formulas::rd_cell_4(d, g); break;
      default: r.alpha_opt = alpha_formulas::rd_cell_5(d, g); break;
    }
    r.branch = "cell-" + std::to_string(branch);
  }
  r.rho_predicted = predicted_rho(kind, d, g, r.alpha_opt);
  return r;
}

// Closed-form optimum for any gamma (inf routes to the Poisson formulas).
inline RelaxationResult alpha_opt(SmootherKind kind, double delta0, double gamma) {
  return std::isinf(gamma) ? alpha_opt_poisson(kind, delta0) : alpha_opt_rd(kind, delta0, gamma);
}

class NonUnimodalError : public std::runtime_error {
public:
  NonUnimodalError(const std::string& what, std::vector<std::pair<double, double>> minima)
      : std::runtime_error(what), minima_(std::move(minima)) {}
  const std::vector<std::pair<double, double>>& minima() const { return minima_; }

private:
  std::vector<std::pair<double, double>> minima_;
};

enum class Objective { LfaDenseGrid, LfaIntegerK, DenseMatrix };

struct NumericOptions {
  double alpha_lo = 0.01;
  double alpha_hi = 4.0;
  double grid_step = 1e-3;
  double xtol = 1e-7;
  Objective objective = Objective::LfaDenseGrid;
};

// Spectral radius of the dense two-grid matrix; periodic Poisson drops the
// constant mode, on which E acts as the identity.
inline double dense_rho(const ProblemConfig& cfg, SmootherKind kind, double alpha) {
  TwoLevelComponents tl(cfg, kind, alpha);
  return spectral_radius_dense(iteration_matrix_on_range(tl));
}

// Minimizes rho(alpha) on [lo, hi] by a uniform grid scan followed by
// golden-section refinement around the best grid point.
template <class F>
RelaxationResult scan_minimize(F&& rho, const NumericOptions& opt) {
  if (!(opt.alpha_lo > 0.0 && opt.alpha_lo < opt.alpha_hi && opt.alpha_hi <= 4.0))
    throw InvalidArgument("alpha bracket must satisfy 0 < lo < hi <= 4");
  if (!(opt.grid_step > 0.0)) throw InvalidArgument("grid step must be positive");
  const int n = static_cast<int>(std::floor((opt.alpha_hi - opt.alpha_lo) / opt.grid_step + 1e-9)) + 1;
  std::vector<double> xs(n), fs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = opt.alpha_lo + i * opt.grid_step;
    fs[i] = rho(xs[i]);
  }
  // Local minima of the sampled curve, plateaus collapsed to their first point.
  std::vector<int> minima;
  for (int i = 0; i < n;) {
    int j = i;
    while (j + 1 < n && std::abs(fs[j + 1] - fs[i]) <= 1e-12) ++j;
    const bool left_ok = i == 0 || fs[i - 1] > fs[i];
    const bool right_ok = j == n - 1 || fs[j + 1] > fs[j];
    if (left_ok && right_ok) minima.push_back(i);
    i = j + 1;
  }
  int best = minima.front();
  for (int m : minima)
    if (fs[m] < fs[best]) best = m;
  std::vector<std::pair<double, double>> separated;
  for (int m : minima) {
    if (m == best) continue;
    const int lo = std::min(m, best), hi = std::max(m, best);
    double peak = -std::numeric_limits<double>::infinity();
    for (int i = lo; i <= hi; ++i) peak = std::max(peak, fs[i]);
    if (peak - std::max(fs[m], fs[best]) > 1e-9) separated.emplace_back(xs[m], fs[m]);
  }
  if (!separated.empty()) {
    separated.emplace_back(xs[best], fs[best]);
    std::sort(separated.begin(), separated.end());
    std::ostringstream os;
    os << "non-unimodal rho(alpha): " << separated.size() << " separated minima at alpha =";
    for (const auto& [a, f] : separated) os << ' ' << a << " (rho " << f << ')';
    throw NonUnimodalError(os.str(), separated);
  }
  const double lo = std::max(opt.alpha_lo, xs[best] - opt.grid_step);
  const double hi = std::min(opt.alpha_hi, xs[best] + opt.grid_step);
  const auto m = golden_section_minimize(rho, lo, hi, opt.xtol);
  RelaxationResult r;
  r.alpha_opt = m.fx <= fs[best] ? m.x : xs[best];
  r.rho_predicted = std::min(m.fx, fs[best]);
  r.branch = "numeric";
  return r;
}

inline RelaxationResult alpha_opt_numeric(const ProblemConfig& cfg, SmootherKind kind,
                                          const NumericOptions& opt = {}) {
  cfg.validate();
  auto rho = [&](double a) {
    switch (opt.objective) {
      case Objective::LfaIntegerK: return lfa_spectral_radius(cfg, kind, a, LfaMode::IntegerK);
      case Objective::DenseMatrix: return dense_rho(cfg, kind, a);
      default: return lfa_spectral_radius(cfg, kind, a, LfaMode::DenseGrid);
    }
  };
  return scan_minimize(rho, opt);
}

struct CrossoverBracket {
  double lo;
  double hi;
};

inline double rho_at_optimum(SmootherKind kind, double delta0, double gamma) {
  return alpha_opt(kind, delta0, gamma).rho_predicted;
}

// delta0 interval of width <= width where rho_cell(alpha_opt) - rho_point(alpha_opt)
// changes sign, searched in [1, 10].
inline CrossoverBracket crossover_check(double gamma, double width = 1e-6) {
  auto diff = [gamma](double d) {
    return rho_at_optimum(SmootherKind::Cell, d, gamma) - rho_at_optimum(SmootherKind::Point, d, gamma);
  };
  const double step = 1e-2;
  double a = 1.0 + step, fa = diff(a);
  for (double b = a + step; b <= 10.0 + 1e-12; b += step) {
    const double fb = diff(b);
    if (fa != 0.0 && fb != 0.0 && (fa < 0.0) != (fb < 0.0)) {
      double lo = a, hi = b, flo = fa;
      while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        const double fm = diff(mid);
        if (fm == 0.0) return {mid, mid};
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      return {lo, hi};
    }
    a = b;
    fa = fb;
  }
  throw InvalidArgument("no sign change of rho_cell - rho_point for delta0 in [1, 10]");
}

}  // namespace sipg
