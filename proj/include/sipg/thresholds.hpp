#pragma once

#include "config.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <utility>

namespace sipg {

namespace thresholds_detail {

inline double dc1(double g);
inline double dc2(double g);

}  // namespace thresholds_detail

// Regime thresholds of the optimal relaxation parameters. gamma-dependent
// fields are +inf when gamma is infinite.
struct Thresholds {
  // Poisson cell breakpoints and the point/cell crossover.
  double delta_tilde_plus;
  double delta_tilde_minus;
  double delta_c_crossover;
  // Reaction-diffusion, evaluated at gamma.
  double gamma;
  double delta_c_plus;
  double delta_c_minus;
  double gamma_c_cell;
  double delta_c1, delta_c2, delta_c3, delta_c4;
  double xi;

  static double gamma_c_point(double delta0) {
    return 1.0 / (3.0 * (std::sqrt(4.0 * (delta0 - 1.0) * delta0 + 5.0) + 3.0 - 2.0 * delta0));
  }

  static double tilde_plus() {
    const double r = std::sqrt(33.0);
    return (8.0 + std::cbrt(152.0 - 24.0 * r) + 2.0 * std::cbrt(19.0 + 3.0 * r)) / 12.0;
  }

  static double crossover() {
    const double r = std::sqrt(33.0);
    return 1.0 + std::cbrt(54.0 - 6.0 * r) / 6.0 + std::cbrt(0.25 + r / 36.0);
  }

  static double xi_of(double g) {
    const double inner =
        3.0 * (12.0 * g * (27.0 * g * (8.0 * g * (g * (6.0 * g * (33.0 * g + 46.0) + 155.0) + 44.0) + 51.0) + 89.0) + 25.0);
    return g * std::cbrt(3.0 * std::sqrt(inner) - 2.0 * (3.0 * g + 1.0) * (12.0 * g * (57.0 * g + 20.0) + 13.0));
  }

  static double delta_c_plus_of(double g) {
    const double root = std::sqrt(
        (3.0 * g + 1.0) *
        (3.0 * g * (12.0 * g * (3.0 * g * (3.0 * g * (3.0 * g + 7.0) + 20.0) + 25.0) + 53.0) + 10.0));
    return (-5.0 + 9.0 * g * (6.0 * g * g + 8.0 * g + 1.0) + root) / (6.0 * g * (12.0 * g + 5.0));
  }

  static double delta_c_minus_of(double g) {
    const double root = std::sqrt(4.0 * g * (2.0 * g + 1.0) * (3.0 * g * (6.0 * g + 7.0) + 1.0) + 1.0);
    return (1.0 + 2.0 * g * (6.0 * g - 11.0) - root) / (8.0 * g * (6.0 * g - 1.0));
  }

  static double delta_c1_of(double g) { return thresholds_detail::dc1(g); }
  static double delta_c2_of(double g) { return thresholds_detail::dc2(g); }
  static double delta_c3_of(double g) { return 2.0 * g + 2.0; }
  static double delta_c4_of(double g) { return 3.0 * (6.0 * g * g + 4.0 * g + 1.0); }

  // Root of delta_c1(gamma) = delta_c2(gamma) in [0.1, 0.3].
  static double gamma_c_cell_value() {
    static const double value = [] {
      auto f = [](double g) { return dc1_minus_dc2(g); };
      std::uintmax_t it = 200;
      const auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-15; };
      const auto br = boost::math::tools::toms748_solve(f, 0.1, 0.3, tol, it);
      return 0.5 * (br.first + br.second);
    }();
    return value;
  }

private:
  static double dc1_minus_dc2(double g) { return thresholds_detail::dc1(g) - thresholds_detail::dc2(g); }
};

namespace thresholds_detail {

inline double dc1(double g) {
  const double x = Thresholds::xi_of(g);
  return -(4.0 * g * (1.0 - 6.0 * g) + x + g * g * (12.0 * g * (12.0 * g + 5.0) + 1.0) / x) / (36.0 * g * g);
}

inline double dc2(double g) {
  const double root = std::sqrt(4.0 * g * (3.0 * g * (4.0 * g * (27.0 * g + 35.0) + 65.0) + 37.0) + 9.0);
  return (-3.0 + 36.0 * g * g + 2.0 * g + root) / (16.0 * g * (3.0 * g + 1.0));
}

}  // namespace thresholds_detail

inline Thresholds thresholds(double gamma) {
  if (std::isnan(gamma) || gamma <= 0.0) throw InvalidArgument("gamma must be positive or inf");
  Thresholds t{};
  t.delta_tilde_plus = Thresholds::tilde_plus();
  t.delta_tilde_minus = 1.5;
  t.delta_c_crossover = Thresholds::crossover();
  t.gamma = gamma;
  t.gamma_c_cell = Thresholds::gamma_c_cell_value();
  if (std::isinf(gamma)) {
    t.delta_c_plus = t.delta_c_minus = t.delta_c1 = t.delta_c2 = t.delta_c3 = t.delta_c4 = t.xi = kInf;
    return t;
  }
  t.delta_c_plus = Thresholds::delta_c_plus_of(gamma);
  t.delta_c_minus = Thresholds::delta_c_minus_of(gamma);
  t.delta_c1 = Thresholds::delta_c1_of(gamma);
  t.delta_c2 = Thresholds::delta_c2_of(gamma);
  t.delta_c3 = Thresholds::delta_c3_of(gamma);
  t.delta_c4 = Thresholds::delta_c4_of(gamma);
  t.xi = Thresholds::xi_of(gamma);
  return t;
}

}  // namespace sipg
