#pragma once

#include <cmath>
#include <utility>

namespace sipg {

struct ScalarMinimum {
  double x;
  double fx;
  int evaluations;
};

// Golden-section search for a minimum of f on [lo, hi] until hi - lo < xtol.
template <class F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi, double xtol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  int evals = 2;
  while (b - a >= xtol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  const double x = 0.5 * (a + b);
  return {x, f(x), evals + 1};
}

}  // namespace sipg
