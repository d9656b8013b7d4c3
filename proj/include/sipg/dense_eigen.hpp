#pragma once

#include "operator_matrix.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sipg {

class EigenConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Diagonal similarity scaling by powers of the radix so rows and columns have
// comparable norms.
inline void balance(Matrix& a) {
  const double radix = std::numeric_limits<double>::radix;
  const double sqrdx = radix * radix;
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (j != i) {
          c += std::abs(a(j, i));
          r += std::abs(a(i, j));
        }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix, f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

// Reduction to upper Hessenberg form by stabilized elementary similarity transforms.
inline void hessenberg(Matrix& a) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index m = 1; m + 1 < n; ++m) {
    double x = 0.0;
    Eigen::Index piv = m;
    for (Eigen::Index j = m; j < n; ++j)
      if (std::abs(a(j, m - 1)) > std::abs(x)) {
        x = a(j, m - 1);
        piv = j;
      }
    if (piv != m) {
      a.row(piv).swap(a.row(m));
      a.col(piv).swap(a.col(m));
    }
    if (x == 0.0) continue;
    for (Eigen::Index i = m + 1; i < n; ++i) {
      double y = a(i, m - 1);
      if (y == 0.0) continue;
      y /= x;
      a(i, m - 1) = 0.0;
      for (Eigen::Index j = m; j < n; ++j) a(i, j) -= y * a(m, j);
      for (Eigen::Index j = 0; j < n; ++j) a(j, m) += y * a(j, i);
    }
  }
}

inline double sign_of(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Francis double-shift QR on an upper Hessenberg matrix (destroyed on exit).
inline std::vector<std::complex<double>> hessenberg_qr(Matrix& a, int max_its) {
  const double eps = std::numeric_limits<double>::epsilon();
  const int n = static_cast<int>(a.rows());
  std::vector<std::complex<double>> w(n);
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0, l = 0;
    do {
      for (l = nn; l > 0; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) <= eps * s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        w[nn--] = x + t;
        continue;
      }
      double y = a(nn - 1, nn - 1);
      double ww = a(nn, nn - 1) * a(nn - 1, nn);
      if (l == nn - 1) {
        const double p = 0.5 * (y - x);
        const double q = p * p + ww;
        double z = std::sqrt(std::abs(q));
        x += t;
        if (q >= 0.0) {
          z = p + sign_of(z, p);
          w[nn - 1] = w[nn] = x + z;
          if (z != 0.0) w[nn] = x - ww / z;
        } else {
          w[nn] = {x + p, -z};
          w[nn - 1] = std::conj(w[nn]);
        }
        nn -= 2;
        continue;
      }
      if (its == max_its)
        throw EigenConvergenceError("shifted QR did not converge after " +
                                    std::to_string(max_its) + " iterations at index " +
                                    std::to_string(nn));
      if (its > 0 && its % 10 == 0) {
        // Exceptional shift.
        t += x;
        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
        const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
        y = x = 0.75 * s;
        ww = -0.4375 * s * s;
      }
      ++its;
      int m = nn - 2;
      double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
      for (; m >= l; --m) {
        z = a(m, m);
        r = x - z;
        double s = y - z;
        p = (r * s - ww) / a(m + 1, m) + a(m, m + 1);
        q = a(m + 1, m + 1) - z - r - s;
        r = a(m + 2, m + 1);
        s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
        const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
        if (u <= eps * v) break;
      }
      for (int i = m; i < nn - 1; ++i) {
        a(i + 2, i) = 0.0;
        if (i != m) a(i + 2, i - 1) = 0.0;
      }
      for (int k = m; k < nn; ++k) {
        if (k != m) {
          p = a(k, k - 1);
          q = a(k + 1, k - 1);
          r = (k + 1 != nn) ? a(k + 2, k - 1) : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x != 0.0) {
            p /= x;
            q /= x;
            r /= x;
          }
        }
        const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
        if (s == 0.0) continue;
        if (k == m) {
          if (l != m) a(k, k - 1) = -a(k, k - 1);
        } else {
          a(k, k - 1) = -s * x;
        }
        p += s;
        x = p / s;
        y = q / s;
        z = r / s;
        q /= p;
        r /= p;
        for (int j = k; j <= nn; ++j) {
          p = a(k, j) + q * a(k + 1, j);
          if (k + 1 != nn) {
            p += r * a(k + 2, j);
            a(k + 2, j) -= p * z;
          }
          a(k + 1, j) -= p * y;
          a(k, j) -= p * x;
        }
        const int mmin = nn < k + 3 ? nn : k + 3;
        for (int i = l; i <= mmin; ++i) {
          p = x * a(i, k) + y * a(i, k + 1);
          if (k + 1 != nn) {
            p += z * a(i, k + 2);
            a(i, k + 2) -= p * r;
          }
          a(i, k + 1) -= p * q;
          a(i, k) -= p;
        }
      }
    } while (l + 1 < nn);
  }
  return w;
}

}  // namespace detail

inline constexpr Eigen::Index kMaxDenseEigenSize = 1024;

// All eigenvalues of a general real square matrix via balancing, Hessenberg
// reduction and double-shift QR.
inline std::vector<std::complex<double>> eigenvalues_dense(const Matrix& mx, int max_its = 100) {
  if (mx.rows() != mx.cols()) throw std::invalid_argument("eigenvalues_dense: matrix not square");
  if (mx.rows() > kMaxDenseEigenSize)
    throw std::invalid_argument("eigenvalues_dense: matrix larger than 1024");
  if (!mx.allFinite()) throw std::invalid_argument("eigenvalues_dense: non-finite entries");
  if (mx.rows() == 0) return {};
  Matrix a = mx;
  detail::balance(a);
  detail::hessenberg(a);
  return detail::hessenberg_qr(a, max_its);
}

inline double spectral_radius_dense(const Matrix& mx) {
  double rho = 0.0;
  for (const auto& z : eigenvalues_dense(mx)) rho = std::max(rho, std::abs(z));
  return rho;
}

inline double spectral_radius_dense(const OperatorMatrix& mx) { return spectral_radius_dense(mx.m); }

}  // namespace sipg
