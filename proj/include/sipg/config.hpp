#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sipg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class BoundaryMode { Periodic, Dirichlet };
enum class SmootherKind { Cell, Point };

class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class SingularBlock : public std::runtime_error {
public:
  SingularBlock(const std::string& what, int block)
      : std::runtime_error(what), block_(block) {}
  int block() const noexcept { return block_; }

private:
  int block_;
};

// Mesh size J, penalty delta0, reaction scaling gamma = eps/h^2 (kInf for Poisson).
struct ProblemConfig {
  int J = 64;
  double delta0 = 2.0;
  double gamma = kInf;
  BoundaryMode bc = BoundaryMode::Periodic;

  double h() const { return 1.0 / J; }
  bool poisson() const { return std::isinf(gamma); }
  // 1/gamma, exactly zero for Poisson.
  double inv_gamma() const { return poisson() ? 0.0 : 1.0 / gamma; }

  void validate() const {
    if (J < 4 || J % 2 != 0)
      throw InvalidArgument("J must be an even integer >= 4, got " + std::to_string(J));
    if (!(delta0 >= 1.0) || std::isinf(delta0))
      throw InvalidArgument("delta0 must be a finite real >= 1, got " + std::to_string(delta0));
    if (std::isnan(gamma) || gamma <= 0.0)
      throw InvalidArgument("gamma must be positive or inf, got " + std::to_string(gamma));
  }
};

inline std::string to_string(SmootherKind k) { return k == SmootherKind::Cell ? "cell" : "point"; }
inline std::string to_string(BoundaryMode b) {
  return b == BoundaryMode::Periodic ? "periodic" : "dirichlet";
}

inline SmootherKind parse_smoother(std::string_view s) {
  if (s == "cell") return SmootherKind::Cell;
  if (s == "point") return SmootherKind::Point;
  throw InvalidArgument("unknown smoother '" + std::string(s) + "'");
}

inline BoundaryMode parse_boundary(std::string_view s) {
  if (s == "periodic") return BoundaryMode::Periodic;
  if (s == "dirichlet") return BoundaryMode::Dirichlet;
  throw InvalidArgument("unknown boundary mode '" + std::string(s) + "'");
}

}  // namespace sipg
