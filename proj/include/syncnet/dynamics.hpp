#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>

#include "syncnet/matrix.hpp"

namespace syncnet {

/// Autonomous node vector field ẋ = f(x) on ℝⁿ.
struct NodeDynamics {
  std::string name;
  std::size_t dim = 0;
  std::function<void(std::span<const double> x, std::span<double> dx)> field;
  /// Optional; central differences are used when empty.
  std::function<Matrix(std::span<const double> x)> jacobian;

  Matrix jacobian_at(std::span<const double> x) const;
};

/// Smooth Chua circuit with cubic nonlinearity. Field names carry a _c suffix
/// where the circuit's customary symbol collides with coupling-design symbols.
struct ChuaParams {
  double kappa = 1.0;
  double alpha_c = -0.1;
  double beta_c = -1.0;
  double gamma_c = 1.0;
  double a_c = 1.0;
  double b_c = -25.0;

  /// Throws Errc::InvalidArgument on non-finite values or kappa == 0.
  void validate() const;
};

std::array<double, 3> chua_field(const ChuaParams& p, std::span<const double> x);
Matrix chua_jacobian(const ChuaParams& p, std::span<const double> x);
NodeDynamics make_chua(const ChuaParams& p);
/// ẋ = F·x
NodeDynamics make_linear(const Matrix& f);

}  // namespace syncnet
