#include "syncnet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "syncnet/error.hpp"

namespace syncnet {

Matrix NodeDynamics::jacobian_at(std::span<const double> x) const {
  if (jacobian) return jacobian(x);
  Matrix j(dim, dim);
  std::vector<double> xp(x.begin(), x.end()), fp(dim), fm(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[c]));
    xp[c] = x[c] + h;
    field(xp, fp);
    xp[c] = x[c] - h;
    field(xp, fm);
    xp[c] = x[c];
    for (std::size_t r = 0; r < dim; ++r) j(r, c) = (fp[r] - fm[r]) / (2.0 * h);
  }
  return j;
}

void ChuaParams::validate() const {
  for (double v : {kappa, alpha_c, beta_c, gamma_c, a_c, b_c})
    if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "Chua parameters must be finite");
  if (kappa == 0.0) throw Error(Errc::InvalidArgument, "Chua kappa must be nonzero");
}

std::array<double, 3> chua_field(const ChuaParams& p, std::span<const double> x) {
  const double ka = p.kappa * p.alpha_c;
  return {
      -ka * x[0] + ka * x[1] - ka * (p.a_c * x[0] * x[0] * x[0] + p.b_c * x[0]),
      p.kappa * (x[0] - x[1] + x[2]),
      -p.kappa * p.beta_c * x[1] - p.kappa * p.gamma_c * x[2],
  };
}

Matrix chua_jacobian(const ChuaParams& p, std::span<const double> x) {
  const double ka = p.kappa * p.alpha_c;
  return Matrix{
      {-ka - ka * (3.0 * p.a_c * x[0] * x[0] + p.b_c), ka, 0.0},
      {p.kappa, -p.kappa, p.kappa},
      {0.0, -p.kappa * p.beta_c, -p.kappa * p.gamma_c},
  };
}

NodeDynamics make_chua(const ChuaParams& p) {
  p.validate();
  NodeDynamics d;
  d.name = "chua";
  d.dim = 3;
  d.field = [p](std::span<const double> x, std::span<double> dx) {
    const auto f = chua_field(p, x);
    std::copy(f.begin(), f.end(), dx.begin());
  };
  d.jacobian = [p](std::span<const double> x) { return chua_jacobian(p, x); };
  return d;
}

NodeDynamics make_linear(const Matrix& f) {
  if (!f.square()) throw Error(Errc::DimensionMismatch, "linear dynamics needs a square matrix");
  NodeDynamics d;
  d.name = "linear";
  d.dim = f.rows();
  d.field = [f](std::span<const double> x, std::span<double> dx) {
    for (std::size_t i = 0; i < f.rows(); ++i) dx[i] = dot(f.row_span(i), x);
  };
  d.jacobian = [f](std::span<const double>) { return f; };
  return d;
}

}  // namespace syncnet
