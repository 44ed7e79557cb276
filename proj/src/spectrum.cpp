#include "syncnet/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "syncnet/numerics.hpp"

namespace syncnet {

LaplacianSpectrum spectrum_from_values(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  LaplacianSpectrum s;
  s.values = std::move(values);
  if (s.values.size() >= 2) s.lambda2 = s.values[1];
  if (!s.values.empty()) s.lambdaN = s.values.back();
  s.ratio = s.lambdaN > 0.0 ? s.lambda2 / s.lambdaN : 0.0;
  return s;
}

LaplacianSpectrum spectrum(const Graph& g) { return spectrum_from_values(sym_eigenvalues(laplacian(g))); }

double multiplicity_tolerance(const LaplacianSpectrum& s) { return 1e-6 * std::max(1.0, s.lambdaN); }

int LaplacianSpectrum::multiplicity(double value) const {
  const double tol = multiplicity_tolerance(*this);
  return static_cast<int>(std::count_if(values.begin(), values.end(),
                                        [&](double v) { return std::abs(v - value) <= tol; }));
}

}  // namespace syncnet
