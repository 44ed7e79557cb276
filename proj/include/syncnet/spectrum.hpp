#pragma once

#include <vector>

#include "syncnet/graph.hpp"

namespace syncnet {

/// Sorted Laplacian eigenvalues with the two synchronizability indices.
struct LaplacianSpectrum {
  std::vector<double> values;  // ascending
  double lambda2 = 0.0;
  double lambdaN = 0.0;
  double ratio = 0.0;  // λ₂/λ_N, 0 when λ_N = 0

  std::size_t size() const noexcept { return values.size(); }
  /// Number of eigenvalues within 1e-6·max(1, λ_N) of value.
  int multiplicity(double value) const;
};

LaplacianSpectrum spectrum(const Graph& g);
LaplacianSpectrum spectrum_from_values(std::vector<double> values);

/// Clustering tolerance used for multiplicity counts.
double multiplicity_tolerance(const LaplacianSpectrum& s);

}  // namespace syncnet
