#pragma once

#include <string_view>
#include <vector>

#include "syncnet/dynamics.hpp"
#include "syncnet/matrix.hpp"
#include "syncnet/spectrum.hpp"

namespace syncnet {

// Regions are parametrized by σ = c·λ ≥ 0 and the variational matrix is F - σH.

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class RegionClass { Empty, SingleBounded, UnboundedTail, DisconnectedUnion };
std::string_view to_string(RegionClass c) noexcept;

struct GridSample {
  double sigma = 0.0;
  bool hurwitz = false;
  double abscissa = 0.0;  // NaN if root finding failed at this point
};

struct RegionSet {
  double sigma_max = 0.0;
  /// Sorted, disjoint, closed. Endpoints are the stable side of each refined boundary.
  std::vector<Interval> intervals;
  bool stable_at_max = false;
  double boundary_tol = 1e-6;
  RegionClass classification = RegionClass::Empty;
  /// Hurwitz at 10·sigma_max and 100·sigma_max; only meaningful when stable_at_max.
  bool tail_spot_checks = false;
  std::vector<GridSample> samples;

  bool contains(double sigma) const;
};

struct RegionScanOptions {
  double sigma_max = 10.0;
  double grid_step = 0.0;  // 0 selects 1e-3·sigma_max
  double boundary_tol = 1e-6;
  bool with_abscissa = true;
};

Matrix variational_matrix(const Matrix& f, const Matrix& h, double sigma);

/// S ∩ [0, sigma_max] for S = {σ ≥ 0 : F - σH Hurwitz}. Boundaries are found on the
/// grid and refined by bisection; stable pieces narrower than one grid step can be missed.
RegionSet region_scan(const Matrix& f, const Matrix& h, const RegionScanOptions& opts);
RegionSet region_scan(const Matrix& f, const Matrix& h, double sigma_max, double grid_step = 0.0,
                      double boundary_tol = 1e-6);

RegionClass classify(const RegionSet& region);

struct Placement {
  double lambda = 0.0;
  double sigma = 0.0;
  bool in_region = false;
};

struct CriterionReport {
  double c = 0.0;
  std::vector<Placement> placements;  // k = 2..N
  bool verdict = false;
};

/// cλ_k ∈ S for k = 2..N. Throws Errc::ScanTooShort when c·λ_N > sigma_max.
CriterionReport check_criterion(const LaplacianSpectrum& spec, double c, const RegionSet& region);

struct CouplingSet {
  std::vector<Interval> intervals;  // admissible c; lo == 0 means the interval is open at 0
  double c_limit = 0.0;             // sigma_max / λ_N: nothing beyond was scanned
  bool may_extend = false;          // last interval touches c_limit and the region is stable there
};

/// {c > 0 : c·λ_k ∈ S for all k ≥ 2}, restricted to c·λ_N ≤ sigma_max.
/// Throws Errc::Disconnected when λ₂ is zero.
CouplingSet admissible_couplings(const LaplacianSpectrum& spec, const RegionSet& region);

struct MsfOptions {
  double horizon = 1000.0;
  double step = 1e-2;
  int renorm_interval = 10;
  double blowup_guard = 1e6;
};

struct MsfEstimate {
  double sigma = 0.0;
  double l_max = 0.0;
  double horizon = 0.0;
  int renorm_interval = 0;
};

/// Largest Lyapunov exponent of ω̇ = [Df(s(t)) - σH]ω along ṡ = f(s), by RK4 with
/// periodic renormalization. Throws Errc::BlowUp if ‖s‖ exceeds the guard.
MsfEstimate msf_lyapunov(const NodeDynamics& dynamics, const Matrix& h, double sigma,
                         std::span<const double> s0, const MsfOptions& opts = {});

}  // namespace syncnet
