#include "syncnet/sync_region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "syncnet/error.hpp"
#include "syncnet/numerics.hpp"

namespace syncnet {

std::string_view to_string(RegionClass c) noexcept {
  switch (c) {
    case RegionClass::Empty: return "Empty";
    case RegionClass::SingleBounded: return "SingleBounded";
    case RegionClass::UnboundedTail: return "UnboundedTail";
    case RegionClass::DisconnectedUnion: return "DisconnectedUnion";
  }
  return "Unknown";
}

Matrix variational_matrix(const Matrix& f, const Matrix& h, double sigma) { return f - sigma * h; }

bool RegionSet::contains(double sigma) const {
  return std::any_of(intervals.begin(), intervals.end(), [&](const Interval& i) { return i.contains(sigma); });
}

namespace {

// Returns the stable-side end of [stable, unstable] once they are within tol.
double refine_boundary(const Matrix& f, const Matrix& h, double stable, double unstable, double tol) {
  while (std::abs(unstable - stable) > tol) {
    const double mid = 0.5 * (stable + unstable);
    if (is_hurwitz(variational_matrix(f, h, mid))) stable = mid;
    else unstable = mid;
  }
  return stable;
}

}  // namespace

RegionSet region_scan(const Matrix& f, const Matrix& h, const RegionScanOptions& opts) {
  if (!f.square() || !h.square() || f.rows() != h.rows()) {
    throw Error(Errc::DimensionMismatch, "region_scan needs square F and H of equal size");
  }
  if (!(opts.sigma_max > 0.0)) throw Error(Errc::InvalidArgument, "sigma_max must be positive");
  const double step = opts.grid_step > 0.0 ? opts.grid_step : 1e-3 * opts.sigma_max;
  if (!(opts.boundary_tol > 0.0)) throw Error(Errc::InvalidArgument, "boundary_tol must be positive");

  RegionSet region;
  region.sigma_max = opts.sigma_max;
  region.boundary_tol = opts.boundary_tol;

  const auto count = static_cast<std::size_t>(std::ceil(opts.sigma_max / step - 1e-9));
  region.samples.reserve(count + 1);
  for (std::size_t i = 0; i <= count; ++i) {
    const double sigma = std::min(static_cast<double>(i) * step, opts.sigma_max);
    const Matrix m = variational_matrix(f, h, sigma);
    GridSample s{sigma, is_hurwitz(m), std::numeric_limits<double>::quiet_NaN()};
    if (opts.with_abscissa) {
      try {
        s.abscissa = spectral_abscissa(m);
      } catch (const Error&) {
      }
    }
    region.samples.push_back(s);
  }

  const auto& g = region.samples;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g[i].hurwitz) continue;
    Interval iv;
    iv.lo = i == 0 ? g[0].sigma : refine_boundary(f, h, g[i].sigma, g[i - 1].sigma, opts.boundary_tol);
    std::size_t j = i;
    while (j + 1 < g.size() && g[j + 1].hurwitz) ++j;
    iv.hi = j + 1 == g.size() ? g[j].sigma : refine_boundary(f, h, g[j].sigma, g[j + 1].sigma, opts.boundary_tol);
    region.intervals.push_back(iv);
    i = j;
  }

  region.stable_at_max = g.back().hurwitz;
  if (region.stable_at_max) {
    region.tail_spot_checks = is_hurwitz(variational_matrix(f, h, 10.0 * opts.sigma_max)) &&
                              is_hurwitz(variational_matrix(f, h, 100.0 * opts.sigma_max));
  }
  region.classification = classify(region);
  return region;
}

RegionSet region_scan(const Matrix& f, const Matrix& h, double sigma_max, double grid_step, double boundary_tol) {
  return region_scan(f, h, RegionScanOptions{sigma_max, grid_step, boundary_tol, true});
}

RegionClass classify(const RegionSet& region) {
  if (region.intervals.empty()) return RegionClass::Empty;
  // A finite scan cannot prove unboundedness; stable_at_max is taken as the signal.
  if (region.stable_at_max) return RegionClass::UnboundedTail;
  if (region.intervals.size() >= 2) return RegionClass::DisconnectedUnion;
  return RegionClass::SingleBounded;
}

CriterionReport check_criterion(const LaplacianSpectrum& spec, double c, const RegionSet& region) {
  if (!(c > 0.0)) throw Error(Errc::InvalidArgument, "coupling strength must be positive");
  if (c * spec.lambdaN > region.sigma_max * (1.0 + 1e-12)) {
    throw Error(Errc::ScanTooShort, "c*lambda_N = " + std::to_string(c * spec.lambdaN) +
                                        " exceeds scanned sigma_max = " + std::to_string(region.sigma_max));
  }
  CriterionReport report;
  report.c = c;
  report.verdict = true;
  for (std::size_t k = 1; k < spec.values.size(); ++k) {
    Placement p;
    p.lambda = spec.values[k];
    p.sigma = c * p.lambda;
    p.in_region = region.contains(p.sigma);
    report.verdict = report.verdict && p.in_region;
    report.placements.push_back(p);
  }
  return report;
}

namespace {

std::vector<Interval> intersect(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].lo, b[j].lo);
    const double hi = std::min(a[i].hi, b[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) ++i;
    else ++j;
  }
  return out;
}

}  // namespace

CouplingSet admissible_couplings(const LaplacianSpectrum& spec, const RegionSet& region) {
  if (spec.values.size() < 2 || !(spec.lambda2 > multiplicity_tolerance(spec))) {
    throw Error(Errc::Disconnected, "admissible couplings need a connected graph (lambda_2 > 0)");
  }
  CouplingSet out;
  out.c_limit = region.sigma_max / spec.lambdaN;
  std::vector<Interval> acc{{0.0, out.c_limit}};
  for (std::size_t k = 1; k < spec.values.size() && !acc.empty(); ++k) {
    const double lambda = spec.values[k];
    std::vector<Interval> scaled;
    scaled.reserve(region.intervals.size());
    for (const Interval& iv : region.intervals) scaled.push_back({iv.lo / lambda, iv.hi / lambda});
    acc = intersect(acc, scaled);
  }
  // c = 0 itself is never admissible; drop degenerate pieces that collapse onto it.
  std::erase_if(acc, [](const Interval& iv) { return iv.hi <= 0.0; });
  out.intervals = std::move(acc);
  out.may_extend = region.stable_at_max && !out.intervals.empty() &&
                   out.intervals.back().hi >= out.c_limit * (1.0 - 1e-12);
  return out;
}

MsfEstimate msf_lyapunov(const NodeDynamics& dynamics, const Matrix& h, double sigma, std::span<const double> s0,
                         const MsfOptions& opts) {
  const std::size_t n = dynamics.dim;
  if (h.rows() != n || h.cols() != n || s0.size() != n) {
    throw Error(Errc::DimensionMismatch, "msf_lyapunov: H and s0 must match the node dimension");
  }
  if (!(opts.horizon > 0.0) || !(opts.step > 0.0) || opts.renorm_interval < 1) {
    throw Error(Errc::InvalidArgument, "msf_lyapunov: horizon, step and renorm_interval must be positive");
  }

  // y = [s; ω]
  auto rhs = [&](std::span<const double> y, std::span<double> dy) {
    dynamics.field(y.first(n), dy.first(n));
    const Matrix a = variational_matrix(dynamics.jacobian_at(y.first(n)), h, sigma);
    for (std::size_t i = 0; i < n; ++i) dy[n + i] = dot(a.row_span(i), y.subspan(n, n));
  };

  std::vector<double> y(2 * n), k1(2 * n), k2(2 * n), k3(2 * n), k4(2 * n), tmp(2 * n);
  std::copy(s0.begin(), s0.end(), y.begin());
  for (std::size_t i = 0; i < n; ++i) y[n + i] = 1.0 / std::sqrt(static_cast<double>(n));

  const auto steps = static_cast<long>(std::llround(opts.horizon / opts.step));
  const double dt = opts.step;
  double log_growth = 0.0;
  auto renormalize = [&] {
    const double norm = norm2(std::span<const double>(y).subspan(n, n));
    log_growth += std::log(norm);
    for (std::size_t i = 0; i < n; ++i) y[n + i] /= norm;
  };

  for (long step = 1; step <= steps; ++step) {
    rhs(y, k1);
    for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    rhs(tmp, k2);
    for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    rhs(tmp, k3);
    for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + dt * k3[i];
    rhs(tmp, k4);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += dt / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);

    if (!(norm2(std::span<const double>(y).first(n)) <= opts.blowup_guard)) {
      throw Error(Errc::BlowUp, "synchronous trajectory left the guard ball at t = " + std::to_string(step * dt));
    }
    if (step % opts.renorm_interval == 0 || step == steps) renormalize();
  }

  const double horizon = static_cast<double>(steps) * dt;
  return {sigma, log_growth / horizon, horizon, opts.renorm_interval};
}

}  // namespace syncnet
