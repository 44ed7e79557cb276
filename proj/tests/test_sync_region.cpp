#include <doctest.h>

#include <cmath>
#include <random>

#include "eigen_oracle.hpp"
#include "fixtures.hpp"
#include "syncnet/dynamics.hpp"
#include "syncnet/error.hpp"
#include "syncnet/numerics.hpp"
#include "syncnet/sync_region.hpp"

using namespace syncnet;
using doctest::Approx;

namespace {

const RegionSet& two_band_region() {
  static const RegionSet r = region_scan(fixtures::chua_F(), fixtures::chua_H_two_band(), 3.0);
  return r;
}

bool brute_force_verdict(const LaplacianSpectrum& s, double c) {
  for (std::size_t k = 1; k < s.size(); ++k)
    if (!is_hurwitz(variational_matrix(fixtures::chua_F(), fixtures::chua_H_two_band(), c * s.values[k]))) return false;
  return true;
}

void check_region_invariants(const Matrix& f, const Matrix& h, const RegionSet& r) {
  for (std::size_t i = 0; i < r.intervals.size(); ++i) {
    const auto& iv = r.intervals[i];
    CHECK(iv.lo <= iv.hi);
    if (i > 0) CHECK(r.intervals[i - 1].hi < iv.lo);
    CHECK(is_hurwitz(variational_matrix(f, h, 0.5 * (iv.lo + iv.hi))));
    const double out = 10.0 * r.boundary_tol;
    if (iv.lo > 0.0 && iv.lo - out >= 0.0) CHECK_FALSE(is_hurwitz(variational_matrix(f, h, iv.lo - out)));
    if (iv.hi < r.sigma_max && iv.hi + out <= r.sigma_max) CHECK_FALSE(is_hurwitz(variational_matrix(f, h, iv.hi + out)));
  }
  CHECK(r.stable_at_max == (!r.intervals.empty() && r.intervals.back().hi == r.sigma_max));
  CHECK(classify(r) == r.classification);
}

}  // namespace

TEST_CASE("two-band region of the Chua linearization") {
  const RegionSet& r = two_band_region();
  REQUIRE(r.intervals.size() == 2);
  CHECK(r.intervals[0].lo == 0.0);
  CHECK(r.intervals[0].hi == fixtures::within(0.0099, 5e-3));
  CHECK(r.intervals[1].lo == fixtures::within(1.0, 5e-3));
  // Exact boundaries computed independently: 0.0099999 and 0.99997 / 2.24424.
  CHECK(r.intervals[0].hi == fixtures::within(0.0099999, 1e-5));
  CHECK(r.intervals[1].lo == fixtures::within(0.99997, 1e-5));
  CHECK(r.intervals[1].hi == fixtures::within(2.24424, 1e-5));
  CHECK(r.classification == RegionClass::DisconnectedUnion);
  CHECK_FALSE(r.stable_at_max);
  CHECK(r.samples.size() == 1001);
  check_region_invariants(fixtures::chua_F(), fixtures::chua_H_two_band(), r);
}

TEST_CASE("simple regions") {
  const Matrix f = fixtures::chua_F();
  const RegionSet tail = region_scan(f, Matrix::identity(3), 10.0);
  REQUIRE(tail.intervals.size() == 1);
  CHECK(tail.intervals[0] == Interval{0.0, 10.0});
  CHECK(tail.stable_at_max);
  CHECK(tail.tail_spot_checks);
  CHECK(tail.classification == RegionClass::UnboundedTail);

  const RegionSet empty = region_scan(Matrix::identity(2), Matrix(2, 2), 10.0);
  CHECK(empty.intervals.empty());
  CHECK(empty.classification == RegionClass::Empty);

  // 1 - σ is stable for σ > 1.
  const RegionSet shifted = region_scan(Matrix{{1.0}}, Matrix{{1.0}}, 4.0);
  REQUIRE(shifted.intervals.size() == 1);
  CHECK(shifted.intervals[0].lo == fixtures::within(1.0, 1e-6));
  CHECK(shifted.intervals[0].lo > 1.0);

  // -1 + σ is stable for σ < 1.
  const RegionSet bounded = region_scan(Matrix{{-1.0}}, Matrix{{-1.0}}, 4.0);
  REQUIRE(bounded.intervals.size() == 1);
  CHECK(bounded.intervals[0].hi == fixtures::within(1.0, 1e-6));
  CHECK(bounded.classification == RegionClass::SingleBounded);

  CHECK_THROWS_AS(region_scan(Matrix::identity(2), Matrix::identity(3), 1.0), Error);
}

TEST_CASE("property: grid independence and exterior checks on random pairs") {
  std::mt19937_64 rng(31);
  const std::vector<std::pair<Matrix, Matrix>> base{{fixtures::chua_F(), fixtures::chua_H_two_band()}};
  std::vector<std::pair<Matrix, Matrix>> cases = base;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 3;
    Matrix f = fixtures::random_matrix(rng, n, n);
    f -= Matrix::identity(n) * (oracle::spectral_abscissa(f) + 0.2);
    cases.emplace_back(f, fixtures::random_matrix(rng, n, n));
  }
  for (const auto& [f, h] : cases) {
    const double smax = 3.0;
    const RegionSet coarse = region_scan(f, h, smax, 3e-3);
    const RegionSet fine = region_scan(f, h, smax, 1.5e-3);
    check_region_invariants(f, h, coarse);
    check_region_invariants(f, h, fine);
    REQUIRE(coarse.intervals.size() == fine.intervals.size());
    for (std::size_t i = 0; i < coarse.intervals.size(); ++i) {
      CHECK(std::abs(coarse.intervals[i].lo - fine.intervals[i].lo) <= 3e-3);
      CHECK(std::abs(coarse.intervals[i].hi - fine.intervals[i].hi) <= 3e-3);
    }
  }
}

TEST_CASE("check_criterion") {
  const RegionSet& r = two_band_region();
  const auto s1 = spectrum(fixtures::k33());
  const auto rep = check_criterion(s1, 1.0 / 2.9, r);
  CHECK(rep.verdict);
  REQUIRE(rep.placements.size() == 5);
  CHECK(rep.placements[0].sigma == Approx(1.0345).epsilon(1e-4));
  CHECK(rep.placements[4].sigma == Approx(2.0690).epsilon(1e-4));

  const auto s2 = spectrum(fixtures::prism());
  CHECK_FALSE(check_criterion(s2, 0.5, r).verdict);

  const RegionSet wide = region_scan(fixtures::chua_F(), Matrix::identity(3), 10.0);
  CHECK(check_criterion(s2, 0.1, wide).verdict);

  try {
    check_criterion(s2, 1.0, r);
    FAIL("expected ScanTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ScanTooShort);
  }
}

TEST_CASE("property: criterion equals brute-force membership") {
  const RegionSet& r = two_band_region();
  for (const Graph& g : {fixtures::k33(), fixtures::prism(), complete_graph(4), path_graph(5)}) {
    const auto s = spectrum(g);
    for (int i = 0; i < 60; ++i) {
      const double c = 0.0001 * std::pow(10.0, 4.0 * i / 59.0) * (2.9 / s.lambdaN);
      if (c * s.lambdaN > r.sigma_max) continue;
      CHECK(check_criterion(s, c, r).verdict == brute_force_verdict(s, c));
    }
  }
}

TEST_CASE("admissible couplings") {
  const RegionSet& r = two_band_region();
  const auto s2 = spectrum(fixtures::prism());
  const auto cs2 = admissible_couplings(s2, r);
  REQUIRE(cs2.intervals.size() == 1);
  CHECK(cs2.intervals[0].lo == 0.0);
  CHECK(cs2.intervals[0].hi == fixtures::within(0.00198, 2e-4));

  const auto cs1 = admissible_couplings(spectrum(fixtures::k33()), r);
  bool found = false;
  for (const auto& iv : cs1.intervals) found = found || iv.contains(1.0 / 2.9);
  CHECK(found);

  const RegionSet tail = region_scan(Matrix{{-1.0}}, Matrix{{1.0}}, 2.0);
  const auto cs = admissible_couplings(spectrum_from_values({0.0, 1.0, 1.0}), tail);
  REQUIRE(cs.intervals.size() == 1);
  CHECK(cs.intervals[0] == Interval{0.0, 2.0});
  CHECK(cs.may_extend);

  CHECK_THROWS_AS(admissible_couplings(spectrum(new_graph(3, {{1, 2}})), r), Error);
}

TEST_CASE("master stability function at the equilibrium") {
  const NodeDynamics chua = make_chua(ChuaParams{});
  const std::vector<double> origin{0.0, 0.0, 0.0};
  const Matrix f = fixtures::chua_F();
  const Matrix h = fixtures::chua_H_two_band();
  for (double sigma : {0.0, 0.005, 1.5, 2.0}) {
    const auto est = msf_lyapunov(chua, h, sigma, origin);
    CHECK(std::isfinite(est.l_max));
    CHECK(est.l_max == fixtures::within(spectral_abscissa(variational_matrix(f, h, sigma)), 1e-2));
  }
  CHECK(msf_lyapunov(chua, h, 1.5, origin).l_max < 0.0);
  CHECK(msf_lyapunov(chua, h, 0.5, origin).l_max > 0.0);

  // Outside the basin the cubic term diverges.
  CHECK_THROWS_AS(msf_lyapunov(chua, h, 0.0, std::vector<double>{50.0, 0.0, 0.0}), Error);
}
