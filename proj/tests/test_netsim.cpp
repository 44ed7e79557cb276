#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "syncnet/coupling_design.hpp"
#include "syncnet/dynamics.hpp"
#include "syncnet/error.hpp"
#include "syncnet/netsim.hpp"
#include "syncnet/spectrum.hpp"

using namespace syncnet;
using doctest::Approx;

TEST_CASE("chua field and jacobian") {
  const ChuaParams p;
  const auto zero = chua_field(p, std::vector<double>{0, 0, 0});
  for (double v : zero) CHECK(v == 0.0);
  const auto v = chua_field(p, std::vector<double>{1, 0, 0});
  CHECK(v[0] == Approx(-2.3));
  CHECK(v[1] == Approx(1.0));
  CHECK(v[2] == Approx(0.0));

  const Matrix analytic = chua_jacobian(p, std::vector<double>{0, 0, 0});
  CHECK((analytic - fixtures::chua_F()).max_abs() < 1e-12);
  NodeDynamics numeric = make_chua(p);
  numeric.jacobian = nullptr;
  CHECK((numeric.jacobian_at(std::vector<double>{0, 0, 0}) - fixtures::chua_F()).max_abs() < 1e-6);
  const std::vector<double> x{0.3, -0.2, 0.7};
  CHECK((numeric.jacobian_at(x) - chua_jacobian(p, x)).max_abs() < 1e-6);

  ChuaParams bad;
  bad.kappa = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("sync error") {
  const std::vector<double> same{1, 2, 3, 1, 2, 3};
  CHECK(sync_error(same, 2, 3) == 0.0);
  const std::vector<double> opposite{3, 4, -3, -4};
  CHECK(sync_error(opposite, 2, 2) == Approx(5.0));
}

TEST_CASE("uncoupled nodes follow the same solution") {
  NetworkSystem sys{complete_graph(2), 0.0, Matrix::identity(3), make_chua(ChuaParams{})};
  const std::vector<double> x0{0.1, -0.2, 0.3, 0.1, -0.2, 0.3};
  const auto t = simulate(sys, x0, SimOptions{1e-2, 5.0, 10});
  for (double e : t.sync_error) CHECK(e == 0.0);
}

TEST_CASE("property: the synchronization manifold is invariant") {
  const std::vector<double> node{0.2, -0.1, 0.4};
  for (double c : {0.1, 1.0, 10.0}) {
    NetworkSystem sys{fixtures::prism(), c, fixtures::chua_H_two_band(), make_chua(ChuaParams{})};
    std::vector<double> x0;
    for (int i = 0; i < 6; ++i) x0.insert(x0.end(), node.begin(), node.end());
    const auto t = simulate(sys, x0, SimOptions{1e-2, 100.0, 50});
    CHECK_FALSE(t.blowup);
    double worst = 0.0;
    for (double e : t.sync_error) worst = std::max(worst, e);
    CHECK(worst <= 1e-10);
    CHECK(is_synchronized(t, 1e-10, 20.0));
  }
}

TEST_CASE("property: RK4 global error is fourth order") {
  const Matrix f = fixtures::chua_F();
  const std::vector<double> x0{0.3, -0.1, 0.2};
  const Matrix exact = fixtures::expm(f, 1.0) * Matrix::column(x0);
  std::vector<double> errs;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    NetworkSystem sys{new_graph(1, {}), 0.0, Matrix(3, 3), make_linear(f)};
    const auto t = simulate(sys, x0, SimOptions{h, 1.0, 1});
    REQUIRE(t.times.back() == Approx(1.0));
    double e = 0.0;
    for (std::size_t i = 0; i < 3; ++i) e = std::max(e, std::abs(t.states.back()[i] - exact(i, 0)));
    errs.push_back(e);
  }
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double ratio = errs[i - 1] / errs[i];
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 32.0);
  }
}

TEST_CASE("trajectory layout and stride") {
  NetworkSystem sys{fixtures::k33(), 0.5, Matrix::identity(3), make_chua(ChuaParams{})};
  const auto x0 = random_initial_states(6, 3, 7);
  CHECK(x0.size() == 18);
  for (double v : x0) CHECK((v >= -0.5 && v <= 0.5));
  CHECK(random_initial_states(6, 3, 7) == x0);
  CHECK(random_initial_states(6, 3, 8) != x0);

  const auto t = simulate(sys, x0, SimOptions{1e-2, 1.05, 10});
  CHECK(t.times.front() == 0.0);
  CHECK(t.times.back() == Approx(1.05));
  CHECK(t.states.front() == x0);
  CHECK(t.states.size() == t.times.size());
  CHECK(t.sync_error == sync_error_series(t));
  for (std::size_t i = 1; i + 1 < t.times.size(); ++i) CHECK(t.times[i] - t.times[i - 1] == Approx(0.1));
}

TEST_CASE("blow-up is reported, not thrown") {
  NetworkSystem sys{complete_graph(2), 0.0, Matrix::identity(3), make_chua(ChuaParams{})};
  const std::vector<double> x0{20, 0, 0, 20, 0, 0};
  const auto t = simulate(sys, x0, SimOptions{1e-3, 50.0, 100});
  CHECK(t.blowup);
  REQUIRE(t.blowup_time.has_value());
  CHECK(*t.blowup_time < 50.0);
  CHECK_FALSE(is_synchronized(t, 1e-3, 1.0));
}

TEST_CASE("input validation") {
  NetworkSystem sys{fixtures::k33(), 0.5, Matrix::identity(2), make_chua(ChuaParams{})};
  CHECK_THROWS_AS(simulate(sys, random_initial_states(6, 3, 1)), Error);
  sys.H = Matrix::identity(3);
  CHECK_THROWS_AS(simulate(sys, std::vector<double>(5, 0.0)), Error);
  CHECK_THROWS_AS(simulate(sys, random_initial_states(6, 3, 1), SimOptions{-1.0, 1.0, 1}), Error);
}

TEST_CASE("the two-band coupling separates the two graphs") {
  const double c = 1.0 / 2.9;
  const auto x0 = random_initial_states(6, 3, 1);
  NetworkSystem good{fixtures::k33(), c, fixtures::chua_H_two_band(), make_chua(ChuaParams{})};
  NetworkSystem bad{fixtures::prism(), c, fixtures::chua_H_two_band(), make_chua(ChuaParams{})};
  const SimOptions opts{1e-2, 200.0, 100};
  const auto tg = simulate(good, x0, opts);
  const auto tb = simulate(bad, x0, opts);
  CHECK(is_synchronized(tg, 1e-3, 20.0));
  CHECK(tg.sync_error.back() < 1e-3);
  CHECK_FALSE(is_synchronized(tb, 1e-3, 20.0));
  CHECK((tb.blowup || tb.sync_error.back() > 1e-2));
}

TEST_CASE("a designed rank-1 coupling synchronizes both graphs") {
  const auto d = design_rank1(fixtures::chua_F(), std::vector<double>{0, 0, 1});
  const auto x0 = random_initial_states(6, 3, 2);
  const SimOptions opts{1e-2, 200.0, 100};
  for (auto [g, c] : {std::pair{fixtures::k33(), 0.4}, std::pair{fixtures::prism(), 0.5}}) {
    CHECK(c * spectrum(g).lambda2 >= 1.0 - 1e-9);
    NetworkSystem sys{g, c, d.H, make_chua(ChuaParams{})};
    CHECK(is_synchronized(simulate(sys, x0, opts), 1e-3, 20.0));
  }
}
