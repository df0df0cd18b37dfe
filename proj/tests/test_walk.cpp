#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walk.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace qwalk;

namespace {

const Graph& k2() {
  static const Graph g(2, {{1, 2}});
  return g;
}

// Time average of |<y|e^{-iAt}|x>|^2 over [0, tau] by stepping a Taylor
// propagator and applying the trapezoidal rule. Entirely independent of the
// eigendecomposition.
Eigen::MatrixXd quadrature_limit(const Eigen::MatrixXd& a, double tau, double h) {
  const Eigen::Index n = a.rows();
  const Eigen::MatrixXcd step = testing::taylor_propagator(a, h);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  const long steps = std::lround(tau / h);
  Eigen::MatrixXd acc = 0.5 * u.cwiseAbs2();
  for (long k = 1; k <= steps; ++k) {
    u = step * u;
    acc += (k == steps ? 0.5 : 1.0) * u.cwiseAbs2();
  }
  return acc / double(steps);
}

}  // namespace

TEST_CASE("evolve at t = 0 is the start node") {
  const auto s = eigendecompose(adjacency(build_tube_fullerene(30)));
  const auto st = evolve(s, 7, 0.0);
  for (int y = 0; y < 30; ++y) CHECK(std::abs(st.amplitudes(y) - std::complex<double>(y == 6 ? 1 : 0)) < 1e-12);
}

TEST_CASE("K2 transfers fully at t = pi/2") {
  const auto s = eigendecompose(adjacency(k2()));
  const double t = std::numbers::pi / 2;
  const auto st = evolve(s, 1, t);
  CHECK(std::norm(st.amplitudes(1)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(node_probability(s, 1, 1, t) == doctest::Approx(0.0).epsilon(1e-12));
  for (double tt : {0.1, 0.7, 2.3}) {
    CHECK(node_probability(s, 1, 2, tt) == doctest::Approx(std::sin(tt) * std::sin(tt)).epsilon(1e-12));
    CHECK(node_probability(s, 1, 1, tt) == doctest::Approx(std::cos(tt) * std::cos(tt)).epsilon(1e-12));
  }
}

TEST_CASE("evolution is unitary at long times") {
  const auto s = eigendecompose(adjacency(build_tube_fullerene(30)));
  CHECK(evolve(s, 28, 1000.0).amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(node_probability(s, 28, 28, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("evolution agrees with a Taylor-series propagator") {
  const Eigen::MatrixXd a = adjacency(testing::cycle_graph(6));
  const auto s = eigendecompose(a);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(6, 6);
  const Eigen::MatrixXcd step = testing::taylor_propagator(a, 0.01);
  for (int k = 0; k < 250; ++k) u = step * u;
  const auto st = evolve(s, 2, 2.5);
  CHECK((st.amplitudes - u.col(1)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("invalid nodes are rejected") {
  const auto s = eigendecompose(adjacency(k2()));
  CHECK_THROWS_AS(evolve(s, 0, 1.0), ValidationError);
  CHECK_THROWS_AS(evolve(s, 3, 1.0), ValidationError);
  CHECK_THROWS_AS(node_probability(s, 1, 5, 1.0), ValidationError);
  const std::vector<double> grid = {1.0};
  CHECK_THROWS_AS(cumulative_time_average(s, 1, 9, grid), ValidationError);
}

TEST_CASE("K2 running average has the closed form 1/2 + sin(2 tau)/(4 tau)") {
  const auto s = eigendecompose(adjacency(k2()));
  const std::vector<double> grid = {0.1, 0.5, 1.0, 3.0, 10.0, 100.0};
  const auto avg = cumulative_time_average(s, 1, 1, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double tau = grid[i];
    CHECK(avg[i] == doctest::Approx(0.5 + std::sin(2 * tau) / (4 * tau)).epsilon(1e-12));
    const double quad = testing::simpson_mean([](double t) { return std::cos(t) * std::cos(t); }, tau, 20000);
    CHECK(avg[i] == doctest::Approx(quad).epsilon(1e-9));
  }
}

TEST_CASE("running average rejects non-positive horizons") {
  const auto s = eigendecompose(adjacency(k2()));
  const std::vector<double> grid = {1.0, 0.0};
  CHECK_THROWS_AS(cumulative_time_average(s, 1, 1, grid), ValidationError);
}

TEST_CASE("F30 node 28 return probability settles at u(28,28)") {
  const auto s = eigendecompose(adjacency(build_tube_fullerene(30)));
  const double u2828 = limiting_distribution(s)(27, 27);
  std::vector<double> early, late;
  for (double tau = 1; tau <= 10; tau += 0.25) early.push_back(tau);
  for (double tau = 1000; tau <= 5000; tau += 10) late.push_back(tau);
  auto dev = [&](const std::vector<double>& g) {
    double m = 0;
    for (double v : cumulative_time_average(s, 28, 28, g)) m = std::max(m, std::abs(v - u2828));
    return m;
  };
  CHECK(dev(late) < dev(early));
  CHECK(dev(late) < 2e-3);
  const std::vector<double> far = {1e5};
  CHECK(std::abs(cumulative_time_average(s, 28, 28, far)[0] - u2828) < 1e-4);
}

TEST_CASE("limiting distribution of K2 is uniform") {
  const auto u = limiting_distribution(eigendecompose(adjacency(k2())));
  CHECK((u.array() - 0.5).abs().maxCoeff() < 1e-12);
}

TEST_CASE("C60 limiting distribution") {
  const auto s = eigendecompose(adjacency(build_c60_blocked()));
  const auto u = limiting_distribution(s);
  const double row1[5] = {0.079, 0.024, 0.021, 0.021, 0.024};
  for (int y = 0; y < 5; ++y) CHECK(std::abs(u(0, y) - row1[y]) < 5e-4);
  CHECK(mirror_residual(u) < 1e-9);
  for (int x = 1; x <= 60; ++x) CHECK(std::abs(u(x - 1, x - 1) - u(x - 1, 60 - x)) < 1e-9);

  SUBCASE("same u from the symmetry-adapted basis") {
    const auto ua = limiting_distribution(symmetry_adapted_c60_basis());
    CHECK((ua - u).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("property: limiting distributions are symmetric and row-stochastic") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> size(2, 14);
    const Graph g = testing::random_connected_graph(size(rng), 0.25, rng);
    const auto u = limiting_distribution(eigendecompose(adjacency(g)));
    CAPTURE(trial);
    CHECK((u.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-9);
    CHECK((u - u.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(u.minCoeff() >= 0.0);
  }
  for (int n = 30; n <= 130; n += 10) {
    const auto u = limiting_distribution(eigendecompose(adjacency(build_tube_fullerene(n))));
    CHECK((u.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("property: evolution preserves the norm") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> time(-500.0, 500.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = testing::random_connected_graph(10, 0.3, rng);
    const auto s = eigendecompose(adjacency(g));
    const double t = time(rng);
    CHECK(evolve(s, 1 + trial % 10, t).amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("property: quadrature oracle matches u on small graphs") {
  std::mt19937_64 rng(3);
  std::vector<Graph> graphs = {k2(), testing::path_graph(3), testing::cycle_graph(4), testing::path_graph(5),
                               testing::random_connected_graph(6, 0.4, rng)};
  for (const Graph& g : graphs) {
    const Eigen::MatrixXd a = adjacency(g);
    const auto u = limiting_distribution(eigendecompose(a));
    const Eigen::MatrixXd quad = quadrature_limit(a, 1e4, 1e-2);
    CAPTURE(g.n_nodes());
    CHECK((quad - u).cwiseAbs().maxCoeff() < 5e-3);
  }
}
