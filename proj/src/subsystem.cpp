#include "qwalk/subsystem.hpp"

#include "qwalk/error.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qwalk {

namespace {

// Pentagon walker levels cos(2 pi l / 5) for l = 0..4.
std::array<double, 5> pentagon_levels() {
  std::array<double, 5> e{};
  for (int l = 0; l < 5; ++l) e[l] = std::cos(2.0 * std::numbers::pi * l / 5.0);
  return e;
}

bool in_pentagon(int v) { return v >= 1 && v <= 5; }

}  // namespace

HamiltonianDecomposition decompose_hamiltonian(const Graph& g) {
  if (g.n_nodes() < 6) throw ValidationError("decomposition needs at least 6 nodes");
  for (int v = 1; v <= 5; ++v) {
    const int w = v % 5 + 1;
    if (!g.has_edge(v, w)) {
      throw ValidationError("nodes 1..5 do not form a pentagon: missing edge (" + std::to_string(v) + ", " +
                            std::to_string(w) + ")");
    }
  }
  if (g.has_edge(1, 3) || g.has_edge(1, 4) || g.has_edge(2, 4) || g.has_edge(2, 5) || g.has_edge(3, 5)) {
    throw ValidationError("nodes 1..5 carry a chord and are not a bare pentagon");
  }

  const int n = g.n_nodes();
  HamiltonianDecomposition d;
  d.h_total = adjacency(g);
  d.h_s = Eigen::MatrixXd::Zero(n, n);
  d.h_b = Eigen::MatrixXd::Zero(n, n);
  d.h_int = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    const int inside = int(in_pentagon(e.a)) + int(in_pentagon(e.b));
    Eigen::MatrixXd& target = inside == 2 ? d.h_s : inside == 1 ? d.h_int : d.h_b;
    std::size_t& count = inside == 2 ? d.n_system_edges : inside == 1 ? d.n_interaction_edges : d.n_bath_edges;
    target(e.a - 1, e.b - 1) = target(e.b - 1, e.a - 1) = 1.0;
    ++count;
  }
  return d;
}

Eigen::Matrix<double, 6, 6> pentagon_hamiltonian() {
  Eigen::Matrix<double, 6, 6> h = Eigen::Matrix<double, 6, 6>::Zero();
  for (int v = 0; v < 5; ++v) {
    const int w = (v + 1) % 5;
    h(1 + v, 1 + w) = h(1 + w, 1 + v) = 0.5;
  }
  return h;
}

double pentagon_log_partition(double beta) {
  if (!(beta >= 0) || !std::isfinite(beta)) throw ValidationError("beta must be finite and >= 0");
  const double r5 = std::sqrt(5.0);
  const std::array<double, 4> exponent = {-beta, (1 + r5) * beta / 4, -(r5 - 1) * beta / 4, 0.0};
  const std::array<double, 4> multiplicity = {1, 2, 2, 1};
  const double top = *std::max_element(exponent.begin(), exponent.end());
  double acc = 0;
  for (int i = 0; i < 4; ++i) acc += multiplicity[i] * std::exp(exponent[i] - top);
  return top + std::log(acc);
}

PentagonGibbs pentagon_gibbs(double beta) {
  if (!(beta >= 0) || !std::isfinite(beta)) throw ValidationError("beta must be finite and >= 0");
  const auto levels = pentagon_levels();

  // Boltzmann weights relative to the largest one, so nothing overflows.
  double top = 0.0;  // the no-walker level contributes exponent 0
  for (double e : levels) top = std::max(top, -beta * e);
  std::array<double, 5> w{};
  double walker_sum = 0;
  for (int l = 0; l < 5; ++l) {
    w[l] = std::exp(-beta * levels[l] - top);
    walker_sum += w[l];
  }
  const double w0 = std::exp(-top);
  const double z_scaled = walker_sum + w0;

  PentagonGibbs g;
  g.beta = beta;
  g.log_z = top + std::log(z_scaled);
  g.z = std::exp(g.log_z);
  g.state.setZero();
  g.state(0, 0) = w0 / z_scaled;
  // Fourier eigenprojector of the pentagon for mode l: (1/5) cos(2 pi l (x-y)/5),
  // summed over l with its Boltzmann weight.
  for (int x = 0; x < 5; ++x) {
    for (int y = 0; y < 5; ++y) {
      double entry = 0;
      for (int l = 0; l < 5; ++l) entry += w[l] * std::cos(2.0 * std::numbers::pi * l * (x - y) / 5.0);
      g.state(1 + x, 1 + y) = entry / (5.0 * z_scaled);
    }
  }
  g.node_probs[0] = w0 / z_scaled;
  for (int x = 0; x < 5; ++x) g.node_probs[1 + x] = (walker_sum / 5.0) / z_scaled;
  return g;
}

double gibbs_node_probability(double beta) { return pentagon_gibbs(beta).node_probs[1]; }

std::vector<GibbsComparisonRow> gibbs_vs_limiting(std::span<const int> sizes, std::span<const double> beta_grid) {
  if (beta_grid.empty()) throw ValidationError("beta grid is empty");
  for (std::size_t i = 1; i < beta_grid.size(); ++i) {
    if (!(beta_grid[i] > beta_grid[i - 1])) throw ValidationError("beta grid must be strictly increasing");
  }
  std::vector<double> p;
  p.reserve(beta_grid.size());
  for (double b : beta_grid) p.push_back(gibbs_node_probability(b));

  std::vector<GibbsComparisonRow> rows;
  for (int n : sizes) {
    if (n < 30 || n > 130) throw ValidationError("family sizes must lie in 30..130");
    const auto s = eigendecompose(adjacency(build_tube_fullerene(n)));
    const auto u = limiting_distribution(s);
    GibbsComparisonRow row;
    row.n = n;
    row.u_nn = u(n - 1, n - 1);
    row.p_beta_min = p.front();
    row.p_beta_max = p.back();
    row.min_distance = std::abs(row.u_nn - p.front());
    for (double pj : p) row.min_distance = std::min(row.min_distance, std::abs(row.u_nn - pj));
    row.gibbs_matchable = row.min_distance < kGibbsMatchTol;
    rows.push_back(row);
  }
  return rows;
}

std::array<std::array<double, 5>, 2> initial_state_dependence(const Graph& g) {
  if (g.n_nodes() < 5) throw ValidationError("graph needs at least 5 nodes");
  const auto u = limiting_distribution(eigendecompose(adjacency(g)));
  std::array<std::array<double, 5>, 2> out{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 5; ++y) out[x][y] = u(x, y);
  return out;
}

}  // namespace qwalk
