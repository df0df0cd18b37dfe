#pragma once

#include "qwalk/graph.hpp"

#include <Eigen/Dense>

#include <array>
#include <span>
#include <vector>

namespace qwalk {

/// Edge partition of a fullerene Hamiltonian around the cap pentagon 1..5.
/// All four matrices are N x N and sum exactly to the adjacency.
struct HamiltonianDecomposition {
  Eigen::MatrixXd h_total;
  Eigen::MatrixXd h_s;    // both endpoints in 1..5
  Eigen::MatrixXd h_b;    // both endpoints in 6..N
  Eigen::MatrixXd h_int;  // exactly one endpoint in 1..5
  std::size_t n_system_edges = 0;
  std::size_t n_bath_edges = 0;
  std::size_t n_interaction_edges = 0;
};

/// Throws ValidationError unless nodes 1..5 form the 5-cycle 1-2-3-4-5-1.
HamiltonianDecomposition decompose_hamiltonian(const Graph& g);

/// Thermal state of the pentagon subsystem on span{|b0>, |1>, ..., |5>}.
///
/// The walker block is the pentagon adjacency divided by its degree, with
/// levels cos(2 pi j / 5); the no-walker state |b0> has energy 0.
struct PentagonGibbs {
  double beta = 0;
  double z = 1;
  double log_z = 0;
  Eigen::Matrix<double, 6, 6> state;
  std::array<double, 6> node_probs{};  // [p0, p(1), ..., p(5)]
};

/// 6x6 subsystem Hamiltonian 0 (+) A5/2 in the basis {b0, 1..5}.
Eigen::Matrix<double, 6, 6> pentagon_hamiltonian();

/// Closed-form partition function
/// Z = e^{-b} + 2 e^{(1+sqrt5) b/4} + 2 e^{-(sqrt5-1) b/4} + 1, evaluated in log space.
double pentagon_log_partition(double beta);

PentagonGibbs pentagon_gibbs(double beta);

/// Probability of finding the walker on any given pentagon node in the Gibbs
/// state; independent of the node and increasing from 1/6 (beta=0) to 1/5.
double gibbs_node_probability(double beta);

struct GibbsComparisonRow {
  int n = 0;
  double u_nn = 0;
  double p_beta_min = 0;  // p(j) at the first grid beta
  double p_beta_max = 0;  // p(j) at the last grid beta
  double min_distance = 0;  // min over the grid of |u_nn - p(j)|
  bool gibbs_matchable = false;
};

inline constexpr double kGibbsMatchTol = 1e-3;

/// For each tube fullerene size N: u(N, N) against p(j) over the beta grid.
std::vector<GibbsComparisonRow> gibbs_vs_limiting(std::span<const int> sizes,
                                                  std::span<const double> beta_grid);

/// Rows x=1 and x=2 of the limiting distribution restricted to nodes 1..5.
std::array<std::array<double, 5>, 2> initial_state_dependence(const Graph& g);

}  // namespace qwalk
