#pragma once

#include "qwalk/error.hpp"
#include "qwalk/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace qwalk {

template <typename Scalar>
struct WalkState {
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> amplitudes;
  Scalar time = 0;
};

/// u(x, y) stored 0-based: u(x-1, y-1) for 1-based nodes x (start) and y (end).
template <typename Scalar>
using LimitingDistribution = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

inline void check_node(Eigen::Index n, int node) {
  if (node < 1 || node > n) {
    throw ValidationError("node " + std::to_string(node) + " outside 1.." + std::to_string(n));
  }
}

}  // namespace detail

/// e^{-iHt}|start> computed as a phase rotation in the eigenbasis.
template <typename Scalar>
WalkState<Scalar> evolve(const Spectrum<Scalar>& s, int start, Scalar t) {
  detail::check_node(s.dim(), start);
  using Complex = std::complex<Scalar>;
  const auto overlap = s.vectors.row(start - 1).transpose();  // <lambda_k|start>
  Eigen::Matrix<Complex, Eigen::Dynamic, 1> rotated(s.dim());
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    rotated(k) = std::polar(Scalar(1), -s.values(k) * t) * overlap(k);
  }
  return {s.vectors.template cast<Complex>() * rotated, t};
}

/// |<end| e^{-iHt} |start>|^2.
template <typename Scalar>
Scalar node_probability(const Spectrum<Scalar>& s, int start, int end, Scalar t) {
  detail::check_node(s.dim(), start);
  detail::check_node(s.dim(), end);
  std::complex<Scalar> amp(0);
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    amp += std::polar(Scalar(1), -s.values(k) * t) * (s.vectors(end - 1, k) * s.vectors(start - 1, k));
  }
  return std::norm(amp);
}

/// Exact running average (1/tau) * integral_0^tau |<end|e^{-iHt}|start>|^2 dt
/// for every tau in the grid, from the closed form in the eigenbasis.
template <typename Scalar>
std::vector<Scalar> cumulative_time_average(const Spectrum<Scalar>& s, int start, int end,
                                            std::type_identity_t<std::span<const Scalar>> tau_grid) {
  detail::check_node(s.dim(), start);
  detail::check_node(s.dim(), end);
  using Complex = std::complex<Scalar>;

  // Per-level weights <end|P_j|start>; the dynamics only sees level differences.
  const std::size_t levels = s.clusters.size();
  std::vector<Scalar> weight(levels, Scalar(0));
  std::vector<Scalar> energy(levels);
  for (std::size_t j = 0; j < levels; ++j) {
    const Cluster& c = s.clusters[j];
    for (Eigen::Index k = c.begin; k < c.end(); ++k)
      weight[j] += s.vectors(end - 1, k) * s.vectors(start - 1, k);
    energy[j] = s.level(j);
  }

  Scalar stationary(0);
  for (Scalar w : weight) stationary += w * w;

  std::vector<Scalar> out;
  out.reserve(tau_grid.size());
  for (Scalar tau : tau_grid) {
    if (!(tau > 0)) throw ValidationError("time-average horizon must be positive");
    Complex sum(0);
    for (std::size_t k = 0; k < levels; ++k) {
      for (std::size_t l = 0; l < levels; ++l) {
        if (k == l) continue;
        const Scalar omega = energy[l] - energy[k];
        const Complex phase = (std::polar(Scalar(1), omega * tau) - Scalar(1)) /
                              Complex(Scalar(0), omega * tau);
        sum += weight[k] * weight[l] * phase;
      }
    }
    if (std::abs(sum.imag()) >= Scalar(1e-10)) {
      throw ConvergenceError("time average has imaginary residue " + std::to_string(double(sum.imag())));
    }
    out.push_back(stationary + sum.real());
  }
  return out;
}

/// u(x, y) = sum_j |<y|P_j|x>|^2, the infinite-time average of the transition
/// probability. Rows are probability distributions over end nodes.
template <typename Scalar>
LimitingDistribution<Scalar> limiting_distribution(const Spectrum<Scalar>& s) {
  LimitingDistribution<Scalar> u = LimitingDistribution<Scalar>::Zero(s.dim(), s.dim());
  for (const Cluster& c : s.clusters) {
    const auto block = s.vectors.middleCols(c.begin, c.size);
    u += (block * block.transpose()).cwiseAbs2();
  }
  return u;
}

/// max |u(x, y) - u(x, n+1-y)| over all entries.
template <typename Scalar>
Scalar mirror_residual(const LimitingDistribution<Scalar>& u) {
  return (u - u.rowwise().reverse()).cwiseAbs().maxCoeff();
}

}  // namespace qwalk
