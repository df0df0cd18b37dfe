#pragma once

#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/jacobi.hpp"
#include "qwalk/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qwalk {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

template <typename Derived>
void check_density(const Eigen::MatrixBase<Derived>& rho, Eigen::Index n) {
  if (rho.rows() != n || rho.cols() != n) throw ValidationError("density operator has wrong dimension");
  if ((rho - rho.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ValidationError("density operator must be symmetric");
  }
  if (std::abs(double(rho.trace()) - 1.0) > 1e-9) {
    throw ValidationError("density operator must have unit trace, got " + std::to_string(double(rho.trace())));
  }
}

}  // namespace detail

/// |x><x| on an n-node graph (x is 1-based).
template <typename Scalar = double>
DenseMatrix<Scalar> node_projector(Eigen::Index n, int x) {
  if (x < 1 || x > n) throw ValidationError("node " + std::to_string(x) + " outside 1.." + std::to_string(n));
  DenseMatrix<Scalar> p = DenseMatrix<Scalar>::Zero(n, n);
  p(x - 1, x - 1) = Scalar(1);
  return p;
}

/// d_eff = 1 / sum_n tr(P_n rho)^2, the inverse purity of the level populations.
template <typename Scalar, typename Derived>
Scalar effective_dimension(const std::vector<DenseMatrix<Scalar>>& projectors,
                           const Eigen::MatrixBase<Derived>& rho0) {
  if (projectors.empty()) throw ValidationError("no eigenspace projectors");
  detail::check_density(rho0, projectors.front().rows());
  Scalar purity(0);
  for (const auto& p : projectors) {
    const Scalar w = (p * rho0).trace();
    purity += w * w;
  }
  return Scalar(1) / purity;
}

/// omega = sum_n P_n rho0 P_n, the dephased (infinite-time averaged) state.
template <typename Scalar, typename Derived>
DenseMatrix<Scalar> time_averaged_state(const std::vector<DenseMatrix<Scalar>>& projectors,
                                        const Eigen::MatrixBase<Derived>& rho0) {
  if (projectors.empty()) throw ValidationError("no eigenspace projectors");
  detail::check_density(rho0, projectors.front().rows());
  const Eigen::Index n = rho0.rows();
  DenseMatrix<Scalar> omega = DenseMatrix<Scalar>::Zero(n, n);
  for (const auto& p : projectors) omega.noalias() += p * rho0 * p;
  return omega;
}

/// Right-hand side of the finite-time equilibration bound,
/// (||O||^2 N(eps) / d_eff) * (1 + 8 log2(N_lambda) / (eps * tau)).
inline double bound_rhs(double d_eff, double n_lambda, double n_eps, double op_norm_sq,
                        double epsilon, double tau) {
  if (!(tau > 0)) throw ValidationError("bound horizon tau must be positive");
  if (!(d_eff > 0) || !(n_lambda > 0) || !(n_eps > 0) || !(op_norm_sq > 0) || !(epsilon > 0)) {
    throw ValidationError("bound ingredients must be positive");
  }
  return (op_norm_sq * n_eps / d_eff) * (1.0 + 8.0 * std::log2(n_lambda) / (epsilon * tau));
}

/// Largest eigenvalue magnitude of a symmetric observable, squared.
template <typename Derived>
typename Derived::Scalar operator_norm_sq(const Eigen::MatrixBase<Derived>& o) {
  JacobiEigenSolver<typename Derived::Scalar> solver(o);
  const auto m = solver.eigenvalues().cwiseAbs().maxCoeff();
  return m * m;
}

/// Oscillating part of tr(O rho(t)) as a sum of cosines over level pairs:
/// tr(O rho(t)) - tr(O omega) = sum_i amplitude_i * cos(frequency_i * t).
template <typename Scalar>
struct Fluctuation {
  std::vector<Scalar> amplitude;
  std::vector<Scalar> frequency;
  Scalar mean = 0;  // tr(O omega)

  Scalar max_frequency() const {
    Scalar m(0);
    for (Scalar f : frequency) m = std::max(m, std::abs(f));
    return m;
  }
};

template <typename Scalar, typename DerivedRho, typename DerivedO>
Fluctuation<Scalar> expectation_fluctuation(const Spectrum<Scalar>& s,
                                            const Eigen::MatrixBase<DerivedRho>& rho0,
                                            const Eigen::MatrixBase<DerivedO>& o) {
  detail::check_density(rho0, s.dim());
  if (o.rows() != s.dim() || o.cols() != s.dim()) throw ValidationError("observable has wrong dimension");
  const DenseMatrix<Scalar> rho_e = s.vectors.transpose() * rho0 * s.vectors;
  const DenseMatrix<Scalar> o_e = s.vectors.transpose() * o * s.vectors;
  const DenseMatrix<Scalar> w = o_e.cwiseProduct(rho_e);  // symmetric

  Fluctuation<Scalar> f;
  const std::size_t levels = s.clusters.size();
  for (std::size_t i = 0; i < levels; ++i) {
    const Cluster& ci = s.clusters[i];
    f.mean += w.block(ci.begin, ci.begin, ci.size, ci.size).sum();
    for (std::size_t j = i + 1; j < levels; ++j) {
      const Cluster& cj = s.clusters[j];
      const Scalar a = 2 * w.block(ci.begin, cj.begin, ci.size, cj.size).sum();
      if (a == Scalar(0)) continue;
      f.amplitude.push_back(a);
      f.frequency.push_back(s.level(j) - s.level(i));
    }
  }
  return f;
}

namespace detail {

// Trapezoidal mean of (sum_i a_i cos(w_i t))^2 over [0, tau] with `steps`
// equal intervals. Phasors are advanced by rotation and re-anchored
// periodically to bound drift.
template <typename Scalar>
Scalar trapezoid_mean_sq(const Fluctuation<Scalar>& f, Scalar tau, long steps) {
  using Complex = std::complex<Scalar>;
  const Scalar h = tau / Scalar(steps);
  const std::size_t m = f.amplitude.size();
  std::vector<Complex> z(m, Complex(1)), step(m);
  for (std::size_t i = 0; i < m; ++i) step[i] = std::polar(Scalar(1), f.frequency[i] * h);

  Scalar acc(0);
  for (long k = 0; k <= steps; ++k) {
    if (k > 0 && k % 512 == 0) {
      for (std::size_t i = 0; i < m; ++i) z[i] = std::polar(Scalar(1), f.frequency[i] * h * Scalar(k));
    }
    Scalar d(0);
    for (std::size_t i = 0; i < m; ++i) d += f.amplitude[i] * z[i].real();
    const Scalar g = d * d;
    acc += (k == 0 || k == steps) ? g / 2 : g;
    for (std::size_t i = 0; i < m; ++i) z[i] *= step[i];
  }
  return acc * h / tau;
}

}  // namespace detail

/// <|tr(O rho(t)) - tr(O omega)|^2>_tau by the trapezoidal rule, halving the
/// step from `dt` until two successive estimates agree to 1e-4 relative.
template <typename Scalar>
Scalar empirical_lhs(const Fluctuation<Scalar>& f, Scalar tau, Scalar dt) {
  if (!(tau > 0)) throw ValidationError("tau must be positive");
  if (!(dt > 0) || dt > tau / 100) throw ValidationError("quadrature step must satisfy 0 < dt <= tau/100");
  if (f.amplitude.empty()) return Scalar(0);

  Scalar scale(0);
  for (Scalar a : f.amplitude) scale += std::abs(a);
  const Scalar floor = Scalar(1e-14) * std::max(Scalar(1), scale * scale);

  long steps = static_cast<long>(std::ceil(tau / dt));
  Scalar previous = detail::trapezoid_mean_sq(f, tau, steps);
  for (int halving = 1; halving <= 6; ++halving) {
    steps *= 2;
    const Scalar current = detail::trapezoid_mean_sq(f, tau, steps);
    const Scalar change = std::abs(current - previous);
    if (change <= Scalar(1e-4) * std::abs(current) || change <= floor) return current;
    previous = current;
    if (halving == 6) {
      throw ConvergenceError("empirical time average did not converge at tau=" + std::to_string(double(tau)) +
                             ": last estimates " + std::to_string(double(previous)) + " and " +
                             std::to_string(double(current)));
    }
  }
  return previous;
}

template <typename Scalar, typename DerivedRho, typename DerivedO>
Scalar empirical_lhs(const Spectrum<Scalar>& s, const Eigen::MatrixBase<DerivedRho>& rho0,
                     const Eigen::MatrixBase<DerivedO>& o, Scalar tau, Scalar dt) {
  return empirical_lhs(expectation_fluctuation(s, rho0, o), tau, dt);
}

/// Initial quadrature step: four samples per period of the fastest component
/// of the squared fluctuation, capped at tau/100.
template <typename Scalar>
Scalar default_quadrature_step(const Fluctuation<Scalar>& f, Scalar tau) {
  const Scalar cap = tau / 100;
  const Scalar w = f.max_frequency();
  if (w == Scalar(0)) return cap;
  return std::min(cap, std::numbers::pi_v<Scalar> / (4 * w));
}

/// `count` logarithmically spaced points in [lo, hi].
inline std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0) || !(hi > lo) || count < 2) throw ValidationError("log grid needs 0 < lo < hi and count >= 2");
  std::vector<double> g(count);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < count; ++i) g[i] = std::exp(a + (b - a) * i / (count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

inline std::vector<double> default_tau_grid() { return log_grid(0.1, 1e3, 60); }

struct EquilibrationReport {
  double d_eff = 0;
  int n_lambda = 0;
  int n_eps = 0;                       // computed from the spectrum
  std::optional<int> n_eps_override;   // used in rhs when set
  double epsilon = 1;
  double operator_norm_sq = 0;
  double time_averaged_expectation = 0;  // tr(O omega)
  std::vector<double> tau_grid;
  std::vector<double> lhs;
  std::vector<double> rhs;

  int n_eps_used() const { return n_eps_override.value_or(n_eps); }
  double asymptote() const { return operator_norm_sq * n_eps_used() / d_eff; }
  bool bound_holds() const {
    for (std::size_t i = 0; i < lhs.size(); ++i)
      if (lhs[i] > rhs[i] + 1e-6) return false;
    return true;
  }
};

struct EquilibrationOptions {
  std::optional<int> n_eps_override;
  double degeneracy_tol = kDefaultDegeneracyTol;
};

/// Equilibration bound ingredients and both sides of the inequality for a
/// walk started at `start` (rho0 = |start><start|).
template <typename DerivedO>
EquilibrationReport equilibration_report(const SpectrumD& s, int start,
                                         const Eigen::MatrixBase<DerivedO>& o,
                                         std::span<const double> tau_grid, double epsilon,
                                         const EquilibrationOptions& opts = {}) {
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] > 0) || (i > 0 && !(tau_grid[i] > tau_grid[i - 1]))) {
      throw ValidationError("tau grid must be positive and strictly increasing");
    }
  }
  if (opts.n_eps_override && *opts.n_eps_override < 1) throw ValidationError("N(eps) override must be >= 1");

  const auto rho0 = node_projector(s.dim(), start);
  const auto projectors = eigenspace_projectors(s);

  EquilibrationReport r;
  r.d_eff = effective_dimension(projectors, rho0);
  r.n_lambda = static_cast<int>(s.n_distinct());
  r.n_eps = gap_count(s, epsilon);
  r.n_eps_override = opts.n_eps_override;
  r.epsilon = epsilon;
  r.operator_norm_sq = operator_norm_sq(o);
  r.tau_grid.assign(tau_grid.begin(), tau_grid.end());

  const auto fluct = expectation_fluctuation(s, rho0, o);
  r.time_averaged_expectation = fluct.mean;
  // A single level has no gaps; N(eps) = 0 would make the bound vacuous.
  const double n_eps_rhs = std::max(1, r.n_eps_used());
  for (double tau : tau_grid) {
    r.lhs.push_back(empirical_lhs(fluct, tau, default_quadrature_step(fluct, tau)));
    r.rhs.push_back(bound_rhs(r.d_eff, std::max(1, r.n_lambda), n_eps_rhs, r.operator_norm_sq, epsilon, tau));
  }
  return r;
}

template <typename DerivedO>
EquilibrationReport equilibration_report(const Graph& g, int start, const Eigen::MatrixBase<DerivedO>& o,
                                         std::span<const double> tau_grid, double epsilon,
                                         const EquilibrationOptions& opts = {}) {
  return equilibration_report(eigendecompose(adjacency(g), opts.degeneracy_tol), start, o, tau_grid,
                              epsilon, opts);
}

}  // namespace qwalk
