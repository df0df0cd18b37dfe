#pragma once

#include "qwalk/error.hpp"
#include "qwalk/random.hpp"
#include "qwalk/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace qwalk {

/// <lambda_m|O|lambda_n> with rows and columns in ascending-eigenvalue order.
template <typename Scalar>
struct EnergyBasisObservable {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> o_mn;
  BasisKind basis = BasisKind::Plain;
};

template <typename Scalar, typename Derived>
EnergyBasisObservable<Scalar> observable_in_energy_basis(const Spectrum<Scalar>& s,
                                                         const Eigen::MatrixBase<Derived>& o) {
  if (o.rows() != s.dim() || o.cols() != s.dim()) {
    throw ValidationError("observable is " + std::to_string(o.rows()) + "x" + std::to_string(o.cols()) +
                          " but the spectrum has dimension " + std::to_string(s.dim()));
  }
  return {s.vectors.transpose() * o * s.vectors, s.basis};
}

/// O = sum_x x |x><x|, the mean node label.
inline Eigen::MatrixXd position_observable(Eigen::Index n) {
  if (n < 1) throw ValidationError("position observable needs n >= 1");
  return Eigen::VectorXd::LinSpaced(n, 1.0, double(n)).asDiagonal();
}

struct DiagonalStats {
  double mean = 0;
  double std = 0;  // population standard deviation
};

template <typename Derived>
DiagonalStats diagonal_stats(const Eigen::MatrixBase<Derived>& d) {
  const double mean = d.mean();
  const double var = (d.array() - mean).square().mean();
  return {mean, std::sqrt(var)};
}

/// Mean and spread of {<lambda_m|x><x|lambda_m>}_m. The mean is always 1/N.
template <typename Scalar>
DiagonalStats projector_eth_stats(const Spectrum<Scalar>& s, int x) {
  if (x < 1 || x > s.dim()) throw ValidationError("node " + std::to_string(x) + " out of range");
  return diagonal_stats(s.vectors.row(x - 1).cwiseAbs2().transpose().template cast<double>());
}

/// Shannon entropy (natural log) of a probability vector; entries below
/// 1e-15 contribute nothing.
template <typename Derived>
double shannon_entropy(const Eigen::MatrixBase<Derived>& p) {
  double e = 0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    const double pk = double(p(k));
    if (pk >= 1e-15) e -= pk * std::log(pk);
  }
  return e;
}

/// Entropy of the energy-measurement distribution p_k = |<lambda_k|x>|^2.
template <typename Scalar>
double measurement_entropy(const Spectrum<Scalar>& s, int x) {
  if (x < 1 || x > s.dim()) throw ValidationError("node " + std::to_string(x) + " out of range");
  return shannon_entropy(s.vectors.row(x - 1).cwiseAbs2());
}

/// Real unit vector uniformly distributed on the sphere S^{n-1}.
inline Eigen::VectorXd haar_orthogonal_state(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("state dimension must be >= 1");
  const CounterRng rng(seed);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.normal(static_cast<std::uint64_t>(i));
  return v.normalized();
}

struct EntropySample {
  double mean = 0;
  double std = 0;
  std::vector<double> values;
};

/// Entropies of |v_k|^2 for `samples` Haar-orthogonal states keyed by
/// seed, seed+1, ... (reduced in index order).
inline EntropySample haar_entropy_baseline(Eigen::Index n, int samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("need at least one sample");
  EntropySample out;
  Eigen::VectorXd e(samples);
  for (int i = 0; i < samples; ++i) {
    e(i) = shannon_entropy(haar_orthogonal_state(n, seed + static_cast<std::uint64_t>(i)).cwiseAbs2());
    out.values.push_back(e(i));
  }
  const auto st = diagonal_stats(e);
  out.mean = st.mean;
  out.std = st.std;
  return out;
}

/// Node-state measurement entropies over all nodes of the spectrum.
template <typename Scalar>
EntropySample node_entropies(const Spectrum<Scalar>& s) {
  EntropySample out;
  Eigen::VectorXd e(s.dim());
  for (Eigen::Index x = 0; x < s.dim(); ++x) {
    e(x) = measurement_entropy(s, int(x + 1));
    out.values.push_back(e(x));
  }
  const auto st = diagonal_stats(e);
  out.mean = st.mean;
  out.std = st.std;
  return out;
}

/// tr(P_n O) / rank(P_n) for every cluster. Independent of the basis chosen
/// inside degenerate eigenspaces.
template <typename Scalar, typename Derived>
Eigen::VectorXd cluster_averaged_diagonal(const Spectrum<Scalar>& s, const Eigen::MatrixBase<Derived>& o) {
  Eigen::VectorXd out(s.n_distinct());
  for (std::size_t j = 0; j < s.clusters.size(); ++j) {
    const auto block = s.vectors.middleCols(s.clusters[j].begin, s.clusters[j].size);
    out(j) = double((block.transpose() * o * block).trace()) / double(s.clusters[j].size);
  }
  return out;
}

struct EthReport {
  BasisKind basis = BasisKind::Plain;
  double diag_mean = 0;
  double diag_std = 0;
  double offdiag_rms = 0;
  Eigen::VectorXd diagonal;
  Eigen::VectorXd cluster_diagonal;
};

template <typename Scalar, typename Derived>
EthReport eth_report(const Spectrum<Scalar>& s, const Eigen::MatrixBase<Derived>& o) {
  const auto e = observable_in_energy_basis(s, o);
  EthReport r;
  r.basis = e.basis;
  r.diagonal = e.o_mn.diagonal().template cast<double>();
  const auto st = diagonal_stats(r.diagonal);
  r.diag_mean = st.mean;
  r.diag_std = st.std;
  const Eigen::Index n = s.dim();
  if (n > 1) {
    const double off = e.o_mn.squaredNorm() - e.o_mn.diagonal().squaredNorm();
    r.offdiag_rms = std::sqrt(std::max(0.0, off) / double(n * (n - 1)));
  }
  r.cluster_diagonal = cluster_averaged_diagonal(s, o);
  return r;
}

struct SymmetryCheck {
  bool ok = false;
  double amplitude_residual = 0;  // max_{k,x} ||v_k[x]| - |v_k[n+1-x]||
  double position_residual = 0;   // max_m |O_mm - (n+1)/2| for the position observable
};

/// Mirror symmetry of eigenvector magnitudes under x <-> n+1-x and the flat
/// position diagonal (n+1)/2 it implies.
template <typename Scalar>
SymmetryCheck eth_symmetry_check(const Spectrum<Scalar>& s, double tol = 1e-10) {
  const auto mags = s.vectors.cwiseAbs();
  SymmetryCheck c;
  c.amplitude_residual = double((mags - mags.colwise().reverse()).cwiseAbs().maxCoeff());
  const auto pos = observable_in_energy_basis(s, position_observable(s.dim()).template cast<Scalar>());
  c.position_residual = double((pos.o_mn.diagonal().array() - Scalar(s.dim() + 1) / 2).abs().maxCoeff());
  c.ok = c.amplitude_residual < tol && c.position_residual < 1e-9;
  return c;
}

}  // namespace qwalk
