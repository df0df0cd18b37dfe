#pragma once

#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/jacobi.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qwalk {

inline constexpr double kDefaultDegeneracyTol = 1e-6;

/// Contiguous run [begin, begin + size) of ascending eigenvalue indices that
/// share one energy level.
struct Cluster {
  Eigen::Index begin = 0;
  Eigen::Index size = 0;
  Eigen::Index end() const { return begin + size; }
};

enum class BasisKind { Plain, SymmetryAdapted };

inline const char* to_string(BasisKind b) {
  return b == BasisKind::Plain ? "plain" : "symmetry-adapted";
}

template <typename Scalar>
struct Spectrum {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector values;   // ascending
  Matrix vectors;  // orthonormal columns, vectors.col(k) pairs with values(k)
  std::vector<Cluster> clusters;
  BasisKind basis = BasisKind::Plain;
  // Only for the symmetry-adapted basis: -1 for the antisymmetric lift
  // [u; -Ju]/sqrt(2), +1 for the symmetric lift [v; Jv]/sqrt(2).
  std::vector<int> parity;

  Eigen::Index dim() const { return values.size(); }
  Eigen::Index n_distinct() const { return static_cast<Eigen::Index>(clusters.size()); }

  /// Mean eigenvalue of cluster j.
  Scalar level(std::size_t j) const {
    return values.segment(clusters[j].begin, clusters[j].size).mean();
  }
};

using SpectrumD = Spectrum<double>;

/// Greedy adjacent-merge clustering of ascending values: a new cluster starts
/// whenever the gap to the previous value exceeds `tol`.
template <typename Derived>
std::vector<Cluster> cluster_eigenvalues(const Eigen::MatrixBase<Derived>& values, double tol) {
  if (!(tol > 0)) throw ValidationError("degeneracy tolerance must be positive");
  std::vector<Cluster> out;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (k > 0 && values(k) < values(k - 1)) {
      throw ValidationError("cluster_eigenvalues needs ascending values");
    }
    if (k == 0 || double(values(k) - values(k - 1)) > tol) {
      out.push_back({k, 1});
    } else {
      ++out.back().size;
    }
  }
  return out;
}

/// Full eigendecomposition of a real symmetric matrix with degeneracy clusters.
template <typename Derived>
Spectrum<typename Derived::Scalar> eigendecompose(const Eigen::MatrixBase<Derived>& a,
                                                  double degeneracy_tol = kDefaultDegeneracyTol) {
  using Scalar = typename Derived::Scalar;
  JacobiEigenSolver<Scalar> solver(a);
  Spectrum<Scalar> s;
  s.values = solver.eigenvalues();
  s.vectors = solver.eigenvectors();
  s.clusters = cluster_eigenvalues(s.values, degeneracy_tol);
  return s;
}

/// Eigenspace projectors P_n = sum_{k in C_n} v_k v_k^T, one per cluster.
template <typename Scalar>
std::vector<typename Spectrum<Scalar>::Matrix> eigenspace_projectors(const Spectrum<Scalar>& s) {
  std::vector<typename Spectrum<Scalar>::Matrix> out;
  out.reserve(s.clusters.size());
  for (const Cluster& c : s.clusters) {
    const auto block = s.vectors.middleCols(c.begin, c.size);
    out.emplace_back(block * block.transpose());
  }
  return out;
}

/// Anti-diagonal exchange matrix of size n.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> exchange_matrix(Eigen::Index n) {
  return Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Identity(n, n).rowwise().reverse();
}

/// Eigenbasis of an even-sized symmetric centrosymmetric matrix
/// A = [[B, JCJ], [C, JBJ]] built from the two half-size blocks B - JC and
/// B + JC. Every column satisfies v[x] = -+ v[n+1-x] exactly by construction.
template <typename Derived>
Spectrum<typename Derived::Scalar> centrosymmetric_eigendecompose(
    const Eigen::MatrixBase<Derived>& a, double degeneracy_tol = kDefaultDegeneracyTol) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = a.rows();
  if (a.cols() != n || n % 2 != 0) {
    throw ValidationError("centrosymmetric split needs an even-sized square matrix");
  }
  const Matrix jn = exchange_matrix<Scalar>(n);
  if ((jn * a * jn - a).cwiseAbs().maxCoeff() > Scalar(1e-12)) {
    throw ValidationError("matrix is not centrosymmetric");
  }
  const Eigen::Index h = n / 2;
  const Matrix jh = exchange_matrix<Scalar>(h);
  const Matrix b = a.topLeftCorner(h, h);
  const Matrix c = a.bottomLeftCorner(h, h);

  JacobiEigenSolver<Scalar> minus(b - jh * c);
  JacobiEigenSolver<Scalar> plus(b + jh * c);

  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  Matrix lifted(n, n);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values(n);
  std::vector<int> parity(n);
  lifted.topLeftCorner(h, h) = r * minus.eigenvectors();
  lifted.bottomLeftCorner(h, h) = -r * (jh * minus.eigenvectors());
  lifted.topRightCorner(h, h) = r * plus.eigenvectors();
  lifted.bottomRightCorner(h, h) = r * (jh * plus.eigenvectors());
  values.head(h) = minus.eigenvalues();
  values.tail(h) = plus.eigenvalues();
  std::fill(parity.begin(), parity.begin() + h, -1);
  std::fill(parity.begin() + h, parity.end(), +1);

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return values(i) < values(j); });

  Spectrum<Scalar> s;
  s.basis = BasisKind::SymmetryAdapted;
  s.values.resize(n);
  s.vectors.resize(n, n);
  s.parity.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    s.values(k) = values(order[k]);
    s.vectors.col(k) = lifted.col(order[k]);
    s.parity[k] = parity[order[k]];
  }
  s.clusters = cluster_eigenvalues(s.values, degeneracy_tol);
  return s;
}

/// Symmetry-adapted eigenbasis of the blocked C60 adjacency.
inline SpectrumD symmetry_adapted_c60_basis(double degeneracy_tol = kDefaultDegeneracyTol) {
  return centrosymmetric_eigendecompose(adjacency(build_c60_blocked()), degeneracy_tol);
}

/// All positive level differences between distinct clusters, ascending.
template <typename Scalar>
std::vector<double> energy_gaps(const Spectrum<Scalar>& s) {
  std::vector<double> gaps;
  for (std::size_t i = 0; i < s.clusters.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) gaps.push_back(double(s.level(i) - s.level(j)));
  std::sort(gaps.begin(), gaps.end());
  return gaps;
}

/// N(epsilon): the largest number of gaps falling in any half-open window
/// [x, x + epsilon).
template <typename Scalar>
int gap_count(const Spectrum<Scalar>& s, double epsilon) {
  if (!(epsilon > 0)) throw ValidationError("epsilon must be positive");
  const auto gaps = energy_gaps(s);
  int best = 0;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < gaps.size(); ++lo) {
    hi = std::max(hi, lo);
    while (hi < gaps.size() && gaps[hi] < gaps[lo] + epsilon) ++hi;
    best = std::max(best, static_cast<int>(hi - lo));
  }
  return best;
}

}  // namespace qwalk
