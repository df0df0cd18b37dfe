#pragma once

#include "qwalk/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace qwalk {

/// Cyclic Jacobi eigensolver for dense real symmetric matrices.
///
/// Sweeps the strict upper triangle row by row, annihilating each (p,q)
/// entry with a plane rotation, until the off-diagonal Frobenius norm falls
/// below `tolerance()`. Rotation order is fixed, so identical input gives
/// bit-identical output. Eigenvalues are returned ascending; each eigenvector
/// column is signed so its largest-magnitude entry (first on ties) is positive.
template <typename Scalar>
class JacobiEigenSolver {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  JacobiEigenSolver() = default;

  template <typename Derived>
  explicit JacobiEigenSolver(const Eigen::MatrixBase<Derived>& a) {
    compute(a);
  }

  JacobiEigenSolver& set_tolerance(Scalar tol) {
    tolerance_ = tol;
    return *this;
  }
  JacobiEigenSolver& set_max_sweeps(int sweeps) {
    max_sweeps_ = sweeps;
    return *this;
  }
  Scalar tolerance() const { return tolerance_; }

  template <typename Derived>
  JacobiEigenSolver& compute(const Eigen::MatrixBase<Derived>& input) {
    const Eigen::Index n = input.rows();
    if (input.cols() != n) throw ValidationError("Jacobi solver needs a square matrix");
    if (n > 0 && (input - input.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-12)) {
      throw ValidationError("Jacobi solver needs a symmetric matrix");
    }

    Matrix a = input;
    Matrix v = Matrix::Identity(n, n);
    sweeps_ = 0;

    auto off_norm = [&] {
      Scalar s(0);
      for (Eigen::Index q = 1; q < n; ++q)
        for (Eigen::Index p = 0; p < q; ++p) s += 2 * a(p, q) * a(p, q);
      return std::sqrt(s);
    };

    while (off_norm() >= tolerance_) {
      if (sweeps_ == max_sweeps_) {
        throw ConvergenceError("Jacobi solver did not converge in " + std::to_string(max_sweeps_) +
                               " sweeps (off-diagonal norm " + std::to_string(double(off_norm())) +
                               ")");
      }
      ++sweeps_;
      for (Eigen::Index p = 0; p + 1 < n; ++p) {
        for (Eigen::Index q = p + 1; q < n; ++q) {
          const Scalar apq = a(p, q);
          if (apq == Scalar(0)) continue;
          // Symmetric Schur decomposition of the 2x2 block (p,q).
          const Scalar theta = (a(q, q) - a(p, p)) / (2 * apq);
          const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) /
                           (std::abs(theta) + std::sqrt(Scalar(1) + theta * theta));
          const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
          const Scalar s = t * c;
          rotate(a, v, p, q, c, s, t, apq);
        }
      }
    }

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });
    values_.resize(n);
    vectors_.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      values_(k) = a(order[k], order[k]);
      vectors_.col(k) = v.col(order[k]);
      Eigen::Index lead = 0;
      vectors_.col(k).cwiseAbs().maxCoeff(&lead);
      if (vectors_(lead, k) < 0) vectors_.col(k) *= Scalar(-1);
    }
    return *this;
  }

  const Vector& eigenvalues() const { return values_; }
  const Matrix& eigenvectors() const { return vectors_; }
  int sweeps() const { return sweeps_; }

 private:
  static void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q, Scalar c, Scalar s,
                     Scalar t, Scalar apq) {
    const Eigen::Index n = a.rows();
    const Scalar tau = s / (Scalar(1) + c);
    a(p, p) -= t * apq;
    a(q, q) += t * apq;
    a(p, q) = a(q, p) = Scalar(0);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == p || r == q) continue;
      const Scalar arp = a(r, p);
      const Scalar arq = a(r, q);
      a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
      a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      const Scalar vrp = v(r, p);
      const Scalar vrq = v(r, q);
      v(r, p) = vrp - s * (vrq + tau * vrp);
      v(r, q) = vrq + s * (vrp - tau * vrq);
    }
  }

  Scalar tolerance_ = Scalar(1e-12);
  int max_sweeps_ = 100;
  int sweeps_ = 0;
  Vector values_;
  Matrix vectors_;
};

}  // namespace qwalk
