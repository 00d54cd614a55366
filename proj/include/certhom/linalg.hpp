#pragma once

// Small dense complex linear algebra: bordered solves, operator norms,
// kernels and random unitaries. Backed by Eigen's LU, SVD and QR.

#include <cmath>

#include "certhom/types.hpp"

namespace certhom {

/// Reciprocal-condition threshold below which a bordered system is treated
/// as singular.
inline constexpr double kSingularRcond = 1e-14;

/// The square matrix (Dh(z); z^*) obtained by appending the conjugated point
/// as a last row under the n x (n+1) Jacobian.
class BorderedMatrix {
 public:
  BorderedMatrix(const CMatrix& jac, const CVector& border) {
    if (jac.cols() != border.size() || jac.rows() + 1 != jac.cols()) {
      throw DimensionError("bordered matrix needs an n x (n+1) Jacobian and an (n+1)-vector");
    }
    matrix_.resize(jac.cols(), jac.cols());
    matrix_.topRows(jac.rows()) = jac;
    matrix_.row(jac.rows()) = border.adjoint();
  }

  const CMatrix& matrix() const { return matrix_; }
  Eigen::Index size() const { return matrix_.rows(); }

 private:
  CMatrix matrix_;
};

/// LU factorization of a square matrix, reused across several right-hand
/// sides. Construction throws SingularSolveError when the estimated
/// reciprocal condition number is below kSingularRcond.
class SquareSolver {
 public:
  explicit SquareSolver(const CMatrix& a) : lu_(a) {
    const double rc = a.size() == 0 ? 0.0 : lu_.rcond();
    if (!(rc >= kSingularRcond)) throw SingularSolveError("linear system is numerically singular");
    rcond_ = rc;
  }
  explicit SquareSolver(const BorderedMatrix& b) : SquareSolver(b.matrix()) {}

  double rcond() const { return rcond_; }

  template <class Rhs>
  auto solve(const Rhs& rhs) const {
    return lu_.solve(rhs).eval();
  }

 private:
  Eigen::PartialPivLU<CMatrix> lu_;
  double rcond_ = 0.0;
};

inline CVector bordered_solve(const BorderedMatrix& b, const CVector& rhs) {
  if (rhs.size() != b.size()) throw DimensionError("right-hand side has wrong length");
  return SquareSolver(b).solve(rhs);
}

/// Largest singular value.
inline double spectral_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

/// Unit vector spanning the kernel of a rank-n, n x (n+1) matrix, multiplied
/// by a uniformly random unit phase.
inline CVector kernel_vector(const CMatrix& m, Rng& rng) {
  if (m.cols() != m.rows() + 1) throw DimensionError("kernel_vector expects an n x (n+1) matrix");
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv.size() > 0 && !(sv(sv.size() - 1) > 1e-10 * sv(0))) {
    throw RankDeficiencyError("matrix has a kernel of dimension greater than one");
  }
  CVector zeta = svd.matrixV().col(m.cols() - 1);
  zeta /= zeta.norm();
  return zeta * random_phase(rng);
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of diag(R) moved into Q.
inline CMatrix random_unitary(Eigen::Index size, Rng& rng) {
  if (size < 1) throw DimensionError("unitary size must be positive");
  CMatrix z(size, size);
  for (Eigen::Index j = 0; j < size; ++j) {
    for (Eigen::Index i = 0; i < size; ++i) z(i, j) = complex_gaussian(rng);
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < size; ++k) {
    const double mag = std::abs(r(k, k));
    const Complex phase = mag > 0.0 ? r(k, k) / mag : Complex(1.0);
    q.col(k) *= phase;
  }
  return q;
}

/// Unitary V with V e_0 = zeta (so V^* zeta = e_0): a complex Householder
/// reflection composed with a phase on the first coordinate.
inline CMatrix unitary_mapping_to_e0(const CVector& zeta) {
  const Eigen::Index size = zeta.size();
  if (size < 1 || std::abs(zeta.norm() - 1.0) > 1e-10) {
    throw DimensionError("unitary_mapping_to_e0 needs a unit vector");
  }
  const double mag0 = std::abs(zeta(0));
  const Complex phase = mag0 > 0.0 ? zeta(0) / mag0 : Complex(1.0);

  // x = phase * e_0 has x^* zeta real and |x| = |zeta|, so the reflection
  // across (x - zeta)^perp swaps them.
  CVector v = -zeta;
  v(0) += phase;
  CMatrix reflect = CMatrix::Identity(size, size);
  const double vv = v.squaredNorm();
  if (vv > 1e-30) reflect -= (2.0 / vv) * v * v.adjoint();

  CMatrix result = reflect;
  result.col(0) *= phase;
  return result;
}

}  // namespace certhom
