#pragma once

// Bombieri-Weyl geometry on spaces of homogeneous systems, the Riemannian
// distance on projective space, and unitary changes of coordinates.

#include <algorithm>
#include <cmath>
#include <vector>

#include "certhom/poly_core.hpp"

namespace certhom {

/// <h, h'> = sum_i sum_a C(d_i; a)^{-1} a^i_a conj(b^i_a).
template <class Tag>
Complex bw_inner(const DenseSystem<Tag>& h, const DenseSystem<Tag>& h2) {
  h.require_same_shape(h2);
  Complex sum = 0.0;
  for (int i = 0; i < h.num_equations(); ++i) {
    const auto& basis = h.basis(i);
    const CVector& a = h.coeffs(i);
    const CVector& b = h2.coeffs(i);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const auto idx = static_cast<Eigen::Index>(k);
      sum += a(idx) * std::conj(b(idx)) / basis.multinomial(k);
    }
  }
  return sum;
}

/// Affine systems get the norm of their homogenization, which shares storage.
template <class Tag>
double bw_norm(const DenseSystem<Tag>& h) {
  double sum = 0.0;
  for (int i = 0; i < h.num_equations(); ++i) {
    const auto& basis = h.basis(i);
    const CVector& a = h.coeffs(i);
    for (std::size_t k = 0; k < basis.size(); ++k) sum += std::norm(a(static_cast<Eigen::Index>(k))) / basis.multinomial(k);
  }
  return std::sqrt(sum);
}

/// A system on the Bombieri-Weyl unit sphere.
class SphereSystem {
 public:
  SphereSystem() = default;

  /// Wraps a system that is already unit-norm (to 1e-10); throws otherwise.
  static SphereSystem from_unit(PolySystem h) {
    const double norm = bw_norm(h);
    if (std::abs(norm - 1.0) > 1e-10) throw DimensionError("system is not on the unit sphere");
    return SphereSystem(std::move(h));
  }

  const PolySystem& system() const { return system_; }
  const DegreeVector& degrees() const { return system_.degrees(); }
  operator const PolySystem&() const { return system_; }

 private:
  friend SphereSystem normalize_to_sphere(const PolySystem& h);
  explicit SphereSystem(PolySystem h) : system_(std::move(h)) {}

  PolySystem system_;
};

inline SphereSystem normalize_to_sphere(const PolySystem& h) {
  const double norm = bw_norm(h);
  if (!(norm > 0.0)) throw DimensionError("cannot normalize the zero system");
  return SphereSystem(h * Complex(1.0 / norm));
}

/// Riemannian distance on P(C^{n+1}), in [0, pi/2].
///
/// Equal to arccos(|<z,w>| / (|z| |w|)) but evaluated as the angle between
/// w and its projection onto z, which keeps full relative accuracy for
/// nearby points where the arccos form bottoms out near 1e-8.
inline double riemann_distance(const CVector& z, const CVector& w) {
  if (z.size() != w.size()) throw DimensionError("points live in different projective spaces");
  const CVector zu = z / z.norm();
  const CVector wu = w / w.norm();
  const Complex overlap = zu.dot(wu);  // conj(z)^T w
  const double cos_part = std::min(std::abs(overlap), 1.0);
  const double sin_part = (wu - overlap * zu).norm();
  return std::atan2(sin_part, cos_part);
}

inline double riemann_distance(const ProjectivePoint& z, const ProjectivePoint& w) {
  return riemann_distance(z.coords(), w.coords());
}

/// Product of two homogeneous polynomials in the same variables.
inline CVector multiply_polynomials(const CVector& a, const MonomialBasis& basis_a, const CVector& b,
                                    const MonomialBasis& basis_b) {
  if (basis_a.num_vars() != basis_b.num_vars()) throw DimensionError("variable count mismatch");
  const auto product_basis = MonomialBasis::get(basis_a.num_vars(), basis_a.degree() + basis_b.degree());
  CVector out = CVector::Zero(static_cast<Eigen::Index>(product_basis->size()));
  std::vector<int> sum(static_cast<std::size_t>(basis_a.num_vars()));
  for (std::size_t p = 0; p < basis_a.size(); ++p) {
    const Complex ap = a(static_cast<Eigen::Index>(p));
    if (ap == Complex(0.0)) continue;
    const auto alpha = basis_a.exponents(p);
    for (std::size_t q = 0; q < basis_b.size(); ++q) {
      const Complex bq = b(static_cast<Eigen::Index>(q));
      if (bq == Complex(0.0)) continue;
      const auto beta = basis_b.exponents(q);
      for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = alpha[j] + beta[j];
      out(static_cast<Eigen::Index>(product_basis->index_of(sum))) += ap * bq;
    }
  }
  return out;
}

/// Powers 0..max_power of a linear form given by its coefficients on X_0..X_n.
inline std::vector<CVector> linear_form_powers(const CVector& form, int max_power) {
  const int vars = static_cast<int>(form.size());
  std::vector<CVector> powers;
  powers.push_back(CVector::Constant(1, 1.0));
  const auto linear = MonomialBasis::get(vars, 1);
  for (int k = 1; k <= max_power; ++k) {
    powers.push_back(
        multiply_polynomials(powers.back(), *MonomialBasis::get(vars, k - 1), form, *linear));
  }
  return powers;
}

inline bool is_unitary(const CMatrix& u, double tol = 1e-10) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm() <= tol;
}

/// The system z -> h(U z), re-expanded in the dense monomial basis.
inline PolySystem unitary_compose(const PolySystem& h, const CMatrix& u) {
  const int vars = h.num_variables();
  if (u.rows() != vars || u.cols() != vars) throw DimensionError("unitary has wrong size");
  if (!is_unitary(u)) throw DimensionError("matrix is not unitary within 1e-10");

  const int max_degree = h.degrees().max_degree();
  // (Uz)_j is the linear form with coefficients U(j, :).
  std::vector<std::vector<CVector>> form_powers;
  for (int j = 0; j < vars; ++j) form_powers.push_back(linear_form_powers(u.row(j).transpose(), max_degree));

  PolySystem out(h.degrees());
  for (int i = 0; i < h.num_equations(); ++i) {
    const auto& basis = h.basis(i);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Complex ck = h.coeffs(i)(static_cast<Eigen::Index>(k));
      if (ck == Complex(0.0)) continue;
      const auto alpha = basis.exponents(k);
      CVector term = CVector::Constant(1, ck);
      int degree = 0;
      for (int j = 0; j < vars; ++j) {
        const int aj = alpha[static_cast<std::size_t>(j)];
        if (aj == 0) continue;
        term = multiply_polynomials(term, *MonomialBasis::get(vars, degree),
                                    form_powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(aj)],
                                    *MonomialBasis::get(vars, aj));
        degree += aj;
      }
      out.coeffs(i) += term;
    }
  }
  return out;
}

}  // namespace certhom
