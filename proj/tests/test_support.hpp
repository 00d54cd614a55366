#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "certhom/certhom.hpp"

namespace certhom::testing {

/// Dense random system with standard Gaussian coefficients in the monomial basis.
inline PolySystem random_poly(const DegreeVector& degrees, Rng& rng) {
  std::vector<CVector> coeffs;
  for (int i = 0; i < degrees.num_equations(); ++i) {
    const auto size = MonomialBasis::count_monomials(degrees.num_variables(), degrees[i]);
    coeffs.push_back(complex_gaussian_vector(static_cast<Eigen::Index>(size), rng));
  }
  return PolySystem(degrees, std::move(coeffs));
}

inline CVector random_unit_vector(Eigen::Index size, Rng& rng) {
  CVector v = complex_gaussian_vector(size, rng);
  return v / v.norm();
}

/// Spectral norm by power iteration on A^* A; independent of any SVD.
inline double power_iteration_norm(const CMatrix& a, int iters = 2000) {
  CVector v = CVector::Ones(a.cols());
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Complex(1.0 + 0.1 * k, 0.3 * k);
  v /= v.norm();
  double estimate = 0.0;
  for (int it = 0; it < iters; ++it) {
    CVector w = a.adjoint() * (a * v);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    const double next = std::sqrt(norm);
    if (it > 10 && std::abs(next - estimate) <= 1e-15 * next) return next;
    estimate = next;
  }
  return estimate;
}

/// Monomial value z^alpha computed with std::pow, independent of power tables.
inline Complex monomial_value(std::span<const int> alpha, const CVector& z) {
  Complex v = 1.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) v *= std::pow(z(static_cast<Eigen::Index>(j)), alpha[j]);
  return v;
}

/// Evaluation by direct summation over the basis.
inline CVector naive_evaluate(const PolySystem& h, const CVector& z) {
  CVector out(h.num_equations());
  for (int i = 0; i < h.num_equations(); ++i) {
    Complex sum = 0.0;
    for (std::size_t k = 0; k < h.basis(i).size(); ++k) {
      sum += h.coeffs(i)(static_cast<Eigen::Index>(k)) * monomial_value(h.basis(i).exponents(k), z);
    }
    out(i) = sum;
  }
  return out;
}

/// Central finite-difference Jacobian in the complex sense (holomorphic h).
inline CMatrix numeric_jacobian(const PolySystem& h, const CVector& z, double step = 1e-6) {
  CMatrix jac(h.num_equations(), z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    CVector plus = z, minus = z;
    plus(j) += step;
    minus(j) -= step;
    jac.col(j) = (naive_evaluate(h, plus) - naive_evaluate(h, minus)) / (2.0 * step);
  }
  return jac;
}

/// Sample mean and standard error.
struct Moments {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
};

inline Moments moments(const std::vector<double>& xs) {
  Moments m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  const double var = ss / static_cast<double>(xs.size() - 1);
  m.stderr_of_mean = std::sqrt(var / static_cast<double>(xs.size()));
  return m;
}

}  // namespace certhom::testing
