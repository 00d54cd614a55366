#pragma once

// Newton operators (affine and projective), the condition number mu, and
// the approximate-zero certificates built on them.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "certhom/bw_metric.hpp"
#include "certhom/linalg.hpp"

namespace certhom {

/// Radius constant of the projective approximate-zero criterion.
inline constexpr double kU0 = 0.17586;

inline BorderedMatrix bordered_jacobian(const PolySystem& h, const CVector& z) {
  return BorderedMatrix(jacobian(h, z), z);
}

/// One affine Newton step x - Df(x)^{-1} f(x).
inline CVector newton_affine(const AffineSystem& f, const CVector& x) {
  const SquareSolver solver(jacobian(f, x));
  return x - solver.solve(evaluate(f, x));
}

/// One projective Newton step z - (Dh(z); z^*)^{-1} (h(z); 0), renormalized.
inline ProjectivePoint newton_projective(const PolySystem& h, const CVector& z) {
  const SquareSolver solver(bordered_jacobian(h, z));
  CVector rhs = CVector::Zero(z.size());
  rhs.head(h.num_equations()) = evaluate(h, z);
  return ProjectivePoint(z - solver.solve(rhs));
}

inline ProjectivePoint newton_projective(const PolySystem& h, const ProjectivePoint& z) {
  return newton_projective(h, z.coords());
}

/// mu(h, z) = |h| |(Dh(z)|_{z^perp})^{-1} Diag(|z|^{d_i - 1} d_i^{1/2})|.
/// The restricted inverse is realized by the bordered system, whose solutions
/// lie in z^perp. Returns +inf when that system is singular.
inline double condition_mu(const PolySystem& h, const CVector& z) {
  const int n = h.num_equations();
  try {
    const SquareSolver solver(bordered_jacobian(h, z));
    const double znorm = z.norm();
    CMatrix rhs = CMatrix::Zero(n + 1, n);
    for (int i = 0; i < n; ++i) {
      const int d = h.degrees()[i];
      rhs(i, i) = std::pow(znorm, d - 1) * std::sqrt(static_cast<double>(d));
    }
    return bw_norm(h) * spectral_norm(solver.solve(rhs));
  } catch (const SingularSolveError&) {
    return std::numeric_limits<double>::infinity();
  }
}

inline double condition_mu(const PolySystem& h, const ProjectivePoint& z) { return condition_mu(h, z.coords()); }

struct CertifiedZero {
  ProjectivePoint point;
  double mu = std::numeric_limits<double>::infinity();
  /// u0 / (d^{3/2} mu).
  double radius = 0.0;
};

struct Certificate {
  bool certified = false;
  double distance = 0.0;
  CertifiedZero zero;
  std::string reason;
};

inline double approximate_zero_radius(int max_degree, double mu, double u0 = kU0) {
  return u0 / (std::pow(static_cast<double>(max_degree), 1.5) * mu);
}

namespace detail {

inline Certificate certify(const PolySystem& h, const ProjectivePoint& z, const ProjectivePoint& zeta,
                           double radius_scale) {
  Certificate cert;
  cert.zero.point = zeta;
  cert.zero.mu = condition_mu(h, zeta);
  cert.distance = riemann_distance(z, zeta);
  if (!std::isfinite(cert.zero.mu)) {
    cert.reason = "condition number is infinite at the reference zero";
    return cert;
  }
  cert.zero.radius = approximate_zero_radius(h.degrees().max_degree(), cert.zero.mu);
  cert.certified = cert.distance <= radius_scale * cert.zero.radius;
  if (!cert.certified) cert.reason = "distance to the reference zero exceeds the certified radius";
  return cert;
}

}  // namespace detail

/// z is an approximate zero with associated zero zeta when
/// d_R(z, zeta) <= u0 / (d^{3/2} mu(h, zeta)).
inline Certificate certify_projective(const PolySystem& h, const ProjectivePoint& z, const ProjectivePoint& zeta) {
  return detail::certify(h, z, zeta, 1.0);
}

/// Start condition for tracking: the same test with half the radius.
inline bool certify_start(const PolySystem& h, const ProjectivePoint& z, const ProjectivePoint& zeta) {
  return detail::certify(h, z, zeta, 0.5).certified;
}

/// Number of projective Newton steps that turns a certified projective
/// approximate zero into an affine one when |eta| <= norm_bound.
inline int affine_refinement_steps(double norm_bound) {
  const double inner = std::log2(std::log2(4.0 * (1.0 + norm_bound * norm_bound)));
  return std::max(0, static_cast<int>(std::ceil(inner)));
}

/// Probabilistic bound D sqrt(pi n) / delta on affine root norms of a
/// unit-norm system, holding with probability > 1 - delta.
inline double default_affine_norm_bound(const DegreeVector& degrees, double delta = 0.01) {
  return static_cast<double>(degrees.bezout_number()) *
         std::sqrt(std::numbers::pi * static_cast<double>(degrees.num_equations())) / delta;
}

inline CVector projective_to_affine(const PolySystem& h, const ProjectivePoint& z, double norm_bound) {
  ProjectivePoint current = z;
  const int steps = affine_refinement_steps(norm_bound);
  for (int l = 0; l < steps; ++l) current = newton_projective(h, current);
  const Complex z0 = current[0];
  if (std::abs(z0) <= 1e-10) throw AffineRootAtInfinityError("refined point lies on the hyperplane X_0 = 0");
  return current.coords().tail(current.size() - 1) / z0;
}

inline CVector projective_to_affine(const PolySystem& h, const ProjectivePoint& z) {
  return projective_to_affine(h, z, default_affine_norm_bound(h.degrees()));
}

/// Projective Newton iterated until successive iterates are within `tol` in
/// d_R. An iteration that stalls at the rounding floor (step below 1e-11 and
/// no longer shrinking) also counts as converged; ill-conditioned zeros never
/// get below ~mu * 1e-16.
inline ProjectivePoint refine(const PolySystem& h, const ProjectivePoint& z, int max_iters = 50,
                              double tol = 1e-14) {
  ProjectivePoint current = z;
  double previous_step = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iters; ++iter) {
    ProjectivePoint next = newton_projective(h, current);
    const double step = riemann_distance(next, current);
    current = std::move(next);
    if (step < tol) return current;
    if (step < 1e-11 && step >= previous_step) return current;
    previous_step = step;
  }
  throw ConvergenceError("Newton refinement did not converge");
}

}  // namespace certhom
