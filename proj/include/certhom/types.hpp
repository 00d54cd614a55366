#pragma once

// Common scalar/vector aliases, error types and random helpers shared by
// every certhom header.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace certhom {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Seeded generator passed explicitly to every randomized routine.
using Rng = std::mt19937_64;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A bordered (or other square) system whose reciprocal condition fell below
/// the singularity threshold.
class SingularSolveError : public Error {
 public:
  using Error::Error;
};

class DegenerateHomotopyError : public Error {
 public:
  using Error::Error;
};

class AffineRootAtInfinityError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class RankDeficiencyError : public Error {
 public:
  using Error::Error;
};

/// The certified (or heuristic) step size fell below the configured minimum.
class MinStepError : public Error {
 public:
  using Error::Error;
};

class AmbiguousMatchError : public Error {
 public:
  using Error::Error;
};

/// Complex standard normal: real and imaginary parts N(0, 1/2), so E|z|^2 = 1.
inline Complex complex_gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

inline CVector complex_gaussian_vector(Eigen::Index size, Rng& rng) {
  CVector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = complex_gaussian(rng);
  return v;
}

/// Uniform point in the unit ball of C^m: Gaussian direction scaled by a
/// radius distributed as U^(1/(2m)).
inline CVector uniform_in_complex_ball(Eigen::Index m, Rng& rng) {
  CVector v = complex_gaussian_vector(m, rng);
  double norm = v.norm();
  while (norm == 0.0) {
    v = complex_gaussian_vector(m, rng);
    norm = v.norm();
  }
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double radius = std::pow(uniform(rng), 1.0 / (2.0 * static_cast<double>(m)));
  return v * (radius / norm);
}

inline Complex random_phase(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  return std::polar(1.0, angle(rng));
}

/// Deterministic child generator for worker `index` of a run seeded with
/// `master`; results do not depend on how work is scheduled.
inline Rng derive_rng(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

}  // namespace certhom
