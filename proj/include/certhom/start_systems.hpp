#pragma once

// Start systems and initial pairs for linear homotopies, and the solvers that
// use them: the total-degree start set, the good pair
// (d_i^{1/2} X_0^{d_i-1} X_i; e_0), random pairs with exactly known zeros, and
// random systems on the sphere.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "certhom/bw_metric.hpp"
#include "certhom/linalg.hpp"
#include "certhom/newton.hpp"
#include "certhom/parallel.hpp"
#include "certhom/tracker.hpp"

namespace certhom {

enum class PairKind { TotalDegree, GoodPair, Random, RandomUnitary };

inline std::string to_string(PairKind kind) {
  switch (kind) {
    case PairKind::TotalDegree: return "total";
    case PairKind::GoodPair: return "good";
    case PairKind::Random: return "random";
    case PairKind::RandomUnitary: return "unitary";
  }
  return "unknown";
}

struct InitialPair {
  SphereSystem g;
  ProjectivePoint zeta0;
  PairKind kind = PairKind::GoodPair;
};

/// A start system with all of its D = d_1 ... d_n zeros.
struct StartSet {
  SphereSystem g;
  std::vector<ProjectivePoint> roots;
};

namespace detail {

/// A single monomial of degree `degree` in `vars` variables.
inline std::vector<int> exponent(int vars, std::initializer_list<std::pair<int, int>> powers) {
  std::vector<int> alpha(static_cast<std::size_t>(vars), 0);
  for (auto [var, power] : powers) alpha[static_cast<std::size_t>(var)] += power;
  return alpha;
}

}  // namespace detail

/// gamma * (X_1^{d_1} - X_0^{d_1}, ..., X_n^{d_n} - X_0^{d_n}) normalized to the
/// sphere, with zeros (1, w_1, ..., w_n) / sqrt(n+1) over d_i-th roots of
/// unity w_i. Roots are listed with the first coordinate's root index varying
/// slowest; index 0 is (1, ..., 1) / sqrt(n+1).
inline StartSet total_degree_start(const DegreeVector& degrees, Complex gamma) {
  const int n = degrees.num_equations();
  const int vars = n + 1;
  PolySystem h(degrees);
  for (int i = 0; i < n; ++i) {
    h.coeff(i, detail::exponent(vars, {{i + 1, degrees[i]}})) = gamma;
    h.coeff(i, detail::exponent(vars, {{0, degrees[i]}})) = -gamma;
  }

  StartSet set{normalize_to_sphere(h), {}};
  const std::uint64_t count = degrees.bezout_number();
  set.roots.reserve(static_cast<std::size_t>(count));
  std::vector<int> index(static_cast<std::size_t>(n), 0);
  for (std::uint64_t r = 0; r < count; ++r) {
    CVector z(vars);
    z(0) = 1.0;
    for (int i = 0; i < n; ++i) {
      z(i + 1) = std::polar(1.0, 2.0 * std::numbers::pi * index[static_cast<std::size_t>(i)] / degrees[i]);
    }
    set.roots.emplace_back(std::move(z));
    for (int i = n - 1; i >= 0; --i) {
      if (++index[static_cast<std::size_t>(i)] < degrees[i]) break;
      index[static_cast<std::size_t>(i)] = 0;
    }
  }
  return set;
}

/// Total-degree start set with a uniformly random unit gamma.
inline StartSet total_degree_start(const DegreeVector& degrees, Rng& rng) {
  return total_degree_start(degrees, random_phase(rng));
}

/// (d_i^{1/2} X_0^{d_i - 1} X_i)_i before normalization; its norm is sqrt(n).
inline PolySystem good_system_raw(const DegreeVector& degrees) {
  const int n = degrees.num_equations();
  PolySystem g(degrees);
  for (int i = 0; i < n; ++i) {
    g.coeff(i, detail::exponent(n + 1, {{0, degrees[i] - 1}, {i + 1, 1}})) = std::sqrt(static_cast<double>(degrees[i]));
  }
  return g;
}

inline InitialPair good_initial_pair(const DegreeVector& degrees) {
  return {normalize_to_sphere(good_system_raw(degrees)), ProjectivePoint::basis_vector(degrees.num_variables(), 0),
          PairKind::GoodPair};
}

/// Uniform sample on the sphere: standard complex Gaussian coordinates in the
/// Bombieri-Weyl orthonormal basis sqrt(C(d_i; a)) X^a, then normalized.
inline SphereSystem random_system_on_sphere(const DegreeVector& degrees, Rng& rng) {
  PolySystem h(degrees);
  for (int i = 0; i < h.num_equations(); ++i) {
    const auto& basis = h.basis(i);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      h.coeffs(i)(static_cast<Eigen::Index>(k)) = std::sqrt(basis.multinomial(k)) * complex_gaussian(rng);
    }
  }
  return normalize_to_sphere(h);
}

/// Intermediate objects of the random initial-pair construction, kept for
/// inspection in tests and experiments.
struct RandomPairConstruction {
  /// n x (n+1) matrix taken from a uniform point of the unit ball of C^{N+1}.
  CMatrix m;
  /// Uniform sample of the unit ball of R_{e_0} (zero value and derivative at e_0).
  PolySystem h_tilde;
  /// h_tilde o V^*, vanishing to second order at zeta0.
  PolySystem h;
  CMatrix v;
  PolySystem g_hat;
  InitialPair pair;
};

/// Monomials of equation i that may be nonzero in R_{e_0}: exponent of X_0 at
/// most d_i - 2.
inline bool in_r_e0_support(const MonomialBasis& basis, std::size_t k) {
  return basis.exponents(k)[0] <= basis.degree() - 2;
}

inline RandomPairConstruction construct_random_initial_pair(const DegreeVector& degrees, Rng& rng) {
  const int n = degrees.num_equations();
  const int vars = n + 1;
  RandomPairConstruction out;

  // (1) (M, l) uniform in the unit ball of C^{N+1}; keep M.
  const auto dim = static_cast<Eigen::Index>(degrees.space_dimension());
  CVector zeta;
  for (int attempt = 0;; ++attempt) {
    const CVector ball = uniform_in_complex_ball(dim, rng);
    out.m.resize(n, vars);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < vars; ++c) out.m(r, c) = ball(r * vars + c);
    }
    try {
      zeta = kernel_vector(out.m, rng);  // (2) includes the random phase
      break;
    } catch (const RankDeficiencyError&) {
      if (attempt >= 1) throw;
    }
  }

  // (2) V with V^* zeta = e_0, h_tilde uniform in the unit ball of R_{e_0}.
  out.v = unitary_mapping_to_e0(zeta);
  out.h_tilde = PolySystem(degrees);
  Eigen::Index support = 0;
  for (int i = 0; i < n; ++i) {
    const auto& basis = out.h_tilde.basis(i);
    for (std::size_t k = 0; k < basis.size(); ++k) support += in_r_e0_support(basis, k) ? 1 : 0;
  }
  if (support > 0) {
    const CVector w = uniform_in_complex_ball(support, rng);
    Eigen::Index next = 0;
    for (int i = 0; i < n; ++i) {
      const auto& basis = out.h_tilde.basis(i);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (!in_r_e0_support(basis, k)) continue;
        out.h_tilde.coeffs(i)(static_cast<Eigen::Index>(k)) = std::sqrt(basis.multinomial(k)) * w(next++);
      }
    }
  }
  out.h = unitary_compose(out.h_tilde, out.v.adjoint());

  // (3) g_hat(z) = sqrt(1 - |M|_F^2) h(z) + Diag(<z, zeta>^{d_i - 1} sqrt(d_i)) M z.
  const double frob2 = out.m.squaredNorm();
  out.g_hat = out.h * Complex(std::sqrt(std::max(0.0, 1.0 - frob2)));
  const CVector pairing = zeta.conjugate();  // <z, zeta> = sum_j z_j conj(zeta_j)
  const auto pairing_powers = linear_form_powers(pairing, degrees.max_degree() - 1);
  const auto& linear = *MonomialBasis::get(vars, 1);
  for (int i = 0; i < n; ++i) {
    const int d = degrees[i];
    const CVector row = out.m.row(i).transpose();
    out.g_hat.coeffs(i) += std::sqrt(static_cast<double>(d)) *
                           multiply_polynomials(pairing_powers[static_cast<std::size_t>(d - 1)],
                                                *MonomialBasis::get(vars, d - 1), row, linear);
  }

  // (4) g = g_hat / |g_hat|.
  out.pair = InitialPair{normalize_to_sphere(out.g_hat), ProjectivePoint(zeta), PairKind::Random};
  return out;
}

inline InitialPair random_initial_pair(const DegreeVector& degrees, Rng& rng) {
  return construct_random_initial_pair(degrees, rng).pair;
}

/// (g o U^*, U e_0) for the good pair (g, e_0) and a given unitary U.
inline InitialPair unitary_transformed_good_pair(const DegreeVector& degrees, const CMatrix& u) {
  const InitialPair good = good_initial_pair(degrees);
  return {SphereSystem::from_unit(unitary_compose(good.g.system(), u.adjoint())),
          ProjectivePoint(u.col(0)), PairKind::RandomUnitary};
}

/// Good pair moved by a Haar-random unitary change of coordinates.
inline InitialPair random_initial_pair_unitary(const DegreeVector& degrees, Rng& rng) {
  return unitary_transformed_good_pair(degrees, random_unitary(degrees.num_variables(), rng));
}

inline InitialPair make_initial_pair(PairKind kind, const DegreeVector& degrees, Rng& rng) {
  switch (kind) {
    case PairKind::GoodPair: return good_initial_pair(degrees);
    case PairKind::Random: return random_initial_pair(degrees, rng);
    case PairKind::RandomUnitary: return random_initial_pair_unitary(degrees, rng);
    case PairKind::TotalDegree: {
      StartSet set = total_degree_start(degrees, rng);
      return {std::move(set.g), set.roots.front(), PairKind::TotalDegree};
    }
  }
  throw DimensionError("unknown pair kind");
}

/// Outcome of tracking one path to a target system.
struct PathSolution {
  std::size_t start_index = 0;
  TrackResult track;
  /// Endpoint refined by Newton's method; equal to the raw endpoint when
  /// refinement failed.
  ProjectivePoint root;
  bool refined = false;
  /// Certificate of the raw endpoint against `root` (halved radius test is
  /// `certificate.distance <= certificate.zero.radius / 2`).
  Certificate certificate;

  bool ok() const { return track.ok() && refined; }
};

namespace detail {

inline PathSolution finish_path(const PolySystem& f, TrackResult track, std::size_t index) {
  PathSolution out;
  out.start_index = index;
  out.root = track.endpoint;
  if (track.ok()) {
    try {
      out.root = refine(f, track.endpoint);
      out.refined = true;
      out.certificate = certify_projective(f, track.endpoint, out.root);
    } catch (const Error&) {
      out.refined = false;
    }
  }
  out.track = std::move(track);
  return out;
}

}  // namespace detail

/// Tracks from (g, zeta0) to f and refines the endpoint.
inline PathSolution track_pair(const SphereSystem& f, const InitialPair& pair, const TrackerOptions& opts = {}) {
  return detail::finish_path(f.system(), track_linear(pair.g, f, pair.zeta0, opts), 0);
}

/// One zero of f from a random initial pair of the requested kind.
inline PathSolution solve_one(const SphereSystem& f, Rng& rng, const TrackerOptions& opts = {},
                              PairKind kind = PairKind::Random) {
  return track_pair(f, make_initial_pair(kind, f.degrees(), rng), opts);
}

struct AllRootsResult {
  std::vector<PathSolution> paths;
  /// Every path succeeded and refined.
  bool complete = false;
  /// Refined roots pairwise farther apart than twice the largest certified radius.
  bool distinct = false;

  std::size_t successes() const {
    std::size_t count = 0;
    for (const auto& p : paths) count += p.ok() ? 1 : 0;
    return count;
  }
};

/// Pairwise separation check over successful paths.
inline bool roots_distinct(const std::vector<PathSolution>& paths) {
  double max_radius = 0.0;
  for (const auto& p : paths) {
    if (p.ok()) max_radius = std::max(max_radius, p.certificate.zero.radius);
  }
  for (std::size_t a = 0; a < paths.size(); ++a) {
    if (!paths[a].ok()) continue;
    for (std::size_t b = a + 1; b < paths.size(); ++b) {
      if (!paths[b].ok()) continue;
      if (riemann_distance(paths[a].root, paths[b].root) <= 2.0 * max_radius) return false;
    }
  }
  return true;
}

/// Tracks every path of the total-degree homotopy from a given start set.
inline AllRootsResult solve_all_total_degree(const SphereSystem& f, const StartSet& start,
                                             const TrackerOptions& opts = {}, unsigned threads = 1) {
  AllRootsResult result;
  result.paths.resize(start.roots.size());
  parallel_for(start.roots.size(), threads, [&](std::size_t k) {
    result.paths[k] = detail::finish_path(f.system(), track_linear(start.g, f, start.roots[k], opts), k);
  });
  result.complete = result.successes() == start.roots.size();
  result.distinct = roots_distinct(result.paths);
  return result;
}

inline AllRootsResult solve_all_total_degree(const SphereSystem& f, Rng& rng, const TrackerOptions& opts = {},
                                             unsigned threads = 1) {
  return solve_all_total_degree(f, total_degree_start(f.degrees(), rng), opts, threads);
}

inline AllRootsResult solve_all_total_degree(const AffineSystem& f, Rng& rng, const TrackerOptions& opts = {},
                                             unsigned threads = 1) {
  return solve_all_total_degree(normalize_to_sphere(homogenize(f)), rng, opts, threads);
}

}  // namespace certhom
