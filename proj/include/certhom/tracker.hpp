#pragma once

// Certified path tracking on the Bombieri-Weyl sphere.
//
// Each step evaluates phi = chi1 * chi2 at the current pair (g_i, z_i),
// advances the homotopy parameter by a step inside
// [c / (2 P d^{3/2} phi), c / (P d^{3/2} phi)], and applies one projective
// Newton step for the new system. Along a regular path every iterate is an
// approximate zero of its system, and the number of steps is bounded by
// ceil(C d^{3/2} C0) with C0 the condition length of the path.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "certhom/bw_metric.hpp"
#include "certhom/linalg.hpp"
#include "certhom/newton.hpp"

namespace certhom {

/// c/P for the arc-length linear homotopy.
inline constexpr double kLinearStepConstant = 0.04804448;

struct TrackerOptions {
  double cP = kLinearStepConstant;
  double u0 = kU0;
  double t_step_min = 1e-6;
  /// Position inside the allowed interval: 1 is the upper end, 1/2 the lower.
  double step_fraction = 1.0;
  std::size_t max_steps = 1'000'000;
  /// Keep per-step records (and iterates) in TrackResult::trace.
  bool record_trace = true;
};

enum class TrackStatus { Success, MinStepReached, SingularLinearSolve, MaxSteps };

inline std::string to_string(TrackStatus status) {
  switch (status) {
    case TrackStatus::Success: return "success";
    case TrackStatus::MinStepReached: return "min_step";
    case TrackStatus::SingularLinearSolve: return "singular";
    case TrackStatus::MaxSteps: return "max_steps";
  }
  return "unknown";
}

struct StepRecord {
  /// Homotopy parameter reached by this step.
  double s = 0.0;
  double t = 0.0;
  double phi = std::numeric_limits<double>::quiet_NaN();
  double chi1 = std::numeric_limits<double>::quiet_NaN();
  double chi2 = std::numeric_limits<double>::quiet_NaN();
  bool accepted = true;
  /// Iterate after the step.
  CVector point;
};

struct TrackResult {
  ProjectivePoint endpoint;
  TrackStatus status = TrackStatus::Success;
  std::size_t num_steps = 0;
  std::vector<StepRecord> trace;

  bool ok() const { return status == TrackStatus::Success; }
};

/// A C^1 curve t -> h_t on the unit sphere, t in [0, length()], together
/// with a constant H such that |h''_t| <= d^{3/2} H |h'_t|^2 almost everywhere.
class GeneralHomotopy {
 public:
  virtual ~GeneralHomotopy() = default;
  virtual double length() const = 0;
  virtual PolySystem value_at(double t) const = 0;
  virtual PolySystem derivative_at(double t) const = 0;
  virtual double curvature_bound() const = 0;
  virtual const DegreeVector& degrees() const = 0;
};

/// Great-circle arc from g to f, parametrized by arc length:
/// h_t = g cos t + fperp sin t with fperp = (f - r g) / sqrt(1 - r^2),
/// r = Re<f, g>, and T = arccos r so that h_T = f.
class LinearHomotopy final : public GeneralHomotopy {
 public:
  LinearHomotopy(const SphereSystem& g, const SphereSystem& f) : g_(g.system()), f_(f.system()) {
    g_.require_same_shape(f_);
    r_ = bw_inner(f_, g_).real();
    if (!(std::abs(r_) < 1.0 - 1e-12)) {
      throw DegenerateHomotopyError("start and target systems are (anti)parallel");
    }
    length_ = std::acos(r_);
    fperp_ = (f_ - Complex(r_) * g_) * Complex(1.0 / std::sqrt(1.0 - r_ * r_));
  }

  double length() const override { return length_; }

  PolySystem value_at(double t) const override {
    if (t == length_) return f_;
    return Complex(std::cos(t)) * g_ + Complex(std::sin(t)) * fperp_;
  }

  PolySystem derivative_at(double t) const override {
    return Complex(-std::sin(t)) * g_ + Complex(std::cos(t)) * fperp_;
  }

  /// |h''| = |h| = 1 = |h'|^2 on a unit-speed great circle.
  double curvature_bound() const override {
    return 1.0 / std::pow(static_cast<double>(g_.degrees().max_degree()), 1.5);
  }

  const DegreeVector& degrees() const override { return g_.degrees(); }
  const PolySystem& start() const { return g_; }
  const PolySystem& target() const { return f_; }
  const PolySystem& orthogonal_part() const { return fperp_; }
  double real_overlap() const { return r_; }

 private:
  PolySystem g_;
  PolySystem f_;
  PolySystem fperp_;
  double r_ = 0.0;
  double length_ = 0.0;
};

inline LinearHomotopy make_linear_homotopy(const SphereSystem& g, const SphereSystem& f) {
  return LinearHomotopy(g, f);
}

inline PolySystem homotopy_tangent(const LinearHomotopy& h, double s) { return h.derivative_at(s); }

/// The sub-arc [begin, end] of another homotopy, shifted to start at 0.
class HomotopySegment final : public GeneralHomotopy {
 public:
  HomotopySegment(const GeneralHomotopy& base, double begin, double end)
      : base_(&base), begin_(begin), end_(end) {
    if (!(0.0 <= begin && begin < end && end <= base.length())) {
      throw DimensionError("segment must lie inside the parent homotopy");
    }
  }

  double length() const override { return end_ - begin_; }
  PolySystem value_at(double t) const override {
    return base_->value_at(t == length() ? end_ : begin_ + t);
  }
  PolySystem derivative_at(double t) const override { return base_->derivative_at(begin_ + t); }
  double curvature_bound() const override { return base_->curvature_bound(); }
  const DegreeVector& degrees() const override { return base_->degrees(); }

 private:
  const GeneralHomotopy* base_;
  double begin_;
  double end_;
};

/// Constants of the step-size rule for a homotopy with curvature constant H.
struct StepConstants {
  double c = 0.0;
  double P = 0.0;
  /// Multiplier in the step-count bound k <= ceil(C d^{3/2} C0).
  double C = 0.0;
  double c_over_P() const { return c / P; }
};

inline StepConstants general_step_constants(double curvature, double u0 = kU0) {
  const double sqrt2 = std::numbers::sqrt2;
  const double a = 1.0 - sqrt2 * u0 / 2.0;
  const double b = 1.0 + sqrt2 * u0 / 2.0;
  StepConstants k;
  k.P = sqrt2 + std::sqrt(4.0 + 5.0 * curvature * curvature);
  k.c = std::pow(a, sqrt2) / b * (1.0 - std::pow(1.0 - u0 / (sqrt2 + 2.0 * u0), k.P / sqrt2));
  k.C = 2.0 * k.P / std::pow(a, 1.0 + sqrt2) * (1.0 / k.c + b / std::pow(a, sqrt2));
  return k;
}

namespace detail {

inline CMatrix chi1_scaling(const DegreeVector& degrees) {
  const int n = degrees.num_equations();
  CMatrix scale = CMatrix::Zero(n + 1, n + 1);
  for (int i = 0; i < n; ++i) scale(i, i) = std::sqrt(static_cast<double>(degrees[i]));
  scale(n, n) = 1.0;
  return scale;
}

inline double chi1(const SquareSolver& solver, const DegreeVector& degrees) {
  return spectral_norm(solver.solve(chi1_scaling(degrees)));
}

inline double chi2(const SquareSolver& solver, const PolySystem& gdot, const CVector& z) {
  CVector rhs = CVector::Zero(z.size());
  rhs.head(gdot.num_equations()) = evaluate(gdot, z);
  const double tangent = bw_norm(gdot);
  const double lifted = solver.solve(rhs).norm();
  return std::sqrt(tangent * tangent + lifted * lifted);
}

}  // namespace detail

/// |(Dg(z); z^*)^{-1} Diag(sqrt d_1, ..., sqrt d_n, 1)|.
inline double chi1(const PolySystem& g, const CVector& z) {
  const SquareSolver solver(bordered_jacobian(g, z));
  return detail::chi1(solver, g.degrees());
}

/// (|g'|^2 + |(Dg(z); z^*)^{-1} (g'(z); 0)|^2)^{1/2}.
inline double chi2(const PolySystem& g, const PolySystem& gdot, const CVector& z) {
  const SquareSolver solver(bordered_jacobian(g, z));
  return detail::chi2(solver, gdot, z);
}

struct CertifiedStep {
  double t = 0.0;
  double phi = 0.0;
  double chi1 = 0.0;
  double chi2 = 0.0;
};

/// Allowed step interval [lo, hi] for a given phi.
inline std::pair<double, double> step_interval(double c_over_p, int max_degree, double phi) {
  const double hi = c_over_p / (std::pow(static_cast<double>(max_degree), 1.5) * phi);
  return {hi / 2.0, hi};
}

/// phi = chi1 chi2 and t = step_fraction * c/P / (d^{3/2} phi). Throws
/// SingularSolveError for a singular bordered matrix and MinStepError when t
/// drops below opts.t_step_min.
inline CertifiedStep certified_step(const PolySystem& g, const PolySystem& gdot, const CVector& z,
                                    const TrackerOptions& opts, double c_over_p) {
  const SquareSolver solver(bordered_jacobian(g, z));
  CertifiedStep step;
  step.chi1 = detail::chi1(solver, g.degrees());
  step.chi2 = detail::chi2(solver, gdot, z);
  step.phi = step.chi1 * step.chi2;
  const auto [lo, hi] = step_interval(c_over_p, g.degrees().max_degree(), step.phi);
  step.t = std::clamp(opts.step_fraction * hi, lo, hi);
  if (step.t < opts.t_step_min) throw MinStepError("certified step below tStepMin");
  return step;
}

inline CertifiedStep certified_step(const PolySystem& g, const PolySystem& gdot, const CVector& z,
                                    const TrackerOptions& opts = {}) {
  return certified_step(g, gdot, z, opts, opts.cP);
}

namespace detail {

inline TrackResult track_with_constant(const GeneralHomotopy& h, const ProjectivePoint& z0,
                                       const TrackerOptions& opts, double c_over_p) {
  TrackResult result;
  result.endpoint = z0;
  const double total = h.length();
  CVector z = z0.coords();
  double s = 0.0;
  PolySystem current = h.value_at(0.0);

  while (s != total) {
    if (result.num_steps >= opts.max_steps) {
      result.status = TrackStatus::MaxSteps;
      break;
    }
    StepRecord record;
    try {
      const CertifiedStep step = certified_step(current, h.derivative_at(s), z, opts, c_over_p);
      double t = step.t;
      double next_s = s + t;
      if (t > total - s || next_s >= total) {
        t = total - s;
        next_s = total;
      }
      PolySystem next = h.value_at(next_s);
      z = newton_projective(next, z).coords();
      record = StepRecord{next_s, t, step.phi, step.chi1, step.chi2, true, {}};
      current = std::move(next);
      s = next_s;
    } catch (const SingularSolveError&) {
      result.status = TrackStatus::SingularLinearSolve;
      break;
    } catch (const MinStepError&) {
      result.status = TrackStatus::MinStepReached;
      break;
    }
    ++result.num_steps;
    if (opts.record_trace) {
      record.point = z;
      result.trace.push_back(std::move(record));
    }
  }
  result.endpoint = ProjectivePoint(z);
  return result;
}

}  // namespace detail

/// Certified tracking of the linear homotopy from z0 (a zero, or start-
/// certified approximate zero, of H.start()).
inline TrackResult track_linear(const LinearHomotopy& h, const ProjectivePoint& z0, const TrackerOptions& opts = {}) {
  return detail::track_with_constant(h, z0, opts, opts.cP);
}

/// As above from a (start, target) pair. When f = lambda g the zeros agree and
/// z0 is returned after zero steps.
inline TrackResult track_linear(const SphereSystem& g, const SphereSystem& f, const ProjectivePoint& z0,
                                const TrackerOptions& opts = {}) {
  if (std::abs(bw_inner(f.system(), g.system())) >= 1.0 - 1e-12) {
    TrackResult result;
    result.endpoint = z0;
    return result;
  }
  return track_linear(LinearHomotopy(g, f), z0, opts);
}

/// Certified tracking along any homotopy satisfying the curvature bound; the
/// step constant c/P is computed from H instead of the linear-case value.
inline TrackResult track_general(const GeneralHomotopy& h, const ProjectivePoint& z0, const TrackerOptions& opts = {}) {
  const StepConstants k = general_step_constants(h.curvature_bound(), opts.u0);
  return detail::track_with_constant(h, z0, opts, k.c_over_P());
}

/// ceil(71 d^{3/2} C0), the step bound for linear homotopies.
inline double linear_step_bound(int max_degree, double condition_length) {
  return std::ceil(71.0 * std::pow(static_cast<double>(max_degree), 1.5) * condition_length);
}

struct ConditionLength {
  double value = 0.0;
  /// Largest mu(h_t, zeta_t) seen at the nodes.
  double max_mu = 0.0;
  /// zeta_T, the end of the lifted path.
  ProjectivePoint end_zero;
};

/// Numerical C0 = int_0^T mu(h_t, zeta_t) |(h'_t, zeta'_t)| dt by the
/// trapezoid rule on `resolution` equal pieces. zeta_t is continued node to
/// node by an Euler predictor along zeta' = -(Dh_t|_{zeta^perp})^{-1} h'_t(zeta)
/// followed by Newton refinement. Throws ConvergenceError when refinement
/// fails or moves suspiciously far (resolution too coarse).
inline ConditionLength condition_length(const GeneralHomotopy& h, const ProjectivePoint& z0, int resolution) {
  if (resolution < 1) throw DimensionError("resolution must be positive");
  const double total = h.length();
  const double dt = total / resolution;
  const int n = h.degrees().num_equations();

  ConditionLength out;
  ProjectivePoint zeta = refine(h.value_at(0.0), z0);
  CVector zeta_dot;
  double previous = 0.0;
  for (int k = 0; k <= resolution; ++k) {
    const double t = k == resolution ? total : k * dt;
    const PolySystem ht = h.value_at(t);
    const PolySystem hdot = h.derivative_at(t);
    if (k > 0) {
      const ProjectivePoint predicted(zeta.coords() + dt * zeta_dot);
      ProjectivePoint corrected = refine(ht, predicted, 30);
      // Corrections should be of the order of the Euler error, O(dt^2 |zeta''|).
      if (riemann_distance(predicted, corrected) > 0.1) {
        throw ConvergenceError("lifted path continuation jumped; increase resolution");
      }
      zeta = std::move(corrected);
    }
    double integrand = std::numeric_limits<double>::infinity();
    try {
      const SquareSolver solver(bordered_jacobian(ht, zeta.coords()));
      CVector rhs = CVector::Zero(n + 1);
      rhs.head(n) = -evaluate(hdot, zeta.coords());
      zeta_dot = solver.solve(rhs);
      const double mu = condition_mu(ht, zeta.coords());
      const double speed = bw_norm(hdot);
      integrand = mu * std::sqrt(speed * speed + zeta_dot.squaredNorm());
      out.max_mu = std::max(out.max_mu, mu);
    } catch (const SingularSolveError&) {
      throw ConvergenceError("lifted path hits a singular point");
    }
    if (k > 0) out.value += 0.5 * dt * (previous + integrand);
    previous = integrand;
  }
  out.end_zero = zeta;
  return out;
}

}  // namespace certhom
