#pragma once

// Uncertified predictor-corrector tracking, used as a baseline for step
// counts. Same projective formulation as the certified tracker: points are
// unit representatives and the path ODE is solved with the bordered system.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "certhom/newton.hpp"
#include "certhom/tracker.hpp"

namespace certhom {

enum class Predictor { Euler, RK4 };

struct HeuristicOptions {
  Predictor predictor = Predictor::RK4;
  int corrector_iters = 3;
  double corrector_tol = 1e-6;
  double step_init = 0.02;
  double step_max = 0.25;
  double step_decrease = 0.5;
  double step_increase = 2.0;
  /// Consecutive accepted steps before the step grows.
  int successes_to_increase = 3;
  /// Largest first Newton correction (in d_R) accepted; bigger corrections
  /// mean the predictor left the basin of the path.
  double max_first_correction = 0.05;
  double t_step_min = 1e-6;
  std::size_t max_attempts = 1'000'000;
  bool record_trace = true;

  void validate() const {
    if (!(0.0 < step_decrease && step_decrease < 1.0 && 1.0 < step_increase)) {
      throw std::invalid_argument("need 0 < step_decrease < 1 < step_increase");
    }
    if (corrector_iters < 1) throw std::invalid_argument("corrector needs at least one iteration");
  }
};

/// Velocity of the horizontal lift: -(Dh(z); z^*)^{-1} (h'(z); 0).
inline CVector path_velocity(const PolySystem& h, const PolySystem& hdot, const CVector& z) {
  const SquareSolver solver(bordered_jacobian(h, z));
  CVector rhs = CVector::Zero(z.size());
  rhs.head(h.num_equations()) = -evaluate(hdot, z);
  return solver.solve(rhs);
}

/// One predictor step from (s, x) to s + dt, renormalized.
inline CVector predict(const GeneralHomotopy& h, double s, const CVector& x, double dt, Predictor predictor) {
  auto velocity = [&](double t, const CVector& y) {
    return path_velocity(h.value_at(t), h.derivative_at(t), y);
  };
  CVector next;
  if (predictor == Predictor::Euler) {
    next = x + dt * velocity(s, x);
  } else {
    const CVector k1 = velocity(s, x);
    const CVector k2 = velocity(s + dt / 2, x + (dt / 2) * k1);
    const CVector k3 = velocity(s + dt / 2, x + (dt / 2) * k2);
    const CVector k4 = velocity(s + dt, x + dt * k3);
    next = x + (dt / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return next / next.norm();
}

struct Correction {
  CVector point;
  /// d_R of the last Newton step taken (0 when none moved the point).
  double achieved_tol = 0.0;
  double first_step = 0.0;
  int iterations = 0;
};

/// Up to `iters` projective Newton steps, stopping once a step is below tol.
inline Correction correct(const PolySystem& h, const CVector& x, int iters, double tol) {
  Correction out;
  out.point = x;
  for (int k = 0; k < iters; ++k) {
    const ProjectivePoint next = newton_projective(h, out.point);
    const double step = riemann_distance(next.coords(), out.point);
    out.point = next.coords();
    out.achieved_tol = step;
    if (k == 0) out.first_step = step;
    ++out.iterations;
    if (step < tol) break;
  }
  return out;
}

/// Adaptive predictor-corrector loop. num_steps counts accepted steps only;
/// the trace holds every attempt with its accepted flag.
inline TrackResult track_heuristic(const GeneralHomotopy& h, const ProjectivePoint& z0,
                                   const HeuristicOptions& opts = {}) {
  opts.validate();
  TrackResult result;
  const double total = h.length();
  CVector z = z0.coords();
  double s = 0.0;
  double dt = std::min(opts.step_init, opts.step_max);
  int streak = 0;
  std::size_t attempts = 0;

  while (s != total) {
    if (attempts++ >= opts.max_attempts) {
      result.status = TrackStatus::MaxSteps;
      break;
    }
    const bool last = dt >= total - s;
    const double step = last ? total - s : dt;
    const double next_s = last ? total : s + dt;

    bool accepted = false;
    CVector candidate;
    try {
      const CVector predicted = predict(h, s, z, step, opts.predictor);
      const Correction corr = correct(h.value_at(next_s), predicted, opts.corrector_iters, opts.corrector_tol);
      candidate = corr.point;
      accepted = corr.achieved_tol <= opts.corrector_tol && corr.first_step <= opts.max_first_correction;
    } catch (const SingularSolveError&) {
      accepted = false;
    }

    if (opts.record_trace) {
      StepRecord record;
      record.s = next_s;
      record.t = step;
      record.accepted = accepted;
      record.point = accepted ? candidate : z;
      result.trace.push_back(std::move(record));
    }

    if (accepted) {
      z = std::move(candidate);
      s = next_s;
      ++result.num_steps;
      if (++streak >= opts.successes_to_increase) {
        dt = std::min(dt * opts.step_increase, opts.step_max);
        streak = 0;
      }
    } else {
      streak = 0;
      dt *= opts.step_decrease;
      if (dt < opts.t_step_min) {
        result.status = TrackStatus::MinStepReached;
        break;
      }
    }
  }
  result.endpoint = ProjectivePoint(z);
  return result;
}

}  // namespace certhom
