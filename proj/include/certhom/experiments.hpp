#pragma once

// Experiment harness: benchmark families, step statistics, root matching,
// Shannon entropy, and the three experiment drivers (benchmark, start-pair
// comparison, equidistribution of random homotopies).

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "certhom/heuristic.hpp"
#include "certhom/parallel.hpp"
#include "certhom/start_systems.hpp"
#include "certhom/tracker.hpp"

namespace certhom {

// ---------------------------------------------------------------------------
// Statistics

struct PathRecord {
  std::size_t trial = 0;
  std::size_t path = 0;
  std::string kind;
  std::size_t steps = 0;
  TrackStatus status = TrackStatus::Success;
};

/// Step statistics over successful paths; failures are only counted.
struct ExperimentReport {
  std::string kind;
  std::vector<PathRecord> per_path;
  double mean_steps = 0.0;
  double variance_steps = 0.0;
  std::size_t successes = 0;
  std::size_t failures = 0;
  double wall_time_s = 0.0;
};

/// Fills mean, unbiased variance, successes and failures from per_path.
inline void summarize(ExperimentReport& report) {
  report.successes = 0;
  report.failures = 0;
  double sum = 0.0;
  for (const auto& p : report.per_path) {
    if (p.status == TrackStatus::Success) {
      ++report.successes;
      sum += static_cast<double>(p.steps);
    } else {
      ++report.failures;
    }
  }
  report.mean_steps = report.successes > 0 ? sum / static_cast<double>(report.successes) : 0.0;
  double squares = 0.0;
  for (const auto& p : report.per_path) {
    if (p.status != TrackStatus::Success) continue;
    const double dev = static_cast<double>(p.steps) - report.mean_steps;
    squares += dev * dev;
  }
  report.variance_steps = report.successes > 1 ? squares / static_cast<double>(report.successes - 1) : 0.0;
}

/// -sum p_i log2 p_i with p_i = hits_i / total; empty buckets contribute 0.
inline double shannon_entropy(const std::vector<std::size_t>& hits) {
  std::size_t total = 0;
  for (auto h : hits) total += h;
  if (total == 0) throw std::invalid_argument("entropy of an empty histogram");
  double entropy = 0.0;
  for (auto h : hits) {
    if (h == 0) continue;
    const double p = static_cast<double>(h) / static_cast<double>(total);
    entropy -= p * std::log2(p);
  }
  return entropy;
}

// ---------------------------------------------------------------------------
// Root matching

/// Index of the reference nearest to `point` in d_R, or nullopt when that
/// distance exceeds `tol`. Throws AmbiguousMatchError when the runner-up is
/// within twice the nearest distance.
inline std::optional<std::size_t> match_root(const ProjectivePoint& point, const std::vector<ProjectivePoint>& refs,
                                             double tol = 1e-4) {
  if (refs.empty()) return std::nullopt;
  std::size_t best = 0;
  double nearest = std::numeric_limits<double>::infinity();
  double runner_up = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < refs.size(); ++r) {
    const double dist = riemann_distance(point, refs[r]);
    if (dist < nearest) {
      runner_up = nearest;
      nearest = dist;
      best = r;
    } else if (dist < runner_up) {
      runner_up = dist;
    }
  }
  if (runner_up <= 2.0 * nearest) throw AmbiguousMatchError("point is nearly equidistant from two references");
  if (nearest > tol) return std::nullopt;
  return best;
}

inline std::vector<std::optional<std::size_t>> match_roots(const std::vector<ProjectivePoint>& endpoints,
                                                           const std::vector<ProjectivePoint>& refs,
                                                           double tol = 1e-4) {
  for (std::size_t a = 0; a < refs.size(); ++a) {
    for (std::size_t b = a + 1; b < refs.size(); ++b) {
      if (riemann_distance(refs[a], refs[b]) <= tol) {
        throw AmbiguousMatchError("reference roots are not separated");
      }
    }
  }
  std::vector<std::optional<std::size_t>> out;
  out.reserve(endpoints.size());
  for (const auto& e : endpoints) out.push_back(match_root(e, refs, tol));
  return out;
}

// ---------------------------------------------------------------------------
// Benchmark families

/// Katsura family in n unknowns u_0..u_{n-1} (one linear and n - 1 quadratic
/// equations, 2^{n-1} solutions):
///   u_0 + 2 sum_{i>0} u_i - 1 = 0,
///   sum_{l=-(n-1)}^{n-1} u_{|l|} u_{|m-l|} - u_m = 0   for m = 0..n-2,
/// with u_j = 0 for j >= n.
inline AffineSystem katsura(int n) {
  if (n < 2) throw DimensionError("Katsura family needs at least two unknowns");
  std::vector<int> degrees(static_cast<std::size_t>(n), 2);
  degrees[0] = 1;
  AffineSystem f{DegreeVector(degrees)};
  auto unit = [n](int var) {
    std::vector<int> alpha(static_cast<std::size_t>(n), 0);
    alpha[static_cast<std::size_t>(var)] = 1;
    return alpha;
  };
  const std::vector<int> constant(static_cast<std::size_t>(n), 0);

  f.coeff(0, unit(0)) += 1.0;
  for (int i = 1; i < n; ++i) f.coeff(0, unit(i)) += 2.0;
  f.coeff(0, constant) += -1.0;

  for (int m = 0; m + 1 < n; ++m) {
    const int eq = m + 1;
    for (int l = -(n - 1); l <= n - 1; ++l) {
      const int a = std::abs(l);
      const int b = std::abs(m - l);
      if (a >= n || b >= n) continue;
      std::vector<int> alpha(static_cast<std::size_t>(n), 0);
      alpha[static_cast<std::size_t>(a)] += 1;
      alpha[static_cast<std::size_t>(b)] += 1;
      f.coeff(eq, alpha) += 1.0;
    }
    f.coeff(eq, unit(m)) += -1.0;
  }
  return f;
}

/// 71 pi d^{3/2} n N / sqrt(2): the average-step bound for random pairs.
inline double average_step_bound(const DegreeVector& degrees) {
  const double d = degrees.max_degree();
  const double n = degrees.num_equations();
  const double big_n = static_cast<double>(degrees.space_dimension()) - 1.0;
  return 71.0 * std::numbers::pi * std::pow(d, 1.5) * n * big_n / std::numbers::sqrt2;
}

// ---------------------------------------------------------------------------
// Benchmark: total-degree tracking of a family

enum class TrackerChoice { Certified, Heuristic, Both };

struct BenchConfig {
  /// Targets: random systems of these degrees, or Katsura when katsura_n > 0.
  DegreeVector degrees{2, 2};
  int katsura_n = 0;
  std::size_t trials = 10;
  TrackerChoice tracker = TrackerChoice::Certified;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  TrackerOptions certified;
  HeuristicOptions heuristic;
};

struct BenchReport {
  std::string family;
  ExperimentReport certified;
  ExperimentReport heuristic;
};

inline std::string family_name(const BenchConfig& config) {
  if (config.katsura_n > 0) return "katsura" + std::to_string(config.katsura_n);
  std::string name = "random(";
  for (std::size_t i = 0; i < config.degrees.values().size(); ++i) {
    if (i) name += ",";
    name += std::to_string(config.degrees.values()[i]);
  }
  return name + ")";
}

inline BenchReport run_bench(const BenchConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  BenchReport report;
  report.family = family_name(config);
  report.certified.kind = "certified";
  report.heuristic.kind = "heuristic";
  const bool want_certified = config.tracker != TrackerChoice::Heuristic;
  const bool want_heuristic = config.tracker != TrackerChoice::Certified;

  // Work items are (trial, path) pairs so threads balance across paths.
  struct Trial {
    SphereSystem target;
    StartSet start;
  };
  std::vector<Trial> trials;
  for (std::size_t t = 0; t < config.trials; ++t) {
    Rng rng = derive_rng(config.seed, t);
    SphereSystem target = config.katsura_n > 0 ? normalize_to_sphere(homogenize(katsura(config.katsura_n)))
                                               : random_system_on_sphere(config.degrees, rng);
    StartSet start = total_degree_start(target.degrees(), rng);
    trials.push_back({std::move(target), std::move(start)});
  }
  const std::size_t paths = trials.empty() ? 0 : trials.front().start.roots.size();
  std::vector<PathRecord> cert(config.trials * paths);
  std::vector<PathRecord> heur(config.trials * paths);

  TrackerOptions copts = config.certified;
  copts.record_trace = false;
  HeuristicOptions hopts = config.heuristic;
  hopts.record_trace = false;
  parallel_for(config.trials * paths, config.threads, [&](std::size_t item) {
    const std::size_t t = item / paths;
    const std::size_t p = item % paths;
    const Trial& trial = trials[t];
    const LinearHomotopy homotopy(trial.start.g, trial.target);
    if (want_certified) {
      const TrackResult r = track_linear(homotopy, trial.start.roots[p], copts);
      cert[item] = {t, p, "certified", r.num_steps, r.status};
    }
    if (want_heuristic) {
      const TrackResult r = track_heuristic(homotopy, trial.start.roots[p], hopts);
      heur[item] = {t, p, "heuristic", r.num_steps, r.status};
    }
  });
  if (want_certified) report.certified.per_path = std::move(cert);
  if (want_heuristic) report.heuristic.per_path = std::move(heur);
  summarize(report.certified);
  summarize(report.heuristic);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  report.certified.wall_time_s = report.heuristic.wall_time_s = elapsed;
  return report;
}

// ---------------------------------------------------------------------------
// Start-pair comparison on random targets

struct ConjectureConfig {
  int n = 4;
  int degree = 2;
  std::size_t trials = 30;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  TrackerOptions options;
  /// Also compute C0 per path and check the step bound (slow).
  bool verify_bound = false;
  int bound_resolution = 2000;
};

struct ConjectureReport {
  DegreeVector degrees;
  ExperimentReport good;
  ExperimentReport total;
  ExperimentReport random;
  double bound = 0.0;
  /// Paths whose condition length was computed / that violated the bound.
  std::size_t bound_checked = 0;
  std::size_t bound_violations = 0;
};

inline ConjectureReport run_conjecture(const ConjectureConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  ConjectureReport report;
  report.degrees = DegreeVector(std::vector<int>(static_cast<std::size_t>(config.n), config.degree));
  report.bound = average_step_bound(report.degrees);
  report.good.kind = "good";
  report.total.kind = "total";
  report.random.kind = "random";

  constexpr std::size_t kKinds = 3;
  std::vector<PathRecord> records(config.trials * kKinds);
  std::vector<int> checked(records.size(), 0);
  std::vector<int> violated(records.size(), 0);
  TrackerOptions opts = config.options;
  opts.record_trace = false;

  // Each trial draws its target and all three pairs from its own generator,
  // so per-kind work items can run in any order.
  struct Trial {
    SphereSystem target;
    InitialPair pairs[kKinds];
  };
  std::vector<Trial> trials;
  for (std::size_t t = 0; t < config.trials; ++t) {
    Rng rng = derive_rng(config.seed, t);
    SphereSystem target = random_system_on_sphere(report.degrees, rng);
    InitialPair good = good_initial_pair(report.degrees);
    InitialPair total = make_initial_pair(PairKind::TotalDegree, report.degrees, rng);
    InitialPair random = random_initial_pair(report.degrees, rng);
    trials.push_back({std::move(target), {std::move(good), std::move(total), std::move(random)}});
  }

  parallel_for(records.size(), config.threads, [&](std::size_t item) {
    const std::size_t t = item / kKinds;
    const std::size_t k = item % kKinds;
    const Trial& trial = trials[t];
    const InitialPair& pair = trial.pairs[k];
    const TrackResult r = track_linear(pair.g, trial.target, pair.zeta0, opts);
    records[item] = {t, 0, to_string(pair.kind), r.num_steps, r.status};
    if (config.verify_bound && r.ok() && std::abs(bw_inner(trial.target.system(), pair.g.system())) < 1.0 - 1e-12) {
      const LinearHomotopy homotopy(pair.g, trial.target);
      try {
        const ConditionLength c0 = condition_length(homotopy, pair.zeta0, config.bound_resolution);
        checked[item] = 1;
        violated[item] = static_cast<double>(r.num_steps) > linear_step_bound(report.degrees.max_degree(), c0.value);
      } catch (const Error&) {
        // Condition length not computable at this resolution; not counted.
      }
    }
  });

  for (std::size_t item = 0; item < records.size(); ++item) {
    ExperimentReport* target = item % kKinds == 0 ? &report.good : item % kKinds == 1 ? &report.total : &report.random;
    target->per_path.push_back(records[item]);
    report.bound_checked += static_cast<std::size_t>(checked[item]);
    report.bound_violations += static_cast<std::size_t>(violated[item]);
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  for (ExperimentReport* r : {&report.good, &report.total, &report.random}) {
    summarize(*r);
    r->wall_time_s = elapsed;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Equidistribution of endpoints of random homotopies

enum class PairVariant { Ball, Unitary };

struct EntropyConfig {
  DegreeVector degrees{2, 2, 2};
  double epsilon = 0.1;
  std::size_t runs = 800;
  PairVariant variant = PairVariant::Ball;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  TrackerOptions options;
  /// Attempts (fresh gamma each) at computing the reference roots.
  int reference_attempts = 5;
};

struct EntropyReport {
  SphereSystem target;
  std::vector<ProjectivePoint> references;
  std::vector<std::size_t> root_hits;
  std::size_t runs = 0;
  std::size_t failures = 0;
  double entropy_bits = 0.0;
  ExperimentReport steps;
};

/// Target normalize(g + eps h) with g the normalized good system and h
/// uniform on the sphere.
inline SphereSystem perturbed_good_target(const DegreeVector& degrees, double epsilon, Rng& rng) {
  const PolySystem g = good_initial_pair(degrees).g.system();
  const PolySystem h = random_system_on_sphere(degrees, rng).system();
  return normalize_to_sphere(g + Complex(epsilon) * h);
}

inline EntropyReport run_entropy(const EntropyConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  EntropyReport report;
  Rng setup = derive_rng(config.seed, 0);
  report.target = perturbed_good_target(config.degrees, config.epsilon, setup);

  const std::size_t expected = static_cast<std::size_t>(config.degrees.bezout_number());
  for (int attempt = 0; attempt < config.reference_attempts; ++attempt) {
    const AllRootsResult all = solve_all_total_degree(report.target, setup, config.options, config.threads);
    if (all.complete && all.distinct && all.paths.size() == expected) {
      for (const auto& p : all.paths) report.references.push_back(p.root);
      break;
    }
  }
  if (report.references.size() != expected) {
    throw ConvergenceError("could not compute all reference roots of the target");
  }

  report.runs = config.runs;
  report.root_hits.assign(expected, 0);
  std::vector<std::optional<std::size_t>> matched(config.runs);
  std::vector<PathRecord> records(config.runs);
  TrackerOptions opts = config.options;
  opts.record_trace = false;
  const PairKind kind = config.variant == PairVariant::Ball ? PairKind::Random : PairKind::RandomUnitary;
  parallel_for(config.runs, config.threads, [&](std::size_t run) {
    Rng rng = derive_rng(config.seed, run + 1);
    const PathSolution sol = solve_one(report.target, rng, opts, kind);
    records[run] = {run, 0, to_string(kind), sol.track.num_steps, sol.track.status};
    if (!sol.ok()) return;
    try {
      matched[run] = match_root(sol.root, report.references);
    } catch (const AmbiguousMatchError&) {
      matched[run] = std::nullopt;
    }
  });
  for (const auto& m : matched) {
    if (m) {
      ++report.root_hits[*m];
    } else {
      ++report.failures;
    }
  }
  report.entropy_bits = report.runs > report.failures ? shannon_entropy(report.root_hits) : 0.0;
  report.steps.kind = to_string(kind);
  report.steps.per_path = std::move(records);
  summarize(report.steps);
  report.steps.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace certhom
