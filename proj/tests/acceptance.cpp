// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers as
// arguments to run a subset (e.g. `acceptance 1 7`).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "certhom/certhom.hpp"

using namespace certhom;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

PolySystem gaussian_system(const DegreeVector& d, Rng& rng) {
  std::vector<CVector> coeffs;
  for (int i = 0; i < d.num_equations(); ++i) {
    coeffs.push_back(complex_gaussian_vector(
        static_cast<Eigen::Index>(MonomialBasis::count_monomials(d.num_variables(), d[i])), rng));
  }
  return PolySystem(d, std::move(coeffs));
}

CVector unit_vector(Eigen::Index size, Rng& rng) {
  CVector v = complex_gaussian_vector(size, rng);
  return v / v.norm();
}

// 1. Every successful endpoint lies within half the certified radius of its refined root.
Outcome certificate_soundness(unsigned threads) {
  std::size_t paths = 0, violations = 0, failures = 0, unfinished = 0;
  double worst = 0.0;
  auto run = [&](const DegreeVector& d, int targets, std::uint64_t stream) {
    for (int k = 0; k < targets; ++k) {
      Rng rng = derive_rng(stream, static_cast<std::uint64_t>(k));
      const SphereSystem f = random_system_on_sphere(d, rng);
      const AllRootsResult all = solve_all_total_degree(f, rng, {}, threads);
      for (const auto& p : all.paths) {
        if (!p.track.ok()) {
          ++unfinished;
          continue;
        }
        ++paths;
        if (!p.refined) {
          ++failures;
          continue;
        }
        const double ratio = p.certificate.distance / (0.5 * p.certificate.zero.radius);
        worst = std::max(worst, ratio);
        if (!(ratio <= 1.0)) ++violations;
      }
    }
  };
  run(DegreeVector{2, 2}, 20, 1001);
  run(DegreeVector{2, 2, 2}, 10, 1002);
  return {violations == 0 && failures == 0 && paths > 0,
          fmt("%zu successful endpoints (%zu paths unfinished), %zu outside half radius, %zu unrefinable, "
              "max d/(r/2) = %.3g",
              paths, unfinished, violations, failures, worst)};
}

// 2. num_steps <= ceil(71 d^{3/2} C0) on random-pair paths.
Outcome step_bound() {
  std::size_t violations = 0, checked = 0;
  double tightest = 0.0;
  for (int k = 0; k < 10; ++k) {
    Rng rng = derive_rng(2001, static_cast<std::uint64_t>(k));
    const DegreeVector d{2, 2};
    const InitialPair pair = random_initial_pair(d, rng);
    const SphereSystem f = random_system_on_sphere(d, rng);
    const LinearHomotopy h(pair.g, f);
    TrackerOptions opts;
    opts.record_trace = false;
    const TrackResult r = track_linear(h, pair.zeta0, opts);
    if (!r.ok()) {
      ++violations;
      continue;
    }
    const ConditionLength c0 = condition_length(h, pair.zeta0, 2000);
    const double bound = linear_step_bound(2, c0.value);
    ++checked;
    tightest = std::max(tightest, static_cast<double>(r.num_steps) / bound);
    if (static_cast<double>(r.num_steps) > bound) ++violations;
  }
  return {violations == 0 && checked == 10,
          fmt("%zu paths checked, %zu violations, max steps/bound = %.4f", checked, violations, tightest)};
}

// 3. Mean certified steps per path on the benchmark families.
Outcome benchmark_regime(unsigned threads) {
  BenchConfig random22;
  random22.degrees = DegreeVector{2, 2};
  random22.trials = 10;
  random22.seed = 3001;
  random22.threads = threads;
  const BenchReport a = run_bench(random22);

  BenchConfig k3;
  k3.katsura_n = 3;
  k3.trials = 3;
  k3.seed = 3002;
  k3.threads = threads;
  const BenchReport b = run_bench(k3);

  const double ra = a.certified.mean_steps, rb = b.certified.mean_steps;
  const bool pass = a.certified.failures == 0 && b.certified.failures == 0 && ra >= 50 && ra <= 800 && rb >= 150 &&
                    rb <= 2000;
  return {pass, fmt("random(2,2) %.1f steps/path (%zu failures), katsura3 %.1f steps/path (%zu failures)", ra,
                    a.certified.failures, rb, b.certified.failures)};
}

// 4. Start-pair ordering for four quadrics.
Outcome conjecture_ordering(unsigned threads) {
  ConjectureConfig config;
  config.n = 4;
  config.trials = 30;
  config.seed = 4001;
  config.threads = threads;
  const ConjectureReport r = run_conjecture(config);
  const bool below = r.good.mean_steps < r.bound && r.total.mean_steps < r.bound && r.random.mean_steps < r.bound;
  const bool pass = r.good.mean_steps < r.random.mean_steps && below && r.good.successes > 0 &&
                    r.random.successes > 0 && r.total.successes > 0;
  return {pass, fmt("E_good %.1f, E_total %.1f, E_rand %.1f, bound %.2f, failures %zu/%zu/%zu", r.good.mean_steps,
                    r.total.mean_steps, r.random.mean_steps, r.bound, r.good.failures, r.total.failures,
                    r.random.failures)};
}

// 5. Endpoint distribution over the roots of a perturbed good system.
Outcome equidistribution(unsigned threads) {
  bool pass = true;
  std::string detail;
  for (PairVariant variant : {PairVariant::Ball, PairVariant::Unitary}) {
    EntropyConfig config;
    config.degrees = DegreeVector{2, 2, 2};
    config.epsilon = 0.1;
    config.runs = 800;
    config.variant = variant;
    config.seed = 5001;
    config.threads = threads;
    const EntropyReport r = run_entropy(config);
    std::size_t hit = 0;
    for (auto h : r.root_hits) hit += h > 0 ? 1 : 0;
    const bool ok = hit == 8 && r.entropy_bits >= 2.9;
    pass = pass && ok;
    detail += fmt("%s: %zu/8 roots hit, entropy %.4f bits, %zu unmatched; ",
                  variant == PairVariant::Ball ? "ball" : "unitary", hit, r.entropy_bits, r.failures);
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

// 6. Invariant checks on random data.
Outcome invariants() {
  Rng rng(6001);
  std::vector<std::string> failed;
  auto check = [&](bool ok, const char* name) {
    if (!ok) failed.emplace_back(name);
  };

  bool euler = true, bw = true, newton = true, metric = true;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4;
    std::vector<int> degrees;
    for (int i = 0; i < n; ++i) degrees.push_back(1 + (trial + 2 * i) % 4);
    const DegreeVector d(degrees);
    const PolySystem a = gaussian_system(d, rng);
    const PolySystem b = gaussian_system(d, rng);
    const CVector z = complex_gaussian_vector(n + 1, rng);

    // Sum_j z_j dh_i/dz_j = d_i h_i(z).
    const CVector lhs = jacobian(a, z) * z;
    CVector rhs = evaluate(a, z);
    for (int i = 0; i < n; ++i) rhs(i) *= static_cast<double>(d[i]);
    euler = euler && (lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm());

    const CMatrix u = random_unitary(n + 1, rng);
    const double scale = bw_norm(a) * bw_norm(b);
    bw = bw && std::abs(bw_inner(unitary_compose(a, u), unitary_compose(b, u)) - bw_inner(a, b)) <= 1e-9 * scale;

    try {
      const ProjectivePoint p = newton_projective(a, z);
      const ProjectivePoint q = newton_projective(a * Complex(0.0, 2.0), (Complex(-3.0, 1.0) * z).eval());
      newton = newton && riemann_distance(p, q) <= 1e-10;
    } catch (const SingularSolveError&) {
    }

    const CVector x = unit_vector(n + 1, rng), y = unit_vector(n + 1, rng), w = unit_vector(n + 1, rng);
    const double xy = riemann_distance(x, y);
    metric = metric && riemann_distance(x, x) <= 1e-15 && xy >= 0.0 && std::abs(xy - riemann_distance(y, x)) <= 1e-14 &&
             riemann_distance(x, w) <= xy + riemann_distance(y, w) + 1e-12;
  }
  check(euler, "euler identity");
  check(bw, "unitary invariance");
  check(newton, "newton scale invariance");
  check(metric, "metric axioms");

  // Every recorded step lies in [t_hi/2, t_hi]; the final step may be clipped to land on T.
  bool interval = true;
  for (int k = 0; k < 10; ++k) {
    const InitialPair pair = random_initial_pair(DegreeVector{2, 2}, rng);
    const SphereSystem f = random_system_on_sphere(DegreeVector{2, 2}, rng);
    const TrackResult r = track_linear(pair.g, f, pair.zeta0);
    interval = interval && r.ok();
    for (std::size_t s = 0; s < r.trace.size(); ++s) {
      const auto [lo, hi] = step_interval(kLinearStepConstant, 2, r.trace[s].phi);
      interval = interval && r.trace[s].t <= hi && (s + 1 == r.trace.size() || r.trace[s].t >= lo);
    }
  }
  check(interval, "step interval");

  // E |M|_F^2 = n(n+1)/(N+2) with N + 1 = dim H_(d).
  const DegreeVector d{2, 2, 2};
  const double expected = 12.0 / (static_cast<double>(d.space_dimension()) + 1.0);
  double sum = 0.0, squares = 0.0;
  const int draws = 1000;
  for (int k = 0; k < draws; ++k) {
    const double v = construct_random_initial_pair(d, rng).m.squaredNorm();
    sum += v;
    squares += v * v;
  }
  const double mean = sum / draws;
  const double se = std::sqrt((squares / draws - mean * mean) * draws / (draws - 1) / draws);
  check(std::abs(mean - expected) <= 3.0 * se, "frobenius moment");

  std::string detail = failed.empty() ? "all invariant checks hold" : "failed:";
  for (const auto& f : failed) detail += " " + f + ";";
  detail += fmt(" |M|_F^2 mean %.5f vs %.5f (se %.5f)", mean, expected, se);
  return {failed.empty(), detail};
}

// 7. The four solutions of {x^2 + y^2 - z^2, xy} with (X0, X1, X2) = (z, x, y).
Outcome session() {
  PolySystem h{DegreeVector{2, 2}};
  h.coeff(0, {0, 2, 0}) = 1.0;
  h.coeff(0, {0, 0, 2}) = 1.0;
  h.coeff(0, {2, 0, 0}) = -1.0;
  h.coeff(1, {0, 1, 1}) = 1.0;
  const SphereSystem f = normalize_to_sphere(h);
  const AllRootsResult all = solve_all_total_degree(f, total_degree_start(f.degrees(), Complex(1.0)));

  std::size_t certified = 0;
  for (const auto& p : all.paths) certified += p.ok() && p.certificate.certified ? 1 : 0;

  // Target in (x, y, z) order, compared up to a unit phase.
  CVector target(3);
  target << 0.0, -0.7068, 0.7074;
  long steps = -1;
  double best = 1.0;
  for (const auto& p : all.paths) {
    const CVector& z = p.root.coords();
    CVector xyz(3);
    xyz << z(1), z(2), z(0);
    const Complex overlap = xyz.dot(target);
    const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
    const double gap = (phase * target - xyz).cwiseAbs().maxCoeff();
    if (gap < best) {
      best = gap;
      steps = static_cast<long>(p.track.num_steps);
    }
  }
  const bool pass = all.paths.size() == 4 && certified == 4 && all.distinct && best <= 1e-3 && steps >= 40 &&
                    steps <= 500;
  return {pass, fmt("%zu/4 certified, nearest solution off by %.2e, its path took %ld steps", certified, best, steps)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int k = 1; k < argc; ++k) selected.insert(std::atoi(argv[k]));
  const unsigned threads = default_thread_count();

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"certificate soundness", [&] { return certificate_soundness(threads); }},
      {"step bound", [] { return step_bound(); }},
      {"benchmark step regime", [&] { return benchmark_regime(threads); }},
      {"start pair ordering", [&] { return conjecture_ordering(threads); }},
      {"equidistribution", [&] { return equidistribution(threads); }},
      {"invariants", [] { return invariants(); }},
      {"session reproduction", [] { return session(); }},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int number = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.count(number)) continue;
    const auto started = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[k].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", outcome.pass ? "PASS" : "FAIL", number,
                criteria[k].first.c_str(), outcome.detail.c_str(), seconds);
    std::fflush(stdout);
    failures += outcome.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
