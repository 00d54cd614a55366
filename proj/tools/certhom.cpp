// certhom: command-line front end for the certified tracker and experiments.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "certhom/certhom.hpp"
#include "certhom/io.hpp"

namespace {

using namespace certhom;

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  unsigned threads = 1;
  bool verify_bound = false;
};

/// Writes `text` to --out, or stdout when no path was given.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw Error("cannot write " + g.out);
  file << text;
}

PairKind parse_start(const std::string& s) {
  if (s == "total") return PairKind::TotalDegree;
  if (s == "good") return PairKind::GoodPair;
  if (s == "random") return PairKind::Random;
  if (s == "unitary") return PairKind::RandomUnitary;
  throw Error("unknown start " + s);
}

void report_time(const char* what, double seconds) { std::fprintf(stderr, "%s: %.3f s\n", what, seconds); }

int cmd_solve(const Globals& g, const std::string& file, const std::string& start, const std::vector<double>& gamma) {
  const LoadedSystem loaded = load_system(file);
  const SphereSystem f = normalize_to_sphere(loaded.system);
  Rng rng = derive_rng(g.seed, 0);
  const PairKind kind = parse_start(start);
  std::vector<PathSolution> paths;
  if (kind == PairKind::TotalDegree) {
    const StartSet set = gamma.empty() ? total_degree_start(f.degrees(), rng)
                                       : total_degree_start(f.degrees(), Complex(gamma[0], gamma[1]));
    paths = solve_all_total_degree(f, set, {}, g.threads).paths;
  } else {
    paths.push_back(track_pair(f, make_initial_pair(kind, f.degrees(), rng)));
  }
  std::ostringstream csv;
  write_solutions_csv(csv, paths);
  emit(g, csv.str());
  for (const auto& p : paths) {
    if (p.ok()) return 0;
  }
  return 1;
}

int cmd_track(const Globals& g, const std::string& file, const std::string& start, std::size_t path,
              const std::string& tracker) {
  const SphereSystem f = normalize_to_sphere(load_system(file).system);
  Rng rng = derive_rng(g.seed, 0);
  const PairKind kind = parse_start(start);
  InitialPair pair;
  if (kind == PairKind::TotalDegree) {
    StartSet set = total_degree_start(f.degrees(), rng);
    if (path >= set.roots.size()) throw Error("path index out of range");
    pair = {set.g, set.roots[path], kind};
  } else {
    pair = make_initial_pair(kind, f.degrees(), rng);
  }
  const LinearHomotopy h(pair.g, f);
  const bool heuristic = tracker == "heuristic";
  const TrackResult result = heuristic ? track_heuristic(h, pair.zeta0) : track_linear(h, pair.zeta0);
  std::ostringstream csv;
  write_trace_csv(csv, result, heuristic);
  emit(g, csv.str());
  std::fprintf(stderr, "status: %s, steps: %zu\n", to_string(result.status).c_str(), result.num_steps);
  return result.ok() ? 0 : 1;
}

int cmd_bench(const Globals& g, const std::string& family, const std::vector<int>& degrees, int n,
              std::size_t trials, const std::string& tracker, const std::string& summary_path) {
  BenchConfig config;
  if (family == "katsura") {
    config.katsura_n = n;
  } else if (family == "random") {
    config.degrees = DegreeVector(degrees);
  } else {
    throw Error("unknown family " + family);
  }
  config.trials = trials;
  config.tracker = tracker == "heuristic" ? TrackerChoice::Heuristic
                   : tracker == "both"    ? TrackerChoice::Both
                                          : TrackerChoice::Certified;
  config.seed = g.seed;
  config.threads = g.threads;
  const BenchReport report = run_bench(config);

  std::vector<const ExperimentReport*> parts;
  if (config.tracker != TrackerChoice::Heuristic) parts.push_back(&report.certified);
  if (config.tracker != TrackerChoice::Certified) parts.push_back(&report.heuristic);
  std::ostringstream paths;
  write_paths_csv(paths, parts);
  emit(g, paths.str());

  std::ostringstream summary;
  write_summary_header(summary);
  for (const auto* r : parts) write_summary_row(summary, report.family, *r);
  if (summary_path.empty()) {
    std::cerr << summary.str();
  } else {
    std::ofstream(summary_path, std::ios::binary) << summary.str();
  }
  report_time("wall time", report.certified.wall_time_s);
  bool any = false;
  for (const auto* r : parts) any = any || r->successes > 0;
  return any ? 0 : 1;
}

int cmd_conjecture(const Globals& g, int n, std::size_t trials, int resolution) {
  ConjectureConfig config;
  config.n = n;
  config.trials = trials;
  config.seed = g.seed;
  config.threads = g.threads;
  config.verify_bound = g.verify_bound;
  config.bound_resolution = resolution;
  const ConjectureReport report = run_conjecture(config);
  std::ostringstream csv;
  write_conjecture_csv(csv, report);
  emit(g, csv.str());
  if (config.verify_bound) {
    std::fprintf(stderr, "bound checked on %zu paths, %zu violations\n", report.bound_checked,
                 report.bound_violations);
  }
  report_time("wall time", report.good.wall_time_s);
  const bool any = report.good.successes + report.total.successes + report.random.successes > 0;
  return any && report.bound_violations == 0 ? 0 : 1;
}

int cmd_entropy(const Globals& g, const std::vector<int>& degrees, double epsilon, std::size_t runs,
                const std::string& variant) {
  EntropyConfig config;
  config.degrees = DegreeVector(degrees);
  config.epsilon = epsilon;
  config.runs = runs;
  if (variant == "ball") {
    config.variant = PairVariant::Ball;
  } else if (variant == "unitary") {
    config.variant = PairVariant::Unitary;
  } else {
    throw Error("unknown variant " + variant);
  }
  config.seed = g.seed;
  config.threads = g.threads;
  const EntropyReport report = run_entropy(config);
  std::ostringstream csv;
  write_entropy_csv(csv, report);
  emit(g, csv.str());
  std::fprintf(stderr, "runs: %zu, failures: %zu, entropy_bits: %s, mean_steps: %s\n", report.runs, report.failures,
               format_double(report.entropy_bits).c_str(), format_double(report.steps.mean_steps).c_str());
  report_time("wall time", report.steps.wall_time_s);
  return report.failures < report.runs ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified homotopy continuation for square homogeneous polynomial systems.\n"
               "Reports are CSV with floats printed to 17 significant digits."};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Master seed (unsigned 64-bit)")->capture_default_str();
  app.add_option("--out", g.out, "Output CSV path (default: stdout)");
  app.add_option("--threads", g.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_flag("--verify-bound", g.verify_bound,
               "conjecture: also compute the condition length of every path and check the step bound (slow)");

  std::string file;
  std::string start = "total";

  auto* solve = app.add_subcommand(
      "solve",
      "Solve a system given as JSON.\n"
      "CSV columns: path,status,steps,refined,certified,mu,distance,z0_re,z0_im,...\n"
      "z is the Newton-refined root; distance is d_R from the raw endpoint to it.");
  solve->add_option("system", file, "System file")->required()->check(CLI::ExistingFile);
  solve->add_option("--start", start, "Start: total (all paths), good or random (one path)")
      ->check(CLI::IsMember({"total", "good", "random", "unitary"}))
      ->capture_default_str();
  std::vector<double> gamma;
  solve->add_option("--gamma", gamma, "Fixed start multiplier RE IM for --start total (default: random unit)")
      ->expected(2);

  std::size_t path = 0;
  std::string tracker = "certified";
  auto* track = app.add_subcommand(
      "track",
      "Track one path and write its trace.\n"
      "CSV columns: step,s,t,phi,chi1,chi2[,accepted],z0_re,z0_im,... (heuristic traces add\n"
      "accepted and leave phi/chi as nan); each row holds the iterate after that step.");
  track->add_option("system", file, "System file")->required()->check(CLI::ExistingFile);
  track->add_option("--start", start, "Start: total, good, random or unitary")
      ->check(CLI::IsMember({"total", "good", "random", "unitary"}))
      ->capture_default_str();
  track->add_option("--path", path, "Start root index for --start total")->capture_default_str();
  track->add_option("--tracker", tracker, "certified or heuristic")
      ->check(CLI::IsMember({"certified", "heuristic"}))
      ->capture_default_str();

  std::string family = "random";
  std::vector<int> degrees{2, 2};
  int n = 3;
  std::size_t trials = 30;
  std::string summary_path;
  auto* bench = app.add_subcommand(
      "bench",
      "Total-degree tracking over a family of targets.\n"
      "CSV columns (--out): trial,path,kind,steps,status.\n"
      "Summary columns (stderr or --summary): label,kind,paths,failures,mean_steps,variance_steps;\n"
      "means and variances are over successful paths.");
  bench->add_option("--family", family, "random or katsura")
      ->check(CLI::IsMember({"random", "katsura"}))
      ->capture_default_str();
  bench->add_option("--degrees", degrees, "Degrees for the random family")->delimiter(',');
  bench->add_option("--n", n, "Unknowns for the Katsura family (2^(n-1) roots)")->capture_default_str();
  bench->add_option("--trials", trials, "Number of targets")->capture_default_str();
  bench->add_option("--tracker", tracker, "certified, heuristic or both")
      ->check(CLI::IsMember({"certified", "heuristic", "both"}))
      ->capture_default_str();
  bench->add_option("--summary", summary_path, "Summary CSV path");

  int conj_n = 4;
  int resolution = 2000;
  auto* conjecture = app.add_subcommand(
      "conjecture",
      "Compare good, total-degree and random initial pairs on random quadratic targets.\n"
      "CSV columns: n,kind,trials,failures,mean_steps,variance_steps,bound.\n"
      "Defaults are desk scale (30 trials); e.g. --trials 1000 for a long run.");
  conjecture->add_option("--n", conj_n, "Number of quadratic equations")->capture_default_str();
  conjecture->add_option("--trials", trials, "Number of targets")->capture_default_str();
  conjecture->add_option("--resolution", resolution, "Nodes per path for --verify-bound")->capture_default_str();

  std::vector<int> entropy_degrees{2, 2, 2};
  double epsilon = 0.1;
  std::size_t runs = 800;
  std::string variant = "ball";
  auto* entropy = app.add_subcommand(
      "entropy",
      "Histogram of roots reached from random initial pairs on a perturbed good system.\n"
      "CSV columns: root,hits,z0_re,z0_im,...; entropy and failures go to stderr.\n"
      "Defaults are desk scale (800 runs); e.g. --runs 8000 for a long run.");
  entropy->add_option("--degrees", entropy_degrees, "Degrees")->delimiter(',');
  entropy->add_option("--epsilon", epsilon, "Perturbation size")->capture_default_str();
  entropy->add_option("--runs", runs, "Number of random pairs")->capture_default_str();
  entropy->add_option("--variant", variant, "ball or unitary")
      ->check(CLI::IsMember({"ball", "unitary"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return cmd_solve(g, file, start, gamma);
    if (*track) return cmd_track(g, file, start, path, tracker);
    if (*bench) return cmd_bench(g, family, degrees, n, trials, tracker, summary_path);
    if (*conjecture) return cmd_conjecture(g, conj_n, trials, resolution);
    if (*entropy) return cmd_entropy(g, entropy_degrees, epsilon, runs, variant);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
