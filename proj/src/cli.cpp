#include "innerapx/cli.hpp"

#include "innerapx/core.hpp"
#include "innerapx/errors.hpp"
#include "innerapx/grid.hpp"
#include "innerapx/instances.hpp"
#include "innerapx/io.hpp"
#include "innerapx/metrics.hpp"
#include "innerapx/oracles.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>

namespace innerapx {

namespace {

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_st>(err);
  auto log = std::make_shared<spdlog::logger>("pareto", sink);
  log->set_pattern("[%l] %v");
  const char* env = std::getenv("PARETO_LOG");
  log->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
  return log;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// "0.1" for every objective, or "0.1,0,0.2" per objective.
EpsilonSpec parse_eps(const std::string& text, const Orientation& orientation) {
  if (text.find(',') == std::string::npos) return EpsilonSpec::uniform(orientation, parse_scalar(text));
  std::vector<Scalar> eps;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) eps.push_back(parse_scalar(part));
  if (eps.size() != orientation.dimension()) {
    throw DimensionMismatch(fmt::format("--eps has {} values, the instance has {} objectives", eps.size(),
                                        orientation.dimension()));
  }
  return EpsilonSpec(orientation, std::move(eps));
}

// CSV formatting: integers exactly, other rationals as 6 significant digits.
std::string num(const Scalar& x) {
  if (denominator(x) == 1) return to_string(x);
  return fmt::format("{:.6g}", x.convert_to<double>());
}

std::string field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

template <typename F>
std::string or_na(F&& f) {
  try {
    return f();
  } catch (const MetricUndefined&) {
  } catch (const UnsupportedDimension&) {
  } catch (const EmptyInput&) {
  } catch (const InvalidArgument&) {
  }
  return "NA";
}

struct Reference {
  std::string path;
  std::string fingerprint;
  Orientation orientation;
  std::vector<Point> points;
  std::size_t r_star = 0;
};

/// A run document (its R is R*) or an instance (enumerated).
Reference load_reference(const std::string& path, spdlog::logger& log) {
  const std::string text = read_text(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  Reference ref;
  ref.path = path;
  if (first != std::string::npos && text[first] == '{') {
    const RunFile run = run_from_json(text);
    if (!run.complete) log.warn("reference run {} is incomplete", path);
    ref.fingerprint = run.fingerprint;
    ref.orientation = run.spec.orientation();
    ref.points = run.images;
    ref.r_star = run.images.size();
  } else {
    const Instance inst = read_instance(path);
    const auto all = enumerate_images(inst);
    ref.fingerprint = fingerprint(inst);
    ref.orientation = orientation(inst);
    ref.points = nondominated(all, ref.orientation);
    ref.r_star = Polyhedron::from_points(all, ref.orientation).vertices().size();
  }
  if (ref.points.empty()) throw EmptyInput("reference " + path + " has no images");
  return ref;
}

void check_same_instance(const RunFile& run, const std::string& run_path, const std::string& fp,
                         const std::string& other) {
  if (run.fingerprint != fp) {
    throw InvalidArgument("instance mismatch: " + run_path + " and " + other + " refer to different instances");
  }
}

std::string indicator_of(const RunFile& run, const Reference& ref) {
  return or_na([&] {
    const auto A = Polyhedron::from_points(run.images, run.spec.orientation());
    const auto ind = eps_convex_indicator(A, ref.points);
    return ind.infinite ? std::string("inf") : num(ind.value);
  });
}

std::string evaluate_row(const std::string& path, const Reference& ref, bool check_grid) {
  const RunFile run = read_run(path);
  check_same_instance(run, path, ref.fingerprint, ref.path);
  std::vector<std::string> cols{
      field(run.instance_path),
      field(run.eps_text),
      num(run.quality.alpha),
      std::to_string(run.images.size()),
      std::to_string(ref.r_star),
      indicator_of(run, ref),
      or_na([&] { return num(coverage_error(run.images, ref.points)); }),
      or_na([&] { return num(median_error(run.images, ref.points)); }),
      or_na([&] { return num(hypervolume_ratio(run.images, ref.points, ref.orientation)); }),
      or_na([&] { return num(range_ratio(run.images, ref.points)); }),
      fmt::format("{:.3f}", run.stats.wall_ms),
  };
  if (check_grid) {
    bool ok = false;
    try {
      ok = check_once_per_cell(run.discovered, GridSpec::make(run.grid_p, run.spec));
    } catch (const InvalidArgument&) {
      ok = false;
    }
    cols.push_back(ok ? "true" : "false");
  }
  std::string row;
  for (std::size_t i = 0; i < cols.size(); ++i) row += (i ? "," : "") + cols[i];
  return row;
}

// ---------------------------------------------------------------------------

struct GenerateOpts {
  std::string type;
  std::size_t n = 0;
  std::size_t d = 2;
  std::uint64_t seed = 1;
  std::string mode = "uniform";
  std::int64_t max_cost = 20;
  std::string out;
};

int cmd_generate(const GenerateOpts& o, std::ostream& out) {
  Instance inst;
  const InstanceType type = parse_instance_type(o.type);
  switch (type) {
    case InstanceType::kp: inst = generate_kp(o.n, o.d, o.seed, parse_kp_mode(o.mode)); break;
    case InstanceType::ap: inst = generate_ap(o.n, o.d, o.seed, o.max_cost); break;
    case InstanceType::tsp: inst = generate_tsp(o.n, o.seed, o.d); break;
    default: throw InvalidArgument("no generator for type " + o.type);
  }
  if (o.out.empty()) {
    out << serialize_instance(inst);
  } else {
    write_instance(inst, o.out);
    out << summary(inst) << "\n";
  }
  return kExitOk;
}

struct SolveOpts {
  std::string instance;
  std::string eps;
  std::string oracle = "auto";
  std::optional<double> time_limit;
  std::size_t max_iterations = RunConfig{}.max_iterations;
  std::string out;
};

int cmd_solve(const SolveOpts& o, std::ostream& out, spdlog::logger& log) {
  const Instance inst = read_instance(o.instance);
  const EpsilonSpec spec = parse_eps(o.eps, orientation(inst));
  const auto ws = make_solver(inst, o.oracle);
  const WeightedSumOracle oracle(*ws);
  RunConfig cfg;
  cfg.max_iterations = o.max_iterations;
  cfg.time_limit = o.time_limit;
  log.info("solving {} with {} ({}), eps {}", summary(inst), ws->name(), to_string(ws->quality()), o.eps);

  bool partial = false;
  const RunResult result = [&] {
    try {
      return inner_approximate(oracle, find_initial_solution(*ws), spec, cfg);
    } catch (const PartialResultError& e) {
      log.warn("{}; writing partial result", e.what());
      partial = true;
      return e.partial();
    }
  }();

  RunFile run = make_run_file(result, true);
  run.instance_path = o.instance;
  run.instance_type = to_string(type_of(inst));
  run.fingerprint = fingerprint(inst);
  run.oracle = ws->name();
  run.eps_text = o.eps;
  run.grid_p = image_bit_bound(inst);

  if (log.should_log(spdlog::level::debug)) {
    for (std::size_t i = 0; i < run.trace.size(); ++i) {
      const auto& rec = run.trace[i];
      log.debug("call {}: {} -> {}", i, to_string(rec.scaled),
                rec.image ? "not inside " + to_string(*rec.image) : std::string("inside"));
    }
  }
  log.info("|R| = {} ({} found), {} oracle calls, {:.1f} ms", run.images.size(), run.discovered.size(),
           run.stats.oracle_calls, run.stats.wall_ms);

  if (o.out.empty()) {
    out << run_to_json(run);
  } else {
    write_run(run, o.out);
  }
  return partial ? kExitPartial : kExitOk;
}

struct EvaluateOpts {
  std::vector<std::string> runs;
  std::string reference;
  bool check_grid = false;
  std::size_t jobs = 1;
};

int cmd_evaluate(const EvaluateOpts& o, std::ostream& out, spdlog::logger& log) {
  const Reference ref = load_reference(o.reference, log);
  std::vector<std::string> rows(o.runs.size());
  const std::size_t jobs = std::max<std::size_t>(o.jobs, 1);
  for (std::size_t start = 0; start < o.runs.size(); start += jobs) {
    std::vector<std::future<std::string>> batch;
    const std::size_t end = std::min(o.runs.size(), start + jobs);
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, evaluate_row,
                                 std::cref(o.runs[i]), std::cref(ref), o.check_grid));
    }
    for (std::size_t i = start; i < end; ++i) rows[i] = batch[i - start].get();
  }
  out << "instance,eps,alpha,r,r_star,eps_indicator,ce,me,hvr,rr,wall_ms";
  if (o.check_grid) out << ",grid_ok";
  out << "\n";
  for (const auto& row : rows) out << row << "\n";
  return kExitOk;
}

struct CompareOpts {
  std::string run_a;
  std::string run_b;
  std::string reference;
};

int cmd_compare(const CompareOpts& o, std::ostream& out, spdlog::logger& log) {
  const RunFile a = read_run(o.run_a);
  const RunFile b = read_run(o.run_b);
  check_same_instance(b, o.run_b, a.fingerprint, o.run_a);
  const Reference ref = load_reference(o.reference, log);
  check_same_instance(a, o.run_a, ref.fingerprint, o.reference);
  out << "run,r,eps_indicator,wall_ms,ratio\n";
  for (const auto& [path, run] : {std::pair{o.run_a, &a}, std::pair{o.run_b, &b}}) {
    out << field(path) << "," << run->images.size() << "," << indicator_of(*run, ref) << ","
        << fmt::format("{:.3f}", run->stats.wall_ms) << ","
        << num(cardinality_ratio(run->images.size(), ref.r_star)) << "\n";
  }
  return kExitOk;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const OracleContractError*>(&e)) return kExitContract;
  if (dynamic_cast<const PartialResultError*>(&e)) return kExitPartial;
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto log = make_logger(err);

  CLI::App app{"Convex approximation sets by polyhedral inner approximation", "pareto"};
  app.require_subcommand(1);

  GenerateOpts gen;
  auto* generate = app.add_subcommand("generate", "Generate a random instance");
  generate->add_option("--type", gen.type, "kp, ap or tsp")->required()->check(CLI::IsMember({"kp", "ap", "tsp"}));
  generate->add_option("--n", gen.n, "Items, agents or cities")->required();
  generate->add_option("--d", gen.d, "Objectives")->capture_default_str();
  generate->add_option("--seed", gen.seed)->capture_default_str();
  generate->add_option("--mode", gen.mode, "Knapsack mode: uniform or conflicting")->capture_default_str();
  generate->add_option("--max-cost", gen.max_cost, "Largest assignment cost")->capture_default_str();
  generate->add_option("-o,--output", gen.out, "Output file (default: stdout)");

  SolveOpts sol;
  auto* solve = app.add_subcommand("solve", "Compute a convex approximation set");
  solve->add_option("instance", sol.instance)->required();
  solve->add_option("--eps", sol.eps, "One value, or one per objective separated by commas")->required();
  solve->add_option("--oracle", sol.oracle,
                    "auto, exact, hungarian, extgreedy, doubletree, christofides or bruteforce")
      ->capture_default_str();
  solve->add_option("--time-limit", sol.time_limit, "Seconds");
  solve->add_option("--max-iterations", sol.max_iterations)->capture_default_str();
  solve->add_option("-o,--output", sol.out, "Run JSON (default: stdout)");

  EvaluateOpts ev;
  auto* evaluate = app.add_subcommand("evaluate", "Metrics of runs against a reference, as CSV");
  evaluate->add_option("runs", ev.runs, "Run JSON files")->required();
  evaluate->add_option("--reference", ev.reference, "Exact-mode run JSON or instance file")->required();
  evaluate->add_flag("--check-grid", ev.check_grid, "Append the once-per-cell verdict");
  evaluate->add_option("--jobs", ev.jobs)->capture_default_str()->check(CLI::PositiveNumber);

  CompareOpts cmp;
  auto* compare = app.add_subcommand("compare", "Two runs side by side, as CSV");
  compare->add_option("run_a", cmp.run_a)->required();
  compare->add_option("run_b", cmp.run_b)->required();
  compare->add_option("--reference", cmp.reference, "Exact-mode run JSON or instance file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(gen, out);
    if (*solve) return cmd_solve(sol, out, *log);
    if (*evaluate) return cmd_evaluate(ev, out, *log);
    return cmd_compare(cmp, out, *log);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace innerapx
