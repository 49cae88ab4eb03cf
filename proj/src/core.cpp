#include "innerapx/core.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <set>

namespace innerapx {

EpsilonSpec::EpsilonSpec(Orientation orientation, std::vector<Scalar> eps)
    : orientation_(std::move(orientation)), eps_(std::move(eps)) {
  if (eps_.size() != orientation_.dimension()) {
    throw DimensionMismatch("one epsilon per objective expected, got " +
                            std::to_string(eps_.size()) + " for d = " +
                            std::to_string(orientation_.dimension()));
  }
  for (std::size_t i = 0; i < eps_.size(); ++i) {
    if (eps_[i] < 0) throw InvalidArgument("epsilon must be nonnegative");
    if (orientation_[i] == Sense::max && eps_[i] >= 1) {
      throw InvalidArgument("epsilon of a max objective must be below 1");
    }
  }
}

EpsilonSpec EpsilonSpec::uniform(Orientation orientation, const Scalar& eps) {
  if (eps < 0) throw InvalidArgument("epsilon must be nonnegative");
  std::vector<Scalar> per;
  for (std::size_t i = 0; i < orientation.dimension(); ++i) {
    per.push_back(orientation[i] == Sense::min ? eps : Scalar(eps / (1 + eps)));
  }
  return EpsilonSpec(std::move(orientation), std::move(per));
}

Scalar EpsilonSpec::factor(std::size_t i) const {
  return orientation_[i] == Sense::min ? Scalar(1 + eps_.at(i)) : Scalar(1 - eps_.at(i));
}

bool EpsilonSpec::is_exact() const {
  return std::all_of(eps_.begin(), eps_.end(), [](const Scalar& e) { return e == 0; });
}

Halfspace scale_halfspace(const Halfspace& h, const EpsilonSpec& spec) {
  if (h.dimension() != spec.dimension()) {
    throw DimensionMismatch("halfspace dimension " + std::to_string(h.dimension()) +
                            " does not match epsilon dimension " +
                            std::to_string(spec.dimension()));
  }
  Halfspace out = h;
  for (std::size_t i = 0; i < out.w.size(); ++i) out.w[i] *= spec.factor(i);
  return out;
}

Point scale_point(const Point& y, const EpsilonSpec& spec) {
  if (y.size() != spec.dimension()) throw DimensionMismatch("point and epsilon dimensions differ");
  Point out = y;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= spec.factor(i);
  return out;
}

Candidate find_initial_solution(const WeightedSumSolver& ws) {
  const auto o = ws.orientation();
  WeightVector w;
  for (std::size_t i = 0; i < o.dimension(); ++i) w.emplace_back(o.sign(i));
  try {
    return ws.solve(w);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw OracleError(std::string("initial weighted-sum call failed: ") + e.what());
  }
}

RunResult inner_approximate(const PlaneSeparatingOracle& oracle, const Candidate& initial,
                            const EpsilonSpec& spec, const RunConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  if (cfg.max_iterations < 1) throw InvalidArgument("max_iterations must be >= 1");
  const Orientation& o = spec.orientation();
  if (!(oracle.orientation() == o)) {
    throw InvalidArgument("oracle orientation " + to_string(oracle.orientation()) +
                          " differs from " + to_string(o));
  }
  if (initial.image.size() != o.dimension()) {
    throw DimensionMismatch("initial image has the wrong dimension");
  }
  for (const auto& v : initial.image) {
    if (v < 0) throw InvalidArgument("initial image must be nonnegative");
  }

  RunResult run{.solutions = {initial.solution},
                .images = {initial.image},
                .polyhedron = Polyhedron::from_points(std::vector<Point>{initial.image}, o),
                .trace = {},
                .stats = {},
                .complete = false,
                .quality = oracle.quality(),
                .spec = spec};

  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  };
  auto stop = [&](const std::string& why) {
    run.stats.wall_ms = elapsed_ms();
    throw PartialResultError(why, run);
  };

  std::deque<Halfspace> pending(run.polyhedron.facets().begin(), run.polyhedron.facets().end());
  std::set<Halfspace> checked;

  while (!pending.empty()) {
    const Halfspace h = std::move(pending.front());
    pending.pop_front();
    const auto& facets = run.polyhedron.facets();
    if (checked.count(h) != 0 || !std::binary_search(facets.begin(), facets.end(), h)) continue;

    if (cfg.time_limit && elapsed_ms() > *cfg.time_limit * 1000) {
      stop("time limit reached after " + std::to_string(run.stats.oracle_calls) + " oracle calls");
    }

    const Halfspace scaled = scale_halfspace(h, spec);
    OracleAnswer answer = oracle.query(scaled);
    ++run.stats.oracle_calls;

    OracleCallRecord record{h, scaled, answer.status, std::nullopt, std::nullopt};
    if (answer.inside()) {
      checked.insert(h);
      if (cfg.trace_level == TraceLevel::calls) run.trace.push_back(std::move(record));
      continue;
    }

    if (!answer.candidate) throw OracleContractError("oracle answered not inside without a solution");
    Candidate& cand = *answer.candidate;
    if (cand.image.size() != o.dimension() || scaled.contains(cand.image)) {
      throw OracleContractError("oracle returned " + to_string(cand.image) +
                                ", which does not violate " + to_string(scaled));
    }
    record.solution_index = run.solutions.size();
    record.image = cand.image;
    if (cfg.trace_level == TraceLevel::calls) run.trace.push_back(std::move(record));

    if (run.stats.iterations >= cfg.max_iterations) {
      stop("iteration limit of " + std::to_string(cfg.max_iterations) + " reached");
    }
    run.solutions.push_back(std::move(cand.solution));
    run.images.push_back(cand.image);
    auto inserted = insert_point(run.polyhedron, cand.image);
    run.polyhedron = std::move(inserted.polyhedron);
    pending.insert(pending.end(), inserted.new_facets.begin(), inserted.new_facets.end());
    ++run.stats.iterations;
  }

  run.complete = true;
  run.stats.wall_ms = elapsed_ms();
  return run;
}

RunResult postprocess(RunResult result) {
  const auto& vertices = result.polyhedron.vertices();
  std::vector<bool> keep(result.images.size(), false);
  for (const auto& v : vertices) {
    for (std::size_t i = 0; i < result.images.size(); ++i) {
      if (result.images[i] == v) {
        keep[i] = true;
        break;
      }
    }
  }
  std::vector<Solution> solutions;
  std::vector<Point> images;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (!keep[i]) continue;
    solutions.push_back(std::move(result.solutions[i]));
    images.push_back(std::move(result.images[i]));
  }
  result.solutions = std::move(solutions);
  result.images = std::move(images);
  return result;
}

std::pair<Scalar, Scalar> compose_eps(const Scalar& eps) {
  if (eps <= 0) throw InvalidArgument("epsilon must be positive");
  const Scalar beta = eps / 2;
  const Scalar gamma = (1 + eps) / (1 + beta) - 1;
  return {beta, gamma};
}

}  // namespace innerapx
