/**
 * @file core.hpp
 * @brief Inner approximation driver for convex approximation sets.
 *
 * Starting from one solution, the driver keeps a polyhedron A = conv(images)
 * + C. Each facet of A is scaled by E and sent to a plane separating
 * oracle; a violating solution is added to R and A is updated, otherwise
 * the facet is confirmed. The run ends when every facet is confirmed.
 */

#ifndef INNERAPX_CORE_HPP
#define INNERAPX_CORE_HPP

#include "innerapx/errors.hpp"
#include "innerapx/oracles.hpp"
#include "innerapx/polytope.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace innerapx {

/**
 * Orientation plus one epsilon per objective. Induces the diagonal matrix E
 * with E_ii = 1 + eps_i (min) or 1 - eps_i (max). eps_i = 0 is allowed
 * (exact mode); max objectives need eps_i < 1.
 */
class EpsilonSpec {
 public:
  EpsilonSpec() = default;
  EpsilonSpec(Orientation orientation, std::vector<Scalar> eps);

  /**
   * One approximation ratio 1 + eps for every objective. Min objectives get
   * eps_i = eps; max objectives get eps_i = eps / (1 + eps), so that
   * E_ii = 1 / (1 + eps) and every eps >= 0 is admissible.
   */
  static EpsilonSpec uniform(Orientation orientation, const Scalar& eps);

  std::size_t dimension() const noexcept { return orientation_.dimension(); }
  const Orientation& orientation() const noexcept { return orientation_; }
  const std::vector<Scalar>& eps() const noexcept { return eps_; }

  /// E_ii.
  Scalar factor(std::size_t i) const;
  bool is_exact() const;

  bool operator==(const EpsilonSpec&) const = default;

 private:
  Orientation orientation_;
  std::vector<Scalar> eps_;
};

enum class TraceLevel { off, calls };

struct RunConfig {
  std::size_t max_iterations = 1'000'000;
  /// Seconds; checked before every oracle call.
  std::optional<double> time_limit;
  TraceLevel trace_level = TraceLevel::calls;
};

struct OracleCallRecord {
  Halfspace query;
  Halfspace scaled;
  OracleStatus status = OracleStatus::inside;
  /// Index into RunResult::solutions when the oracle returned a solution.
  std::optional<std::size_t> solution_index;
  std::optional<Point> image;
};

struct RunStats {
  /// Polyhedron updates (solutions added after the initial one).
  std::size_t iterations = 0;
  std::size_t oracle_calls = 0;
  double wall_ms = 0;
};

struct RunResult {
  std::vector<Solution> solutions;
  std::vector<Point> images;
  Polyhedron polyhedron;
  std::vector<OracleCallRecord> trace;
  RunStats stats;
  bool complete = false;
  OracleQuality quality;
  EpsilonSpec spec;
};

/// Raised when a limit stops a run; carries everything computed so far.
class PartialResultError : public Error {
 public:
  PartialResultError(const std::string& what, RunResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const RunResult& partial() const noexcept { return partial_; }

 private:
  RunResult partial_;
};

/// (E w, c); no canonicalization.
Halfspace scale_halfspace(const Halfspace& h, const EpsilonSpec& spec);

/// E y, componentwise.
Point scale_point(const Point& y, const EpsilonSpec& spec);

/// One weighted-sum call with weight +-1 per objective.
Candidate find_initial_solution(const WeightedSumSolver& ws);

RunResult inner_approximate(const PlaneSeparatingOracle& oracle, const Candidate& initial,
                            const EpsilonSpec& spec, const RunConfig& cfg = {});

/// Keeps one solution per vertex of the polyhedron (the earliest found), in
/// discovery order. The trace is left untouched.
RunResult postprocess(RunResult result);

/// beta = eps / 2, gamma = (1 + eps) / (1 + beta) - 1.
std::pair<Scalar, Scalar> compose_eps(const Scalar& eps);

}  // namespace innerapx

#endif  // INNERAPX_CORE_HPP
