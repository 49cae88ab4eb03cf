/**
 * @file oracles.hpp
 * @brief Plane separating oracles built on weighted-sum solvers.
 *
 * A weighted-sum solver takes a signed weight vector w (w_i >= 0 on min
 * objectives, w_i <= 0 on max objectives) and returns a solution that
 * (approximately) minimizes w.f(x). The oracle answers "inside" iff the
 * returned value reaches the offset of the queried halfspace.
 */

#ifndef INNERAPX_ORACLES_HPP
#define INNERAPX_ORACLES_HPP

#include "innerapx/instances.hpp"
#include "innerapx/polytope.hpp"
#include "innerapx/scalar.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace innerapx {

using WeightVector = std::vector<Scalar>;

/// Approximation guarantee of a weighted-sum solver.
/// min: value <= alpha * OPT with alpha >= 1 (minimization objectives).
/// max: value >= alpha * OPT with 0 < alpha <= 1 (maximization objectives).
struct OracleQuality {
  Scalar alpha = 1;
  Sense sense = Sense::min;

  static OracleQuality exact(Sense sense = Sense::min) { return {Scalar(1), sense}; }
  bool is_exact() const { return alpha == 1; }

  /// Multiplicative slack as a factor >= 1 (alpha or 1/alpha).
  Scalar slack() const { return sense == Sense::min ? alpha : Scalar(1 / alpha); }

  bool operator==(const OracleQuality&) const = default;
};

std::string to_string(const OracleQuality& quality);

/// A solution together with its image.
struct Candidate {
  Solution solution;
  Point image;
};

enum class OracleStatus { inside, not_inside };

struct OracleAnswer {
  OracleStatus status = OracleStatus::inside;
  std::optional<Candidate> candidate;

  bool inside() const { return status == OracleStatus::inside; }
};

/// Checks length, sign compatibility and that w is not zero.
void check_weights(const WeightVector& w, const Orientation& orientation);

class WeightedSumSolver {
 public:
  virtual ~WeightedSumSolver() = default;

  virtual Candidate solve(const WeightVector& w) const = 0;
  virtual OracleQuality quality() const = 0;
  virtual Orientation orientation() const = 0;
  virtual std::string name() const = 0;
};

/// hpO-WS: one weighted-sum call, inside iff w.f(x*) >= c.
OracleAnswer hpO_WS(const Halfspace& h, const WeightedSumSolver& ws);

/// Same decision rule with an approximate solver. Throws InvalidArgument if
/// the solver does not advertise the given quality.
OracleAnswer approx_oracle(const Halfspace& h, const WeightedSumSolver& ws,
                           const OracleQuality& quality);

/// The oracle seen by the inner approximation driver.
class PlaneSeparatingOracle {
 public:
  virtual ~PlaneSeparatingOracle() = default;

  virtual OracleAnswer query(const Halfspace& h) const = 0;
  virtual OracleQuality quality() const = 0;
  virtual Orientation orientation() const = 0;
};

/// hpO-WS over a borrowed solver; the solver must outlive the oracle.
class WeightedSumOracle : public PlaneSeparatingOracle {
 public:
  explicit WeightedSumOracle(const WeightedSumSolver& ws) : ws_(ws) {}

  OracleAnswer query(const Halfspace& h) const override { return hpO_WS(h, ws_); }
  OracleQuality quality() const override { return ws_.quality(); }
  Orientation orientation() const override { return ws_.orientation(); }

 private:
  const WeightedSumSolver& ws_;
};

// ---------------------------------------------------------------------------
// Solvers as plain functions

/// Index minimizing w.y; ties go to the smallest index.
ImageIndex ws_explicit(const WeightVector& w, const ExplicitInstance& inst);

/// Minimum of sum_k w_k * cost_k over permutations (Hungarian method); ties
/// go to the lexicographically smallest permutation.
Assignment ws_assignment(const WeightVector& w, const APInstance& inst);

/// Extended greedy on the scalarized profits sum_k |w_k| p_k: the better of
/// the ratio-ordered greedy packing and the best single fitting item.
ItemSubset ws_knapsack_extgreedy(const WeightVector& w, const KPInstance& inst);

/// Double tree: preorder walk of a minimum spanning tree of the scalarized
/// costs. Tour starts at 0 and runs towards the smaller of its two
/// neighbours.
Tour ws_tsp_doubletree(const WeightVector& w, const TSPInstance& inst);

/// Christofides with an exact minimum-weight perfect matching on the
/// odd-degree tree vertices. Throws TooLarge beyond kMaxChristofidesOdd odd
/// vertices.
Tour ws_tsp_christofides(const WeightVector& w, const TSPInstance& inst);

inline constexpr std::size_t kMaxChristofidesOdd = 20;

/// Scalarized cost matrix sum_k w_k layer_k.
std::vector<std::vector<Scalar>> combined_costs(const WeightVector& w,
                                                const std::vector<Matrix>& layers);

/// Weight of a minimum spanning tree (Prim) of a symmetric matrix.
Scalar mst_weight(const std::vector<std::vector<Scalar>>& cost);

// ---------------------------------------------------------------------------
// Solver objects

/// Exact solver over an explicit image list. With a weakening factor the
/// solver deliberately returns the worst image still within the factor of
/// the optimum (used to exercise approximate-oracle guarantees); the
/// orientation must then be uniform.
class ExplicitSolver : public WeightedSumSolver {
 public:
  explicit ExplicitSolver(ExplicitInstance inst, std::optional<Scalar> weaken = std::nullopt);

  Candidate solve(const WeightVector& w) const override;
  OracleQuality quality() const override;
  Orientation orientation() const override { return inst_.senses; }
  std::string name() const override { return weaken_ ? "weakened" : "exact"; }

 private:
  ExplicitInstance inst_;
  std::optional<Scalar> weaken_;
};

class AssignmentSolver : public WeightedSumSolver {
 public:
  explicit AssignmentSolver(APInstance inst) : inst_(std::move(inst)) {}

  Candidate solve(const WeightVector& w) const override;
  OracleQuality quality() const override { return OracleQuality::exact(); }
  Orientation orientation() const override { return inst_.orientation(); }
  std::string name() const override { return "hungarian"; }

 private:
  APInstance inst_;
};

class KnapsackGreedySolver : public WeightedSumSolver {
 public:
  explicit KnapsackGreedySolver(KPInstance inst) : inst_(std::move(inst)) {}

  Candidate solve(const WeightVector& w) const override;
  OracleQuality quality() const override { return {Scalar(1, 2), Sense::max}; }
  Orientation orientation() const override { return inst_.orientation(); }
  std::string name() const override { return "extgreedy"; }

 private:
  KPInstance inst_;
};

enum class TSPMode { double_tree, christofides };

class TSPSolver : public WeightedSumSolver {
 public:
  explicit TSPSolver(TSPInstance inst, TSPMode mode = TSPMode::double_tree)
      : inst_(std::move(inst)), mode_(mode) {}

  Candidate solve(const WeightVector& w) const override;
  OracleQuality quality() const override;
  Orientation orientation() const override { return inst_.orientation(); }
  std::string name() const override {
    return mode_ == TSPMode::double_tree ? "doubletree" : "christofides";
  }

 private:
  TSPInstance inst_;
  TSPMode mode_;
};

/// Exact solver by enumeration; works for any instance small enough to
/// enumerate. Ties go to the first enumerated solution.
class BruteForceSolver : public WeightedSumSolver {
 public:
  explicit BruteForceSolver(const Instance& inst, std::size_t limit = kDefaultEnumerationLimit);

  Candidate solve(const WeightVector& w) const override;
  OracleQuality quality() const override { return OracleQuality::exact(); }
  Orientation orientation() const override { return orientation_; }
  std::string name() const override { return "bruteforce"; }

 private:
  Orientation orientation_;
  std::vector<Candidate> all_;
};

/// Builds a solver by name: "exact" (explicit lists), "hungarian",
/// "extgreedy", "doubletree", "christofides", "bruteforce" or "auto" (the
/// default for the instance type). Throws InvalidArgument on a mismatch.
std::unique_ptr<WeightedSumSolver> make_solver(const Instance& inst, const std::string& name);

}  // namespace innerapx

#endif  // INNERAPX_ORACLES_HPP
