#include "innerapx/oracles.hpp"

#include "innerapx/errors.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace innerapx {

namespace {

using CostMatrix = std::vector<std::vector<Scalar>>;

Scalar abs_scalar(const Scalar& x) { return x < 0 ? Scalar(-x) : x; }

/// Prim from vertex 0; parent[0] = n. Ties go to the smallest index.
std::vector<std::size_t> prim_parents(const CostMatrix& cost) {
  const std::size_t n = cost.size();
  std::vector<std::size_t> parent(n, n);
  std::vector<bool> in_tree(n, false);
  std::vector<std::optional<Scalar>> key(n);
  key[0] = Scalar(0);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v] || !key[v]) continue;
      if (best == n || *key[v] < *key[best]) best = v;
    }
    in_tree[best] = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      if (!key[v] || cost[best][v] < *key[v]) {
        key[v] = cost[best][v];
        parent[v] = best;
      }
    }
  }
  return parent;
}

Tour canonical_tour(std::vector<std::size_t> order) {
  const auto zero = std::find(order.begin(), order.end(), std::size_t{0});
  std::rotate(order.begin(), zero, order.end());
  if (order.size() > 2 && order[1] > order.back()) std::reverse(order.begin() + 1, order.end());
  return Tour{std::move(order)};
}

void check_tsp(const TSPInstance& inst) {
  if (inst.n < 3) throw InvalidArgument("TSP solver needs n >= 3");
  for (const auto& m : inst.layers) {
    for (std::size_t i = 0; i < inst.n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (m[i][j] != m[j][i]) throw InvalidArgument("TSP costs must be symmetric");
      }
    }
  }
}

/// Does the bipartite graph restricted to free rows/cols have a perfect
/// matching? Kuhn's augmenting paths.
bool has_perfect_matching(const std::vector<std::vector<bool>>& tight,
                          const std::vector<bool>& row_free, const std::vector<bool>& col_free) {
  const std::size_t n = tight.size();
  std::vector<std::size_t> match_col(n, n);
  std::function<bool(std::size_t, std::vector<bool>&)> augment =
      [&](std::size_t r, std::vector<bool>& seen) {
        for (std::size_t c = 0; c < n; ++c) {
          if (!col_free[c] || !tight[r][c] || seen[c]) continue;
          seen[c] = true;
          if (match_col[c] == n || augment(match_col[c], seen)) {
            match_col[c] = r;
            return true;
          }
        }
        return false;
      };
  for (std::size_t r = 0; r < n; ++r) {
    if (!row_free[r]) continue;
    std::vector<bool> seen(n, false);
    if (!augment(r, seen)) return false;
  }
  return true;
}

}  // namespace

std::string to_string(const OracleQuality& quality) {
  return to_string(quality.alpha) + (quality.sense == Sense::min ? " (min)" : " (max)");
}

void check_weights(const WeightVector& w, const Orientation& orientation) {
  if (w.size() != orientation.dimension()) {
    throw DimensionMismatch("weight vector has length " + std::to_string(w.size()) +
                            ", expected " + std::to_string(orientation.dimension()));
  }
  bool nonzero = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] * orientation.sign(i) < 0) {
      throw InvalidArgument("weight " + std::to_string(i) + " has the wrong sign for a " +
                            to_string(orientation[i]) + " objective");
    }
    nonzero = nonzero || w[i] != 0;
  }
  if (!nonzero) throw InvalidArgument("weight vector is zero");
}

OracleAnswer hpO_WS(const Halfspace& h, const WeightedSumSolver& ws) {
  check_weights(h.w, ws.orientation());
  Candidate cand;
  try {
    cand = ws.solve(h.w);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw OracleError(std::string("weighted-sum solver failed: ") + e.what());
  }
  if (dot(h.w, cand.image) >= h.c) return {OracleStatus::inside, std::nullopt};
  return {OracleStatus::not_inside, std::move(cand)};
}

OracleAnswer approx_oracle(const Halfspace& h, const WeightedSumSolver& ws,
                           const OracleQuality& quality) {
  if (!(ws.quality() == quality)) {
    throw InvalidArgument("solver " + ws.name() + " has quality " + to_string(ws.quality()) +
                          ", not " + to_string(quality));
  }
  return hpO_WS(h, ws);
}

// ---------------------------------------------------------------------------

CostMatrix combined_costs(const WeightVector& w, const std::vector<Matrix>& layers) {
  if (w.size() != layers.size()) throw DimensionMismatch("one weight per cost layer expected");
  const std::size_t n = layers.empty() ? 0 : layers.front().size();
  CostMatrix c(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t k = 0; k < layers.size(); ++k) {
    if (w[k] == 0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) c[i][j] += w[k] * layers[k][i][j];
    }
  }
  return c;
}

Scalar mst_weight(const CostMatrix& cost) {
  const auto parent = prim_parents(cost);
  Scalar total = 0;
  for (std::size_t v = 1; v < cost.size(); ++v) total += cost[parent[v]][v];
  return total;
}

ImageIndex ws_explicit(const WeightVector& w, const ExplicitInstance& inst) {
  if (inst.images.empty()) throw EmptyInput("explicit instance has no images");
  check_weights(w, inst.senses);
  std::size_t best = 0;
  Scalar best_value = dot(w, inst.images[0]);
  for (std::size_t i = 1; i < inst.images.size(); ++i) {
    const Scalar v = dot(w, inst.images[i]);
    if (v < best_value) {
      best = i;
      best_value = v;
    }
  }
  return ImageIndex{best};
}

Assignment ws_assignment(const WeightVector& w, const APInstance& inst) {
  check_weights(w, inst.orientation());
  const std::size_t n = inst.n;
  for (const auto& layer : inst.layers) {
    if (layer.size() != n) throw InvalidArgument("assignment layers must be n x n");
    for (const auto& row : layer) {
      if (row.size() != n) throw InvalidArgument("assignment layers must be n x n");
    }
  }
  const CostMatrix a = combined_costs(w, inst.layers);

  // Hungarian method with potentials (1-based; column 0 is a sentinel).
  Scalar inf = 1;
  for (const auto& row : a) {
    for (const auto& x : row) inf += abs_scalar(x);
  }
  inf *= 2;
  std::vector<Scalar> u(n + 1, Scalar(0)), v(n + 1, Scalar(0));
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<Scalar> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      Scalar delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Scalar cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  // Every optimal permutation uses only edges that are tight for the optimal
  // duals; pick the lexicographically smallest perfect matching among them.
  std::vector<std::vector<bool>> tight(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) tight[i][j] = a[i][j] == u[i + 1] + v[j + 1];
  }
  std::vector<bool> row_free(n, true), col_free(n, true);
  Assignment result;
  result.perm.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    row_free[i] = false;
    bool placed = false;
    for (std::size_t j = 0; j < n && !placed; ++j) {
      if (!col_free[j] || !tight[i][j]) continue;
      col_free[j] = false;
      if (has_perfect_matching(tight, row_free, col_free)) {
        result.perm[i] = j;
        placed = true;
      } else {
        col_free[j] = true;
      }
    }
    if (!placed) throw OracleError("Hungarian method produced inconsistent duals");
  }
  return result;
}

ItemSubset ws_knapsack_extgreedy(const WeightVector& w, const KPInstance& inst) {
  check_weights(w, inst.orientation());
  if (inst.capacity < 0) throw InvalidArgument("knapsack capacity must be nonnegative");
  const std::size_t n = inst.items.size();
  std::vector<Scalar> value(n, Scalar(0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < inst.d; ++k) value[j] += abs_scalar(w[k]) * inst.items[j].profits[k];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return value[a] * inst.items[b].weight > value[b] * inst.items[a].weight;
  });

  ItemSubset greedy;
  Scalar greedy_value = 0;
  std::int64_t load = 0;
  for (auto j : order) {
    if (load + inst.items[j].weight > inst.capacity) continue;
    load += inst.items[j].weight;
    greedy_value += value[j];
    greedy.items.push_back(j);
  }
  std::sort(greedy.items.begin(), greedy.items.end());

  std::optional<std::size_t> single;
  for (std::size_t j = 0; j < n; ++j) {
    if (inst.items[j].weight > inst.capacity) continue;
    if (!single || value[j] > value[*single]) single = j;
  }
  if (single && value[*single] > greedy_value) return ItemSubset{{*single}};
  return greedy;
}

Tour ws_tsp_doubletree(const WeightVector& w, const TSPInstance& inst) {
  check_weights(w, inst.orientation());
  check_tsp(inst);
  const auto cost = combined_costs(w, inst.layers);
  const auto parent = prim_parents(cost);
  const std::size_t n = inst.n;
  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t v = 1; v < n; ++v) children[parent[v]].push_back(v);
  std::vector<std::size_t> order;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) stack.push_back(*it);
  }
  return canonical_tour(std::move(order));
}

Tour ws_tsp_christofides(const WeightVector& w, const TSPInstance& inst) {
  check_weights(w, inst.orientation());
  check_tsp(inst);
  const auto cost = combined_costs(w, inst.layers);
  const auto parent = prim_parents(cost);
  const std::size_t n = inst.n;

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t v = 1; v < n; ++v) {
    edges.emplace_back(parent[v], v);
    ++degree[parent[v]];
    ++degree[v];
  }
  std::vector<std::size_t> odd;
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] % 2 == 1) odd.push_back(v);
  }
  if (odd.size() > kMaxChristofidesOdd) {
    throw TooLarge("Christofides matching limited to " + std::to_string(kMaxChristofidesOdd) +
                   " odd vertices");
  }

  // Exact minimum-weight perfect matching: DP over subsets, always pairing
  // the lowest unmatched vertex.
  const std::size_t k = odd.size();
  const std::size_t full = (std::size_t{1} << k) - 1;
  std::vector<std::optional<Scalar>> best(full + 1);
  std::vector<std::size_t> partner(full + 1, 0);
  best[0] = Scalar(0);
  for (std::size_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) % 2 == 1) continue;
    const std::size_t i = static_cast<std::size_t>(std::countr_zero(mask));
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      const std::size_t rest = mask & ~(std::size_t{1} << i) & ~(std::size_t{1} << j);
      if (!best[rest]) continue;
      const Scalar c = *best[rest] + cost[odd[i]][odd[j]];
      if (!best[mask] || c < *best[mask]) {
        best[mask] = c;
        partner[mask] = j;
      }
    }
  }
  for (std::size_t mask = full; mask != 0;) {
    const std::size_t i = static_cast<std::size_t>(std::countr_zero(mask));
    const std::size_t j = partner[mask];
    edges.emplace_back(odd[i], odd[j]);
    mask &= ~(std::size_t{1} << i) & ~(std::size_t{1} << j);
  }

  // Euler circuit (Hierholzer), smallest neighbour first, then shortcut.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].first].emplace_back(edges[e].second, e);
    adj[edges[e].second].emplace_back(edges[e].first, e);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  std::vector<bool> used(edges.size(), false);
  std::vector<std::size_t> next(n, 0);
  std::vector<std::size_t> stack{0};
  std::vector<std::size_t> circuit;
  while (!stack.empty()) {
    const auto v = stack.back();
    while (next[v] < adj[v].size() && used[adj[v][next[v]].second]) ++next[v];
    if (next[v] == adj[v].size()) {
      circuit.push_back(v);
      stack.pop_back();
    } else {
      const auto [u, e] = adj[v][next[v]];
      used[e] = true;
      stack.push_back(u);
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> order;
  for (auto v : circuit) {
    if (!seen[v]) {
      seen[v] = true;
      order.push_back(v);
    }
  }
  return canonical_tour(std::move(order));
}

// ---------------------------------------------------------------------------

ExplicitSolver::ExplicitSolver(ExplicitInstance inst, std::optional<Scalar> weaken)
    : inst_(std::move(inst)), weaken_(std::move(weaken)) {
  validate(inst_);
  if (weaken_) {
    if (*weaken_ < 1) throw InvalidArgument("weakening factor must be >= 1");
    if (!inst_.senses.is_all_min() && !inst_.senses.is_all_max()) {
      throw InvalidArgument("weakened explicit solver needs a uniform orientation");
    }
  }
}

OracleQuality ExplicitSolver::quality() const {
  const Sense sense = inst_.senses.is_all_max() ? Sense::max : Sense::min;
  if (!weaken_) return OracleQuality::exact(sense);
  return sense == Sense::min ? OracleQuality{*weaken_, sense} : OracleQuality{1 / *weaken_, sense};
}

Candidate ExplicitSolver::solve(const WeightVector& w) const {
  auto index = ws_explicit(w, inst_);
  if (weaken_) {
    // Work with the nonnegative objective value |w.y|.
    const bool minimize = inst_.senses.is_all_min();
    const Scalar opt = abs_scalar(dot(w, inst_.images[index.index]));
    std::optional<std::size_t> worst;
    Scalar worst_value;
    for (std::size_t i = 0; i < inst_.images.size(); ++i) {
      const Scalar v = abs_scalar(dot(w, inst_.images[i]));
      const bool admissible = minimize ? v <= *weaken_ * opt : v * *weaken_ >= opt;
      if (!admissible) continue;
      const bool worse = minimize ? v > worst_value : v < worst_value;
      if (!worst || worse) {
        worst = i;
        worst_value = v;
      }
    }
    index.index = *worst;
  }
  return {index, inst_.images[index.index]};
}

Candidate AssignmentSolver::solve(const WeightVector& w) const {
  auto a = ws_assignment(w, inst_);
  auto image = evaluate(inst_, a);
  return {std::move(a), std::move(image)};
}

Candidate KnapsackGreedySolver::solve(const WeightVector& w) const {
  auto s = ws_knapsack_extgreedy(w, inst_);
  auto image = evaluate(inst_, s);
  return {std::move(s), std::move(image)};
}

OracleQuality TSPSolver::quality() const {
  return {mode_ == TSPMode::double_tree ? Scalar(2) : Scalar(3, 2), Sense::min};
}

Candidate TSPSolver::solve(const WeightVector& w) const {
  auto t = mode_ == TSPMode::double_tree ? ws_tsp_doubletree(w, inst_)
                                         : ws_tsp_christofides(w, inst_);
  auto image = evaluate(inst_, t);
  return {std::move(t), std::move(image)};
}

BruteForceSolver::BruteForceSolver(const Instance& inst, std::size_t limit)
    : orientation_(innerapx::orientation(inst)) {
  for (auto& s : enumerate_solutions(inst, limit)) {
    auto image = evaluate(inst, s);
    all_.push_back({std::move(s), std::move(image)});
  }
  if (all_.empty()) throw EmptyInput("instance has no feasible solution");
}

Candidate BruteForceSolver::solve(const WeightVector& w) const {
  check_weights(w, orientation_);
  std::size_t best = 0;
  Scalar best_value = dot(w, all_[0].image);
  for (std::size_t i = 1; i < all_.size(); ++i) {
    const Scalar v = dot(w, all_[i].image);
    if (v < best_value) {
      best = i;
      best_value = v;
    }
  }
  return all_[best];
}

std::unique_ptr<WeightedSumSolver> make_solver(const Instance& inst, const std::string& name) {
  const auto type = type_of(inst);
  auto mismatch = [&]() -> std::unique_ptr<WeightedSumSolver> {
    throw InvalidArgument("oracle '" + name + "' does not apply to " + to_string(type) +
                          " instances");
  };
  if (name == "bruteforce") return std::make_unique<BruteForceSolver>(inst);
  switch (type) {
    case InstanceType::explicit_list:
      if (name == "auto" || name == "exact") {
        return std::make_unique<ExplicitSolver>(std::get<ExplicitInstance>(inst));
      }
      return mismatch();
    case InstanceType::ap:
      if (name == "auto" || name == "hungarian" || name == "exact") {
        return std::make_unique<AssignmentSolver>(std::get<APInstance>(inst));
      }
      return mismatch();
    case InstanceType::kp:
      if (name == "auto" || name == "extgreedy") {
        return std::make_unique<KnapsackGreedySolver>(std::get<KPInstance>(inst));
      }
      return mismatch();
    case InstanceType::tsp:
      if (name == "auto" || name == "doubletree") {
        return std::make_unique<TSPSolver>(std::get<TSPInstance>(inst), TSPMode::double_tree);
      }
      if (name == "christofides") {
        return std::make_unique<TSPSolver>(std::get<TSPInstance>(inst), TSPMode::christofides);
      }
      return mismatch();
  }
  return mismatch();
}

}  // namespace innerapx
