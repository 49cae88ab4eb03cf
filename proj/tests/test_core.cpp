#include "doctest.h"
#include "support.hpp"

#include "innerapx/core.hpp"
#include "innerapx/errors.hpp"

#include <set>

using namespace innerapx;
using namespace innerapx::testing;

namespace {

const Orientation kMin2 = Orientation::all_min(2);

ExplicitInstance toy() { return ExplicitInstance{2, {pt({1, 4}), pt({2, 2}), pt({4, 1})}, kMin2, {}}; }

RunResult run_on(const Instance& inst, const std::string& solver, const EpsilonSpec& spec) {
  const auto ws = make_solver(inst, solver);
  const WeightedSumOracle oracle(*ws);
  return inner_approximate(oracle, find_initial_solution(*ws), spec, {});
}

/// Answers every query with a fixed image, whether or not it violates.
class LyingOracle : public PlaneSeparatingOracle {
 public:
  OracleAnswer query(const Halfspace&) const override {
    return {OracleStatus::not_inside, Candidate{ImageIndex{0}, pt({9, 9})}};
  }
  OracleQuality quality() const override { return OracleQuality::exact(); }
  Orientation orientation() const override { return kMin2; }
};

/// Per-objective factor alpha * E_ii of the approximate guarantee.
Point guarantee_scaled(const Point& y, const EpsilonSpec& spec, const OracleQuality& q) {
  Point out = y;
  for (std::size_t i = 0; i < y.size(); ++i) out[i] *= q.alpha * spec.factor(i);
  return out;
}

}  // namespace

TEST_CASE("EpsilonSpec") {
  const EpsilonSpec s(Orientation({Sense::min, Sense::max}), {q(1, 2), q(1, 4)});
  CHECK(s.factor(0) == q(3, 2));
  CHECK(s.factor(1) == q(3, 4));
  CHECK_THROWS_AS(EpsilonSpec(kMin2, {1}), DimensionMismatch);
  CHECK_THROWS_AS(EpsilonSpec(kMin2, {-1, 0}), InvalidArgument);
  CHECK_THROWS_AS(EpsilonSpec(Orientation::all_max(1), {1}), InvalidArgument);
  CHECK(EpsilonSpec(kMin2, {0, 0}).is_exact());

  const auto u = EpsilonSpec::uniform(Orientation({Sense::min, Sense::max}), 1);
  CHECK(u.eps() == std::vector<Scalar>{1, q(1, 2)});
  CHECK(u.factor(0) == 2);
  CHECK(u.factor(1) == q(1, 2));
}

TEST_CASE("scale_halfspace examples") {
  CHECK(scale_halfspace(hs({1, 0}, 2), EpsilonSpec::uniform(kMin2, 1)) == hs({2, 0}, 2));
  CHECK(scale_halfspace(hs({1, 1}, 4), EpsilonSpec::uniform(kMin2, 0)) == hs({1, 1}, 4));
  CHECK(scale_halfspace(hs({-1, 0}, -9), EpsilonSpec(Orientation::all_max(2), {q(1, 2), q(1, 2)})) ==
        hs({q(-1, 2), 0}, -9));
  CHECK_THROWS_AS(scale_halfspace(hs({1, 0, 0}, 1), EpsilonSpec::uniform(kMin2, 1)), DimensionMismatch);
}

TEST_CASE("find_initial_solution examples") {
  CHECK(find_initial_solution(ExplicitSolver(toy())).image == pt({2, 2}));
  CHECK(find_initial_solution(ExplicitSolver(ExplicitInstance{2, {pt({3, 3})}, kMin2, {}})).image ==
        pt({3, 3}));

  APInstance ap;
  ap.d = 2;
  ap.n = 2;
  ap.layers = {{{1, 2}, {2, 1}}, {{1, 1}, {1, 1}}};  // sums to [[2,3],[3,2]]
  const auto init = find_initial_solution(AssignmentSolver(ap));
  CHECK(std::get<Assignment>(init.solution).perm == std::vector<std::size_t>{0, 1});
  CHECK(init.image == pt({2, 2}));

  // max orientation gets negative weights
  const auto kp = generate_kp(6, 2, 3);
  CHECK_NOTHROW(find_initial_solution(KnapsackGreedySolver(kp)));
}

TEST_CASE("inner_approximate examples on the toy instance") {
  const ExplicitSolver ws(toy());
  const WeightedSumOracle oracle(ws);
  const Candidate init{ImageIndex{1}, pt({2, 2})};

  const auto exact = inner_approximate(oracle, init, EpsilonSpec::uniform(kMin2, 0));
  CHECK(exact.complete);
  CHECK(exact.images.front() == pt({2, 2}));
  CHECK(sorted_points(exact.images) == toy().images);
  CHECK(exact.polyhedron.facets() ==
        sorted_halfspaces({hs({1, 0}, 1), hs({0, 1}, 1), hs({2, 1}, 6), hs({1, 2}, 6)}));
  CHECK(exact.polyhedron.facets() == brute_force_facets(toy().images, kMin2));

  const auto loose = inner_approximate(oracle, init, EpsilonSpec::uniform(kMin2, 1));
  CHECK(loose.images == std::vector<Point>{pt({2, 2})});
  CHECK(loose.stats.oracle_calls == 2);
  CHECK(loose.trace.size() == 2);
  for (const auto& r : loose.trace) CHECK(r.status == OracleStatus::inside);
}

TEST_CASE("single image: d inside calls") {
  for (std::size_t d = 1; d <= 4; ++d) {
    Point y(d, Scalar(3));
    const ExplicitInstance one{d, {y}, Orientation::all_min(d), {}};
    for (const auto& eps : {Scalar(0), q(1, 10), Scalar(2)}) {
      const auto r = run_on(one, "exact", EpsilonSpec::uniform(one.senses, eps));
      CHECK(r.images == std::vector<Point>{y});
      CHECK(r.stats.oracle_calls == d);
      for (const auto& rec : r.trace) CHECK(rec.status == OracleStatus::inside);
    }
  }
}

TEST_CASE("oracle contract violations are errors") {
  CHECK_THROWS_AS(inner_approximate(LyingOracle(), Candidate{ImageIndex{0}, pt({2, 2})},
                                    EpsilonSpec::uniform(kMin2, 0)),
                  OracleContractError);
}

TEST_CASE("limits produce partial results") {
  const ExplicitSolver ws(toy());
  const WeightedSumOracle oracle(ws);
  const Candidate init{ImageIndex{1}, pt({2, 2})};
  RunConfig cfg;
  cfg.max_iterations = 1;
  try {
    inner_approximate(oracle, init, EpsilonSpec::uniform(kMin2, 0), cfg);
    FAIL("expected a partial result");
  } catch (const PartialResultError& e) {
    CHECK_FALSE(e.partial().complete);
    CHECK(e.partial().images.size() == 2);
    CHECK(e.partial().stats.iterations == 1);
  }

  cfg = {};
  cfg.time_limit = 0.0;
  try {
    inner_approximate(oracle, init, EpsilonSpec::uniform(kMin2, 0), cfg);
    FAIL("expected a partial result");
  } catch (const PartialResultError& e) {
    CHECK_FALSE(e.partial().complete);
    CHECK(e.partial().stats.oracle_calls == 0);
  }
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(inner_approximate(oracle, init, EpsilonSpec::uniform(kMin2, 0), cfg), InvalidArgument);
}

TEST_CASE("postprocess examples") {
  const ExplicitSolver ws(toy());
  const WeightedSumOracle oracle(ws);
  auto run = inner_approximate(oracle, Candidate{ImageIndex{1}, pt({2, 2})}, EpsilonSpec::uniform(kMin2, 0));

  auto extra = run;
  extra.images.push_back(pt({3, 3}));
  extra.solutions.push_back(ImageIndex{7});
  CHECK(postprocess(extra).images == run.images);

  CHECK(postprocess(run).images == run.images);

  auto dup = run;
  dup.images.insert(dup.images.begin(), pt({4, 1}));
  dup.solutions.insert(dup.solutions.begin(), Solution{ImageIndex{9}});
  const auto pp = postprocess(dup);
  CHECK(pp.images.front() == pt({4, 1}));
  CHECK(sorted_points(pp.images) == toy().images);
  CHECK(std::get<ImageIndex>(pp.solutions[0]).index == 9);
}

TEST_CASE("compose_eps") {
  auto [b1, g1] = compose_eps(q(1, 5));
  CHECK(b1 == q(1, 10));
  CHECK(g1 == q(1, 11));
  auto [b2, g2] = compose_eps(1);
  CHECK(b2 == q(1, 2));
  CHECK(g2 == q(1, 3));
  auto [b3, g3] = compose_eps(q(1, 100));
  CHECK(b3 == q(1, 200));
  CHECK(g3 == q(1, 201));
  CHECK_THROWS_AS(compose_eps(0), InvalidArgument);

  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const Scalar eps(static_cast<long>(1 + rng() % 1000), static_cast<long>(1 + rng() % 1000));
    const auto [b, g] = compose_eps(eps);
    CHECK(b == eps / 2);
    CHECK((1 + b) * (1 + g) == 1 + eps);
  }
}

TEST_CASE("properties on enumerable instances") {
  std::mt19937_64 rng(43);
  const std::vector<Scalar> eps_values{0, q(1, 20), q(1, 4), 1};
  for (int trial = 0; trial < 40; ++trial) {
    Instance inst;
    std::string solver = "auto";
    switch (trial % 4) {
      case 0: {
        const std::size_t d = 2 + trial % 3;
        std::vector<Sense> senses(d, Sense::min);
        if (trial % 8 == 4) senses[0] = Sense::max;
        inst = ExplicitInstance{d, random_points(rng, d, 3 + rng() % 9), Orientation(senses), {}};
        break;
      }
      case 1: inst = generate_kp(3 + trial % 8, 3, rng()); break;
      case 2: inst = generate_ap(2 + trial % 3, 2 + trial % 2, rng()); break;
      case 3: inst = generate_tsp(4 + trial % 3, rng(), 2); break;
    }
    const Scalar eps = eps_values[trial % eps_values.size()];
    const auto o = orientation(inst);
    const auto spec = EpsilonSpec::uniform(o, eps);
    const auto ws = make_solver(inst, solver);
    const WeightedSumOracle oracle(*ws);
    INFO("trial " << trial << " " << summary(inst));
    const auto run = inner_approximate(oracle, find_initial_solution(*ws), spec, {});
    REQUIRE(run.complete);

    // soundness
    const auto all = enumerate_images(inst);
    for (const auto& y : all) CHECK(run.polyhedron.contains(guarantee_scaled(y, spec, ws->quality())));

    // images come from feasible solutions
    for (std::size_t i = 0; i < run.solutions.size(); ++i) {
      CHECK(evaluate(inst, run.solutions[i]) == run.images[i]);
    }

    // inner-ness and monotonicity of the intermediate polyhedra
    std::optional<Polyhedron> prev;
    for (std::size_t k = 1; k <= run.images.size(); ++k) {
      const std::vector<Point> prefix(run.images.begin(), run.images.begin() + k);
      const auto a = Polyhedron::from_points(prefix, o);
      for (const auto& v : a.vertices()) {
        CHECK(std::find(prefix.begin(), prefix.end(), v) != prefix.end());
      }
      if (prev) {
        for (const auto& v : prev->vertices()) CHECK(a.contains(v));
      }
      prev = a;
    }
    CHECK(*prev == run.polyhedron);

    // no canonical halfspace queried twice; every facet confirmed inside
    std::set<Halfspace> queried;
    std::set<Halfspace> confirmed;
    for (const auto& rec : run.trace) {
      CHECK(queried.insert(rec.query).second);
      if (rec.status == OracleStatus::inside) confirmed.insert(rec.query);
      else CHECK_FALSE(rec.scaled.contains(*rec.image));
    }
    for (const auto& f : run.polyhedron.facets()) CHECK(confirmed.count(f) == 1);

    // post-processed images are exactly the vertices
    CHECK(sorted_points(postprocess(run).images) == run.polyhedron.vertices());

    // exact mode with an exact oracle reproduces the hull
    if (eps == 0 && ws->quality().is_exact()) {
      CHECK(run.polyhedron.facets() == facet_enumeration(all, o));
      CHECK(sorted_points(postprocess(run).images) == extreme_filter(all, o));
    }
  }
}
