// Test-only helpers: point builders, random generators and brute-force
// polyhedral oracles that do not share code with the double description path.

#ifndef INNERAPX_TESTS_SUPPORT_HPP
#define INNERAPX_TESTS_SUPPORT_HPP

#include "innerapx/polytope.hpp"
#include "innerapx/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace innerapx::testing {

inline Point pt(std::initializer_list<Scalar> coords) { return Point(coords); }

inline Scalar q(long num, long den = 1) { return Scalar(num, den); }

inline Halfspace hs(std::initializer_list<Scalar> w, Scalar c) {
  return Halfspace{std::vector<Scalar>(w), std::move(c)};
}

inline std::vector<Point> sorted_points(std::vector<Point> v) {
  std::sort(v.begin(), v.end(), [](const Point& a, const Point& b) { return lex_less(a, b); });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::vector<Halfspace> sorted_halfspaces(std::vector<Halfspace> v) {
  for (auto& h : v) h = canonicalize_halfspace(h);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Random nonnegative rational point with numerators in [1, max_num] and
/// denominators in [1, max_den].
inline Point random_point(std::mt19937_64& rng, std::size_t d, long max_num = 20,
                          long max_den = 3) {
  std::uniform_int_distribution<long> num(1, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  Point p;
  for (std::size_t i = 0; i < d; ++i) p.emplace_back(num(rng), den(rng));
  return p;
}

inline std::vector<Point> random_points(std::mt19937_64& rng, std::size_t d, std::size_t count,
                                        long max_num = 20, long max_den = 3) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_point(rng, d, max_num, max_den));
  return out;
}

namespace detail_brute {

// Null space of a d x (d+1) matrix with rank d, as a single vector.
inline std::vector<Scalar> kernel_vector(std::vector<std::vector<Scalar>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows + 1;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    const Scalar diag = m[r][c];
    for (auto& x : m[r]) x /= diag;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Scalar f = m[i][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (r != rows) return {};
  std::size_t free_col = 0;
  while (std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end()) ++free_col;
  std::vector<Scalar> x(cols, Scalar(0));
  x[free_col] = 1;
  for (std::size_t i = 0; i < rows; ++i) x[pivot_col[i]] = -m[i][free_col];
  return x;
}

}  // namespace detail_brute

/**
 * Facets of conv(V) + C by exhaustive search over hyperplanes spanned by d
 * generators (points and cone directions) of the homogenized cone.
 */
inline std::vector<Halfspace> brute_force_facets(const std::vector<Point>& points,
                                                 const Orientation& orientation) {
  const std::size_t d = orientation.dimension();
  std::vector<std::vector<Scalar>> gens;  // homogenized (t, z)
  for (const auto& p : sorted_points(points)) {
    std::vector<Scalar> g{Scalar(1)};
    g.insert(g.end(), p.begin(), p.end());
    gens.push_back(std::move(g));
  }
  for (const auto& g : orientation.cone_generators()) {
    std::vector<Scalar> h{Scalar(0)};
    h.insert(h.end(), g.begin(), g.end());
    gens.push_back(std::move(h));
  }
  std::vector<Halfspace> out;
  std::vector<std::size_t> idx(d);
  // Enumerate d-subsets of generators.
  std::vector<bool> mask(gens.size(), false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(std::min(d, gens.size())), true);
  if (gens.size() < d) return out;
  do {
    std::vector<std::vector<Scalar>> m;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (mask[i]) m.push_back(gens[i]);
    }
    auto a = detail_brute::kernel_vector(m);  // a . g = 0 for chosen gens
    if (a.empty()) continue;
    bool all_nonneg = true, all_nonpos = true;
    for (const auto& g : gens) {
      Scalar v = dot(a, g);
      if (v < 0) all_nonneg = false;
      if (v > 0) all_nonpos = false;
    }
    if (!all_nonneg && !all_nonpos) continue;
    if (!all_nonneg) {
      for (auto& x : a) x = -x;
    }
    Halfspace h;
    h.w.assign(a.begin() + 1, a.end());
    if (std::all_of(h.w.begin(), h.w.end(), [](const Scalar& x) { return x == 0; })) continue;
    h.c = -a.front();
    out.push_back(h);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return sorted_halfspaces(out);
}

/// Points of V that are vertices of conv(V) + C, from brute-force facets.
inline std::vector<Point> brute_force_vertices(const std::vector<Point>& points,
                                               const Orientation& orientation) {
  const auto facets = brute_force_facets(points, orientation);
  std::vector<Point> out;
  for (const auto& p : sorted_points(points)) {
    std::vector<std::vector<Scalar>> tight;
    for (const auto& f : facets) {
      if (dot(f.w, p) == f.c) tight.push_back(f.w);
    }
    if (rank(tight) == orientation.dimension()) out.push_back(p);
  }
  return out;
}

}  // namespace innerapx::testing

#endif  // INNERAPX_TESTS_SUPPORT_HPP
