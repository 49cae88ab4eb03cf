/**
 * @file polytope.hpp
 * @brief Exact polyhedral engine for sets of the form conv(V) + C.
 *
 * C is the domination cone of an Orientation: e_i for minimized objectives
 * and -e_i for maximized ones. Facets are computed by homogenizing
 * conv(V) + C into the cone generated by (1, v) and (0, g), and running the
 * double description method on its polar, whose extreme rays are exactly the
 * facet normals (a0, w) with facet w.z >= -a0.
 */

#ifndef INNERAPX_POLYTOPE_HPP
#define INNERAPX_POLYTOPE_HPP

#include "innerapx/detail/double_description.hpp"
#include "innerapx/scalar.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace innerapx {

enum class Sense { min, max };

/// Per-objective optimization direction; induces the domination cone C.
class Orientation {
 public:
  Orientation() = default;
  explicit Orientation(std::vector<Sense> senses);

  static Orientation all_min(std::size_t d);
  static Orientation all_max(std::size_t d);

  std::size_t dimension() const noexcept { return senses_.size(); }
  Sense operator[](std::size_t i) const { return senses_.at(i); }
  const std::vector<Sense>& senses() const noexcept { return senses_; }

  bool is_all_min() const;
  bool is_all_max() const;

  /// +1 for a min objective, -1 for a max objective.
  int sign(std::size_t i) const { return senses_.at(i) == Sense::min ? 1 : -1; }

  /// The d generators of C, in objective order.
  std::vector<Point> cone_generators() const;

  bool operator==(const Orientation&) const = default;

 private:
  std::vector<Sense> senses_;
};

std::string to_string(Sense sense);
std::string to_string(const Orientation& orientation);
/// Parses "min,max,min" (also accepts "min" / "max" repeated d times).
Orientation parse_orientation(const std::string& text);

/// The halfspace {z : w.z >= c}.
struct Halfspace {
  std::vector<Scalar> w;
  Scalar c;

  std::size_t dimension() const noexcept { return w.size(); }
  bool contains(std::span<const Scalar> z) const;

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// Lexicographic on (w, c); the deterministic order of facet sets.
bool operator<(const Halfspace& a, const Halfspace& b);

std::string to_string(const Halfspace& h);

/**
 * Scales (w, c) by a positive factor so that all entries are integers with
 * overall gcd 1. Throws InvalidHalfspace for a zero normal.
 */
Halfspace canonicalize_halfspace(const Halfspace& h);

struct InsertResult;

/**
 * conv(V) + C in double representation. Keeps the double description state
 * so that points can be inserted without re-enumerating from scratch.
 */
class Polyhedron {
 public:
  /// Builds conv(points) + C. Duplicates are removed and points are inserted
  /// in lexicographic order.
  static Polyhedron from_points(std::span<const Point> points, const Orientation& orientation);

  std::size_t dimension() const noexcept { return orientation_.dimension(); }
  const Orientation& orientation() const noexcept { return orientation_; }

  /// Extreme points, sorted lexicographically.
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  /// Canonical facet-supporting halfspaces, sorted.
  const std::vector<Halfspace>& facets() const noexcept { return facets_; }

  bool contains(std::span<const Scalar> p) const;

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) {
    return a.orientation_ == b.orientation_ && a.vertices_ == b.vertices_ &&
           a.facets_ == b.facets_;
  }

 private:
  friend InsertResult insert_point(const Polyhedron&, const Point&);

  Polyhedron(Orientation orientation, const Point& first);
  /// Returns true if the polyhedron changed.
  bool insert(const Point& p);
  void refresh();

  Orientation orientation_;
  detail::DoubleDescription<Scalar> dd_;
  std::vector<Point> generators_;
  std::vector<Point> vertices_;
  std::vector<Halfspace> facets_;
};

struct InsertResult {
  Polyhedron polyhedron;
  /// Facets of the result that were not facets of the input, sorted.
  std::vector<Halfspace> new_facets;
};

/// conv(poly.vertices() + {p}) + C, together with the facets that appeared.
InsertResult insert_point(const Polyhedron& poly, const Point& p);

/// Irredundant canonical facet halfspaces of conv(V) + C, sorted.
std::vector<Halfspace> facet_enumeration(std::span<const Point> points,
                                         const Orientation& orientation);

/// The vertices of conv(V) + C; a subset of V, sorted and deduplicated.
std::vector<Point> extreme_filter(std::span<const Point> points, const Orientation& orientation);

/**
 * Vertices of {z : w.z >= c for all (w, c) in H}. The polyhedron must be
 * nonempty with recession cone exactly the domination cone of the
 * orientation; otherwise InfeasibleOrBadCone is thrown.
 */
std::vector<Point> vertex_enumeration(std::span<const Halfspace> halfspaces,
                                      const Orientation& orientation);

/// Fixed-precision facet enumeration for speed experiments only. Uses an
/// absolute tolerance on every sign test; results are not canonicalized.
namespace fp {

struct Halfspace {
  std::vector<double> w;
  double c = 0.0;
};

std::vector<Halfspace> facet_enumeration(const std::vector<std::vector<double>>& points,
                                         const Orientation& orientation,
                                         double tolerance = 1e-9);

}  // namespace fp

}  // namespace innerapx

#endif  // INNERAPX_POLYTOPE_HPP
