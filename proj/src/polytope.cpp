#include "innerapx/polytope.hpp"

#include "innerapx/errors.hpp"

#include <algorithm>
#include <sstream>

namespace innerapx {

namespace {

void check_dimension(std::span<const Scalar> p, std::size_t d, const char* what) {
  if (p.size() != d) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " + std::to_string(d) +
                            ", got " + std::to_string(p.size()));
  }
}

std::vector<Point> sorted_unique(std::span<const Point> points, std::size_t d) {
  std::vector<Point> out(points.begin(), points.end());
  for (const auto& p : out) check_dimension(p, d, "point");
  std::sort(out.begin(), out.end(), [](const Point& a, const Point& b) { return lex_less(a, b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Scalar> homogenized(const Point& p) {
  std::vector<Scalar> row;
  row.reserve(p.size() + 1);
  row.emplace_back(1);
  row.insert(row.end(), p.begin(), p.end());
  return row;
}

}  // namespace

// ---------------------------------------------------------------------------
// Orientation

Orientation::Orientation(std::vector<Sense> senses) : senses_(std::move(senses)) {
  if (senses_.empty()) throw InvalidArgument("orientation needs at least one objective");
}

Orientation Orientation::all_min(std::size_t d) {
  return Orientation(std::vector<Sense>(d, Sense::min));
}

Orientation Orientation::all_max(std::size_t d) {
  return Orientation(std::vector<Sense>(d, Sense::max));
}

bool Orientation::is_all_min() const {
  return std::all_of(senses_.begin(), senses_.end(), [](Sense s) { return s == Sense::min; });
}

bool Orientation::is_all_max() const {
  return std::all_of(senses_.begin(), senses_.end(), [](Sense s) { return s == Sense::max; });
}

std::vector<Point> Orientation::cone_generators() const {
  std::vector<Point> gens;
  gens.reserve(senses_.size());
  for (std::size_t i = 0; i < senses_.size(); ++i) {
    Point g(senses_.size(), Scalar(0));
    g[i] = sign(i);
    gens.push_back(std::move(g));
  }
  return gens;
}

std::string to_string(Sense sense) { return sense == Sense::min ? "min" : "max"; }

std::string to_string(const Orientation& orientation) {
  std::string out;
  for (std::size_t i = 0; i < orientation.dimension(); ++i) {
    if (i > 0) out += ',';
    out += to_string(orientation[i]);
  }
  return out;
}

Orientation parse_orientation(const std::string& text) {
  std::vector<Sense> senses;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token == "min") {
      senses.push_back(Sense::min);
    } else if (token == "max") {
      senses.push_back(Sense::max);
    } else {
      throw InvalidArgument("unknown objective sense '" + token + "'");
    }
  }
  return Orientation(std::move(senses));
}

// ---------------------------------------------------------------------------
// Halfspace

bool Halfspace::contains(std::span<const Scalar> z) const { return dot(w, z) >= c; }

bool operator<(const Halfspace& a, const Halfspace& b) {
  if (a.w != b.w) return lex_less(a.w, b.w);
  return a.c < b.c;
}

std::string to_string(const Halfspace& h) {
  return to_string(std::span<const Scalar>(h.w)) + ".z >= " + to_string(h.c);
}

Halfspace canonicalize_halfspace(const Halfspace& h) {
  if (std::all_of(h.w.begin(), h.w.end(), [](const Scalar& x) { return x.is_zero(); })) {
    throw InvalidHalfspace("halfspace normal must be nonzero");
  }
  std::vector<Scalar> v = h.w;
  v.push_back(h.c);
  v = primitive_integer_vector(v);
  Halfspace out;
  out.c = v.back();
  v.pop_back();
  out.w = std::move(v);
  return out;
}

// ---------------------------------------------------------------------------
// Polyhedron

namespace {

std::vector<std::vector<Scalar>> initial_basis(const Orientation& orientation, const Point& first) {
  std::vector<std::vector<Scalar>> basis;
  basis.push_back(homogenized(first));
  for (const auto& g : orientation.cone_generators()) {
    std::vector<Scalar> row;
    row.emplace_back(0);
    row.insert(row.end(), g.begin(), g.end());
    basis.push_back(std::move(row));
  }
  return basis;
}

}  // namespace

Polyhedron::Polyhedron(Orientation orientation, const Point& first)
    : orientation_(std::move(orientation)),
      dd_(initial_basis(orientation_, first)),
      generators_{first} {}

Polyhedron Polyhedron::from_points(std::span<const Point> points, const Orientation& orientation) {
  if (points.empty()) throw EmptyInput("cannot build a polyhedron from an empty point set");
  const auto sorted = sorted_unique(points, orientation.dimension());
  Polyhedron poly(orientation, sorted.front());
  for (std::size_t i = 1; i < sorted.size(); ++i) poly.insert(sorted[i]);
  poly.refresh();
  return poly;
}

bool Polyhedron::insert(const Point& p) {
  check_dimension(p, dimension(), "inserted point");
  if (!dd_.add_row(homogenized(p))) return false;
  generators_.push_back(p);
  return true;
}

void Polyhedron::refresh() {
  facets_.clear();
  for (const auto& ray : dd_.rays()) {
    Halfspace h;
    h.w.assign(ray.coords.begin() + 1, ray.coords.end());
    if (std::all_of(h.w.begin(), h.w.end(), [](const Scalar& x) { return x.is_zero(); })) {
      continue;  // the face at infinity, t >= 0
    }
    h.c = -ray.coords.front();
    facets_.push_back(canonicalize_halfspace(h));
  }
  std::sort(facets_.begin(), facets_.end());
  facets_.erase(std::unique(facets_.begin(), facets_.end()), facets_.end());

  // A generator is a vertex iff the normals of the facets tight at it span R^d.
  vertices_.clear();
  for (const auto& g : generators_) {
    std::vector<std::vector<Scalar>> tight;
    for (const auto& f : facets_) {
      if (dot(f.w, g) == f.c) tight.push_back(f.w);
    }
    if (tight.size() >= dimension() && rank(std::move(tight)) == dimension()) {
      vertices_.push_back(g);
    }
  }
  std::sort(vertices_.begin(), vertices_.end(),
            [](const Point& a, const Point& b) { return lex_less(a, b); });
}

bool Polyhedron::contains(std::span<const Scalar> p) const {
  check_dimension(p, dimension(), "contains");
  return std::all_of(facets_.begin(), facets_.end(),
                     [&](const Halfspace& f) { return f.contains(p); });
}

InsertResult insert_point(const Polyhedron& poly, const Point& p) {
  InsertResult result{poly, {}};
  if (!result.polyhedron.insert(p)) return result;
  result.polyhedron.refresh();
  std::set_difference(result.polyhedron.facets_.begin(), result.polyhedron.facets_.end(),
                      poly.facets_.begin(), poly.facets_.end(),
                      std::back_inserter(result.new_facets));
  return result;
}

std::vector<Halfspace> facet_enumeration(std::span<const Point> points,
                                         const Orientation& orientation) {
  return Polyhedron::from_points(points, orientation).facets();
}

std::vector<Point> extreme_filter(std::span<const Point> points, const Orientation& orientation) {
  return Polyhedron::from_points(points, orientation).vertices();
}

std::vector<Point> vertex_enumeration(std::span<const Halfspace> halfspaces,
                                      const Orientation& orientation) {
  const std::size_t d = orientation.dimension();
  if (halfspaces.empty()) throw EmptyInput("vertex enumeration needs at least one halfspace");

  // Cone {(t, z) : t >= 0, w.z - c t >= 0}; its extreme rays with t > 0 are
  // the vertices, those with t = 0 the extreme directions of recession.
  std::vector<std::vector<Scalar>> rows;
  {
    std::vector<Scalar> t_row(d + 1, Scalar(0));
    t_row[0] = 1;
    rows.push_back(std::move(t_row));
  }
  std::vector<Halfspace> sorted;
  for (const auto& h : halfspaces) {
    check_dimension(h.w, d, "halfspace");
    sorted.push_back(canonicalize_halfspace(h));
  }
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const auto& h : sorted) {
    std::vector<Scalar> row;
    row.push_back(-h.c);
    row.insert(row.end(), h.w.begin(), h.w.end());
    rows.push_back(std::move(row));
  }

  const auto basis_idx = detail::independent_rows(rows);
  if (basis_idx.size() != d + 1) {
    throw InfeasibleOrBadCone("halfspaces do not define a pointed polyhedron");
  }
  std::vector<std::vector<Scalar>> basis;
  for (auto i : basis_idx) basis.push_back(rows[i]);
  detail::DoubleDescription<Scalar> dd(basis);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (std::find(basis_idx.begin(), basis_idx.end(), i) == basis_idx.end()) dd.add_row(rows[i]);
  }

  std::vector<Point> vertices;
  std::vector<Point> directions;
  for (const auto& ray : dd.rays()) {
    const Scalar& t = ray.coords.front();
    Point z(ray.coords.begin() + 1, ray.coords.end());
    if (t.is_zero()) {
      directions.push_back(primitive_integer_vector(z));
    } else {
      for (auto& x : z) x /= t;
      vertices.push_back(std::move(z));
    }
  }
  if (vertices.empty()) throw InfeasibleOrBadCone("halfspaces define an empty polyhedron");

  auto expected = orientation.cone_generators();
  auto by_lex = [](const Point& a, const Point& b) { return lex_less(a, b); };
  std::sort(expected.begin(), expected.end(), by_lex);
  std::sort(directions.begin(), directions.end(), by_lex);
  if (directions != expected) {
    throw InfeasibleOrBadCone("recession cone differs from the domination cone " +
                              to_string(orientation));
  }
  std::sort(vertices.begin(), vertices.end(), by_lex);
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

// ---------------------------------------------------------------------------
// Fixed precision

namespace fp {

std::vector<Halfspace> facet_enumeration(const std::vector<std::vector<double>>& points,
                                         const Orientation& orientation, double tolerance) {
  const std::size_t d = orientation.dimension();
  if (points.empty()) throw EmptyInput("cannot enumerate facets of an empty point set");
  auto sorted = points;
  for (const auto& p : sorted) {
    if (p.size() != d) throw DimensionMismatch("point dimension does not match orientation");
  }
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  detail::NumberTraits<double> traits;
  traits.tolerance = tolerance;
  std::vector<std::vector<double>> basis;
  auto homog = [](const std::vector<double>& p) {
    std::vector<double> row{1.0};
    row.insert(row.end(), p.begin(), p.end());
    return row;
  };
  basis.push_back(homog(sorted.front()));
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> row(d + 1, 0.0);
    row[i + 1] = orientation.sign(i);
    basis.push_back(std::move(row));
  }
  detail::DoubleDescription<double> dd(basis, traits);
  for (std::size_t i = 1; i < sorted.size(); ++i) dd.add_row(homog(sorted[i]));

  std::vector<Halfspace> out;
  for (const auto& ray : dd.rays()) {
    Halfspace h;
    h.w.assign(ray.coords.begin() + 1, ray.coords.end());
    if (std::all_of(h.w.begin(), h.w.end(), [&](double x) { return traits.is_zero(x); })) continue;
    h.c = -ray.coords.front();
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace fp

}  // namespace innerapx
