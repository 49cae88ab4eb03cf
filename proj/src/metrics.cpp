#include "innerapx/metrics.hpp"

#include "innerapx/errors.hpp"

#include <algorithm>

namespace innerapx {

namespace {

Scalar abs_scalar(const Scalar& x) { return x < 0 ? Scalar(-x) : x; }

void check_dims(const std::vector<Point>& pts, std::size_t d) {
  for (const auto& p : pts) {
    if (p.size() != d) throw DimensionMismatch("points of different dimensions");
  }
}

/// Area of the union of [x, ref0] x [y, ref1].
Scalar area_2d(std::vector<std::pair<Scalar, Scalar>> pts, const Scalar& ref0, const Scalar& ref1) {
  std::sort(pts.begin(), pts.end());
  Scalar area = 0;
  std::optional<Scalar> low;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!low || pts[i].second < *low) low = pts[i].second;
    const Scalar next = i + 1 < pts.size() ? pts[i + 1].first : ref0;
    area += (next - pts[i].first) * (ref1 - *low);
  }
  return area;
}

std::vector<Point> oriented(const std::vector<Point>& pts, const Orientation& o) {
  std::vector<Point> out = pts;
  for (auto& p : out) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (o[i] == Sense::max) p[i] = -p[i];
    }
  }
  return out;
}

}  // namespace

Indicator eps_convex_indicator(const Polyhedron& A, const std::vector<Point>& reference) {
  if (reference.empty()) throw EmptyInput("reference set is empty");
  check_dims(reference, A.dimension());
  const Orientation& o = A.orientation();
  if (o.is_all_min()) {
    Indicator ind;
    for (const auto& v : reference) {
      for (const auto& f : A.facets()) {
        if (f.c <= 0) continue;
        const Scalar wv = dot(f.w, v);
        if (wv == 0) return {Scalar(1), true};
        ind.value = std::max(ind.value, Scalar(f.c / wv));
      }
    }
    return ind;
  }
  if (o.is_all_max()) {
    // largest t <= 1 with t v in A for all v; indicator 1 / t
    Scalar t = 1;
    for (const auto& v : reference) {
      for (const auto& f : A.facets()) {
        const Scalar wv = dot(f.w, v);
        if (wv >= 0) continue;
        t = std::min(t, Scalar(f.c / wv));
      }
    }
    if (t <= 0) return {Scalar(1), true};
    return {Scalar(1 / t), false};
  }
  throw InvalidArgument("the epsilon-convex indicator needs a uniform orientation");
}

Scalar cardinality_ratio(std::size_t r, std::size_t r_star) {
  if (r_star == 0) throw EmptyInput("reference set is empty");
  return Scalar(static_cast<long>(r), static_cast<long>(r_star));
}

std::vector<Point> nondominated(const std::vector<Point>& points, const Orientation& orientation) {
  check_dims(points, orientation.dimension());
  const auto z = oriented(points, orientation);
  std::vector<Point> out;
  for (std::size_t a = 0; a < z.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < z.size() && !dominated; ++b) {
      if (z[a] == z[b]) continue;
      bool le = true;
      for (std::size_t i = 0; i < z[a].size() && le; ++i) le = z[b][i] <= z[a][i];
      dominated = le;
    }
    if (!dominated) out.push_back(points[a]);
  }
  std::sort(out.begin(), out.end(), [](const Point& x, const Point& y) { return lex_less(x, y); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Scalar> range_weights(const std::vector<Point>& ynd) {
  if (ynd.empty()) throw EmptyInput("reference set is empty");
  const std::size_t d = ynd.front().size();
  check_dims(ynd, d);
  std::vector<Scalar> omega;
  for (std::size_t i = 0; i < d; ++i) {
    Scalar lo = ynd[0][i], hi = ynd[0][i];
    for (const auto& y : ynd) {
      lo = std::min(lo, y[i]);
      hi = std::max(hi, y[i]);
    }
    if (hi == lo) {
      throw MetricUndefined("reference set has zero range in objective " + std::to_string(i));
    }
    omega.push_back(1 / (hi - lo));
  }
  return omega;
}

Scalar weighted_distance(const Point& a, const Point& b, const std::vector<Scalar>& omega) {
  if (a.size() != b.size() || a.size() != omega.size()) {
    throw DimensionMismatch("distance between points of different dimensions");
  }
  Scalar d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, Scalar(omega[i] * abs_scalar(a[i] - b[i])));
  return d;
}

namespace {

std::vector<Scalar> nearest_distances(const std::vector<Point>& r, const std::vector<Point>& ynd) {
  if (r.empty()) throw EmptyInput("representation is empty");
  const auto omega = range_weights(ynd);
  std::vector<Scalar> out;
  for (const auto& y : ynd) {
    Scalar best = weighted_distance(y, r[0], omega);
    for (const auto& x : r) best = std::min(best, weighted_distance(y, x, omega));
    out.push_back(best);
  }
  return out;
}

}  // namespace

Scalar coverage_error(const std::vector<Point>& r, const std::vector<Point>& ynd) {
  const auto d = nearest_distances(r, ynd);
  return *std::max_element(d.begin(), d.end());
}

Scalar median_error(const std::vector<Point>& r, const std::vector<Point>& ynd) {
  auto d = nearest_distances(r, ynd);
  std::sort(d.begin(), d.end());
  const std::size_t n = d.size();
  return n % 2 == 1 ? d[n / 2] : Scalar((d[n / 2 - 1] + d[n / 2]) / 2);
}

Scalar range_ratio(const std::vector<Point>& r, const std::vector<Point>& ynd) {
  if (r.empty()) throw EmptyInput("representation is empty");
  const auto omega = range_weights(ynd);
  check_dims(r, omega.size());
  Scalar sum = 0;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    Scalar lo = r[0][i], hi = r[0][i];
    for (const auto& y : r) {
      lo = std::min(lo, y[i]);
      hi = std::max(hi, y[i]);
    }
    sum += (hi - lo) * omega[i];
  }
  return sum / static_cast<long>(omega.size());
}

Scalar hypervolume(const std::vector<Point>& points, const Point& ref) {
  const std::size_t d = ref.size();
  if (d == 0 || d > 3) throw UnsupportedDimension("hypervolume is implemented for d <= 3");
  check_dims(points, d);
  for (const auto& p : points) {
    for (std::size_t i = 0; i < d; ++i) {
      if (p[i] > ref[i]) {
        throw InvalidReference("point " + to_string(p) + " is not below the reference " + to_string(ref));
      }
    }
  }
  if (points.empty()) return 0;
  if (d == 1) {
    Scalar lo = points[0][0];
    for (const auto& p : points) lo = std::min(lo, p[0]);
    return ref[0] - lo;
  }
  if (d == 2) {
    std::vector<std::pair<Scalar, Scalar>> pts;
    for (const auto& p : points) pts.emplace_back(p[0], p[1]);
    return area_2d(std::move(pts), ref[0], ref[1]);
  }
  // d == 3: sweep over the last coordinate
  std::vector<Point> sorted = points;
  std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) { return a[2] < b[2]; });
  Scalar volume = 0;
  std::vector<std::pair<Scalar, Scalar>> active;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    active.emplace_back(sorted[i][0], sorted[i][1]);
    const Scalar next = i + 1 < sorted.size() ? sorted[i + 1][2] : ref[2];
    if (next == sorted[i][2]) continue;
    volume += (next - sorted[i][2]) * area_2d(active, ref[0], ref[1]);
  }
  return volume;
}

Scalar hypervolume_ratio(const std::vector<Point>& r, const std::vector<Point>& ynd,
                         const Orientation& orientation) {
  if (ynd.empty()) throw EmptyInput("reference set is empty");
  const std::size_t d = orientation.dimension();
  if (d > 3) throw UnsupportedDimension("hypervolume ratio is implemented for d <= 3");
  check_dims(ynd, d);
  check_dims(r, d);
  const auto zy = oriented(ynd, orientation);
  Point ref = zy[0];
  for (const auto& y : zy) {
    for (std::size_t i = 0; i < d; ++i) ref[i] = std::max(ref[i], y[i]);
  }
  for (auto& x : ref) x += 1;
  std::vector<Point> zr;
  for (const auto& y : oriented(r, orientation)) {
    bool below = true;
    for (std::size_t i = 0; i < d; ++i) below = below && y[i] < ref[i];
    if (below) zr.push_back(y);
  }
  return hypervolume(zr, ref) / hypervolume(zy, ref);
}

RepresentationMetrics representation_metrics(const std::vector<Point>& r,
                                             const std::vector<Point>& ynd,
                                             const Orientation& orientation) {
  return {coverage_error(r, ynd), median_error(r, ynd), hypervolume_ratio(r, ynd, orientation),
          range_ratio(r, ynd)};
}

Point guarantee_factors(const EpsilonSpec& spec, const OracleQuality& quality) {
  const Scalar slack = quality.slack();
  Point f;
  for (std::size_t i = 0; i < spec.dimension(); ++i) {
    f.push_back(spec.orientation()[i] == Sense::min ? Scalar(spec.factor(i) * slack)
                                                    : Scalar(spec.factor(i) / slack));
  }
  return f;
}

bool verify_convex_approx(const std::vector<Point>& r_images, const std::vector<Point>& all_images,
                          const EpsilonSpec& spec, const OracleQuality& quality) {
  if (r_images.empty()) throw EmptyInput("approximation set is empty");
  const auto A = Polyhedron::from_points(r_images, spec.orientation());
  const auto factors = guarantee_factors(spec, quality);
  for (const auto& y : all_images) {
    if (y.size() != factors.size()) throw DimensionMismatch("image dimension differs from epsilon");
    Point z = y;
    for (std::size_t i = 0; i < z.size(); ++i) z[i] *= factors[i];
    if (!A.contains(z)) return false;
  }
  return true;
}

}  // namespace innerapx
