/**
 * @file metrics.hpp
 * @brief Quality measures for approximation sets: the epsilon-convex
 * indicator, cardinality ratio, coverage/median error, hypervolume ratio,
 * range ratio, and a brute-force certificate for convex approximation.
 *
 * Everything is exact rational arithmetic.
 */

#ifndef INNERAPX_METRICS_HPP
#define INNERAPX_METRICS_HPP

#include "innerapx/core.hpp"
#include "innerapx/oracles.hpp"
#include "innerapx/polytope.hpp"

#include <optional>
#include <string>
#include <vector>

namespace innerapx {

/// A rational or +infinity.
struct Indicator {
  Scalar value = 1;
  bool infinite = false;

  std::string str() const { return infinite ? "inf" : to_string(value); }
  bool operator==(const Indicator&) const = default;
};

/**
 * Smallest factor t >= 1 such that every reference point, scaled by t
 * (min orientation) or by 1/t (max orientation), lies in A. Mixed
 * orientations are rejected.
 */
Indicator eps_convex_indicator(const Polyhedron& A, const std::vector<Point>& reference);

/// |R| / |R*|.
Scalar cardinality_ratio(std::size_t r, std::size_t r_star);

/// Non-dominated subset, sorted and deduplicated.
std::vector<Point> nondominated(const std::vector<Point>& points, const Orientation& orientation);

struct RepresentationMetrics {
  Scalar ce;
  Scalar me;
  Scalar hvr;
  Scalar rr;
};

/// Weights 1 / (max - min) per coordinate of the reference set; throws
/// MetricUndefined on a zero range.
std::vector<Scalar> range_weights(const std::vector<Point>& ynd);

/// max_i omega_i |a_i - b_i|.
Scalar weighted_distance(const Point& a, const Point& b, const std::vector<Scalar>& omega);

Scalar coverage_error(const std::vector<Point>& r, const std::vector<Point>& ynd);
/// Median of the nearest distances; even counts average the middle pair.
Scalar median_error(const std::vector<Point>& r, const std::vector<Point>& ynd);
Scalar range_ratio(const std::vector<Point>& r, const std::vector<Point>& ynd);

/**
 * HV(R) / HV(Y_N) with reference point max(Y_N) + 1 per coordinate.
 * Max objectives are negated first. Points of R not strictly below the
 * reference contribute nothing. d <= 3.
 */
Scalar hypervolume_ratio(const std::vector<Point>& r, const std::vector<Point>& ynd,
                         const Orientation& orientation);

RepresentationMetrics representation_metrics(const std::vector<Point>& r,
                                             const std::vector<Point>& ynd,
                                             const Orientation& orientation);

/**
 * Volume of the union of boxes [y, ref] (minimization convention). Exact for
 * d <= 3; throws UnsupportedDimension above and InvalidReference if some
 * point is not <= ref.
 */
Scalar hypervolume(const std::vector<Point>& points, const Point& ref);

/// Per-objective guarantee factor: E_ii times the oracle slack, inverted on
/// max objectives.
Point guarantee_factors(const EpsilonSpec& spec, const OracleQuality& quality);

/**
 * Builds A from the R images and checks that every image, scaled by the
 * guarantee factors, lies in A.
 */
bool verify_convex_approx(const std::vector<Point>& r_images, const std::vector<Point>& all_images,
                          const EpsilonSpec& spec, const OracleQuality& quality);

}  // namespace innerapx

#endif  // INNERAPX_METRICS_HPP
