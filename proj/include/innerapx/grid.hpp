/**
 * @file grid.hpp
 * @brief Geometric grid of hyperrectangles over [LB, UB]^d, used only as a
 * diagnostic: each run should return at most one image per cell.
 *
 * LB = 2^-p, UB = 2^p. Along objective i the cell boundaries are
 * LB * r_i^k with r_i = 1 + eps_i (min) or 1 / (1 - eps_i) (max).
 * All comparisons are exact; no logarithms are taken.
 */

#ifndef INNERAPX_GRID_HPP
#define INNERAPX_GRID_HPP

#include "innerapx/core.hpp"
#include "innerapx/scalar.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace innerapx {

/// Cell index of a zero coordinate.
inline constexpr std::int64_t kZeroCell = -1;

struct GridSpec {
  std::size_t p = 1;
  /// Side ratio r_i per objective; 1 marks an exact (eps_i = 0) objective.
  std::vector<Scalar> ratio;
  /// kappa_i; -1 for exact objectives.
  std::vector<std::int64_t> kappa;

  static GridSpec make(std::size_t p, const EpsilonSpec& spec);

  Scalar lb() const;
  Scalar ub() const;
  std::size_t dimension() const noexcept { return ratio.size(); }
};

/// max { k : LB * (1 + eps)^k < UB }.
std::int64_t grid_kappa(std::size_t p, const Scalar& eps);

/// max { k : LB * ratio^k < UB } for a ratio > 1.
std::int64_t grid_kappa_for_ratio(std::size_t p, const Scalar& ratio);

/**
 * Per coordinate, the k with LB r^k <= y_i < LB r^(k+1), or kZeroCell for
 * y_i = 0. Throws InvalidArgument for coordinates above UB, nonzero
 * coordinates below LB, or exact objectives.
 */
std::vector<std::int64_t> cell_index(const Point& y, const GridSpec& spec);

/// Lower corner LB * r^k of a cell (0 on zero-sentinel coordinates).
Point cell_minimal_vertex(const std::vector<std::int64_t>& cell, const GridSpec& spec);

/**
 * True iff the images occupy pairwise distinct cells. On exact objectives
 * the coordinate itself stands in for the cell index.
 */
bool check_once_per_cell(const std::vector<Point>& images, const GridSpec& spec);

}  // namespace innerapx

#endif  // INNERAPX_GRID_HPP
