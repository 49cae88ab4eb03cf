/**
 * @file double_description.hpp
 * @brief Incremental double description method for pointed polyhedral cones.
 *
 * Maintains the extreme rays of C = {x : A x >= 0} while rows are appended
 * to A one at a time (Motzkin et al.; Fukuda & Prodon, "Double description
 * method revisited"). Adjacency of two rays is decided combinatorially from
 * their zero sets, so no rank computations happen inside the main loop.
 *
 * The number type is a template parameter: the exact polyhedral core uses
 * Scalar, and the fixed-precision experiment mode uses double with an
 * absolute tolerance.
 */

#ifndef INNERAPX_DETAIL_DOUBLE_DESCRIPTION_HPP
#define INNERAPX_DETAIL_DOUBLE_DESCRIPTION_HPP

#include "innerapx/errors.hpp"
#include "innerapx/scalar.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace innerapx::detail {

template <class Number>
struct NumberTraits;

template <>
struct NumberTraits<Scalar> {
  int sign(const Scalar& x) const { return x.sign(); }
  bool is_zero(const Scalar& x) const { return x.is_zero(); }
  std::vector<Scalar> normalize(const std::vector<Scalar>& v) const {
    return primitive_integer_vector(v);
  }
  // Exact arithmetic has no preferred pivot.
  bool better_pivot(const Scalar&, const Scalar&) const { return false; }
};

template <>
struct NumberTraits<double> {
  double tolerance = 1e-9;

  int sign(double x) const {
    if (x > tolerance) return 1;
    if (x < -tolerance) return -1;
    return 0;
  }
  bool is_zero(double x) const { return sign(x) == 0; }
  std::vector<double> normalize(std::vector<double> v) const {
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    if (scale > 0.0) {
      for (double& x : v) {
        x /= scale;
        if (std::abs(x) <= tolerance) x = 0.0;
      }
    }
    return v;
  }
  bool better_pivot(double candidate, double current) const {
    return std::abs(candidate) > std::abs(current);
  }
};

/**
 * Greedily picks linearly independent rows in input order. Returns the
 * indices of a maximal independent subset.
 */
template <class Number, class Traits = NumberTraits<Number>>
std::vector<std::size_t> independent_rows(const std::vector<std::vector<Number>>& rows,
                                          const Traits& traits = {}) {
  std::vector<std::size_t> picked;
  if (rows.empty()) return picked;
  const std::size_t cols = rows.front().size();
  // Reduced copies of the accepted rows with their pivot columns.
  std::vector<std::vector<Number>> reduced;
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < rows.size() && picked.size() < cols; ++i) {
    std::vector<Number> r = rows[i];
    for (std::size_t k = 0; k < reduced.size(); ++k) {
      const std::size_t c = pivots[k];
      if (traits.is_zero(r[c])) continue;
      const Number factor = r[c] / reduced[k][c];
      for (std::size_t j = 0; j < cols; ++j) r[j] -= factor * reduced[k][j];
      r[c] = 0;
    }
    std::optional<std::size_t> pivot;
    for (std::size_t j = 0; j < cols; ++j) {
      if (traits.is_zero(r[j])) continue;
      if (!pivot || traits.better_pivot(r[j], r[*pivot])) pivot = j;
    }
    if (!pivot) continue;
    picked.push_back(i);
    reduced.push_back(std::move(r));
    pivots.push_back(*pivot);
  }
  return picked;
}

template <class Number, class Traits = NumberTraits<Number>>
class DoubleDescription {
 public:
  using Vector = std::vector<Number>;

  struct Ray {
    Vector coords;
    /// Bit i is set iff the ray is tight on recorded row i.
    boost::dynamic_bitset<> zero;
  };

  /**
   * Starts from the simplicial cone {x : B x >= 0}. The basis rows must be
   * square and linearly independent (see independent_rows()); the initial
   * extreme rays are the columns of the inverse of B.
   */
  explicit DoubleDescription(const std::vector<Vector>& basis, Traits traits = {})
      : traits_(std::move(traits)) {
    dim_ = basis.size();
    if (dim_ == 0) throw EmptyInput("double description needs at least one row");
    for (const auto& row : basis) {
      if (row.size() != dim_) {
        throw DimensionMismatch("double description basis must be square");
      }
    }
    rows_ = basis;
    const auto inverse = invert(basis);
    for (std::size_t j = 0; j < dim_; ++j) {
      Ray ray;
      ray.coords.resize(dim_);
      for (std::size_t i = 0; i < dim_; ++i) ray.coords[i] = inverse[i][j];
      ray.coords = traits_.normalize(ray.coords);
      ray.zero.resize(dim_);
      for (std::size_t i = 0; i < dim_; ++i) {
        if (i != j) ray.zero.set(i);
      }
      rays_.push_back(std::move(ray));
    }
  }

  std::size_t dimension() const noexcept { return dim_; }
  const std::vector<Vector>& rows() const noexcept { return rows_; }
  const std::vector<Ray>& rays() const noexcept { return rays_; }

  /**
   * Intersects the cone with {x : row . x >= 0}. Returns false, and leaves
   * the state untouched, when the row is redundant (no ray violates it).
   */
  bool add_row(const Vector& row) {
    if (row.size() != dim_) {
      throw DimensionMismatch("row length does not match cone dimension");
    }
    std::vector<Number> values;
    values.reserve(rays_.size());
    std::vector<std::size_t> pos, neg, zer;
    for (std::size_t k = 0; k < rays_.size(); ++k) {
      Number v = 0;
      for (std::size_t i = 0; i < dim_; ++i) v += row[i] * rays_[k].coords[i];
      const int s = traits_.sign(v);
      if (s > 0) {
        pos.push_back(k);
      } else if (s < 0) {
        neg.push_back(k);
      } else {
        zer.push_back(k);
      }
      values.push_back(std::move(v));
    }
    if (neg.empty()) return false;

    const std::size_t row_index = rows_.size();
    rows_.push_back(row);

    std::vector<Ray> next;
    next.reserve(pos.size() + zer.size());
    for (std::size_t k : pos) next.push_back(extended(rays_[k], false));
    for (std::size_t k : zer) next.push_back(extended(rays_[k], true));

    const std::size_t needed = dim_ >= 2 ? dim_ - 2 : 0;
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        const auto common = rays_[p].zero & rays_[n].zero;
        if (common.count() < needed) continue;
        if (!adjacent(p, n, common)) continue;
        Ray ray;
        ray.coords.resize(dim_);
        // values[p] > 0 > values[n]; both coefficients are positive.
        const Number a = values[p];
        const Number b = -values[n];
        for (std::size_t i = 0; i < dim_; ++i) {
          ray.coords[i] = a * rays_[n].coords[i] + b * rays_[p].coords[i];
        }
        ray.coords = traits_.normalize(ray.coords);
        ray.zero = common;
        ray.zero.resize(row_index + 1);
        ray.zero.set(row_index);
        next.push_back(std::move(ray));
      }
    }
    rays_ = std::move(next);
    return true;
  }

 private:
  Ray extended(const Ray& ray, bool tight) const {
    Ray out = ray;
    out.zero.resize(rows_.size());
    if (tight) out.zero.set(rows_.size() - 1);
    return out;
  }

  bool adjacent(std::size_t p, std::size_t n, const boost::dynamic_bitset<>& common) const {
    for (std::size_t k = 0; k < rays_.size(); ++k) {
      if (k == p || k == n) continue;
      if (common.is_subset_of(rays_[k].zero)) return false;
    }
    return true;
  }

  std::vector<Vector> invert(const std::vector<Vector>& m) const {
    const std::size_t n = m.size();
    std::vector<Vector> a = m;
    std::vector<Vector> inv(n, Vector(n, Number(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::optional<std::size_t> pivot;
      for (std::size_t r = c; r < n; ++r) {
        if (traits_.is_zero(a[r][c])) continue;
        if (!pivot || traits_.better_pivot(a[r][c], a[*pivot][c])) pivot = r;
      }
      if (!pivot) throw InvalidArgument("double description basis is singular");
      std::swap(a[c], a[*pivot]);
      std::swap(inv[c], inv[*pivot]);
      const Number diag = a[c][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[c][j] /= diag;
        inv[c][j] /= diag;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || traits_.is_zero(a[r][c])) continue;
        const Number f = a[r][c];
        for (std::size_t j = 0; j < n; ++j) {
          a[r][j] -= f * a[c][j];
          inv[r][j] -= f * inv[c][j];
        }
      }
    }
    return inv;
  }

  Traits traits_;
  std::size_t dim_ = 0;
  std::vector<Vector> rows_;
  std::vector<Ray> rays_;
};

}  // namespace innerapx::detail

#endif  // INNERAPX_DETAIL_DOUBLE_DESCRIPTION_HPP
