#include "innerapx/grid.hpp"

#include "innerapx/errors.hpp"

#include <set>

namespace innerapx {

namespace {

Scalar power_of_two(std::size_t p) { return Scalar(Integer(1) << p); }

/// Largest k >= 0 with r^k <= t (or < t when strict). Needs r > 1 and
/// 1 <= t (1 < t when strict).
std::int64_t floor_log(const Scalar& r, const Scalar& t, bool strict) {
  auto ok = [&](const Scalar& x) { return strict ? x < t : x <= t; };
  std::vector<Scalar> squares{r};
  while (ok(squares.back())) squares.push_back(squares.back() * squares.back());
  std::int64_t k = 0;
  Scalar acc = 1;
  for (std::size_t j = squares.size(); j-- > 0;) {
    const Scalar next = acc * squares[j];
    if (ok(next)) {
      acc = next;
      k += std::int64_t{1} << j;
    }
  }
  return k;
}

Scalar power(Scalar base, std::int64_t k) {
  Scalar result = 1;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

}  // namespace

GridSpec GridSpec::make(std::size_t p, const EpsilonSpec& spec) {
  if (p < 1) throw InvalidArgument("grid needs p >= 1");
  GridSpec g;
  g.p = p;
  for (std::size_t i = 0; i < spec.dimension(); ++i) {
    const Scalar& e = spec.eps()[i];
    const Scalar r = spec.orientation()[i] == Sense::min ? Scalar(1 + e) : Scalar(1 / (1 - e));
    g.ratio.push_back(r);
    g.kappa.push_back(e == 0 ? -1 : grid_kappa_for_ratio(p, r));
  }
  return g;
}

Scalar GridSpec::lb() const { return 1 / power_of_two(p); }
Scalar GridSpec::ub() const { return power_of_two(p); }

std::int64_t grid_kappa_for_ratio(std::size_t p, const Scalar& ratio) {
  if (p < 1) throw InvalidArgument("grid needs p >= 1");
  if (ratio <= 1) throw InvalidArgument("grid side ratio must exceed 1");
  // LB r^k < UB  <=>  r^k < 2^(2p)
  return floor_log(ratio, power_of_two(2 * p), true);
}

std::int64_t grid_kappa(std::size_t p, const Scalar& eps) {
  if (eps <= 0) throw InvalidArgument("grid needs eps > 0");
  return grid_kappa_for_ratio(p, 1 + eps);
}

std::vector<std::int64_t> cell_index(const Point& y, const GridSpec& spec) {
  if (y.size() != spec.dimension()) throw DimensionMismatch("point and grid dimensions differ");
  const Scalar ub = spec.ub();
  const Scalar scale = power_of_two(spec.p);
  std::vector<std::int64_t> cell;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] < 0) throw InvalidArgument("grid coordinates must be nonnegative");
    if (y[i] > ub) throw InvalidArgument("coordinate " + to_string(y[i]) + " lies above UB");
    if (y[i] == 0) {
      cell.push_back(kZeroCell);
      continue;
    }
    if (spec.ratio[i] <= 1) throw InvalidArgument("objective " + std::to_string(i) + " has no grid (eps = 0)");
    const Scalar t = y[i] * scale;  // y / LB
    if (t < 1) throw InvalidArgument("coordinate " + to_string(y[i]) + " lies below LB");
    cell.push_back(floor_log(spec.ratio[i], t, false));
  }
  return cell;
}

Point cell_minimal_vertex(const std::vector<std::int64_t>& cell, const GridSpec& spec) {
  if (cell.size() != spec.dimension()) throw DimensionMismatch("cell and grid dimensions differ");
  Point v;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    v.push_back(cell[i] == kZeroCell ? Scalar(0) : Scalar(spec.lb() * power(spec.ratio[i], cell[i])));
  }
  return v;
}

bool check_once_per_cell(const std::vector<Point>& images, const GridSpec& spec) {
  std::set<std::vector<Scalar>> seen;
  for (const auto& y : images) {
    if (y.size() != spec.dimension()) throw DimensionMismatch("point and grid dimensions differ");
    const Scalar ub = spec.ub();
    const Scalar scale = power_of_two(spec.p);
    std::vector<Scalar> key;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (spec.ratio[i] <= 1 || y[i] == 0) {
        key.push_back(y[i] == 0 && spec.ratio[i] > 1 ? Scalar(kZeroCell) : y[i]);
        continue;
      }
      if (y[i] > ub || y[i] * scale < 1) {
        throw InvalidArgument("coordinate " + to_string(y[i]) + " lies outside [LB, UB]");
      }
      key.emplace_back(floor_log(spec.ratio[i], y[i] * scale, false));
    }
    if (!seen.insert(std::move(key)).second) return false;
  }
  return true;
}

}  // namespace innerapx
