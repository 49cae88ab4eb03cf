/**
 * @file instances.hpp
 * @brief Combinatorial multi-objective problems: knapsack, assignment,
 * metric TSP and explicit image lists.
 *
 * Provides evaluation of solutions, brute-force enumeration for test
 * oracles, seeded generators and a plain-text file format.
 *
 * File formats (ASCII, whitespace separated, LF line endings). Lines
 * starting with '#' carry "key=value" metadata; "type" selects the problem
 * kind and "orientation" the objective senses of explicit instances.
 *
 *   KP        d n W            then n lines: weight p_1 ... p_d
 *   AP        d n              then d stacked n x n cost matrices
 *   TSP       d n              then d blocks of n lines: x y
 *             d n M            then d explicit n x n matrices
 *   explicit  d m              then m lines of d rationals (num/den)
 */

#ifndef INNERAPX_INSTANCES_HPP
#define INNERAPX_INSTANCES_HPP

#include "innerapx/polytope.hpp"
#include "innerapx/scalar.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace innerapx {

using Matrix = std::vector<std::vector<std::int64_t>>;

/// Ordered "key=value" metadata carried through instance files.
using Metadata = std::vector<std::pair<std::string, std::string>>;

struct KPItem {
  std::int64_t weight = 0;
  std::vector<std::int64_t> profits;
};

/// Multi-objective 0/1 knapsack; every objective is maximized.
struct KPInstance {
  std::size_t d = 0;
  std::vector<KPItem> items;
  std::int64_t capacity = 0;
  Metadata metadata;

  Orientation orientation() const { return Orientation::all_max(d); }
};

/// Multi-objective assignment; layers[k][i][j] is the k-th cost of i -> j.
struct APInstance {
  std::size_t d = 0;
  std::size_t n = 0;
  std::vector<Matrix> layers;
  Metadata metadata;

  Orientation orientation() const { return Orientation::all_min(d); }
};

struct Coordinate {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool operator==(const Coordinate&) const = default;
};

/// Symmetric metric TSP. When coordinates are present, layers hold the
/// ceiled Euclidean distances derived from them.
struct TSPInstance {
  std::size_t d = 0;
  std::size_t n = 0;
  std::vector<Matrix> layers;
  std::optional<std::vector<std::vector<Coordinate>>> coordinates;
  Metadata metadata;

  Orientation orientation() const { return Orientation::all_min(d); }
};

/// A finite image set Y given directly.
struct ExplicitInstance {
  std::size_t d = 0;
  std::vector<Point> images;
  Orientation senses;
  Metadata metadata;

  Orientation orientation() const { return senses; }
};

using Instance = std::variant<KPInstance, APInstance, TSPInstance, ExplicitInstance>;

enum class InstanceType { kp, ap, tsp, explicit_list };

std::string to_string(InstanceType type);
InstanceType parse_instance_type(const std::string& text);
InstanceType type_of(const Instance& inst);

// ---------------------------------------------------------------------------
// Solutions

/// Selected item indices, ascending.
struct ItemSubset {
  std::vector<std::size_t> items;
  bool operator==(const ItemSubset&) const = default;
};

/// Row i is assigned to column perm[i].
struct Assignment {
  std::vector<std::size_t> perm;
  bool operator==(const Assignment&) const = default;
};

/// Visiting order of a Hamiltonian cycle; starts at city 0.
struct Tour {
  std::vector<std::size_t> order;
  bool operator==(const Tour&) const = default;
};

struct ImageIndex {
  std::size_t index = 0;
  bool operator==(const ImageIndex&) const = default;
};

using Solution = std::variant<ItemSubset, Assignment, Tour, ImageIndex>;

std::string to_string(const Solution& sol);

// ---------------------------------------------------------------------------
// Operations

std::size_t dimension(const Instance& inst);
Orientation orientation(const Instance& inst);

/// Checks the type invariants; throws InvalidArgument with the violation.
void validate(const Instance& inst);

/// Objective vector f(x). Throws InfeasibleSolution if the solution does not
/// belong to the instance.
Point evaluate(const Instance& inst, const Solution& sol);

inline constexpr std::size_t kDefaultEnumerationLimit = 1'000'000;

/// Every feasible solution. Throws TooLarge if the search space exceeds the
/// limit. TSP tours are enumerated once per cycle (fixed start, one
/// direction).
std::vector<Solution> enumerate_solutions(const Instance& inst,
                                          std::size_t limit = kDefaultEnumerationLimit);

/// The exact image set Y, sorted and deduplicated.
std::vector<Point> enumerate_images(const Instance& inst,
                                    std::size_t limit = kDefaultEnumerationLimit);

/**
 * Smallest p such that every nonzero image coordinate lies in
 * [2^-p, 2^p]. Derived from instance data (e.g. n times the largest
 * profit), not from an abstract encoding length.
 */
std::size_t image_bit_bound(const Instance& inst);

// ---------------------------------------------------------------------------
// Generators

enum class KPMode { uniform, conflicting };

std::string to_string(KPMode mode);
KPMode parse_kp_mode(const std::string& text);

/**
 * Uniform: weights and profits uniform in [1, 1000], capacity half the total
 * weight rounded up. Conflicting: objective 1 uniform, every further
 * objective 1001 - p_1 plus uniform noise in [-100, 100], clamped to
 * [1, 1000].
 */
KPInstance generate_kp(std::size_t n, std::size_t d, std::uint64_t seed,
                       KPMode mode = KPMode::uniform);

/// Cost entries uniform in [1, max_cost].
APInstance generate_ap(std::size_t n, std::size_t d, std::uint64_t seed,
                       std::int64_t max_cost = 20);

/// d independent point sets uniform in [0, 1000]^2; ceiled Euclidean costs.
TSPInstance generate_tsp(std::size_t n, std::uint64_t seed, std::size_t d);

/// ceil(sqrt(dx^2 + dy^2)), computed exactly.
std::int64_t ceiled_distance(const Coordinate& a, const Coordinate& b);

// ---------------------------------------------------------------------------
// Files

std::string serialize_instance(const Instance& inst);

/// Parses instance text. The type comes from the argument, else from a
/// "# type=" metadata line.
Instance parse_instance(const std::string& text, std::optional<InstanceType> type = std::nullopt);

/// Reads a file. Falls back to the extension (.kp, .ap, .tsp, .explicit)
/// when neither the argument nor the metadata names a type.
Instance read_instance(const std::filesystem::path& path,
                       std::optional<InstanceType> type = std::nullopt);

void write_instance(const Instance& inst, const std::filesystem::path& path);

/// One-line human readable description.
std::string summary(const Instance& inst);

/// Stable 64-bit FNV-1a hash of the instance body (metadata excluded), as
/// 16 hex digits. Used to check that two runs refer to the same instance.
std::string fingerprint(const Instance& inst);

}  // namespace innerapx

#endif  // INNERAPX_INSTANCES_HPP
