#include "innerapx/instances.hpp"

#include "innerapx/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace innerapx {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// Uniform integer in [lo, hi] by rejection sampling; unlike
/// std::uniform_int_distribution the sequence is identical on every
/// standard library, which keeps generated files reproducible.
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

std::size_t checked_factorial(std::size_t n, std::size_t limit) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    if (f > limit / i) return limit + 1;
    f *= i;
  }
  return f;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

void validate_matrix(const Matrix& m, std::size_t n, const std::string& name) {
  require(m.size() == n, name + " must have " + std::to_string(n) + " rows");
  for (const auto& row : m) {
    require(row.size() == n, name + " must be square");
  }
}

bool is_permutation_of_n(const std::vector<std::size_t>& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (auto v : p) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Names

std::string to_string(InstanceType type) {
  switch (type) {
    case InstanceType::kp: return "kp";
    case InstanceType::ap: return "ap";
    case InstanceType::tsp: return "tsp";
    case InstanceType::explicit_list: return "explicit";
  }
  return "unknown";
}

InstanceType parse_instance_type(const std::string& text) {
  if (text == "kp") return InstanceType::kp;
  if (text == "ap") return InstanceType::ap;
  if (text == "tsp") return InstanceType::tsp;
  if (text == "explicit") return InstanceType::explicit_list;
  throw InvalidArgument("unknown instance type '" + text + "'");
}

InstanceType type_of(const Instance& inst) {
  return std::visit(overloaded{[](const KPInstance&) { return InstanceType::kp; },
                               [](const APInstance&) { return InstanceType::ap; },
                               [](const TSPInstance&) { return InstanceType::tsp; },
                               [](const ExplicitInstance&) {
                                 return InstanceType::explicit_list;
                               }},
                    inst);
}

std::string to_string(KPMode mode) { return mode == KPMode::uniform ? "uniform" : "conflicting"; }

KPMode parse_kp_mode(const std::string& text) {
  if (text == "uniform") return KPMode::uniform;
  if (text == "conflicting") return KPMode::conflicting;
  throw InvalidArgument("unknown knapsack mode '" + text + "'");
}

std::string to_string(const Solution& sol) {
  auto list = [](const std::vector<std::size_t>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) out += ' ';
      out += std::to_string(v[i]);
    }
    return out + "]";
  };
  return std::visit(overloaded{[&](const ItemSubset& s) { return "items" + list(s.items); },
                               [&](const Assignment& s) { return "perm" + list(s.perm); },
                               [&](const Tour& s) { return "tour" + list(s.order); },
                               [](const ImageIndex& s) {
                                 return "image[" + std::to_string(s.index) + "]";
                               }},
                    sol);
}

// ---------------------------------------------------------------------------
// Basic queries

std::size_t dimension(const Instance& inst) {
  return std::visit([](const auto& i) { return i.d; }, inst);
}

Orientation orientation(const Instance& inst) {
  return std::visit([](const auto& i) { return i.orientation(); }, inst);
}

void validate(const Instance& inst) {
  std::visit(
      overloaded{
          [](const KPInstance& kp) {
            require(kp.d >= 1, "knapsack needs at least one objective");
            require(kp.capacity >= 0, "knapsack capacity must be nonnegative");
            for (const auto& item : kp.items) {
              require(item.weight >= 0, "knapsack weights must be nonnegative");
              require(item.profits.size() == kp.d, "every item needs d profits");
              for (auto p : item.profits) require(p >= 1, "knapsack profits must be >= 1");
            }
          },
          [](const APInstance& ap) {
            require(ap.d >= 1, "assignment needs at least one objective");
            require(ap.n >= 1, "assignment needs n >= 1");
            require(ap.layers.size() == ap.d, "assignment needs d cost layers");
            for (const auto& layer : ap.layers) {
              validate_matrix(layer, ap.n, "assignment layer");
              for (const auto& row : layer) {
                for (auto c : row) require(c >= 1, "assignment costs must be >= 1");
              }
            }
          },
          [](const TSPInstance& tsp) {
            require(tsp.d >= 1, "TSP needs at least one objective");
            require(tsp.n >= 3, "TSP needs n >= 3");
            require(tsp.layers.size() == tsp.d, "TSP needs d cost layers");
            for (const auto& m : tsp.layers) {
              validate_matrix(m, tsp.n, "TSP layer");
              for (std::size_t i = 0; i < tsp.n; ++i) {
                require(m[i][i] == 0, "TSP layers need a zero diagonal");
                for (std::size_t j = 0; j < tsp.n; ++j) {
                  require(m[i][j] >= 0, "TSP costs must be nonnegative");
                  require(m[i][j] == m[j][i], "TSP layers must be symmetric");
                }
              }
              if (tsp.n <= 50) {
                for (std::size_t i = 0; i < tsp.n; ++i) {
                  for (std::size_t j = 0; j < tsp.n; ++j) {
                    for (std::size_t k = 0; k < tsp.n; ++k) {
                      require(m[i][k] <= m[i][j] + m[j][k],
                              "TSP layers must satisfy the triangle inequality");
                    }
                  }
                }
              }
            }
          },
          [](const ExplicitInstance& ex) {
            require(ex.d >= 1, "explicit instance needs at least one objective");
            require(!ex.images.empty(), "explicit instance needs at least one image");
            require(ex.senses.dimension() == ex.d, "orientation length must equal d");
            for (const auto& y : ex.images) {
              require(y.size() == ex.d, "every image needs d coordinates");
              for (const auto& v : y) require(v >= 0, "images must be nonnegative");
            }
          }},
      inst);
}

Point evaluate(const Instance& inst, const Solution& sol) {
  auto mismatch = [] { throw InfeasibleSolution("solution kind does not match instance"); };
  return std::visit(
      overloaded{
          [&](const KPInstance& kp, const ItemSubset& s) {
            Point y(kp.d, Scalar(0));
            std::int64_t weight = 0;
            std::set<std::size_t> seen;
            for (auto j : s.items) {
              if (j >= kp.items.size() || !seen.insert(j).second) {
                throw InfeasibleSolution("invalid item index " + std::to_string(j));
              }
              weight += kp.items[j].weight;
              for (std::size_t k = 0; k < kp.d; ++k) y[k] += kp.items[j].profits[k];
            }
            if (weight > kp.capacity) throw InfeasibleSolution("knapsack capacity exceeded");
            return y;
          },
          [&](const APInstance& ap, const Assignment& s) {
            if (!is_permutation_of_n(s.perm, ap.n)) {
              throw InfeasibleSolution("assignment is not a permutation of size n");
            }
            Point y(ap.d, Scalar(0));
            for (std::size_t k = 0; k < ap.d; ++k) {
              for (std::size_t i = 0; i < ap.n; ++i) y[k] += ap.layers[k][i][s.perm[i]];
            }
            return y;
          },
          [&](const TSPInstance& tsp, const Tour& s) {
            if (!is_permutation_of_n(s.order, tsp.n)) {
              throw InfeasibleSolution("tour is not a Hamiltonian cycle");
            }
            Point y(tsp.d, Scalar(0));
            for (std::size_t k = 0; k < tsp.d; ++k) {
              for (std::size_t i = 0; i < tsp.n; ++i) {
                y[k] += tsp.layers[k][s.order[i]][s.order[(i + 1) % tsp.n]];
              }
            }
            return y;
          },
          [&](const ExplicitInstance& ex, const ImageIndex& s) {
            if (s.index >= ex.images.size()) throw InfeasibleSolution("image index out of range");
            return ex.images[s.index];
          },
          [&](const auto&, const auto&) -> Point {
            mismatch();
            return {};
          }},
      inst, sol);
}

std::vector<Solution> enumerate_solutions(const Instance& inst, std::size_t limit) {
  auto too_large = [&](const std::string& what) {
    throw TooLarge(what + " exceeds the enumeration limit of " + std::to_string(limit));
  };
  std::vector<Solution> out;
  std::visit(
      overloaded{
          [&](const KPInstance& kp) {
            const std::size_t n = kp.items.size();
            if (n >= 63 || (std::size_t{1} << n) > limit) too_large("2^" + std::to_string(n));
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
              std::int64_t weight = 0;
              ItemSubset s;
              for (std::size_t j = 0; j < n; ++j) {
                if (mask & (std::uint64_t{1} << j)) {
                  weight += kp.items[j].weight;
                  s.items.push_back(j);
                }
              }
              if (weight <= kp.capacity) out.emplace_back(std::move(s));
            }
          },
          [&](const APInstance& ap) {
            if (checked_factorial(ap.n, limit) > limit) too_large(std::to_string(ap.n) + "!");
            std::vector<std::size_t> perm(ap.n);
            std::iota(perm.begin(), perm.end(), 0);
            do {
              out.emplace_back(Assignment{perm});
            } while (std::next_permutation(perm.begin(), perm.end()));
          },
          [&](const TSPInstance& tsp) {
            if (checked_factorial(tsp.n - 1, limit) > limit) {
              too_large("(" + std::to_string(tsp.n) + "-1)!");
            }
            std::vector<std::size_t> rest(tsp.n - 1);
            std::iota(rest.begin(), rest.end(), 1);
            do {
              if (rest.front() > rest.back()) continue;  // each cycle once
              Tour t;
              t.order.push_back(0);
              t.order.insert(t.order.end(), rest.begin(), rest.end());
              out.emplace_back(std::move(t));
            } while (std::next_permutation(rest.begin(), rest.end()));
          },
          [&](const ExplicitInstance& ex) {
            if (ex.images.size() > limit) too_large(std::to_string(ex.images.size()) + " images");
            for (std::size_t i = 0; i < ex.images.size(); ++i) out.emplace_back(ImageIndex{i});
          }},
      inst);
  return out;
}

std::vector<Point> enumerate_images(const Instance& inst, std::size_t limit) {
  std::vector<Point> images;
  for (const auto& s : enumerate_solutions(inst, limit)) images.push_back(evaluate(inst, s));
  std::sort(images.begin(), images.end(),
            [](const Point& a, const Point& b) { return lex_less(a, b); });
  images.erase(std::unique(images.begin(), images.end()), images.end());
  return images;
}

std::size_t image_bit_bound(const Instance& inst) {
  auto from_bound = [](std::int64_t bound) {
    return std::max<std::size_t>(1, bit_length(Integer(bound)));
  };
  auto max_entry = [](const std::vector<Matrix>& layers) {
    std::int64_t m = 0;
    for (const auto& layer : layers) {
      for (const auto& row : layer) {
        for (auto v : row) m = std::max(m, v);
      }
    }
    return m;
  };
  return std::visit(
      overloaded{[&](const KPInstance& kp) {
                   std::int64_t m = 0;
                   for (const auto& item : kp.items) {
                     for (auto p : item.profits) m = std::max(m, p);
                   }
                   return from_bound(static_cast<std::int64_t>(kp.items.size()) * m);
                 },
                 [&](const APInstance& ap) {
                   return from_bound(static_cast<std::int64_t>(ap.n) * max_entry(ap.layers));
                 },
                 [&](const TSPInstance& tsp) {
                   return from_bound(static_cast<std::int64_t>(tsp.n) * max_entry(tsp.layers));
                 },
                 [&](const ExplicitInstance& ex) {
                   std::size_t p = 1;
                   for (const auto& y : ex.images) {
                     for (const auto& v : y) {
                       p = std::max(p, bit_length(Integer(boost::multiprecision::numerator(v))));
                       p = std::max(p,
                                    bit_length(Integer(boost::multiprecision::denominator(v))));
                     }
                   }
                   return p;
                 }},
      inst);
}

// ---------------------------------------------------------------------------
// Generators

std::int64_t ceiled_distance(const Coordinate& a, const Coordinate& b) {
  const std::int64_t dx = a.x - b.x;
  const std::int64_t dy = a.y - b.y;
  const std::int64_t s = dx * dx + dy * dy;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(s)));
  while (r * r > s) --r;
  while ((r + 1) * (r + 1) <= s) ++r;
  return r * r == s ? r : r + 1;
}

KPInstance generate_kp(std::size_t n, std::size_t d, std::uint64_t seed, KPMode mode) {
  require(n >= 1, "knapsack generator needs n >= 1");
  require(d >= 2, "knapsack generator needs d >= 2");
  std::mt19937_64 rng(seed);
  KPInstance kp;
  kp.d = d;
  std::int64_t total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    KPItem item;
    item.weight = uniform_int(rng, 1, 1000);
    total += item.weight;
    const std::int64_t first = uniform_int(rng, 1, 1000);
    item.profits.push_back(first);
    for (std::size_t k = 1; k < d; ++k) {
      if (mode == KPMode::uniform) {
        item.profits.push_back(uniform_int(rng, 1, 1000));
      } else {
        const std::int64_t noisy = 1001 - first + uniform_int(rng, -100, 100);
        item.profits.push_back(std::clamp<std::int64_t>(noisy, 1, 1000));
      }
    }
    kp.items.push_back(std::move(item));
  }
  kp.capacity = (total + 1) / 2;
  kp.metadata = {{"generator", "kp"},
                 {"n", std::to_string(n)},
                 {"d", std::to_string(d)},
                 {"seed", std::to_string(seed)},
                 {"mode", to_string(mode)},
                 {"weights", "uniform[1,1000]"},
                 {"profits", mode == KPMode::uniform ? "uniform[1,1000]"
                                                     : "p1 uniform[1,1000]; pk=clamp(1001-p1+noise[-100,100],1,1000)"},
                 {"capacity", "ceil(sum(weights)/2)"}};
  return kp;
}

APInstance generate_ap(std::size_t n, std::size_t d, std::uint64_t seed, std::int64_t max_cost) {
  require(n >= 2, "assignment generator needs n >= 2");
  require(d >= 1, "assignment generator needs d >= 1");
  require(max_cost >= 1, "assignment generator needs max_cost >= 1");
  std::mt19937_64 rng(seed);
  APInstance ap;
  ap.d = d;
  ap.n = n;
  for (std::size_t k = 0; k < d; ++k) {
    Matrix m(n, std::vector<std::int64_t>(n));
    for (auto& row : m) {
      for (auto& v : row) v = uniform_int(rng, 1, max_cost);
    }
    ap.layers.push_back(std::move(m));
  }
  ap.metadata = {{"generator", "ap"},
                 {"n", std::to_string(n)},
                 {"d", std::to_string(d)},
                 {"seed", std::to_string(seed)},
                 {"costs", "uniform[1," + std::to_string(max_cost) + "]"}};
  return ap;
}

TSPInstance generate_tsp(std::size_t n, std::uint64_t seed, std::size_t d) {
  require(n >= 3, "TSP generator needs n >= 3");
  require(d >= 1, "TSP generator needs d >= 1");
  std::mt19937_64 rng(seed);
  TSPInstance tsp;
  tsp.d = d;
  tsp.n = n;
  tsp.coordinates.emplace();
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Coordinate> pts;
    for (std::size_t i = 0; i < n; ++i) {
      Coordinate c;
      c.x = uniform_int(rng, 0, 1000);
      c.y = uniform_int(rng, 0, 1000);
      pts.push_back(c);
    }
    Matrix m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] = ceiled_distance(pts[i], pts[j]);
    }
    tsp.layers.push_back(std::move(m));
    tsp.coordinates->push_back(std::move(pts));
  }
  tsp.metadata = {{"generator", "tsp"},
                  {"n", std::to_string(n)},
                  {"d", std::to_string(d)},
                  {"seed", std::to_string(seed)},
                  {"points", "uniform[0,1000]^2"},
                  {"costs", "ceiled euclidean"}};
  return tsp;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

void write_matrix(std::ostringstream& out, const Matrix& m) {
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out << ' ';
      out << row[j];
    }
    out << '\n';
  }
}

std::string serialize_body(const Instance& inst) {
  std::ostringstream out;
  std::visit(overloaded{[&](const KPInstance& kp) {
                          out << kp.d << ' ' << kp.items.size() << ' ' << kp.capacity << '\n';
                          for (const auto& item : kp.items) {
                            out << item.weight;
                            for (auto p : item.profits) out << ' ' << p;
                            out << '\n';
                          }
                        },
                        [&](const APInstance& ap) {
                          out << ap.d << ' ' << ap.n << '\n';
                          for (const auto& m : ap.layers) write_matrix(out, m);
                        },
                        [&](const TSPInstance& tsp) {
                          if (tsp.coordinates) {
                            out << tsp.d << ' ' << tsp.n << '\n';
                            for (const auto& layer : *tsp.coordinates) {
                              for (const auto& c : layer) out << c.x << ' ' << c.y << '\n';
                            }
                          } else {
                            out << tsp.d << ' ' << tsp.n << " M\n";
                            for (const auto& m : tsp.layers) write_matrix(out, m);
                          }
                        },
                        [&](const ExplicitInstance& ex) {
                          out << ex.d << ' ' << ex.images.size() << '\n';
                          for (const auto& y : ex.images) {
                            for (std::size_t k = 0; k < y.size(); ++k) {
                              if (k > 0) out << ' ';
                              out << to_string(y[k]);
                            }
                            out << '\n';
                          }
                        }},
             inst);
  return out.str();
}

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

struct ParsedText {
  Metadata metadata;
  std::optional<std::string> type;
  std::optional<std::string> orientation;
  std::vector<Line> lines;
};

ParsedText split_lines(const std::string& text) {
  ParsedText parsed;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto first = raw.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (raw[first] == '#') {
      std::string body = raw.substr(first + 1);
      const auto start = body.find_first_not_of(" \t");
      body = start == std::string::npos ? "" : body.substr(start);
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      std::string key = body.substr(0, eq);
      std::string value = body.substr(eq + 1);
      if (key == "type") {
        parsed.type = value;
      } else if (key == "orientation") {
        parsed.orientation = value;
      } else {
        parsed.metadata.emplace_back(std::move(key), std::move(value));
      }
      continue;
    }
    Line line;
    line.number = number;
    std::istringstream tokens(raw);
    std::string tok;
    while (tokens >> tok) line.tokens.push_back(tok);
    parsed.lines.push_back(std::move(line));
  }
  return parsed;
}

class Cursor {
 public:
  explicit Cursor(const std::vector<Line>& lines) : lines_(lines) {}

  const Line& next(std::size_t expected_tokens, const char* what) {
    if (pos_ >= lines_.size()) {
      const std::size_t last = lines_.empty() ? 0 : lines_.back().number;
      throw ParseError(std::string("unexpected end of file, expected ") + what, last + 1);
    }
    const Line& line = lines_[pos_++];
    if (expected_tokens != 0 && line.tokens.size() != expected_tokens) {
      throw ParseError(std::string("expected ") + std::to_string(expected_tokens) +
                           " values for " + what + ", found " +
                           std::to_string(line.tokens.size()),
                       line.number);
    }
    return line;
  }

  void expect_end() const {
    if (pos_ < lines_.size()) {
      throw ParseError("unexpected trailing data", lines_[pos_].number);
    }
  }

 private:
  const std::vector<Line>& lines_;
  std::size_t pos_ = 0;
};

std::int64_t to_int(const std::string& tok, std::size_t line) {
  std::int64_t v = 0;
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ParseError("not an integer: '" + tok + "'", line);
  return v;
}

std::size_t to_size(const std::string& tok, std::size_t line, const char* what) {
  const auto v = to_int(tok, line);
  if (v < 0) throw ParseError(std::string(what) + " must be nonnegative", line);
  return static_cast<std::size_t>(v);
}

Matrix read_matrix(Cursor& cur, std::size_t n) {
  Matrix m;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& line = cur.next(n, "matrix row");
    std::vector<std::int64_t> row;
    for (const auto& tok : line.tokens) row.push_back(to_int(tok, line.number));
    m.push_back(std::move(row));
  }
  return m;
}

template <class F>
void validated(const Instance& inst, std::size_t line, F&&) {
  try {
    validate(inst);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), line);
  }
}

Instance parse_body(const ParsedText& parsed, InstanceType type) {
  Cursor cur(parsed.lines);
  Instance inst;
  std::size_t header_line = 0;
  switch (type) {
    case InstanceType::kp: {
      const auto& h = cur.next(3, "knapsack header 'd n W'");
      header_line = h.number;
      KPInstance kp;
      kp.d = to_size(h.tokens[0], h.number, "d");
      const auto n = to_size(h.tokens[1], h.number, "n");
      kp.capacity = to_int(h.tokens[2], h.number);
      for (std::size_t j = 0; j < n; ++j) {
        const auto& line = cur.next(kp.d + 1, "knapsack item 'weight p_1 ... p_d'");
        KPItem item;
        item.weight = to_int(line.tokens[0], line.number);
        for (std::size_t k = 0; k < kp.d; ++k) {
          item.profits.push_back(to_int(line.tokens[k + 1], line.number));
        }
        kp.items.push_back(std::move(item));
      }
      kp.metadata = parsed.metadata;
      inst = std::move(kp);
      break;
    }
    case InstanceType::ap: {
      const auto& h = cur.next(2, "assignment header 'd n'");
      header_line = h.number;
      APInstance ap;
      ap.d = to_size(h.tokens[0], h.number, "d");
      ap.n = to_size(h.tokens[1], h.number, "n");
      for (std::size_t k = 0; k < ap.d; ++k) ap.layers.push_back(read_matrix(cur, ap.n));
      ap.metadata = parsed.metadata;
      inst = std::move(ap);
      break;
    }
    case InstanceType::tsp: {
      const auto& h = cur.next(0, "TSP header 'd n' or 'd n M'");
      header_line = h.number;
      if (h.tokens.size() != 2 && !(h.tokens.size() == 3 && h.tokens[2] == "M")) {
        throw ParseError("expected TSP header 'd n' or 'd n M'", h.number);
      }
      TSPInstance tsp;
      tsp.d = to_size(h.tokens[0], h.number, "d");
      tsp.n = to_size(h.tokens[1], h.number, "n");
      if (h.tokens.size() == 3) {
        for (std::size_t k = 0; k < tsp.d; ++k) tsp.layers.push_back(read_matrix(cur, tsp.n));
      } else {
        tsp.coordinates.emplace();
        for (std::size_t k = 0; k < tsp.d; ++k) {
          std::vector<Coordinate> pts;
          for (std::size_t i = 0; i < tsp.n; ++i) {
            const auto& line = cur.next(2, "city coordinates 'x y'");
            pts.push_back({to_int(line.tokens[0], line.number), to_int(line.tokens[1], line.number)});
          }
          Matrix m(tsp.n, std::vector<std::int64_t>(tsp.n, 0));
          for (std::size_t i = 0; i < tsp.n; ++i) {
            for (std::size_t j = 0; j < tsp.n; ++j) m[i][j] = ceiled_distance(pts[i], pts[j]);
          }
          tsp.layers.push_back(std::move(m));
          tsp.coordinates->push_back(std::move(pts));
        }
      }
      tsp.metadata = parsed.metadata;
      inst = std::move(tsp);
      break;
    }
    case InstanceType::explicit_list: {
      const auto& h = cur.next(2, "explicit header 'd m'");
      header_line = h.number;
      ExplicitInstance ex;
      ex.d = to_size(h.tokens[0], h.number, "d");
      const auto m = to_size(h.tokens[1], h.number, "m");
      for (std::size_t i = 0; i < m; ++i) {
        const auto& line = cur.next(ex.d, "image row");
        Point y;
        for (const auto& tok : line.tokens) {
          try {
            y.push_back(parse_scalar(tok));
          } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), line.number);
          }
        }
        ex.images.push_back(std::move(y));
      }
      try {
        ex.senses = parsed.orientation ? parse_orientation(*parsed.orientation)
                                       : Orientation::all_min(std::max<std::size_t>(ex.d, 1));
      } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), header_line);
      }
      ex.metadata = parsed.metadata;
      inst = std::move(ex);
      break;
    }
  }
  cur.expect_end();
  validated(inst, header_line, 0);
  return inst;
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "# type=" << to_string(type_of(inst)) << '\n';
  const auto& meta = std::visit([](const auto& i) -> const Metadata& { return i.metadata; }, inst);
  for (const auto& [key, value] : meta) out << "# " << key << '=' << value << '\n';
  if (const auto* ex = std::get_if<ExplicitInstance>(&inst)) {
    out << "# orientation=" << to_string(ex->senses) << '\n';
  }
  out << serialize_body(inst);
  return out.str();
}

Instance parse_instance(const std::string& text, std::optional<InstanceType> type) {
  const auto parsed = split_lines(text);
  if (!type) {
    if (!parsed.type) throw ParseError("instance type unknown: no '# type=' line", 1);
    try {
      type = parse_instance_type(*parsed.type);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), 1);
    }
  }
  return parse_body(parsed, *type);
}

Instance read_instance(const std::filesystem::path& path, std::optional<InstanceType> type) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open instance file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (!type && !split_lines(text).type) {
    const auto ext = path.extension().string();
    if (ext == ".kp") type = InstanceType::kp;
    else if (ext == ".ap") type = InstanceType::ap;
    else if (ext == ".tsp") type = InstanceType::tsp;
    else if (ext == ".explicit") type = InstanceType::explicit_list;
  }
  return parse_instance(text, type);
}

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write instance file " + path.string());
  out << serialize_instance(inst);
  if (!out) throw Error("failed writing " + path.string());
}

std::string summary(const Instance& inst) {
  std::ostringstream out;
  std::visit(overloaded{[&](const KPInstance& kp) {
                          out << "kp d=" << kp.d << " n=" << kp.items.size()
                              << " capacity=" << kp.capacity;
                        },
                        [&](const APInstance& ap) { out << "ap d=" << ap.d << " n=" << ap.n; },
                        [&](const TSPInstance& tsp) {
                          out << "tsp d=" << tsp.d << " n=" << tsp.n
                              << (tsp.coordinates ? " coordinates" : " matrices");
                        },
                        [&](const ExplicitInstance& ex) {
                          out << "explicit d=" << ex.d << " m=" << ex.images.size()
                              << " orientation=" << to_string(ex.senses);
                        }},
             inst);
  return out.str();
}

std::string fingerprint(const Instance& inst) {
  std::string body = to_string(type_of(inst)) + "\n" + serialize_body(inst);
  if (const auto* ex = std::get_if<ExplicitInstance>(&inst)) body += to_string(ex->senses);
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : body) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

}  // namespace innerapx
