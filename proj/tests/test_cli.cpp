#include "doctest.h"
#include "support.hpp"

#include "innerapx/cli.hpp"
#include "innerapx/errors.hpp"
#include "innerapx/io.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace innerapx;
using namespace innerapx::testing;
namespace fs = std::filesystem;

namespace {

struct Sandbox {
  fs::path dir;
  Sandbox() {
    std::random_device rd;
    dir = fs::temp_directory_path() / ("innerapx_cli_" + std::to_string(rd()));
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  std::string operator()(const std::string& name) const { return (dir / name).string(); }
};

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    rows.push_back(cols);
  }
  return rows;
}

std::string column(const std::vector<std::vector<std::string>>& rows, std::size_t row, const std::string& name) {
  const auto& header = rows.at(0);
  const auto it = std::find(header.begin(), header.end(), name);
  REQUIRE(it != header.end());
  return rows.at(row).at(static_cast<std::size_t>(it - header.begin()));
}

void write_toy(const std::string& path) {
  std::ofstream(path) << "# type=explicit\n2 3\n1 4\n2 2\n4 1\n";
}

std::string strip_timing(const std::string& json) {
  std::istringstream in(json);
  std::string out;
  for (std::string line; std::getline(in, line);) {
    if (line.find("wall_ms") == std::string::npos) out += line + "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("generate") {
  Sandbox sb;
  auto r = cli({"generate", "--type", "kp", "--n", "50", "--d", "3", "--seed", "1", "--mode", "uniform", "-o",
                sb("kp50.txt")});
  CHECK(r.code == 0);
  CHECK(r.out.find("kp") != std::string::npos);
  const auto kp = read_instance(sb("kp50.txt"));
  CHECK(dimension(kp) == 3);
  CHECK(std::get<KPInstance>(kp).items.size() == 50);

  r = cli({"generate", "--type", "ap", "--n", "3", "--d", "3", "--seed", "7", "-o", sb("ap3.txt")});
  CHECK(r.code == 0);
  CHECK(dimension(read_instance(sb("ap3.txt"))) == 3);

  CHECK(cli({"generate", "--type", "kp", "--n", "0", "--d", "3", "-o", sb("x.txt")}).code == kExitUsage);
  CHECK(cli({"generate", "--type", "lp", "--n", "3"}).code == kExitUsage);
  CHECK(cli({"generate", "--n", "3"}).code == kExitUsage);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == 0);

  // same seed, same file
  cli({"generate", "--type", "tsp", "--n", "6", "--d", "2", "--seed", "3", "-o", sb("t1.tsp")});
  cli({"generate", "--type", "tsp", "--n", "6", "--d", "2", "--seed", "3", "-o", sb("t2.tsp")});
  std::ifstream a(sb("t1.tsp")), b(sb("t2.tsp"));
  CHECK(std::string(std::istreambuf_iterator<char>(a), {}) == std::string(std::istreambuf_iterator<char>(b), {}));
}

TEST_CASE("solve") {
  Sandbox sb;
  cli({"generate", "--type", "kp", "--n", "50", "--d", "3", "--seed", "1", "-o", sb("kp50.txt")});
  auto r = cli({"solve", sb("kp50.txt"), "--eps", "0.1", "--oracle", "extgreedy", "-o", sb("run.json")});
  CHECK(r.code == 0);
  const RunFile run = read_run(sb("run.json"));
  CHECK(run.quality.alpha == q(1, 2));
  CHECK(run.complete);
  CHECK(run.oracle == "extgreedy");

  // exact mode on AP n=3 gives the brute-force extreme images
  cli({"generate", "--type", "ap", "--n", "3", "--d", "3", "--seed", "7", "-o", sb("ap3.txt")});
  r = cli({"solve", sb("ap3.txt"), "--eps", "0", "--oracle", "hungarian", "-o", sb("ap0.json")});
  CHECK(r.code == 0);
  const auto ap = read_instance(sb("ap3.txt"));
  const auto expected = brute_force_vertices(enumerate_images(ap), orientation(ap));
  CHECK(sorted_points(read_run(sb("ap0.json")).images) == expected);

  write_toy(sb("toy.explicit"));
  r = cli({"solve", sb("toy.explicit"), "--eps", "1", "--oracle", "exact", "-o", sb("toy1.json")});
  CHECK(r.code == 0);
  CHECK(read_run(sb("toy1.json")).images.size() == 1);

  // stdout when no -o
  r = cli({"solve", sb("toy.explicit"), "--eps", "1"});
  CHECK(r.code == 0);
  CHECK(run_from_json(r.out).images.size() == 1);

  CHECK(cli({"solve", sb("missing.txt"), "--eps", "1"}).code == kExitUsage);
  CHECK(cli({"solve", sb("toy.explicit"), "--eps", "-1"}).code == kExitUsage);
  CHECK(cli({"solve", sb("toy.explicit"), "--eps", "0.1,0.2,0.3"}).code == kExitUsage);
  CHECK(cli({"solve", sb("toy.explicit"), "--eps", "abc"}).code == kExitUsage);
  CHECK(cli({"solve", sb("toy.explicit"), "--eps", "1", "--oracle", "hungarian"}).code == kExitUsage);
  CHECK(cli({"solve", sb("toy.explicit")}).code == kExitUsage);
  std::ofstream(sb("bad.kp")) << "3 2 10\n1 2\n";
  CHECK(cli({"solve", sb("bad.kp"), "--eps", "1"}).code == kExitUsage);
}

TEST_CASE("solve is reproducible and honours limits") {
  Sandbox sb;
  cli({"generate", "--type", "kp", "--n", "50", "--d", "3", "--seed", "1", "-o", sb("kp50.txt")});
  const auto a = cli({"solve", sb("kp50.txt"), "--eps", "0.05", "--oracle", "extgreedy"});
  const auto b = cli({"solve", sb("kp50.txt"), "--eps", "0.05", "--oracle", "extgreedy"});
  CHECK(a.code == 0);
  CHECK(strip_timing(a.out) == strip_timing(b.out));

  const auto p = cli({"solve", sb("kp50.txt"), "--eps", "0", "--max-iterations", "1", "-o", sb("p.json")});
  CHECK(p.code == kExitPartial);
  const RunFile partial = read_run(sb("p.json"));
  CHECK_FALSE(partial.complete);
  CHECK(partial.discovered.size() == 2);

  const auto t = cli({"solve", sb("kp50.txt"), "--eps", "0", "--time-limit", "0", "-o", sb("t.json")});
  CHECK(t.code == kExitPartial);
  CHECK_FALSE(read_run(sb("t.json")).complete);
}

TEST_CASE("evaluate") {
  Sandbox sb;
  write_toy(sb("toy.explicit"));
  cli({"solve", sb("toy.explicit"), "--eps", "1", "-o", sb("toy1.json")});
  cli({"solve", sb("toy.explicit"), "--eps", "0", "-o", sb("toy0.json")});

  auto r = cli({"evaluate", sb("toy1.json"), sb("toy0.json"), "--reference", sb("toy.explicit"), "--check-grid"});
  CHECK(r.code == 0);
  auto rows = csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == std::vector<std::string>{"instance", "eps", "alpha", "r", "r_star", "eps_indicator", "ce", "me",
                                            "hvr", "rr", "wall_ms", "grid_ok"});
  CHECK(column(rows, 1, "eps_indicator") == "2");
  CHECK(column(rows, 1, "r") == "1");
  CHECK(column(rows, 1, "r_star") == "3");
  CHECK(column(rows, 1, "ce") == "0.666667");
  CHECK(column(rows, 1, "hvr") == "0.818182");
  CHECK(column(rows, 1, "rr") == "0");
  CHECK(column(rows, 1, "grid_ok") == "true");
  CHECK(column(rows, 2, "eps_indicator") == "1");
  CHECK(column(rows, 2, "grid_ok") == "true");

  // a run as its own reference
  r = cli({"evaluate", sb("toy0.json"), "--reference", sb("toy0.json")});
  rows = csv(r.out);
  CHECK(column(rows, 1, "eps_indicator") == "1");
  CHECK(column(rows, 1, "ce") == "0");

  // parallel evaluation keeps input order
  const auto serial = cli({"evaluate", sb("toy1.json"), sb("toy0.json"), sb("toy1.json"), "--reference",
                           sb("toy.explicit")});
  const auto parallel = cli({"evaluate", sb("toy1.json"), sb("toy0.json"), sb("toy1.json"), "--reference",
                             sb("toy.explicit"), "--jobs", "3"});
  CHECK(serial.out == parallel.out);

  // single-point reference: range metrics undefined
  std::ofstream(sb("one.explicit")) << "# type=explicit\n2 1\n3 3\n";
  cli({"solve", sb("one.explicit"), "--eps", "0", "-o", sb("one.json")});
  rows = csv(cli({"evaluate", sb("one.json"), "--reference", sb("one.explicit")}).out);
  CHECK(column(rows, 1, "ce") == "NA");
  CHECK(column(rows, 1, "hvr") == "1");

  CHECK(cli({"evaluate", sb("toy1.json")}).code == kExitUsage);
  CHECK(cli({"evaluate", sb("toy1.json"), "--reference", sb("nope.json")}).code == kExitUsage);
  CHECK(cli({"evaluate", sb("one.json"), "--reference", sb("toy.explicit")}).code == kExitUsage);
}

TEST_CASE("compare") {
  Sandbox sb;
  cli({"generate", "--type", "kp", "--n", "12", "--d", "3", "--seed", "5", "-o", sb("kp.txt")});
  cli({"solve", sb("kp.txt"), "--eps", "0.1", "--oracle", "extgreedy", "-o", sb("a.json")});
  cli({"solve", sb("kp.txt"), "--eps", "0.5", "--oracle", "extgreedy", "-o", sb("b.json")});
  cli({"solve", sb("kp.txt"), "--eps", "0", "--oracle", "bruteforce", "-o", sb("ref.json")});

  auto r = cli({"compare", sb("a.json"), sb("b.json"), "--reference", sb("ref.json")});
  CHECK(r.code == 0);
  auto rows = csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == std::vector<std::string>{"run", "r", "eps_indicator", "wall_ms", "ratio"});
  CHECK(std::stoul(column(rows, 2, "r")) <= std::stoul(column(rows, 1, "r")));

  // ratio = |R| / |R*|
  const auto r_star = read_run(sb("ref.json")).images.size();
  const auto ra = read_run(sb("a.json")).images.size();
  const double ratio = static_cast<double>(ra) / static_cast<double>(r_star);
  CHECK(std::stod(column(rows, 1, "ratio")) == doctest::Approx(ratio).epsilon(1e-5));

  // identical runs, identical columns apart from the path
  rows = csv(cli({"compare", sb("a.json"), sb("a.json"), "--reference", sb("ref.json")}).out);
  CHECK(std::vector(rows[1].begin() + 1, rows[1].end()) == std::vector(rows[2].begin() + 1, rows[2].end()));

  write_toy(sb("toy.explicit"));
  cli({"solve", sb("toy.explicit"), "--eps", "1", "-o", sb("toy.json")});
  CHECK(cli({"compare", sb("a.json"), sb("toy.json"), "--reference", sb("ref.json")}).code == kExitUsage);
  CHECK(cli({"compare", sb("a.json"), sb("b.json"), "--reference", sb("toy.explicit")}).code == kExitUsage);
}

TEST_CASE("exit codes for exceptions") {
  CHECK(exit_code_for(OracleContractError("lying oracle")) == kExitContract);
  CHECK(exit_code_for(ParseError("bad", 3)) == kExitUsage);
  CHECK(exit_code_for(DimensionMismatch("d")) == kExitUsage);
  CHECK(exit_code_for(std::runtime_error("io")) == kExitUsage);
}
