/**
 * @file io.hpp
 * @brief JSON documents for runs and polyhedra.
 *
 * Rationals are written as "num/den" strings so that files round-trip
 * exactly. Keys are emitted in sorted order; apart from stats.wall_ms a
 * document depends only on the instance and the run options.
 */

#ifndef INNERAPX_IO_HPP
#define INNERAPX_IO_HPP

#include "innerapx/core.hpp"
#include "innerapx/instances.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace innerapx {

/// Everything a solve writes and evaluate/compare read back.
struct RunFile {
  std::string instance_path;
  std::string instance_type;
  std::string fingerprint;
  std::string oracle;
  OracleQuality quality;
  /// The epsilon as requested on the command line.
  std::string eps_text;
  EpsilonSpec spec;
  bool complete = false;

  /// R after post-processing (the whole R when the run was not
  /// post-processed).
  std::vector<Solution> solutions;
  std::vector<Point> images;
  /// Every image in discovery order, before post-processing.
  std::vector<Point> discovered;

  std::vector<Point> vertices;
  std::vector<Halfspace> facets;
  std::vector<OracleCallRecord> trace;
  RunStats stats;
  std::size_t grid_p = 1;
};

/// Builds the document; `result` is the raw run, R is post-processed when
/// `postprocessed` is true.
RunFile make_run_file(const RunResult& result, bool postprocessed);

std::string run_to_json(const RunFile& run);
/// Throws ParseError on malformed documents.
RunFile run_from_json(const std::string& text);

RunFile read_run(const std::filesystem::path& path);
void write_run(const RunFile& run, const std::filesystem::path& path);

/// {"vertices": [["num/den", ...]], "facets": [{"w": [...], "c": "..."}]}
std::string polyhedron_to_json(const Polyhedron& poly);

}  // namespace innerapx

#endif  // INNERAPX_IO_HPP
