#include "innerapx/io.hpp"

#include "innerapx/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace innerapx {

namespace {

using nlohmann::json;

json point_json(const Point& p) {
  json a = json::array();
  for (const auto& x : p) a.push_back(to_string(x));
  return a;
}

Point point_from(const json& j) {
  Point p;
  for (const auto& x : j) p.push_back(parse_scalar(x.get<std::string>()));
  return p;
}

json halfspace_json(const Halfspace& h) { return {{"w", point_json(h.w)}, {"c", to_string(h.c)}}; }

Halfspace halfspace_from(const json& j) {
  return Halfspace{point_from(j.at("w")), parse_scalar(j.at("c").get<std::string>())};
}

json solution_json(const Solution& s) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ItemSubset>) return {{"items", v.items}};
        if constexpr (std::is_same_v<T, Assignment>) return {{"perm", v.perm}};
        if constexpr (std::is_same_v<T, Tour>) return {{"tour", v.order}};
        if constexpr (std::is_same_v<T, ImageIndex>) return {{"image", v.index}};
      },
      s);
}

Solution solution_from(const json& j) {
  if (j.contains("items")) return ItemSubset{j.at("items").get<std::vector<std::size_t>>()};
  if (j.contains("perm")) return Assignment{j.at("perm").get<std::vector<std::size_t>>()};
  if (j.contains("tour")) return Tour{j.at("tour").get<std::vector<std::size_t>>()};
  if (j.contains("image")) return ImageIndex{j.at("image").get<std::size_t>()};
  throw ParseError("unknown solution kind", 0);
}

}  // namespace

RunFile make_run_file(const RunResult& result, bool postprocessed) {
  RunFile run;
  run.quality = result.quality;
  run.spec = result.spec;
  run.complete = result.complete;
  run.discovered = result.images;
  const RunResult r = postprocessed ? postprocess(result) : result;
  run.solutions = r.solutions;
  run.images = r.images;
  run.vertices = result.polyhedron.vertices();
  run.facets = result.polyhedron.facets();
  run.trace = result.trace;
  run.stats = result.stats;
  return run;
}

std::string run_to_json(const RunFile& run) {
  json j;
  j["instance"] = {{"path", run.instance_path}, {"type", run.instance_type}, {"fingerprint", run.fingerprint}};
  j["oracle"] = run.oracle;
  j["alpha"] = to_string(run.quality.alpha);
  j["alpha_sense"] = to_string(run.quality.sense);
  j["eps"] = run.eps_text;
  j["eps_per_objective"] = point_json(run.spec.eps());
  j["orientation"] = to_string(run.spec.orientation());
  j["complete"] = run.complete;
  j["grid_p"] = run.grid_p;

  json sols = json::array();
  for (const auto& s : run.solutions) sols.push_back(solution_json(s));
  j["solutions"] = sols;
  json imgs = json::array();
  for (const auto& y : run.images) imgs.push_back(point_json(y));
  j["images"] = imgs;
  json disc = json::array();
  for (const auto& y : run.discovered) disc.push_back(point_json(y));
  j["discovered"] = disc;
  json verts = json::array();
  for (const auto& v : run.vertices) verts.push_back(point_json(v));
  j["vertices"] = verts;
  json facets = json::array();
  for (const auto& f : run.facets) facets.push_back(halfspace_json(f));
  j["facets"] = facets;

  json trace = json::array();
  for (const auto& rec : run.trace) {
    json t;
    t["query"] = halfspace_json(rec.query);
    t["scaled"] = halfspace_json(rec.scaled);
    t["answer"] = rec.status == OracleStatus::inside ? "inside" : "not_inside";
    if (rec.solution_index) t["solution"] = *rec.solution_index;
    if (rec.image) t["image"] = point_json(*rec.image);
    trace.push_back(t);
  }
  j["trace"] = trace;
  j["stats"] = {{"iterations", run.stats.iterations},
                {"oracle_calls", run.stats.oracle_calls},
                {"wall_ms", run.stats.wall_ms}};
  return j.dump(2) + "\n";
}

RunFile run_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunFile run;
    run.instance_path = j.at("instance").at("path").get<std::string>();
    run.instance_type = j.at("instance").at("type").get<std::string>();
    run.fingerprint = j.at("instance").at("fingerprint").get<std::string>();
    run.oracle = j.at("oracle").get<std::string>();
    run.quality.alpha = parse_scalar(j.at("alpha").get<std::string>());
    run.quality.sense = j.at("alpha_sense").get<std::string>() == "max" ? Sense::max : Sense::min;
    run.eps_text = j.at("eps").get<std::string>();
    run.spec = EpsilonSpec(parse_orientation(j.at("orientation").get<std::string>()),
                           point_from(j.at("eps_per_objective")));
    run.complete = j.at("complete").get<bool>();
    run.grid_p = j.at("grid_p").get<std::size_t>();
    for (const auto& s : j.at("solutions")) run.solutions.push_back(solution_from(s));
    for (const auto& y : j.at("images")) run.images.push_back(point_from(y));
    for (const auto& y : j.at("discovered")) run.discovered.push_back(point_from(y));
    for (const auto& v : j.at("vertices")) run.vertices.push_back(point_from(v));
    for (const auto& f : j.at("facets")) run.facets.push_back(halfspace_from(f));
    for (const auto& t : j.at("trace")) {
      OracleCallRecord rec;
      rec.query = halfspace_from(t.at("query"));
      rec.scaled = halfspace_from(t.at("scaled"));
      rec.status = t.at("answer").get<std::string>() == "inside" ? OracleStatus::inside
                                                                 : OracleStatus::not_inside;
      if (t.contains("solution")) rec.solution_index = t.at("solution").get<std::size_t>();
      if (t.contains("image")) rec.image = point_from(t.at("image"));
      run.trace.push_back(std::move(rec));
    }
    const auto& stats = j.at("stats");
    run.stats.iterations = stats.at("iterations").get<std::size_t>();
    run.stats.oracle_calls = stats.at("oracle_calls").get<std::size_t>();
    run.stats.wall_ms = stats.at("wall_ms").get<double>();
    return run;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed run document: ") + e.what(), 0);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("malformed run document: ") + e.what(), 0);
  }
}

RunFile read_run(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open run file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return run_from_json(buf.str());
}

void write_run(const RunFile& run, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write run file " + path.string());
  out << run_to_json(run);
  if (!out) throw Error("failed writing " + path.string());
}

std::string polyhedron_to_json(const Polyhedron& poly) {
  json verts = json::array();
  for (const auto& v : poly.vertices()) verts.push_back(point_json(v));
  json facets = json::array();
  for (const auto& f : poly.facets()) facets.push_back(halfspace_json(f));
  return json{{"vertices", verts}, {"facets", facets}}.dump() + "\n";
}

}  // namespace innerapx
