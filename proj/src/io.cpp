#include "delk/io.hpp"

#include <cstdio>
#include <fstream>

namespace delk {

using nlohmann::json;

namespace {

json gauge_entry(const PointConfiguration& cfg, int v) {
  if (cfg.is_infinite(v)) return "inf";
  const Point p = cfg.at(v);
  if (p.imag() == 0.0) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", p.real());
    return std::string(buf);
  }
  return json::array({p.real(), p.imag()});
}

std::optional<Point> parse_gauge_entry(const json& e) {
  if (e.is_string()) {
    const std::string s = e.get<std::string>();
    if (s == "inf") return std::nullopt;
    return Point(std::stod(s), 0.0);
  }
  if (e.is_number()) return Point(e.get<double>(), 0.0);
  if (e.is_array() && e.size() == 2)
    return Point(e[0].get<double>(), e[1].get<double>());
  throw GeomError("config json: bad gauge entry");
}

}  // namespace

json config_to_json(const PointConfiguration& cfg) {
  if (cfg.gauge() != std::array<int, 3>{0, 1, 2})
    throw GeomError("config json: only the canonical gauge layout (ids "
                    "0,1,2) serializes");
  json j;
  j["gauge"] = json::array(
      {gauge_entry(cfg, 0), gauge_entry(cfg, 1), gauge_entry(cfg, 2)});
  json free = json::array();
  for (int v = 3; v < cfg.size(); ++v)
    free.push_back(json::array({cfg.at(v).real(), cfg.at(v).imag()}));
  j["free"] = free;
  return j;
}

PointConfiguration config_from_json(const json& j) {
  if (!j.contains("gauge") || !j.contains("free"))
    throw GeomError("config json: missing gauge/free");
  const json& g = j["gauge"];
  if (!g.is_array() || g.size() != 3)
    throw GeomError("config json: gauge must have three entries");
  std::vector<std::optional<Point>> pts;
  for (int i = 0; i < 3; ++i) pts.push_back(parse_gauge_entry(g[i]));
  for (const auto& e : j["free"]) {
    if (!e.is_array() || e.size() != 2)
      throw GeomError("config json: free points are [x, y] pairs");
    pts.emplace_back(Point(e[0].get<double>(), e[1].get<double>()));
  }
  return PointConfiguration(std::move(pts), {0, 1, 2});
}

json triangulation_to_json(const Triangulation& t) {
  const auto& cfg = t.config();
  json j;
  json verts = json::array();
  for (int v = 0; v < cfg.size(); ++v) {
    if (cfg.is_infinite(v)) verts.push_back("inf");
    else verts.push_back(json::array({cfg.at(v).real(), cfg.at(v).imag()}));
  }
  j["vertices"] = verts;
  auto vertex_entry = [&](int v) -> json {
    if (cfg.is_infinite(v)) return "inf";
    return v;
  };
  json faces = json::array();
  for (int f = 0; f < t.face_count(); ++f) {
    const auto v = t.face_vertices(f);
    faces.push_back(
        json::array({vertex_entry(v[0]), vertex_entry(v[1]), vertex_entry(v[2])}));
  }
  j["faces"] = faces;
  json edges = json::array();
  for (int h : t.edges()) {
    json e;
    e["v"] = json::array({vertex_entry(t.origin(h)), vertex_entry(t.dest(h))});
    e["theta"] = t.edge_theta(h);
    edges.push_back(e);
  }
  j["edges"] = edges;
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeomError("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw GeomError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace delk
