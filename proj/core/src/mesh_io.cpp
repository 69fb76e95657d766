#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include "json.hpp"

#include "dconn/error.hpp"
#include "dconn/mesh.hpp"

namespace dconn {

namespace {

using nlohmann::json;

// Next non-empty line with comments stripped.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

[[noreturn]] void parse_error(const std::string& what) { throw Error(Errc::ParseError, what); }

int as_index(const json& j, const char* what) {
  if (!j.is_number_integer()) parse_error(std::string(what) + " must be an integer");
  return j.get<int>();
}

double as_real(const json& j, const char* what) {
  if (!j.is_number()) parse_error(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

EmbeddedMesh read_off(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) parse_error("empty OFF input");
  std::istringstream header(line);
  std::string magic;
  header >> magic;
  if (magic != "OFF") parse_error("missing OFF header");
  int nv = -1, nf = -1, ne = 0;
  if (!(header >> nv)) {
    if (!next_line(in, line)) parse_error("missing OFF counts");
    std::istringstream counts(line);
    if (!(counts >> nv >> nf >> ne)) parse_error("malformed OFF counts");
  } else if (!(header >> nf >> ne)) {
    parse_error("malformed OFF counts");
  }
  if (nv < 0 || nf < 0) parse_error("negative OFF counts");

  EmbeddedMesh mesh;
  mesh.positions.reserve(nv);
  for (int i = 0; i < nv; ++i) {
    if (!next_line(in, line)) parse_error("OFF ends before vertex " + std::to_string(i));
    std::istringstream s(line);
    double x, y, z;
    if (!(s >> x >> y >> z)) parse_error("malformed OFF vertex " + std::to_string(i));
    mesh.positions.emplace_back(x, y, z);
  }
  mesh.triangles.reserve(nf);
  for (int f = 0; f < nf; ++f) {
    if (!next_line(in, line)) parse_error("OFF ends before face " + std::to_string(f));
    std::istringstream s(line);
    int count;
    Triangle t;
    if (!(s >> count)) parse_error("malformed OFF face " + std::to_string(f));
    if (count != 3) {
      throw Error(Errc::InvalidComplex, "OFF face " + std::to_string(f) + " has " +
                                            std::to_string(count) + " vertices; only triangles are supported");
    }
    if (!(s >> t[0] >> t[1] >> t[2])) parse_error("malformed OFF face " + std::to_string(f));
    mesh.triangles.push_back(t);
  }
  return mesh;
}

void write_off(std::ostream& out, const EmbeddedMesh& mesh) {
  out << "OFF\n" << mesh.positions.size() << ' ' << mesh.triangles.size() << " 0\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& p : mesh.positions) out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

MetricComplex parse_complex_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_error("complex document must be an object");
  if (!doc.contains("vertices") || !doc.contains("triangles")) {
    parse_error("complex needs 'vertices' and 'triangles'");
  }
  const int nv = as_index(doc["vertices"], "vertices");
  if (!doc["triangles"].is_array()) parse_error("'triangles' must be an array");
  std::vector<Triangle> triangles;
  for (const auto& t : doc["triangles"]) {
    if (!t.is_array() || t.size() != 3) parse_error("each triangle needs three vertex indices");
    triangles.push_back({as_index(t[0], "vertex index"), as_index(t[1], "vertex index"),
                         as_index(t[2], "vertex index")});
  }
  std::map<EdgeKey, double> lengths;
  if (doc.contains("edge_lengths")) {
    if (!doc["edge_lengths"].is_array()) parse_error("'edge_lengths' must be an array");
    for (const auto& e : doc["edge_lengths"]) {
      if (!e.is_array() || e.size() != 3) parse_error("each edge length needs [a, b, length]");
      const int a = as_index(e[0], "edge vertex");
      const int b = as_index(e[1], "edge vertex");
      if (a == b) throw Error(Errc::InvalidComplex, "degenerate edge in edge_lengths");
      if (!lengths.emplace(edge_key(a, b), as_real(e[2], "edge length")).second) {
        throw Error(Errc::InvalidComplex, "duplicate edge in edge_lengths");
      }
    }
  }
  auto read_list = [&](const char* key, std::size_t width) {
    std::vector<std::vector<double>> rows;
    if (!doc[key].is_array()) parse_error(std::string("'") + key + "' must be an array");
    for (const auto& r : doc[key]) {
      if (!r.is_array() || r.size() != width) {
        parse_error(std::string("each entry of '") + key + "' needs " + std::to_string(width) +
                    " numbers");
      }
      std::vector<double> row;
      for (const auto& x : r) row.push_back(as_real(x, key));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  std::vector<Eigen::Matrix2d> metrics;
  if (doc.contains("metrics")) {
    for (const auto& r : read_list("metrics", 3)) {
      Eigen::Matrix2d g;
      g << r[0], r[1], r[1], r[2];
      metrics.push_back(g);
    }
  }

  if (doc.contains("charts")) {
    if (metrics.empty()) parse_error("'charts' require 'metrics'");
    std::vector<Chart> charts;
    for (const auto& r : read_list("charts", 6)) {
      Chart c;
      c << r[0], r[2], r[4], r[1], r[3], r[5];
      charts.push_back(c);
    }
    return MetricComplex::from_charts(nv, std::move(triangles), std::move(charts),
                                      std::move(metrics), std::move(lengths));
  }
  if (!metrics.empty()) {
    return MetricComplex::from_metrics(nv, std::move(triangles), std::move(metrics),
                                       std::move(lengths));
  }
  if (lengths.empty()) parse_error("complex needs 'edge_lengths', 'metrics' or 'charts'");
  return MetricComplex::from_edge_lengths(nv, std::move(triangles), std::move(lengths));
}

std::string serialize_complex_json(const MetricComplex& k) {
  json doc;
  doc["vertices"] = k.vertex_count();
  json tris = json::array();
  for (const auto& t : k.triangles()) tris.push_back({t[0], t[1], t[2]});
  doc["triangles"] = std::move(tris);
  json lengths = json::array();
  for (const auto& [key, len] : k.edge_lengths()) lengths.push_back({key.first, key.second, len});
  doc["edge_lengths"] = std::move(lengths);
  if (k.source() != MetricSource::EdgeLengths) {
    json metrics = json::array();
    for (int t = 0; t < k.triangle_count(); ++t) {
      const auto& g = k.metric(t);
      metrics.push_back({g(0, 0), g(0, 1), g(1, 1)});
    }
    doc["metrics"] = std::move(metrics);
  }
  if (k.source() == MetricSource::Charts) {
    json charts = json::array();
    for (int t = 0; t < k.triangle_count(); ++t) {
      const auto& c = k.chart(t);
      charts.push_back({c(0, 0), c(1, 0), c(0, 1), c(1, 1), c(0, 2), c(1, 2)});
    }
    doc["charts"] = std::move(charts);
  }
  return doc.dump(1) + "\n";
}

MetricComplex load_complex(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open mesh file " + path.string());
  const auto ext = path.extension().string();
  if (ext == ".off" || ext == ".OFF") return complex_from_embedding(read_off(in));
  if (ext == ".json") {
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_complex_json(ss.str());
  }
  parse_error("unsupported mesh extension '" + ext + "' (expected .off or .json)");
}

}  // namespace dconn
