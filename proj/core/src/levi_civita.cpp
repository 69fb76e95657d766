#include "dconn/levi_civita.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "dconn/error.hpp"
#include "dconn/parallel.hpp"

namespace dconn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kParallelTolerance = 1e-14;

Chart affine_chart() {
  Chart c;
  c << 0.0, 1.0, 0.0, 0.0, 0.0, 1.0;
  return c;
}

std::string edge_name(int a, int b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

Eigen::Matrix2d rotation(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

GroupElement so2(const Eigen::Matrix2d& r) { return GroupElement::from_matrix(Group::so2(), r); }

// Rotation taking unit u to unit v.
Eigen::Matrix2d rotation_between(const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
  if ((u - v).norm() <= kParallelTolerance) return Eigen::Matrix2d::Identity();
  return rotation(std::atan2(u.x() * v.y() - u.y() * v.x(), u.dot(v)));
}

// Outward normal across local edge i in orthonormal coordinates y.
Eigen::Vector2d outward(const Chart& y, int i) {
  const Eigen::Vector2d e = y.col((i + 1) % 3) - y.col(i);
  return Eigen::Vector2d(e.y(), -e.x()).normalized();
}

void check_triangle_index(const MetricComplex& k, int t) {
  if (t < 0 || t >= k.triangle_count()) {
    throw Error(Errc::InvalidArgument, "triangle index " + std::to_string(t) + " out of range");
  }
}

void check_vertex_index(const MetricComplex& k, int v) {
  if (v < 0 || v >= k.vertex_count()) {
    throw Error(Errc::InvalidArgument, "vertex index " + std::to_string(v) + " out of range");
  }
}

int facet_index(const MetricComplex& k, int t, int a, int b) {
  check_triangle_index(k, t);
  const int i = k.local_edge(t, a, b);
  if (i < 0) {
    throw Error(Errc::NotAFacet, edge_name(a, b) + " is not an edge of triangle " +
                                     std::to_string(t));
  }
  return i;
}

Eigen::Matrix2d compute_element(const MetricComplex& k, int t, int i) {
  const int s = k.neighbor(t, i);
  const Triangle& tri = k.triangle(t);
  const int j = k.local_edge(s, tri[(i + 1) % 3], tri[i]);
  const Eigen::Vector2d n_from = outward(k.orthonormal_coords(t), i);
  const Eigen::Vector2d n_to = -outward(k.orthonormal_coords(s), j);
  return rotation_between(n_from, n_to);
}

}  // namespace

EdgeKey edge_key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

// ---------------------------------------------------------------------------
// MetricComplex

MetricComplex MetricComplex::from_edge_lengths(int vertex_count, std::vector<Triangle> triangles,
                                               std::map<EdgeKey, double> edge_lengths) {
  MetricComplex k;
  k.vertex_count_ = vertex_count;
  k.source_ = MetricSource::EdgeLengths;
  k.triangles_ = std::move(triangles);
  for (const auto& [e, len] : edge_lengths) {
    if (!(len > 0.0) || !std::isfinite(len)) {
      throw Error(Errc::InvalidComplex, "edge " + edge_name(e.first, e.second) +
                                            " has non-positive length");
    }
  }
  for (std::size_t t = 0; t < k.triangles_.size(); ++t) {
    const Triangle& tri = k.triangles_[t];
    auto length = [&](int a, int b) {
      auto it = edge_lengths.find(edge_key(a, b));
      if (it == edge_lengths.end()) {
        throw Error(Errc::InvalidComplex, "missing length for edge " + edge_name(a, b));
      }
      return it->second;
    };
    const double l01 = length(tri[0], tri[1]);
    const double l02 = length(tri[0], tri[2]);
    const double l12 = length(tri[1], tri[2]);
    Eigen::Matrix2d g;
    g(0, 0) = l01 * l01;
    g(1, 1) = l02 * l02;
    g(0, 1) = g(1, 0) = 0.5 * (l01 * l01 + l02 * l02 - l12 * l12);
    k.charts_.push_back(affine_chart());
    k.metrics_.push_back(g);
  }
  k.build(&edge_lengths);
  return k;
}

MetricComplex MetricComplex::from_metrics(int vertex_count, std::vector<Triangle> triangles,
                                          std::vector<Eigen::Matrix2d> metrics,
                                          std::map<EdgeKey, double> edge_lengths) {
  if (metrics.size() != triangles.size()) {
    throw Error(Errc::InvalidComplex, "need exactly one metric per triangle");
  }
  MetricComplex k;
  k.vertex_count_ = vertex_count;
  k.source_ = MetricSource::Metrics;
  k.triangles_ = std::move(triangles);
  k.charts_.assign(k.triangles_.size(), affine_chart());
  k.metrics_ = std::move(metrics);
  k.build(edge_lengths.empty() ? nullptr : &edge_lengths);
  return k;
}

MetricComplex MetricComplex::from_charts(int vertex_count, std::vector<Triangle> triangles,
                                         std::vector<Chart> charts,
                                         std::vector<Eigen::Matrix2d> metrics,
                                         std::map<EdgeKey, double> edge_lengths) {
  if (metrics.size() != triangles.size() || charts.size() != triangles.size()) {
    throw Error(Errc::InvalidComplex, "need exactly one chart and one metric per triangle");
  }
  MetricComplex k;
  k.vertex_count_ = vertex_count;
  k.source_ = MetricSource::Charts;
  k.triangles_ = std::move(triangles);
  k.charts_ = std::move(charts);
  k.metrics_ = std::move(metrics);
  for (std::size_t t = 0; t < k.charts_.size(); ++t) {
    const Chart& c = k.charts_[t];
    Eigen::Matrix2d m;
    m.col(0) = c.col(1) - c.col(0);
    m.col(1) = c.col(2) - c.col(0);
    if (!(m.determinant() > 0.0)) {
      throw Error(Errc::InvalidComplex,
                  "chart of triangle " + std::to_string(t) + " is not positively oriented");
    }
  }
  k.build(edge_lengths.empty() ? nullptr : &edge_lengths);
  return k;
}

void MetricComplex::build(std::map<EdgeKey, double>* supplied_lengths) {
  if (vertex_count_ < 0) throw Error(Errc::InvalidComplex, "negative vertex count");
  const int nt = triangle_count();
  stars_.assign(vertex_count_, {});
  neighbors_.assign(nt, {-1, -1, -1});
  frames_.resize(nt);

  for (int t = 0; t < nt; ++t) {
    const Triangle& tri = triangles_[t];
    for (int v : tri) {
      if (v < 0 || v >= vertex_count_) {
        throw Error(Errc::InvalidComplex, "triangle " + std::to_string(t) +
                                              " references vertex " + std::to_string(v) +
                                              " out of range");
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw Error(Errc::InvalidComplex, "triangle " + std::to_string(t) + " repeats a vertex");
    }
    const Eigen::Matrix2d& g = metrics_[t];
    if (!g.allFinite() || std::abs(g(0, 1) - g(1, 0)) > 1e-12 * std::max(1.0, g.norm())) {
      throw Error(Errc::InvalidComplex, "metric of triangle " + std::to_string(t) +
                                            " is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(g);
    if (!(eig.eigenvalues().minCoeff() > kMinEigenvalue)) {
      throw Error(Errc::InvalidComplex, "metric of triangle " + std::to_string(t) +
                                            " is not positive definite");
    }
    Eigen::LLT<Eigen::Matrix2d> llt(g);
    frames_[t] = llt.matrixL().transpose();
    for (int v : tri) stars_[v].push_back(t);
  }

  // Directed edge -> (triangle, local index).
  std::map<std::pair<int, int>, std::pair<int, int>> directed;
  for (int t = 0; t < nt; ++t) {
    for (int i = 0; i < 3; ++i) {
      const int a = triangles_[t][i];
      const int b = triangles_[t][(i + 1) % 3];
      if (!directed.emplace(std::pair{a, b}, std::pair{t, i}).second) {
        throw Error(Errc::InvalidComplex,
                    "edge " + edge_name(a, b) +
                        " is traversed twice in the same direction (inconsistent orientation "
                        "or non-manifold edge)");
      }
    }
  }
  for (const auto& [ab, ti] : directed) {
    auto it = directed.find({ab.second, ab.first});
    if (it != directed.end()) neighbors_[ti.first][ti.second] = it->second.first;
  }

  // Edge lengths seen from each coface must agree.
  std::map<EdgeKey, double> derived;
  for (const auto& [ab, ti] : directed) {
    const Chart y = orthonormal_coords(ti.first);
    const int i = ti.second;
    const double len = (y.col((i + 1) % 3) - y.col(i)).norm();
    const EdgeKey key = edge_key(ab.first, ab.second);
    auto [it, inserted] = derived.emplace(key, len);
    if (!inserted && std::abs(it->second - len) > kLengthTolerance * std::max(1.0, len)) {
      throw Error(Errc::InvalidComplex, "edge " + edge_name(key.first, key.second) +
                                            " has inconsistent lengths " +
                                            std::to_string(it->second) + " and " +
                                            std::to_string(len));
    }
  }
  if (supplied_lengths) {
    for (const auto& [key, len] : derived) {
      auto it = supplied_lengths->find(key);
      if (it == supplied_lengths->end()) continue;
      if (std::abs(it->second - len) > kLengthTolerance * std::max(1.0, len)) {
        throw Error(Errc::InvalidComplex, "edge " + edge_name(key.first, key.second) +
                                              " length disagrees with its triangle metric");
      }
    }
    for (const auto& [key, len] : *supplied_lengths) {
      if (!derived.count(key)) {
        throw Error(Errc::InvalidComplex, "length given for edge " +
                                              edge_name(key.first, key.second) +
                                              " that belongs to no triangle");
      }
    }
  }
  lengths_ = std::move(derived);
  if (supplied_lengths) {
    for (const auto& [key, len] : *supplied_lengths) lengths_[key] = len;
  }
}

Chart MetricComplex::orthonormal_coords(int t) const { return frames_.at(t) * charts_.at(t); }

int MetricComplex::euler_characteristic() const noexcept {
  return vertex_count_ - edge_count() + triangle_count();
}

int MetricComplex::local_edge(int t, int a, int b) const {
  const Triangle& tri = triangles_.at(t);
  for (int i = 0; i < 3; ++i) {
    const int u = tri[i];
    const int w = tri[(i + 1) % 3];
    if ((u == a && w == b) || (u == b && w == a)) return i;
  }
  return -1;
}

bool MetricComplex::is_interior_vertex(int v) const {
  const auto& star = stars_.at(v);
  if (star.empty()) return false;
  for (int t : star) {
    const Triangle& tri = triangles_[t];
    for (int i = 0; i < 3; ++i) {
      if ((tri[i] == v || tri[(i + 1) % 3] == v) && neighbors_[t][i] < 0) return false;
    }
  }
  return true;
}

double MetricComplex::corner_angle(int t, int k) const {
  const Chart y = orthonormal_coords(t);
  const Eigen::Vector2d u = y.col((k + 1) % 3) - y.col(k);
  const Eigen::Vector2d w = y.col((k + 2) % 3) - y.col(k);
  return std::atan2(std::abs(u.x() * w.y() - u.y() * w.x()), u.dot(w));
}

// ---------------------------------------------------------------------------
// Connection

Eigen::Vector2d face_normal(const MetricComplex& k, int t, int a, int b) {
  return outward(k.orthonormal_coords(t), facet_index(k, t, a, b));
}

GroupElement connection_element(const MetricComplex& k, int t, int a, int b) {
  const int i = facet_index(k, t, a, b);
  if (k.neighbor(t, i) < 0) {
    throw Error(Errc::BoundaryFace, "edge " + edge_name(a, b) + " of triangle " +
                                        std::to_string(t) + " is on the boundary");
  }
  return so2(compute_element(k, t, i));
}

DualOneForm levi_civita_connection(const MetricComplex& k) {
  DualOneForm form;
  const int nt = k.triangle_count();
  form.values_.assign(nt, {Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity(),
                           Eigen::Matrix2d::Identity()});
  // Each triangle computes the edges it owns (neighbor of higher index).
  parallel_for(static_cast<std::size_t>(nt), [&](std::size_t ts) {
    const int t = static_cast<int>(ts);
    for (int i = 0; i < 3; ++i) {
      const int s = k.neighbor(t, i);
      if (s > t) form.values_[t][i] = compute_element(k, t, i);
    }
  });
  for (int t = 0; t < nt; ++t) {
    const Triangle& tri = k.triangle(t);
    for (int i = 0; i < 3; ++i) {
      const int s = k.neighbor(t, i);
      if (s >= 0 && s < t) {
        const int j = k.local_edge(s, tri[(i + 1) % 3], tri[i]);
        form.values_[t][i] = form.values_[s][j].transpose();
      }
    }
  }
  return form;
}

GroupElement transport(const MetricComplex& k, const DualOneForm& a, int from, int to) {
  check_triangle_index(k, from);
  check_triangle_index(k, to);
  for (int i = 0; i < 3; ++i) {
    if (k.neighbor(from, i) == to) return so2(a.value(from, i));
  }
  throw Error(Errc::NotAdjacent, "triangles " + std::to_string(from) + " and " +
                                     std::to_string(to) + " do not share an edge");
}

// ---------------------------------------------------------------------------
// Curvature

std::vector<int> vertex_loop(const MetricComplex& k, int vertex, std::optional<int> start) {
  check_vertex_index(k, vertex);
  const auto& star = k.vertex_triangles(vertex);
  if (star.empty()) {
    throw Error(Errc::BoundaryHinge, "vertex " + std::to_string(vertex) + " has no triangles");
  }
  const int t0 = start.value_or(star.front());
  if (std::find(star.begin(), star.end(), t0) == star.end()) {
    throw Error(Errc::InvalidArgument, "triangle " + std::to_string(t0) +
                                           " is not incident to vertex " + std::to_string(vertex));
  }
  std::vector<int> loop;
  int t = t0;
  do {
    loop.push_back(t);
    const Triangle& tri = k.triangle(t);
    const int corner = static_cast<int>(std::find(tri.begin(), tri.end(), vertex) - tri.begin());
    // Counter-clockwise about the vertex: cross the edge arriving at it.
    const int next = k.neighbor(t, (corner + 2) % 3);
    if (next < 0) {
      throw Error(Errc::BoundaryHinge, "vertex " + std::to_string(vertex) + " is on the boundary");
    }
    t = next;
    if (loop.size() > star.size()) {
      throw Error(Errc::InvalidComplex, "star of vertex " + std::to_string(vertex) +
                                            " does not close");
    }
  } while (t != t0);
  return loop;
}

GroupElement curvature(const MetricComplex& k, const DualOneForm& a, int vertex,
                       std::optional<int> start) {
  const std::vector<int> loop = vertex_loop(k, vertex, start);
  return holonomy(k, a, loop);
}

double angle_defect(const MetricComplex& k, int vertex) {
  if (!k.is_interior_vertex(vertex)) {
    throw Error(Errc::BoundaryHinge, "vertex " + std::to_string(vertex) + " is on the boundary");
  }
  double sum = 0.0;
  for (int t : k.vertex_triangles(vertex)) {
    const Triangle& tri = k.triangle(t);
    const int corner = static_cast<int>(std::find(tri.begin(), tri.end(), vertex) - tri.begin());
    sum += k.corner_angle(t, corner);
  }
  return kTwoPi - sum;
}

double rotation_angle(const GroupElement& r) {
  if (r.group().kind() != GroupKind::SO2) {
    throw Error(Errc::GroupMismatch, "rotation_angle expects an SO2 element");
  }
  return std::atan2(r.matrix()(1, 0), r.matrix()(0, 0));
}

double curvature_angle(const MetricComplex& k, const DualOneForm& a, int vertex) {
  const double theta = rotation_angle(curvature(k, a, vertex));
  const double defect = angle_defect(k, vertex);
  return theta + kTwoPi * std::round((defect - theta) / kTwoPi);
}

// ---------------------------------------------------------------------------
// Loops

namespace {

// Drops a trailing repeat of the first triangle.
std::span<const int> open_loop(std::span<const int> loop) {
  if (loop.size() > 1 && loop.front() == loop.back()) return loop.first(loop.size() - 1);
  return loop;
}

int shared_edge(const MetricComplex& k, int from, int to) {
  for (int i = 0; i < 3; ++i) {
    if (k.neighbor(from, i) == to) return i;
  }
  return -1;
}

}  // namespace

GroupElement holonomy(const MetricComplex& k, const DualOneForm& a, std::span<const int> loop) {
  if (loop.empty()) throw Error(Errc::InvalidArgument, "empty loop");
  for (int t : loop) check_triangle_index(k, t);
  const auto path = open_loop(loop);
  Eigen::Matrix2d h = Eigen::Matrix2d::Identity();
  if (path.size() == 1) return so2(h);
  for (std::size_t l = 0; l < path.size(); ++l) {
    const int from = path[l];
    const int to = path[(l + 1) % path.size()];
    const int i = shared_edge(k, from, to);
    if (i < 0) {
      if (l + 1 == path.size()) {
        throw Error(Errc::NotClosed, "loop does not close: last triangle " + std::to_string(from) +
                                         " is not adjacent to first triangle " +
                                         std::to_string(to));
      }
      throw Error(Errc::NotAdjacent, "loop positions " + std::to_string(l) + " and " +
                                         std::to_string(l + 1) + " (triangles " +
                                         std::to_string(from) + ", " + std::to_string(to) +
                                         ") do not share an edge");
    }
    h = a.value(from, i) * h;
  }
  return so2(h);
}

EnclosedRegion enclosed_vertices(const MetricComplex& k, std::span<const int> loop) {
  for (int t : loop) check_triangle_index(k, t);
  const auto path = open_loop(loop);
  EnclosedRegion region;
  if (path.size() < 2) return region;
  std::set<EdgeKey> crossed;
  std::vector<int> left, right;
  for (std::size_t l = 0; l < path.size(); ++l) {
    const int from = path[l];
    const int to = path[(l + 1) % path.size()];
    const int i = shared_edge(k, from, to);
    if (i < 0) throw Error(Errc::NotAdjacent, "loop is not a closed dual path");
    const int a = k.triangle(from)[i];
    const int b = k.triangle(from)[(i + 1) % 3];
    crossed.insert(edge_key(a, b));
    left.push_back(b);
    right.push_back(a);
  }
  std::vector<std::vector<int>> adjacency(k.vertex_count());
  for (const auto& [e, len] : k.edge_lengths()) {
    if (crossed.count(e)) continue;
    adjacency[e.first].push_back(e.second);
    adjacency[e.second].push_back(e.first);
  }
  std::vector<bool> seen(k.vertex_count(), false);
  std::vector<int> stack;
  for (int v : left) {
    if (!seen[v]) {
      seen[v] = true;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    region.vertices.push_back(v);
    for (int w : adjacency[v]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  for (int v : right) {
    if (seen[v]) region.separating = false;
  }
  std::sort(region.vertices.begin(), region.vertices.end());
  return region;
}

std::vector<int> separating_loop(const MetricComplex& k, const std::vector<bool>& inside) {
  if (static_cast<int>(inside.size()) != k.vertex_count()) {
    throw Error(Errc::InvalidArgument, "inside mask must have one entry per vertex");
  }
  std::vector<int> mixed;
  for (int t = 0; t < k.triangle_count(); ++t) {
    const Triangle& tri = k.triangle(t);
    const int n = inside[tri[0]] + inside[tri[1]] + inside[tri[2]];
    if (n == 1 || n == 2) mixed.push_back(t);
  }
  if (mixed.empty()) {
    throw Error(Errc::InvalidArgument, "vertex set has no boundary ring");
  }
  std::vector<int> loop;
  int t = mixed.front();
  do {
    loop.push_back(t);
    const Triangle& tri = k.triangle(t);
    int exit = -1;
    for (int i = 0; i < 3; ++i) {
      if (!inside[tri[i]] && inside[tri[(i + 1) % 3]]) exit = i;
    }
    const int next = k.neighbor(t, exit);
    if (next < 0) {
      throw Error(Errc::InvalidArgument, "boundary ring reaches the complex boundary");
    }
    t = next;
    if (loop.size() > mixed.size()) {
      throw Error(Errc::InvalidArgument, "boundary ring does not close");
    }
  } while (t != loop.front());
  if (loop.size() != mixed.size()) {
    throw Error(Errc::InvalidArgument, "vertex set boundary has more than one component");
  }
  return loop;
}

std::vector<int> latitude_loop(const MetricComplex& k, std::span<const Eigen::Vector3d> positions,
                               double colatitude) {
  if (static_cast<int>(positions.size()) != k.vertex_count()) {
    throw Error(Errc::InvalidArgument, "need one position per vertex");
  }
  std::vector<bool> inside(positions.size());
  for (std::size_t v = 0; v < positions.size(); ++v) {
    const Eigen::Vector3d& p = positions[v];
    inside[v] = std::atan2(p.head<2>().norm(), p.z()) < colatitude;
  }
  return separating_loop(k, inside);
}

// ---------------------------------------------------------------------------
// Reports

std::vector<QualityEntry> quality_report(const MetricComplex& k, const DualOneForm& a) {
  std::vector<int> interior;
  for (int v = 0; v < k.vertex_count(); ++v) {
    if (k.is_interior_vertex(v)) interior.push_back(v);
  }
  std::vector<QualityEntry> report(interior.size());
  parallel_for(interior.size(), [&](std::size_t i) {
    const GroupElement c = curvature(k, a, interior[i]);
    QualityEntry entry{interior[i], 0.0, false};
    try {
      entry.norm = conj_invariant_norm(c);
    } catch (const Error& e) {
      if (e.code() != Errc::CutLocus) throw;
      entry.norm = std::numbers::pi;
      entry.cut_locus = true;
    }
    report[i] = entry;
  });
  std::stable_sort(report.begin(), report.end(), [](const QualityEntry& x, const QualityEntry& y) {
    if (x.norm != y.norm) return x.norm > y.norm;
    return x.vertex < y.vertex;
  });
  return report;
}

GaussBonnetSummary gauss_bonnet(const MetricComplex& k, const DualOneForm& a) {
  GaussBonnetSummary s;
  s.euler_characteristic = k.euler_characteristic();
  for (int t = 0; t < k.triangle_count() && s.closed; ++t) {
    for (int i = 0; i < 3; ++i) {
      if (k.neighbor(t, i) < 0) s.closed = false;
    }
  }
  std::vector<int> interior;
  for (int v = 0; v < k.vertex_count(); ++v) {
    if (k.is_interior_vertex(v)) interior.push_back(v);
  }
  std::vector<double> angles(interior.size()), defects(interior.size());
  parallel_for(interior.size(), [&](std::size_t i) {
    angles[i] = curvature_angle(k, a, interior[i]);
    defects[i] = angle_defect(k, interior[i]);
  });
  for (std::size_t i = 0; i < interior.size(); ++i) {
    s.total += angles[i];
    s.defect_total += defects[i];
  }
  return s;
}

}  // namespace dconn
