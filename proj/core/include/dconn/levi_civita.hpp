#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dconn/lie_group.hpp"

namespace dconn {

/// Vertex indices of a triangle, counter-clockwise in its chart.
using Triangle = std::array<int, 3>;
/// Undirected edge key with first < second.
using EdgeKey = std::pair<int, int>;
using Chart = Eigen::Matrix<double, 2, 3>;

EdgeKey edge_key(int a, int b);

/// How the per-triangle metrics were supplied.
enum class MetricSource { EdgeLengths, Metrics, Charts };

/// Oriented two-dimensional simplicial complex with a constant metric on each
/// triangle. Each triangle carries chart coordinates of its three vertices and
/// a symmetric positive-definite metric in that chart; edge lengths derive from
/// the two. Immutable once built; all constructors validate
///   - metrics are SPD (smallest eigenvalue > 1e-10),
///   - every edge has at most two cofaces, traversed in opposite directions,
///   - shared edges have the same length on both sides (to 1e-10 relative).
class MetricComplex {
 public:
  static constexpr double kMinEigenvalue = 1e-10;
  static constexpr double kLengthTolerance = 1e-10;

  /// Per-edge lengths; each triangle gets the affine chart
  /// (0,0), (1,0), (0,1) and the Gram metric of its edge vectors.
  static MetricComplex from_edge_lengths(int vertex_count, std::vector<Triangle> triangles,
                                         std::map<EdgeKey, double> edge_lengths);

  /// Per-triangle metrics in the affine chart (0,0), (1,0), (0,1). Optional
  /// edge lengths are checked against the metrics and kept verbatim.
  static MetricComplex from_metrics(int vertex_count, std::vector<Triangle> triangles,
                                    std::vector<Eigen::Matrix2d> metrics,
                                    std::map<EdgeKey, double> edge_lengths = {});

  /// Explicit chart coordinates (columns per vertex) and metrics. Charts must
  /// be positively oriented.
  static MetricComplex from_charts(int vertex_count, std::vector<Triangle> triangles,
                                   std::vector<Chart> charts, std::vector<Eigen::Matrix2d> metrics,
                                   std::map<EdgeKey, double> edge_lengths = {});

  [[nodiscard]] int vertex_count() const noexcept { return vertex_count_; }
  [[nodiscard]] int triangle_count() const noexcept { return static_cast<int>(triangles_.size()); }
  [[nodiscard]] const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  [[nodiscard]] const Triangle& triangle(int t) const { return triangles_.at(t); }
  [[nodiscard]] MetricSource source() const noexcept { return source_; }

  [[nodiscard]] const Chart& chart(int t) const { return charts_.at(t); }
  [[nodiscard]] const Eigen::Matrix2d& metric(int t) const { return metrics_.at(t); }
  /// F = L^T with metric = L L^T; F maps chart vectors to orthonormal coordinates.
  [[nodiscard]] const Eigen::Matrix2d& frame(int t) const { return frames_.at(t); }
  /// Vertex positions of triangle t in its orthonormal coordinates (F * chart).
  [[nodiscard]] Chart orthonormal_coords(int t) const;

  /// Edge lengths, as supplied or derived from the metrics.
  [[nodiscard]] const std::map<EdgeKey, double>& edge_lengths() const noexcept { return lengths_; }
  [[nodiscard]] int edge_count() const noexcept { return static_cast<int>(lengths_.size()); }
  [[nodiscard]] int euler_characteristic() const noexcept;

  /// Local edge i of t runs from triangle(t)[i] to triangle(t)[(i + 1) % 3].
  /// Returns -1 if (a, b) is not an edge of t (in either direction).
  [[nodiscard]] int local_edge(int t, int a, int b) const;
  /// Triangle across local edge i of t, or -1 on the boundary.
  [[nodiscard]] int neighbor(int t, int i) const { return neighbors_.at(t)[i]; }
  /// Triangles incident to vertex v, ascending.
  [[nodiscard]] const std::vector<int>& vertex_triangles(int v) const { return stars_.at(v); }
  [[nodiscard]] bool is_interior_vertex(int v) const;

  /// Angle of triangle t at corner k under its metric.
  [[nodiscard]] double corner_angle(int t, int k) const;

 private:
  MetricComplex() = default;
  void build(std::map<EdgeKey, double>* supplied_lengths);

  int vertex_count_ = 0;
  MetricSource source_ = MetricSource::EdgeLengths;
  std::vector<Triangle> triangles_;
  std::vector<Chart> charts_;
  std::vector<Eigen::Matrix2d> metrics_;
  std::vector<Eigen::Matrix2d> frames_;
  std::vector<std::array<int, 3>> neighbors_;
  std::vector<std::vector<int>> stars_;
  std::map<EdgeKey, double> lengths_;
};

/// Unit outward normal of triangle t at its facet (a, b), in the triangle's
/// orthonormal coordinates. Throws NotAFacet.
Eigen::Vector2d face_normal(const MetricComplex& k, int t, int a, int b);

/// SO(2)-valued dual 1-form: one rotation per oriented interior edge, taking
/// frame vectors of a triangle to the frame of its neighbor.
class DualOneForm {
 public:
  [[nodiscard]] const Eigen::Matrix2d& value(int t, int local_edge) const {
    return values_.at(t)[local_edge];
  }

 private:
  friend DualOneForm levi_civita_connection(const MetricComplex& k);
  std::vector<std::array<Eigen::Matrix2d, 3>> values_;
};

/// Rotation taking the outward normal of t at the facet (a, b) to the inward
/// normal of its neighbor, after unfolding the pair isometrically into the
/// plane; the exact identity when the two already agree. Throws NotAFacet or
/// BoundaryFace.
GroupElement connection_element(const MetricComplex& k, int t, int a, int b);

/// All connection elements. Each edge is computed once; the reverse direction
/// stores the transpose, so reversal inverts exactly.
DualOneForm levi_civita_connection(const MetricComplex& k);

/// Element of a across the shared edge from triangle `from` to `to`.
/// Throws NotAdjacent.
GroupElement transport(const MetricComplex& k, const DualOneForm& a, int from, int to);

/// Triangles around an interior vertex in counter-clockwise order, starting at
/// `start` (default: the lowest-index incident triangle). Throws BoundaryHinge.
std::vector<int> vertex_loop(const MetricComplex& k, int vertex, std::optional<int> start = {});

/// Product of connection elements around the counter-clockwise dual loop of an
/// interior vertex, based at `start` (default: lowest-index incident triangle).
GroupElement curvature(const MetricComplex& k, const DualOneForm& a, int vertex,
                       std::optional<int> start = {});

/// 2 pi minus the sum of corner angles at an interior vertex.
double angle_defect(const MetricComplex& k, int vertex);

/// Rotation angle of the curvature in (-pi, pi], lifted by a multiple of 2 pi
/// to the representative closest to the angle defect.
double curvature_angle(const MetricComplex& k, const DualOneForm& a, int vertex);

/// Rotation angle of an SO(2) element in (-pi, pi].
double rotation_angle(const GroupElement& r);

/// Ordered product R_{t_{n-1} -> t_0} ... R_{t_0 -> t_1} along a closed dual
/// path. The first triangle may be repeated at the end; a single triangle gives
/// the identity. Throws NotAdjacent or NotClosed.
GroupElement holonomy(const MetricComplex& k, const DualOneForm& a, std::span<const int> loop);

/// Vertices on the left of a closed dual path (the enclosed side for a
/// counter-clockwise loop), by flood fill across uncrossed edges.
struct EnclosedRegion {
  std::vector<int> vertices;
  bool separating = true;  // false if the two sides connect
};
EnclosedRegion enclosed_vertices(const MetricComplex& k, std::span<const int> loop);

/// Counter-clockwise dual loop around a vertex set (inside[v] true): the ring
/// of triangles with vertices on both sides, ordered with the set on the left.
/// Throws InvalidArgument unless the ring is a single interior cycle.
std::vector<int> separating_loop(const MetricComplex& k, const std::vector<bool>& inside);

/// separating_loop of the vertices with co-latitude (angle from +z) below
/// `colatitude` for an embedded sphere-like mesh.
std::vector<int> latitude_loop(const MetricComplex& k, std::span<const Eigen::Vector3d> positions,
                               double colatitude);

struct QualityEntry {
  int vertex = 0;
  double norm = 0.0;
  bool cut_locus = false;  // rotation by pi; norm reported as pi
};

/// conj_invariant_norm of the curvature at every interior vertex, sorted by
/// descending norm, ties by vertex index.
std::vector<QualityEntry> quality_report(const MetricComplex& k, const DualOneForm& a);

struct GaussBonnetSummary {
  double total = 0.0;            // sum of curvature_angle over interior vertices
  double defect_total = 0.0;     // sum of angle_defect over interior vertices
  int euler_characteristic = 0;  // V - E + F
  bool closed = true;            // no boundary edges
};
GaussBonnetSummary gauss_bonnet(const MetricComplex& k, const DualOneForm& a);

}  // namespace dconn
