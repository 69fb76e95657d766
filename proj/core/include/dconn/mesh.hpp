#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dconn/levi_civita.hpp"

namespace dconn {

/// Triangle mesh embedded in R^3.
struct EmbeddedMesh {
  std::vector<Eigen::Vector3d> positions;
  std::vector<Triangle> triangles;
};

/// Metric complex induced by an embedding. Planar meshes (all z = 0) keep the
/// plane as a shared chart with the identity metric, mirrored if the triangles
/// are clockwise; anything else goes through edge lengths.
MetricComplex complex_from_embedding(const EmbeddedMesh& mesh);

/// Symmetry axis of the base icosahedron placed on +z.
enum class IcosphereAxis { Vertex, Edge, Face };

/// Unit icosphere: icosahedron with the chosen axis on +z (default: a vertex at
/// the pole), each level splitting every triangle in four with midpoints
/// projected to the sphere (20 * 4^level triangles).
EmbeddedMesh icosphere(int level, IcosphereAxis axis = IcosphereAxis::Vertex);

/// nx by ny unit squares in the plane z = 0, each split along its diagonal.
EmbeddedMesh flat_grid(int nx, int ny);

/// Torus of revolution with major radius R and minor radius r, sampled on an
/// m by n grid.
EmbeddedMesh torus(int m, int n, double major_radius = 2.0, double minor_radius = 1.0);

/// Cone over a k-gon from k unit equilateral triangles: vertex 0 is the apex,
/// 1..k the rim. Edge-length complex.
MetricComplex equilateral_cone(int k);

/// OFF reader for triangle meshes. Throws ParseError or InvalidComplex.
EmbeddedMesh read_off(std::istream& in);
void write_off(std::ostream& out, const EmbeddedMesh& mesh);

/// Abstract-complex JSON:
///   {"vertices": n, "triangles": [[a, b, c], ...],
///    "edge_lengths": [[a, b, length], ...],        (a < b, sorted)
///    "metrics": [[g00, g01, g11], ...],             (optional)
///    "charts": [[x0, y0, x1, y1, x2, y2], ...]}     (optional, needs metrics)
/// Charts select chart mode, otherwise metrics select metric mode, otherwise
/// edge lengths are used. Supplied edge lengths are always validated and kept,
/// so parse then serialize reproduces the input document.
MetricComplex parse_complex_json(const std::string& text);
std::string serialize_complex_json(const MetricComplex& k);

/// Loads .off or .json by extension. Throws ParseError on IO or syntax
/// problems, InvalidComplex on invalid geometry.
MetricComplex load_complex(const std::filesystem::path& path);

}  // namespace dconn
