#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include <Eigen/Geometry>

#include "dconn/error.hpp"
#include "dconn/mesh.hpp"

namespace dconn {

MetricComplex complex_from_embedding(const EmbeddedMesh& mesh) {
  const int nv = static_cast<int>(mesh.positions.size());
  const bool planar = std::all_of(mesh.positions.begin(), mesh.positions.end(),
                                  [](const Eigen::Vector3d& p) { return p.z() == 0.0; });
  if (planar && !mesh.triangles.empty()) {
    auto signed_area = [&](const Triangle& t) {
      const Eigen::Vector2d a = mesh.positions[t[0]].head<2>();
      const Eigen::Vector2d b = mesh.positions[t[1]].head<2>();
      const Eigen::Vector2d c = mesh.positions[t[2]].head<2>();
      const Eigen::Vector2d u = b - a;
      const Eigen::Vector2d w = c - a;
      return u.x() * w.y() - u.y() * w.x();
    };
    for (const Triangle& t : mesh.triangles) {
      for (int v : t) {
        if (v < 0 || v >= nv) throw Error(Errc::InvalidComplex, "vertex index out of range");
      }
    }
    const double mirror = signed_area(mesh.triangles.front()) < 0.0 ? -1.0 : 1.0;
    std::vector<Chart> charts;
    for (const Triangle& t : mesh.triangles) {
      Chart c;
      for (int i = 0; i < 3; ++i) {
        c(0, i) = mesh.positions[t[i]].x();
        c(1, i) = mirror * mesh.positions[t[i]].y();
      }
      charts.push_back(c);
    }
    return MetricComplex::from_charts(
        nv, mesh.triangles, std::move(charts),
        std::vector<Eigen::Matrix2d>(mesh.triangles.size(), Eigen::Matrix2d::Identity()));
  }
  std::map<EdgeKey, double> lengths;
  for (const Triangle& t : mesh.triangles) {
    for (int i = 0; i < 3; ++i) {
      const int a = t[i];
      const int b = t[(i + 1) % 3];
      if (a < 0 || a >= nv || b < 0 || b >= nv) {
        throw Error(Errc::InvalidComplex, "vertex index out of range");
      }
      lengths[edge_key(a, b)] = (mesh.positions[a] - mesh.positions[b]).norm();
    }
  }
  return MetricComplex::from_edge_lengths(nv, mesh.triangles, std::move(lengths));
}

namespace {

// Flips triangles whose normal points toward the origin.
void orient_outward(EmbeddedMesh& mesh) {
  for (Triangle& t : mesh.triangles) {
    const Eigen::Vector3d& a = mesh.positions[t[0]];
    const Eigen::Vector3d& b = mesh.positions[t[1]];
    const Eigen::Vector3d& c = mesh.positions[t[2]];
    if ((b - a).cross(c - a).dot(a + b + c) < 0.0) std::swap(t[1], t[2]);
  }
}

}  // namespace

EmbeddedMesh icosphere(int level, IcosphereAxis axis) {
  if (level < 0 || level > 8) throw Error(Errc::InvalidArgument, "icosphere level must be 0..8");
  EmbeddedMesh mesh;
  const double z = 1.0 / std::sqrt(5.0);
  const double r = 2.0 / std::sqrt(5.0);
  mesh.positions.emplace_back(0.0, 0.0, 1.0);
  for (int i = 0; i < 5; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / 5.0;
    mesh.positions.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  for (int i = 0; i < 5; ++i) {
    const double phi = 2.0 * std::numbers::pi * (i + 0.5) / 5.0;
    mesh.positions.emplace_back(r * std::cos(phi), r * std::sin(phi), -z);
  }
  mesh.positions.emplace_back(0.0, 0.0, -1.0);
  auto up = [](int i) { return 1 + (i % 5); };
  auto down = [](int i) { return 6 + (i % 5); };
  for (int i = 0; i < 5; ++i) {
    mesh.triangles.push_back({0, up(i), up(i + 1)});
    mesh.triangles.push_back({up(i), down(i), up(i + 1)});
    mesh.triangles.push_back({up(i + 1), down(i), down(i + 1)});
    mesh.triangles.push_back({11, down(i + 1), down(i)});
  }
  if (axis != IcosphereAxis::Vertex) {
    // Vertex 0 is the pole; edge (0, 1) and face (0, 1, 2) are adjacent to it.
    Eigen::Vector3d dir = mesh.positions[0] + mesh.positions[1];
    if (axis == IcosphereAxis::Face) dir += mesh.positions[2];
    const Eigen::Matrix3d r =
        Eigen::Quaterniond::FromTwoVectors(dir.normalized(), Eigen::Vector3d::UnitZ())
            .toRotationMatrix();
    for (auto& p : mesh.positions) p = r * p;
  }
  orient_outward(mesh);

  for (int l = 0; l < level; ++l) {
    std::map<EdgeKey, int> midpoint;
    auto mid = [&](int a, int b) {
      const EdgeKey key = edge_key(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int index = static_cast<int>(mesh.positions.size());
      mesh.positions.push_back((mesh.positions[a] + mesh.positions[b]).normalized());
      midpoint.emplace(key, index);
      return index;
    };
    std::vector<Triangle> next;
    next.reserve(mesh.triangles.size() * 4);
    for (const Triangle& t : mesh.triangles) {
      const int ab = mid(t[0], t[1]);
      const int bc = mid(t[1], t[2]);
      const int ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    mesh.triangles = std::move(next);
  }
  return mesh;
}

EmbeddedMesh flat_grid(int nx, int ny) {
  if (nx < 1 || ny < 1) throw Error(Errc::InvalidArgument, "grid needs at least one cell");
  EmbeddedMesh mesh;
  auto index = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) mesh.positions.emplace_back(i, j, 0.0);
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      mesh.triangles.push_back({index(i, j), index(i + 1, j), index(i + 1, j + 1)});
      mesh.triangles.push_back({index(i, j), index(i + 1, j + 1), index(i, j + 1)});
    }
  }
  return mesh;
}

EmbeddedMesh torus(int m, int n, double major_radius, double minor_radius) {
  if (m < 3 || n < 3) throw Error(Errc::InvalidArgument, "torus grid needs at least 3 x 3");
  if (!(major_radius > minor_radius && minor_radius > 0.0)) {
    throw Error(Errc::InvalidArgument, "torus radii must satisfy R > r > 0");
  }
  EmbeddedMesh mesh;
  auto index = [m, n](int i, int j) { return (j % n) * m + (i % m); };
  for (int j = 0; j < n; ++j) {
    const double v = 2.0 * std::numbers::pi * j / n;
    for (int i = 0; i < m; ++i) {
      const double u = 2.0 * std::numbers::pi * i / m;
      const double rho = major_radius + minor_radius * std::cos(v);
      mesh.positions.emplace_back(rho * std::cos(u), rho * std::sin(u),
                                  minor_radius * std::sin(v));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      mesh.triangles.push_back({index(i, j), index(i + 1, j), index(i + 1, j + 1)});
      mesh.triangles.push_back({index(i, j), index(i + 1, j + 1), index(i, j + 1)});
    }
  }
  return mesh;
}

MetricComplex equilateral_cone(int k) {
  if (k < 3) throw Error(Errc::InvalidArgument, "cone needs at least three triangles");
  std::vector<Triangle> triangles;
  std::map<EdgeKey, double> lengths;
  for (int i = 0; i < k; ++i) {
    const int a = 1 + i;
    const int b = 1 + (i + 1) % k;
    triangles.push_back({0, a, b});
    lengths[edge_key(0, a)] = 1.0;
    lengths[edge_key(a, b)] = 1.0;
  }
  return MetricComplex::from_edge_lengths(k + 1, std::move(triangles), std::move(lengths));
}

}  // namespace dconn
