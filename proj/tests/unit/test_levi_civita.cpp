#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dconn/error.hpp"
#include "dconn/levi_civita.hpp"
#include "dconn/mesh.hpp"
#include "oracles.hpp"

namespace dconn {
namespace {

constexpr double kPi = std::numbers::pi;

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no dconn::Error thrown";
  return Errc::InvalidArgument;
}

bool not_neighbors(const MetricComplex& k, int t, int u) {
  for (int i = 0; i < 3; ++i) {
    if (k.neighbor(t, i) == u) return false;
  }
  return true;
}

double wrap(double a) { return std::remainder(a, 2 * kPi); }

Eigen::Matrix3d embedded_triangle(const EmbeddedMesh& m, int t) {
  Eigen::Matrix3d e;
  for (int i = 0; i < 3; ++i) e.col(i) = m.positions[m.triangles[t][i]];
  return e;
}

TEST(LeviCivita, ConnectionMatchesHingeUnfolding) {
  for (const EmbeddedMesh& mesh : {icosphere(1), torus(8, 6)}) {
    const MetricComplex k = complex_from_embedding(mesh);
    const DualOneForm a = levi_civita_connection(k);
    oracle::Sampler s(1);
    for (int t = 0; t < k.triangle_count(); ++t) {
      const auto e_t = oracle::planar_to_embedded(k.orthonormal_coords(t), embedded_triangle(mesh, t));
      for (int i = 0; i < 3; ++i) {
        const int n = k.neighbor(t, i);
        const Triangle& tri = k.triangle(t);
        const int va = tri[i], vb = tri[(i + 1) % 3], vc = tri[(i + 2) % 3];
        const Triangle& other = k.triangle(n);
        int vd = -1;
        for (int v : other) {
          if (v != va && v != vb) vd = v;
        }
        const auto e_n =
            oracle::planar_to_embedded(k.orthonormal_coords(n), embedded_triangle(mesh, n));
        const Eigen::Vector2d u = s.vector(2, 1.0);
        const Eigen::Vector3d moved =
            oracle::hinge_transport(mesh.positions[va], mesh.positions[vb], mesh.positions[vc],
                                    mesh.positions[vd], e_t * u);
        const Eigen::Vector2d expected = e_n.transpose() * moved;
        EXPECT_LT((a.value(t, i) * u - expected).norm(), 1e-10) << "triangle " << t << " edge " << i;
      }
    }
  }
}

TEST(LeviCivita, TetrahedronHinge) {
  const EmbeddedMesh tet{{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}},
                         {{{0, 1, 2}}, {{0, 3, 1}}, {{0, 2, 3}}, {{1, 3, 2}}}};
  const MetricComplex k = complex_from_embedding(tet);
  const auto e0 = oracle::planar_to_embedded(k.orthonormal_coords(0), embedded_triangle(tet, 0));
  const auto e1 = oracle::planar_to_embedded(k.orthonormal_coords(1), embedded_triangle(tet, 1));
  const GroupElement r = connection_element(k, 0, 0, 1);
  const Eigen::Vector2d u(0.3, -0.8);
  const Eigen::Vector3d moved =
      oracle::hinge_transport(tet.positions[0], tet.positions[1], tet.positions[2], tet.positions[3], e0 * u);
  EXPECT_LT((r.matrix() * u - e1.transpose() * moved).norm(), 1e-12);
  // Each vertex has three equilateral corners: defect pi.
  const DualOneForm a = levi_civita_connection(k);
  for (int v = 0; v < 4; ++v) EXPECT_NEAR(curvature_angle(k, a, v), kPi, 1e-12);
}

TEST(LeviCivita, CurvatureAngleIsAngleDefect) {
  const EmbeddedMesh mesh = icosphere(2);
  const MetricComplex k = complex_from_embedding(mesh);
  const DualOneForm a = levi_civita_connection(k);
  for (int v = 0; v < k.vertex_count(); ++v) {
    const double oracle_defect = oracle::embedded_angle_defect(mesh.positions, mesh.triangles, v);
    EXPECT_NEAR(angle_defect(k, v), oracle_defect, 1e-12);
    EXPECT_NEAR(curvature_angle(k, a, v), oracle_defect, 1e-12);
  }
}

TEST(LeviCivita, ConeApexCarriesAllCurvature) {
  for (int n : {3, 4, 5, 7}) {
    const MetricComplex k = equilateral_cone(n);
    const DualOneForm a = levi_civita_connection(k);
    EXPECT_NEAR(curvature_angle(k, a, 0), wrap(2 * kPi - n * kPi / 3), 1e-12) << n;
    const auto report = quality_report(k, a);
    ASSERT_EQ(report.size(), 1u);
    EXPECT_EQ(report[0].vertex, 0);
    EXPECT_NEAR(report[0].norm, std::abs(wrap(2 * kPi - n * kPi / 3)), 1e-12);
  }
}

TEST(LeviCivita, IcosahedronIsUniform) {
  const MetricComplex k = complex_from_embedding(icosphere(0));
  const DualOneForm a = levi_civita_connection(k);
  const auto report = quality_report(k, a);
  ASSERT_EQ(report.size(), 12u);
  for (const auto& e : report) EXPECT_NEAR(e.norm, kPi / 3, 1e-12);
}

TEST(LeviCivita, FlatGridIsFlat) {
  const MetricComplex k = complex_from_embedding(flat_grid(5, 4));
  EXPECT_EQ(k.source(), MetricSource::Charts);
  const DualOneForm a = levi_civita_connection(k);
  const auto report = quality_report(k, a);
  EXPECT_EQ(report.size(), 12u);
  for (const auto& e : report) EXPECT_LT(e.norm, 1e-15);
}

TEST(LeviCivita, QualityReportIsSorted) {
  const MetricComplex k = complex_from_embedding(torus(10, 6));
  const auto report = quality_report(k, levi_civita_connection(k));
  for (std::size_t i = 1; i < report.size(); ++i) {
    EXPECT_TRUE(report[i - 1].norm > report[i].norm ||
                (report[i - 1].norm == report[i].norm && report[i - 1].vertex < report[i].vertex));
  }
}

TEST(LeviCivita, ReversalInvertsExactly) {
  const MetricComplex k = complex_from_embedding(torus(9, 7));
  const DualOneForm a = levi_civita_connection(k);
  for (int t = 0; t < k.triangle_count(); ++t) {
    for (int i = 0; i < 3; ++i) {
      const int n = k.neighbor(t, i);
      const Triangle& tri = k.triangle(t);
      const int j = k.local_edge(n, tri[(i + 1) % 3], tri[i]);
      ASSERT_GE(j, 0);
      EXPECT_TRUE(a.value(n, j) == a.value(t, i).transpose());
      const GroupElement fwd = transport(k, a, t, n), back = transport(k, a, n, t);
      EXPECT_TRUE(compose(fwd, back).matrix().isIdentity(1e-15));
    }
  }
}

TEST(LeviCivita, CurvatureNormIndependentOfStart) {
  const MetricComplex k = complex_from_embedding(icosphere(2));
  const DualOneForm a = levi_civita_connection(k);
  for (int v = 0; v < k.vertex_count(); v += 7) {
    const double ref = conj_invariant_norm(curvature(k, a, v));
    for (int t : k.vertex_triangles(v)) {
      EXPECT_NEAR(conj_invariant_norm(curvature(k, a, v, t)), ref, 1e-12);
    }
  }
}

TEST(LeviCivita, AdjacentVertexLoopsCompose) {
  const EmbeddedMesh mesh = icosphere(2);
  const MetricComplex k = complex_from_embedding(mesh);
  const DualOneForm a = levi_civita_connection(k);
  const Triangle& t = k.triangle(17);
  std::vector<bool> inside(k.vertex_count(), false);
  inside[t[0]] = inside[t[1]] = true;
  const std::vector<int> loop = separating_loop(k, inside);
  const double angle = rotation_angle(holonomy(k, a, loop));
  const double expected =
      rotation_angle(compose(curvature(k, a, t[0]), curvature(k, a, t[1])));
  EXPECT_NEAR(wrap(angle - expected), 0.0, 1e-10);
  EXPECT_NEAR(wrap(angle - angle_defect(k, t[0]) - angle_defect(k, t[1])), 0.0, 1e-10);
}

TEST(LeviCivita, GaussBonnetOnClosedAndFlatMeshes) {
  for (int level = 0; level <= 3; ++level) {
    const MetricComplex k = complex_from_embedding(icosphere(level));
    const GaussBonnetSummary gb = gauss_bonnet(k, levi_civita_connection(k));
    EXPECT_TRUE(gb.closed);
    EXPECT_EQ(gb.euler_characteristic, 2);
    EXPECT_NEAR(gb.total, 4 * kPi, 1e-9) << "level " << level;
    EXPECT_NEAR(gb.defect_total, 4 * kPi, 1e-9);
  }
  const MetricComplex grid = complex_from_embedding(flat_grid(6, 6));
  const GaussBonnetSummary flat = gauss_bonnet(grid, levi_civita_connection(grid));
  EXPECT_FALSE(flat.closed);
  EXPECT_NEAR(flat.total, 0.0, 1e-12);
  const MetricComplex tor = complex_from_embedding(torus(16, 8));
  const GaussBonnetSummary gt = gauss_bonnet(tor, levi_civita_connection(tor));
  EXPECT_EQ(gt.euler_characteristic, 0);
  EXPECT_NEAR(gt.total, 0.0, 1e-9);
}

TEST(LeviCivita, HolonomyEqualsEnclosedDefects) {
  const EmbeddedMesh mesh = icosphere(3);
  const MetricComplex k = complex_from_embedding(mesh);
  const DualOneForm a = levi_civita_connection(k);
  for (double deg : {20.0, 45.0, 70.0, 100.0}) {
    const double alpha = deg * kPi / 180;
    const auto loop = latitude_loop(k, mesh.positions, alpha);
    const EnclosedRegion region = enclosed_vertices(k, loop);
    EXPECT_TRUE(region.separating);
    double enclosed = 0.0;
    for (int v : region.vertices) {
      const Eigen::Vector3d& p = mesh.positions[v];
      EXPECT_LT(std::atan2(p.head<2>().norm(), p.z()), alpha);
      enclosed += angle_defect(k, v);
    }
    int expected_count = 0;
    for (const auto& p : mesh.positions) {
      if (std::atan2(p.head<2>().norm(), p.z()) < alpha) ++expected_count;
    }
    EXPECT_EQ(static_cast<int>(region.vertices.size()), expected_count);
    EXPECT_NEAR(wrap(rotation_angle(holonomy(k, a, loop)) - enclosed), 0.0, 1e-10) << deg;
  }
}

TEST(LeviCivita, LatitudeHolonomyAtThirtyDegrees) {
  const EmbeddedMesh mesh = icosphere(4);
  const MetricComplex k = complex_from_embedding(mesh);
  const DualOneForm a = levi_civita_connection(k);
  const double alpha = kPi / 6;
  const double angle = rotation_angle(holonomy(k, a, latitude_loop(k, mesh.positions, alpha)));
  EXPECT_NEAR(wrap(angle - 2 * kPi * (1 - std::cos(alpha))), 0.0, 2e-2);
}

TEST(LeviCivita, FaceNormalIsOutwardUnitAndPerpendicular) {
  const MetricComplex k = complex_from_embedding(icosphere(1));
  for (int t = 0; t < k.triangle_count(); ++t) {
    const Chart c = k.orthonormal_coords(t);
    const Triangle& tri = k.triangle(t);
    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector2d n = face_normal(k, t, tri[i], tri[(i + 1) % 3]);
      const Eigen::Vector2d edge = c.col((i + 1) % 3) - c.col(i);
      const Eigen::Vector2d to_opposite = c.col((i + 2) % 3) - c.col(i);
      EXPECT_NEAR(n.norm(), 1.0, 1e-14);
      EXPECT_NEAR(n.dot(edge), 0.0, 1e-14);
      EXPECT_LT(n.dot(to_opposite), 0.0);
    }
  }
}

TEST(LeviCivita, ErrorPaths) {
  const MetricComplex grid = complex_from_embedding(flat_grid(2, 2));
  const DualOneForm a = levi_civita_connection(grid);
  const Triangle& t0 = grid.triangle(0);
  int boundary_edge = -1;
  for (int i = 0; i < 3; ++i) {
    if (grid.neighbor(0, i) < 0) boundary_edge = i;
  }
  ASSERT_GE(boundary_edge, 0);
  int far = -1;
  for (int t = 0; t < grid.triangle_count(); ++t) {
    bool shares = false;
    for (int v : grid.triangle(t)) {
      for (int w : t0) shares = shares || v == w;
    }
    if (!shares) far = t;
  }
  ASSERT_GE(far, 0);
  int boundary_vertex = -1;
  for (int v = 0; v < grid.vertex_count(); ++v) {
    if (!grid.is_interior_vertex(v)) boundary_vertex = v;
  }

  EXPECT_EQ(code_of([&] { (void)face_normal(grid, 0, t0[0], far == 0 ? 1 : grid.triangle(far)[0]); }),
            Errc::NotAFacet);
  EXPECT_EQ(code_of([&] {
              (void)connection_element(grid, 0, t0[boundary_edge], t0[(boundary_edge + 1) % 3]);
            }),
            Errc::BoundaryFace);
  EXPECT_EQ(code_of([&] { (void)transport(grid, a, 0, far); }), Errc::NotAdjacent);
  EXPECT_EQ(code_of([&] { (void)vertex_loop(grid, boundary_vertex); }), Errc::BoundaryHinge);
  const int n = grid.neighbor(0, (boundary_edge + 1) % 3);
  int m = -1;
  for (int i = 0; i < 3; ++i) {
    const int c = grid.neighbor(n, i);
    if (c >= 0 && c != 0 && not_neighbors(grid, 0, c)) {
      m = c;
    }
  }
  ASSERT_GE(m, 0);
  const std::vector<int> open{0, n, m};
  EXPECT_EQ(code_of([&] { (void)holonomy(grid, a, open); }), Errc::NotClosed);
  const std::vector<int> single{0};
  EXPECT_TRUE(holonomy(grid, a, single).matrix().isIdentity(0.0));
}

TEST(MetricComplexValidation, RejectsBadInput) {
  const std::map<EdgeKey, double> unit{{{0, 1}, 1.0}, {{0, 2}, 1.0}, {{1, 2}, 1.0},
                                       {{0, 3}, 1.0}, {{1, 3}, 1.0}, {{2, 3}, 1.0}};
  // Same orientation on a shared edge.
  EXPECT_EQ(code_of([&] {
              (void)MetricComplex::from_edge_lengths(4, {{{0, 1, 2}}, {{0, 1, 3}}}, unit);
            }),
            Errc::InvalidComplex);
  // Three cofaces on one edge.
  std::map<EdgeKey, double> five = unit;
  five[{0, 4}] = 1.0;
  five[{1, 4}] = 1.0;
  EXPECT_EQ(code_of([&] {
              (void)MetricComplex::from_edge_lengths(5, {{{0, 1, 2}}, {{1, 0, 3}}, {{0, 1, 4}}},
                                                     five);
            }),
            Errc::InvalidComplex);
  // Triangle inequality.
  std::map<EdgeKey, double> bad = unit;
  bad[{0, 1}] = 3.0;
  EXPECT_EQ(code_of([&] { (void)MetricComplex::from_edge_lengths(3, {{{0, 1, 2}}}, bad); }),
            Errc::InvalidComplex);
  // Non-SPD metric.
  EXPECT_EQ(code_of([&] {
              (void)MetricComplex::from_metrics(3, {{{0, 1, 2}}}, {Eigen::Matrix2d::Identity() * -1.0});
            }),
            Errc::InvalidComplex);
  // Metrics disagree on a shared edge.
  Eigen::Matrix2d stretched = Eigen::Matrix2d::Identity();
  stretched(0, 0) = 4.0;
  EXPECT_EQ(code_of([&] {
              (void)MetricComplex::from_metrics(4, {{{0, 1, 2}}, {{1, 0, 3}}},
                                                {Eigen::Matrix2d::Identity(), stretched});
            }),
            Errc::InvalidComplex);
  // Missing edge length and out-of-range vertex.
  EXPECT_EQ(code_of([&] { (void)MetricComplex::from_edge_lengths(3, {{{0, 1, 2}}}, {}); }),
            Errc::InvalidComplex);
  EXPECT_EQ(code_of([&] { (void)MetricComplex::from_edge_lengths(3, {{{0, 1, 5}}}, unit); }),
            Errc::InvalidComplex);
}

TEST(MetricComplexValidation, EulerCharacteristic) {
  EXPECT_EQ(complex_from_embedding(icosphere(1)).euler_characteristic(), 2);
  EXPECT_EQ(complex_from_embedding(torus(6, 5)).euler_characteristic(), 0);
  EXPECT_EQ(complex_from_embedding(flat_grid(3, 2)).euler_characteristic(), 1);
}

}  // namespace
}  // namespace dconn
