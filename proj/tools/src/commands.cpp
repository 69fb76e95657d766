#include "dconn_cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "dconn/error.hpp"
#include "dconn/fixtures.hpp"
#include "dconn/limits.hpp"
#include "dconn/mechanical.hpp"
#include "dconn/mesh.hpp"
#include "dconn/parallel.hpp"

namespace dconn::cli {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void invalid(const std::string& message) {
  throw Error(Errc::InvalidArgument, message);
}

// Message of a dconn::Error without its "Code: " prefix.
std::string bare_message(const Error& e) {
  const std::string what = e.what();
  const std::string prefix = std::string(to_string(e.code())) + ": ";
  return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

Group parse_group(const std::string& name) {
  try {
    return Group::parse(name);
  } catch (const Error& e) {
    throw Error(Errc::InvalidArgument, bare_message(e));
  }
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

json point_json(const BundlePoint& q) {
  return json{{"shape", vector_json(q.shape.coords)}, {"fiber", matrix_json(q.fiber.matrix())}};
}

json pair_json(const PairElement& p) {
  return json{{"q0", point_json(p.first)}, {"q1", point_json(p.second)}};
}

json connection_json(const ConnectionChoice& choice, const DiscreteConnection& c) {
  return json{{"name", choice.name()},
              {"group", c.bundle().group().name()},
              {"shape_dim", c.bundle().shape_dim()},
              {"validity_radius", c.validity_radius()}};
}

// Uniform in [0, 1) from the top 53 bits of a 64-bit Mersenne twister draw.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Eigen::VectorXd uniform_cube(std::mt19937_64& rng, int dim) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = 2.0 * uniform01(rng) - 1.0;
  return v;
}

template <typename Fn>
void with_index_context(const std::string& what, std::size_t i, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    throw Error(e.code(), what + " " + std::to_string(i) + ": " + bare_message(e));
  }
}

}  // namespace

DiscreteConnection build_connection(const ConnectionChoice& choice) {
  auto check_bundle = [&choice](const DiscreteConnection& c) {
    if (choice.group && parse_group(*choice.group) != c.bundle().group()) {
      invalid("connection '" + choice.name() + "' lives on group " + c.bundle().group().name() +
              ", not " + *choice.group);
    }
    if (choice.shape_dim && *choice.shape_dim != c.bundle().shape_dim()) {
      invalid("connection '" + choice.name() + "' has shape dimension " +
              std::to_string(c.bundle().shape_dim()) + ", not " +
              std::to_string(*choice.shape_dim));
    }
    return c;
  };
  if (choice.family == "trivial") {
    if (!choice.group || !choice.shape_dim) invalid("trivial connection needs group and shape_dim");
    return trivial_connection(Bundle(*choice.shape_dim, parse_group(*choice.group)),
                              choice.validity_radius);
  }
  if (choice.family == "euler_poincare") {
    if (!choice.group) invalid("euler_poincare connection needs a group");
    return check_bundle(euler_poincare_connection(parse_group(*choice.group)));
  }
  if (choice.family == "mechanical") {
    const DiscreteLagrangian L = fixtures::lagrangian_by_name(choice.fixture, choice.timestep);
    return check_bundle(discrete_mechanical_connection(L, choice.validity_radius));
  }
  const ContinuousConnection a = fixtures::continuous_by_name(choice.fixture);
  if (choice.family == "exponentiated") {
    return check_bundle(exact_discrete_connection(a, product_log, choice.validity_radius));
  }
  if (choice.family == "cayley") {
    return check_bundle(cayley_discrete_connection(a, cayley_product_log, choice.validity_radius));
  }
  if (choice.family == "forward") {
    return check_bundle(forward_discrete_connection(a, product_log, choice.validity_radius));
  }
  invalid("unknown connection family '" + choice.family + "'");
}

BundlePoint build_point(const Bundle& bundle, const PointInput& input) {
  const Group& g = bundle.group();
  GroupElement fiber = GroupElement::identity(g);
  if (input.fiber.log) {
    if (input.fiber.log->size() != g.algebra_dim()) {
      invalid("fiber log has " + std::to_string(input.fiber.log->size()) +
              " coordinates; " + g.name() + " needs " + std::to_string(g.algebra_dim()));
    }
    fiber = exp(AlgebraElement(g, *input.fiber.log));
  } else if (input.fiber.matrix) {
    fiber = GroupElement::from_matrix(g, *input.fiber.matrix);
  }
  if (input.shape.size() != bundle.shape_dim()) {
    invalid("shape has " + std::to_string(input.shape.size()) + " coordinates; the bundle needs " +
            std::to_string(bundle.shape_dim()));
  }
  return bundle.point(input.shape, fiber);
}

std::vector<PairElement> random_pairs(const Bundle& bundle, const RandomPairs& request) {
  std::mt19937_64 rng(request.seed);
  const int ns = bundle.shape_dim();
  const int na = bundle.group().algebra_dim();
  const double scale = ns > 0 ? 1.0 / std::sqrt(static_cast<double>(ns)) : 0.0;
  std::vector<PairElement> pairs;
  pairs.reserve(request.count);
  for (int i = 0; i < request.count; ++i) {
    const Eigen::VectorXd x0 = request.radius * scale * uniform_cube(rng, ns);
    const Eigen::VectorXd x1 = x0 + request.separation * scale * uniform_cube(rng, ns);
    const GroupElement g0 = exp(AlgebraElement(bundle.group(), uniform_cube(rng, na)));
    const GroupElement g1 = exp(AlgebraElement(bundle.group(), uniform_cube(rng, na)));
    pairs.push_back(PairElement{bundle.point(x0, g0), bundle.point(x1, g1)});
  }
  return pairs;
}

LoadedMesh load_mesh(const MeshSource& source) {
  if (source.path) {
    const auto& path = *source.path;
    const std::string name = path.filename().string();
    if (path.extension() == ".off") {
      std::ifstream in(path);
      if (!in) throw Error(Errc::ParseError, "cannot read mesh '" + path.string() + "'");
      const EmbeddedMesh mesh = read_off(in);
      return LoadedMesh{complex_from_embedding(mesh), mesh.positions, name};
    }
    return LoadedMesh{load_complex(path), std::nullopt, name};
  }
  if (source.generator == "cone") {
    return LoadedMesh{equilateral_cone(source.k), std::nullopt,
                      "cone(k=" + std::to_string(source.k) + ")"};
  }
  EmbeddedMesh mesh;
  std::string description;
  if (source.generator == "icosphere") {
    mesh = icosphere(source.level, source.axis);
    const char* axis = source.axis == IcosphereAxis::Vertex ? "vertex"
                       : source.axis == IcosphereAxis::Edge ? "edge"
                                                          : "face";
    description =
        "icosphere(level=" + std::to_string(source.level) + ", axis=" + std::string(axis) + ")";
  } else if (source.generator == "flat_grid") {
    mesh = flat_grid(source.nx, source.ny);
    description = "flat_grid(nx=" + std::to_string(source.nx) + ", ny=" + std::to_string(source.ny) + ")";
  } else if (source.generator == "torus") {
    mesh = torus(source.m, source.n, source.major_radius, source.minor_radius);
    description = "torus(m=" + std::to_string(source.m) + ", n=" + std::to_string(source.n) + ")";
  } else {
    invalid("unknown mesh generator '" + source.generator + "'");
  }
  return LoadedMesh{complex_from_embedding(mesh), mesh.positions, description};
}

json cmd_decompose(const RunConfig& cfg) {
  const DiscreteConnection c = build_connection(cfg.connection);
  const Bundle& bundle = c.bundle();

  std::vector<PairElement> pairs;
  std::vector<std::string> sources;
  for (std::size_t i = 0; i < cfg.pairs.size(); ++i) {
    with_index_context("pair", i, [&] {
      pairs.push_back(
          PairElement{build_point(bundle, cfg.pairs[i].q0), build_point(bundle, cfg.pairs[i].q1)});
    });
    sources.emplace_back("config");
  }
  for (auto& p : random_pairs(bundle, cfg.random_pairs)) {
    pairs.push_back(std::move(p));
    sources.emplace_back("random");
  }

  std::vector<json> entries(pairs.size());
  std::vector<double> worst(pairs.size(), 0.0);
  parallel_for(pairs.size(), [&](std::size_t i) {
    with_index_context("pair", i, [&] {
      const PairElement& p = pairs[i];
      const GroupElement form = eval_form(c, p);
      const PairElement ver = vertical_component(c, p);
      const PairElement hor = horizontal_component(c, p);
      const double reconstruction = distance(vertical_compose(ver, hor), p);
      const double horizontal_form = conj_invariant_norm(eval_form(c, hor));
      const QuotientPair qp = QuotientPair::from_pair(p);
      const IsoImage iso = iso_alpha(c, qp);
      const QuotientPair back = iso_alpha_inv(c, iso.x0, iso.x1, iso.adjoint);
      const double iso_round_trip = distance(back.representative(), qp.representative());
      worst[i] = std::max({reconstruction, horizontal_form, iso_round_trip});
      entries[i] = json{
          {"index", i},
          {"source", sources[i]},
          {"pair", pair_json(p)},
          {"form", matrix_json(form.matrix())},
          {"vertical", pair_json(ver)},
          {"horizontal", pair_json(hor)},
          {"iso",
           json{{"x0", vector_json(iso.x0.coords)},
                {"x1", vector_json(iso.x1.coords)},
                {"adjoint", matrix_json(iso.adjoint.group_part.matrix())}}},
          {"residuals",
           json{{"reconstruction", reconstruction},
                {"horizontal_form", horizontal_form},
                {"iso_round_trip", iso_round_trip}}},
          {"within_tolerance", worst[i] <= cfg.tolerance},
      };
    });
  });

  double max_residual = 0.0;
  for (double w : worst) max_residual = std::max(max_residual, w);
  return json{{"command", "decompose"},
              {"connection", connection_json(cfg.connection, c)},
              {"tolerance", cfg.tolerance},
              {"pairs", entries},
              {"max_residual", max_residual},
              {"within_tolerance", max_residual <= cfg.tolerance}};
}

json cmd_order(const RunConfig& cfg) {
  const DiscreteConnection candidate = build_connection(cfg.candidate);
  const DiscreteConnection reference = build_connection(cfg.reference);
  if (!(candidate.bundle() == reference.bundle())) {
    invalid("candidate and reference connections live on different bundles");
  }
  const Bundle& bundle = reference.bundle();
  const BundlePoint q = cfg.base ? build_point(bundle, *cfg.base)
                                 : bundle.point_at_identity(Eigen::VectorXd::Zero(bundle.shape_dim()));
  const auto directions = quasi_random_directions(bundle, q, cfg.direction_count);

  json report{{"command", "order"},
              {"candidate", connection_json(cfg.candidate, candidate)},
              {"reference", connection_json(cfg.reference, reference)},
              {"base", point_json(q)},
              {"steps", cfg.h_sweep},
              {"error_floor", kErrorFloor}};
  json dirs = json::array();
  for (const auto& v : directions) {
    dirs.push_back(json{{"shape_velocity", vector_json(v.shape_velocity)},
                        {"fiber_velocity", vector_json(v.fiber_velocity.coords())}});
  }
  report["directions"] = dirs;

  auto add_errors = [&report](const std::vector<std::vector<double>>& errors) {
    json max_errors = json::array();
    for (const auto& row : errors) max_errors.push_back(*std::max_element(row.begin(), row.end()));
    report["errors"] = errors;
    report["max_errors"] = max_errors;
  };

  try {
    const OrderEstimate est = estimate_order(candidate, reference, q, directions, cfg.h_sweep);
    add_errors(est.errors);
    report["fitted_steps"] = est.fitted_steps;
    if (est.status == OrderStatus::ExactMatch) {
      report["status"] = "exact_match";
      report["slope"] = nullptr;
      report["order"] = nullptr;
    } else {
      report["status"] = "fitted";
      report["slope"] = est.slope;
      report["order"] = est.order;
    }
  } catch (const Error& e) {
    if (e.code() != Errc::DegenerateFit) throw;
    add_errors(approximation_errors(candidate, reference, q, directions, cfg.h_sweep));
    report["status"] = "degenerate";
    report["slope"] = nullptr;
    report["order"] = nullptr;
    report["warning"] = e.what();
  }
  return report;
}

json cmd_curvature(const RunConfig& cfg) {
  const LoadedMesh mesh = load_mesh(cfg.mesh);
  const MetricComplex& k = mesh.complex;
  const DualOneForm a = levi_civita_connection(k);
  const auto quality = quality_report(k, a);
  const GaussBonnetSummary gb = gauss_bonnet(k, a);

  std::vector<json> entries(quality.size());
  parallel_for(quality.size(), [&](std::size_t i) {
    const QualityEntry& q = quality[i];
    entries[i] = json{{"vertex", q.vertex},
                      {"norm", q.norm},
                      {"cut_locus", q.cut_locus},
                      {"angle", curvature_angle(k, a, q.vertex)},
                      {"angle_defect", angle_defect(k, q.vertex)}};
  });

  json report{{"command", "curvature"},
              {"mesh",
               json{{"description", mesh.description},
                    {"vertices", k.vertex_count()},
                    {"edges", k.edge_count()},
                    {"triangles", k.triangle_count()},
                    {"closed", gb.closed}}},
              {"basepoint", "lowest-index incident triangle, counter-clockwise loop"},
              {"entries", entries},
              {"total", gb.total},
              {"defect_total", gb.defect_total},
              {"euler_characteristic", gb.euler_characteristic},
              {"gauss_bonnet_tolerance", cfg.gauss_bonnet_tolerance}};
  if (!quality.empty()) {
    report["max"] = json{{"vertex", quality.front().vertex}, {"norm", quality.front().norm}};
  } else {
    report["max"] = nullptr;
  }
  if (gb.closed) {
    const double expected = kTwoPi * gb.euler_characteristic;
    report["expected_total"] = expected;
    report["gauss_bonnet_error"] = std::abs(gb.total - expected);
    report["gauss_bonnet_ok"] = std::abs(gb.total - expected) <= cfg.gauss_bonnet_tolerance;
  } else {
    report["expected_total"] = nullptr;
    report["gauss_bonnet_error"] = nullptr;
    report["gauss_bonnet_ok"] = nullptr;
  }
  return report;
}

json cmd_holonomy(const RunConfig& cfg) {
  const LoadedMesh mesh = load_mesh(cfg.mesh);
  const MetricComplex& k = mesh.complex;
  const DualOneForm a = levi_civita_connection(k);

  std::vector<int> loop;
  json loop_json;
  switch (cfg.loop.kind) {
    case LoopChoice::Kind::Triangles:
      loop = cfg.loop.triangles;
      loop_json = json{{"kind", "triangles"}};
      break;
    case LoopChoice::Kind::Vertex:
      if (cfg.loop.vertex >= k.vertex_count()) {
        invalid("loop vertex " + std::to_string(cfg.loop.vertex) + " out of range");
      }
      loop = vertex_loop(k, cfg.loop.vertex);
      loop_json = json{{"kind", "vertex"}, {"vertex", cfg.loop.vertex}};
      break;
    case LoopChoice::Kind::Latitude:
      if (!mesh.positions) invalid("a latitude loop needs an embedded mesh (OFF or generator)");
      loop = latitude_loop(k, *mesh.positions, cfg.loop.colatitude_deg * std::numbers::pi / 180.0);
      loop_json = json{{"kind", "latitude"}, {"colatitude_deg", cfg.loop.colatitude_deg}};
      break;
  }
  loop_json["triangles"] = loop;

  const GroupElement h = holonomy(k, a, loop);
  const double angle = rotation_angle(h);
  const EnclosedRegion region = enclosed_vertices(k, loop);
  std::vector<double> enclosed_angles(region.vertices.size(), 0.0);
  parallel_for(region.vertices.size(), [&](std::size_t i) {
    const int v = region.vertices[i];
    if (k.is_interior_vertex(v)) enclosed_angles[i] = curvature_angle(k, a, v);
  });
  double enclosed = 0.0;
  for (double x : enclosed_angles) enclosed += x;

  json report{{"command", "holonomy"},
              {"mesh",
               json{{"description", mesh.description},
                    {"vertices", k.vertex_count()},
                    {"triangles", k.triangle_count()}}},
              {"basepoint", "first triangle of the loop"},
              {"loop", loop_json},
              {"matrix", matrix_json(h.matrix())},
              {"angle", angle},
              {"enclosed_vertices", region.vertices},
              {"separating", region.separating},
              {"enclosed_curvature", enclosed},
              {"enclosed_difference", std::remainder(angle - enclosed, kTwoPi)},
              {"tolerance", cfg.holonomy_tolerance}};
  if (cfg.loop.kind == LoopChoice::Kind::Latitude) {
    const double alpha = cfg.loop.colatitude_deg * std::numbers::pi / 180.0;
    const double expected = kTwoPi * (1.0 - std::cos(alpha));
    const double error = std::remainder(angle - expected, kTwoPi);
    report["expected_angle"] = expected;
    report["foucault_phase"] = kTwoPi * std::cos(alpha);
    report["error"] = error;
    report["within_tolerance"] = std::abs(error) <= cfg.holonomy_tolerance;
  }
  return report;
}

json run_command(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Decompose: return cmd_decompose(cfg);
    case Command::Order: return cmd_order(cfg);
    case Command::Curvature: return cmd_curvature(cfg);
    case Command::Holonomy: return cmd_holonomy(cfg);
  }
  invalid("unknown command");
}

std::string render_report(const json& report) { return report.dump(2) + "\n"; }

}  // namespace dconn::cli
