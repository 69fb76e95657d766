#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dconn/mesh.hpp"
#include "json.hpp"

namespace dconn::cli {

enum class Command { Decompose, Order, Curvature, Holonomy };

Command parse_command(std::string_view name);
std::string_view to_string(Command command) noexcept;

/// A built-in connection family: "trivial", "euler_poincare",
/// "mechanical:<lagrangian>", "exponentiated:<continuous>",
/// "cayley:<continuous>" or "forward:<continuous>".
struct ConnectionChoice {
  std::string family;
  std::string fixture;               // empty for trivial and euler_poincare
  std::optional<std::string> group;  // required by trivial and euler_poincare
  std::optional<int> shape_dim;      // required by trivial
  double validity_radius = 0.5;
  double timestep = 0.1;             // mechanical only

  [[nodiscard]] std::string name() const;
};

ConnectionChoice parse_connection_choice(std::string_view text);

/// A fiber given either as Lie algebra coordinates (applied through exp) or
/// as an explicit matrix; identity when neither is present.
struct FiberInput {
  std::optional<Eigen::VectorXd> log;
  std::optional<Eigen::MatrixXd> matrix;
};

struct PointInput {
  Eigen::VectorXd shape;
  FiberInput fiber;
};

struct PairInput {
  PointInput q0;
  PointInput q1;
};

/// Seeded random pairs: shapes uniform in a ball of `radius` around the
/// origin and the second shape within `separation` of the first, fibers
/// exp of algebra vectors with coordinates uniform in [-1, 1].
struct RandomPairs {
  int count = 0;
  std::uint64_t seed = 1;
  double radius = 0.5;
  double separation = 0.2;
};

struct MeshSource {
  std::optional<std::filesystem::path> path;  // resolved against the config directory
  std::string generator;                      // icosphere, flat_grid, torus, cone
  int level = 3;
  IcosphereAxis axis = IcosphereAxis::Vertex;
  int nx = 4;
  int ny = 4;
  int m = 16;
  int n = 8;
  double major_radius = 2.0;
  double minor_radius = 1.0;
  int k = 5;
};

struct LoopChoice {
  enum class Kind { Triangles, Vertex, Latitude };
  Kind kind = Kind::Triangles;
  std::vector<int> triangles;
  int vertex = 0;
  double colatitude_deg = 0.0;
};

/// Validated run configuration. Tolerances are positive and h-sweeps strictly
/// decreasing.
struct RunConfig {
  Command command = Command::Decompose;
  std::filesystem::path base_dir;
  std::optional<std::filesystem::path> output;

  // decompose
  ConnectionChoice connection;
  std::vector<PairInput> pairs;
  RandomPairs random_pairs;
  double tolerance = 1e-10;

  // order
  ConnectionChoice candidate;
  ConnectionChoice reference;
  std::optional<PointInput> base;
  int direction_count = 32;
  std::vector<double> h_sweep;

  // curvature, holonomy
  MeshSource mesh;
  LoopChoice loop;
  double gauss_bonnet_tolerance = 1e-9;
  double holonomy_tolerance = 2e-2;
};

/// Builds a RunConfig for `command` from a JSON document. A "command" key,
/// if present, must agree. Throws dconn::Error: ParseError for malformed
/// JSON, InvalidArgument for schema or value violations.
RunConfig parse_run_config(Command command, const nlohmann::json& document,
                           const std::filesystem::path& base_dir);

/// Reads and parses a config file; IO failures are ParseError.
RunConfig load_run_config(Command command, const std::filesystem::path& path);

}  // namespace dconn::cli
