#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dconn/connection.hpp"
#include "dconn/levi_civita.hpp"
#include "dconn_cli/config.hpp"
#include "json.hpp"

namespace dconn::cli {

/// Connection named by a choice. Fixture families fix the bundle; explicit
/// group or shape_dim entries must then agree with it.
DiscreteConnection build_connection(const ConnectionChoice& choice);

BundlePoint build_point(const Bundle& bundle, const PointInput& input);

/// Deterministic pseudo-random pairs for a seed (independent of the standard
/// library's distribution implementations).
std::vector<PairElement> random_pairs(const Bundle& bundle, const RandomPairs& request);

/// A complex together with vertex positions when it came from an embedding.
struct LoadedMesh {
  MetricComplex complex;
  std::optional<std::vector<Eigen::Vector3d>> positions;
  std::string description;
};
LoadedMesh load_mesh(const MeshSource& source);

nlohmann::json cmd_decompose(const RunConfig& cfg);
nlohmann::json cmd_order(const RunConfig& cfg);
nlohmann::json cmd_curvature(const RunConfig& cfg);
nlohmann::json cmd_holonomy(const RunConfig& cfg);

nlohmann::json run_command(const RunConfig& cfg);

/// Sorted keys, two-space indentation, trailing newline.
std::string render_report(const nlohmann::json& report);

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitParse = 3;

/// Entry point shared by the executable and the tests. Reads DCONN_THREADS.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dconn::cli
