#include "dconn_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "dconn/error.hpp"
#include "dconn/numerics.hpp"

namespace dconn::cli {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw Error(Errc::InvalidArgument, message);
}

void check_keys(const json& object, std::string_view where,
                std::initializer_list<std::string_view> allowed) {
  if (!object.is_object()) invalid(std::string(where) + " must be an object");
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      invalid("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

double get_number(const json& j, std::string_view where) {
  if (!j.is_number()) invalid(std::string(where) + " must be a number");
  const double value = j.get<double>();
  if (!std::isfinite(value)) invalid(std::string(where) + " must be finite");
  return value;
}

double get_positive(const json& j, std::string_view where) {
  const double value = get_number(j, where);
  if (!(value > 0.0)) invalid(std::string(where) + " must be positive");
  return value;
}

int get_int(const json& j, std::string_view where) {
  if (!j.is_number_integer()) invalid(std::string(where) + " must be an integer");
  return j.get<int>();
}

int get_nonnegative_int(const json& j, std::string_view where) {
  const int value = get_int(j, where);
  if (value < 0) invalid(std::string(where) + " must be non-negative");
  return value;
}

std::string get_string(const json& j, std::string_view where) {
  if (!j.is_string()) invalid(std::string(where) + " must be a string");
  return j.get<std::string>();
}

Eigen::VectorXd get_vector(const json& j, std::string_view where) {
  if (!j.is_array()) invalid(std::string(where) + " must be an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = get_number(j[i], where);
  }
  return v;
}

Eigen::MatrixXd get_matrix(const json& j, std::string_view where) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    invalid(std::string(where) + " must be an array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      invalid(std::string(where) + " rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = get_number(row[static_cast<std::size_t>(c)], where);
    }
  }
  return m;
}

PointInput parse_point(const json& j, std::string_view where) {
  check_keys(j, where, {"shape", "fiber"});
  PointInput point;
  point.shape = j.contains("shape") ? get_vector(j["shape"], std::string(where) + ".shape")
                                    : Eigen::VectorXd(0);
  if (j.contains("fiber")) {
    const json& f = j["fiber"];
    const std::string fw = std::string(where) + ".fiber";
    check_keys(f, fw, {"log", "matrix"});
    if (f.contains("log") == f.contains("matrix")) {
      invalid(fw + " needs exactly one of 'log' or 'matrix'");
    }
    if (f.contains("log")) point.fiber.log = get_vector(f["log"], fw + ".log");
    if (f.contains("matrix")) point.fiber.matrix = get_matrix(f["matrix"], fw + ".matrix");
  }
  return point;
}

ConnectionChoice parse_connection(const json& j, std::string_view where) {
  if (j.is_string()) return parse_connection_choice(j.get<std::string>());
  check_keys(j, where, {"name", "group", "shape_dim", "validity_radius", "timestep"});
  if (!j.contains("name")) invalid(std::string(where) + ".name is required");
  ConnectionChoice choice = parse_connection_choice(get_string(j["name"], std::string(where) + ".name"));
  if (j.contains("group")) choice.group = get_string(j["group"], std::string(where) + ".group");
  if (j.contains("shape_dim")) {
    choice.shape_dim = get_nonnegative_int(j["shape_dim"], std::string(where) + ".shape_dim");
  }
  if (j.contains("validity_radius")) {
    choice.validity_radius =
        get_positive(j["validity_radius"], std::string(where) + ".validity_radius");
  }
  if (j.contains("timestep")) {
    choice.timestep = get_positive(j["timestep"], std::string(where) + ".timestep");
  }
  return choice;
}

std::vector<double> parse_h_sweep(const json& j) {
  std::vector<double> steps;
  if (j.is_array()) {
    for (const auto& h : j) steps.push_back(get_positive(h, "h_sweep entry"));
  } else {
    check_keys(j, "h_sweep", {"max", "min", "count"});
    for (const char* key : {"max", "min", "count"}) {
      if (!j.contains(key)) invalid(std::string("h_sweep.") + key + " is required");
    }
    const double hi = get_positive(j["max"], "h_sweep.max");
    const double lo = get_positive(j["min"], "h_sweep.min");
    const int count = get_int(j["count"], "h_sweep.count");
    if (count < 2) invalid("h_sweep.count must be at least 2");
    if (!(hi > lo)) invalid("h_sweep.max must exceed h_sweep.min");
    steps = numerics::log_sweep(hi, lo, count);
  }
  if (steps.size() < 2) invalid("h_sweep needs at least two steps");
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (!(steps[i] < steps[i - 1])) invalid("h_sweep must be strictly decreasing");
  }
  return steps;
}

IcosphereAxis parse_axis(const std::string& name) {
  if (name == "vertex") return IcosphereAxis::Vertex;
  if (name == "edge") return IcosphereAxis::Edge;
  if (name == "face") return IcosphereAxis::Face;
  invalid("mesh.axis must be 'vertex', 'edge' or 'face'");
}

MeshSource parse_mesh(const json& j, const std::filesystem::path& base_dir) {
  MeshSource choice;
  if (j.is_string()) {
    std::filesystem::path p = j.get<std::string>();
    choice.path = p.is_absolute() ? p : base_dir / p;
    return choice;
  }
  check_keys(j, "mesh", {"generator", "level", "axis", "nx", "ny", "m", "n", "major_radius",
                         "minor_radius", "k"});
  if (!j.contains("generator")) invalid("mesh.generator is required");
  choice.generator = get_string(j["generator"], "mesh.generator");
  if (choice.generator == "icosphere") {
    if (j.contains("level")) choice.level = get_nonnegative_int(j["level"], "mesh.level");
    if (choice.level > 7) invalid("mesh.level must be at most 7");
    if (j.contains("axis")) choice.axis = parse_axis(get_string(j["axis"], "mesh.axis"));
  } else if (choice.generator == "flat_grid") {
    if (j.contains("nx")) choice.nx = get_int(j["nx"], "mesh.nx");
    if (j.contains("ny")) choice.ny = get_int(j["ny"], "mesh.ny");
    if (choice.nx < 1 || choice.ny < 1) invalid("mesh.nx and mesh.ny must be positive");
  } else if (choice.generator == "torus") {
    if (j.contains("m")) choice.m = get_int(j["m"], "mesh.m");
    if (j.contains("n")) choice.n = get_int(j["n"], "mesh.n");
    if (j.contains("major_radius")) {
      choice.major_radius = get_positive(j["major_radius"], "mesh.major_radius");
    }
    if (j.contains("minor_radius")) {
      choice.minor_radius = get_positive(j["minor_radius"], "mesh.minor_radius");
    }
    if (choice.m < 3 || choice.n < 3) invalid("mesh.m and mesh.n must be at least 3");
    if (!(choice.minor_radius < choice.major_radius)) {
      invalid("mesh.minor_radius must be below mesh.major_radius");
    }
  } else if (choice.generator == "cone") {
    if (j.contains("k")) choice.k = get_int(j["k"], "mesh.k");
    if (choice.k < 3) invalid("mesh.k must be at least 3");
  } else {
    invalid("unknown mesh generator '" + choice.generator + "'");
  }
  return choice;
}

LoopChoice parse_loop(const json& j) {
  LoopChoice loop;
  if (j.is_array()) {
    loop.kind = LoopChoice::Kind::Triangles;
    for (const auto& t : j) loop.triangles.push_back(get_nonnegative_int(t, "loop entry"));
    if (loop.triangles.empty()) invalid("loop must not be empty");
    return loop;
  }
  check_keys(j, "loop", {"vertex", "colatitude_deg"});
  if (j.contains("vertex") == j.contains("colatitude_deg")) {
    invalid("loop needs exactly one of 'vertex' or 'colatitude_deg'");
  }
  if (j.contains("vertex")) {
    loop.kind = LoopChoice::Kind::Vertex;
    loop.vertex = get_nonnegative_int(j["vertex"], "loop.vertex");
  } else {
    loop.kind = LoopChoice::Kind::Latitude;
    loop.colatitude_deg = get_number(j["colatitude_deg"], "loop.colatitude_deg");
    if (!(loop.colatitude_deg > 0.0 && loop.colatitude_deg < 180.0)) {
      invalid("loop.colatitude_deg must lie in (0, 180)");
    }
  }
  return loop;
}

void require(const json& j, const char* key) {
  if (!j.contains(key)) invalid(std::string("'") + key + "' is required");
}

}  // namespace

Command parse_command(std::string_view name) {
  if (name == "decompose") return Command::Decompose;
  if (name == "order") return Command::Order;
  if (name == "curvature") return Command::Curvature;
  if (name == "holonomy") return Command::Holonomy;
  invalid("unknown command '" + std::string(name) + "'");
}

std::string_view to_string(Command command) noexcept {
  switch (command) {
    case Command::Decompose: return "decompose";
    case Command::Order: return "order";
    case Command::Curvature: return "curvature";
    case Command::Holonomy: return "holonomy";
  }
  return "unknown";
}

std::string ConnectionChoice::name() const {
  return fixture.empty() ? family : family + ":" + fixture;
}

ConnectionChoice parse_connection_choice(std::string_view text) {
  ConnectionChoice choice;
  const auto colon = text.find(':');
  choice.family = std::string(text.substr(0, colon));
  if (colon != std::string_view::npos) choice.fixture = std::string(text.substr(colon + 1));
  const bool plain = choice.family == "trivial" || choice.family == "euler_poincare";
  const bool fixtured = choice.family == "mechanical" || choice.family == "exponentiated" ||
                        choice.family == "cayley" || choice.family == "forward";
  if (!plain && !fixtured) invalid("unknown connection family '" + choice.family + "'");
  if (plain && colon != std::string_view::npos) {
    invalid("connection family '" + choice.family + "' takes no fixture");
  }
  if (fixtured && choice.fixture.empty()) {
    invalid("connection family '" + choice.family + "' needs a fixture, e.g. " + choice.family +
            ":so3_coupled");
  }
  return choice;
}

RunConfig parse_run_config(Command command, const json& document,
                           const std::filesystem::path& base_dir) {
  if (!document.is_object()) invalid("config must be a JSON object");
  RunConfig cfg;
  cfg.command = command;
  cfg.base_dir = base_dir;
  if (document.contains("command") &&
      get_string(document["command"], "command") != to_string(command)) {
    invalid("config is for command '" + document["command"].get<std::string>() +
            "', not '" + std::string(to_string(command)) + "'");
  }
  if (document.contains("output")) {
    std::filesystem::path out = get_string(document["output"], "output");
    cfg.output = out.is_absolute() ? out : base_dir / out;
  }

  switch (command) {
    case Command::Decompose: {
      check_keys(document, "config",
                 {"command", "output", "connection", "pairs", "random_pairs", "tolerance"});
      require(document, "connection");
      cfg.connection = parse_connection(document["connection"], "connection");
      if (document.contains("pairs")) {
        const json& pairs = document["pairs"];
        if (!pairs.is_array()) invalid("pairs must be an array");
        for (std::size_t i = 0; i < pairs.size(); ++i) {
          const std::string where = "pairs[" + std::to_string(i) + "]";
          check_keys(pairs[i], where, {"q0", "q1"});
          if (!pairs[i].contains("q0") || !pairs[i].contains("q1")) {
            invalid(where + " needs q0 and q1");
          }
          cfg.pairs.push_back(PairInput{parse_point(pairs[i]["q0"], where + ".q0"),
                                       parse_point(pairs[i]["q1"], where + ".q1")});
        }
      }
      if (document.contains("random_pairs")) {
        const json& r = document["random_pairs"];
        check_keys(r, "random_pairs", {"count", "seed", "radius", "separation"});
        if (r.contains("count")) {
          cfg.random_pairs.count = get_nonnegative_int(r["count"], "random_pairs.count");
        }
        if (r.contains("seed")) {
          if (!r["seed"].is_number_unsigned()) {
            invalid("random_pairs.seed must be a non-negative integer");
          }
          cfg.random_pairs.seed = r["seed"].get<std::uint64_t>();
        }
        if (r.contains("radius")) {
          cfg.random_pairs.radius = get_positive(r["radius"], "random_pairs.radius");
        }
        if (r.contains("separation")) {
          cfg.random_pairs.separation =
              get_positive(r["separation"], "random_pairs.separation");
        }
      }
      if (cfg.pairs.empty() && cfg.random_pairs.count == 0) {
        invalid("decompose needs 'pairs' or 'random_pairs'");
      }
      if (document.contains("tolerance")) {
        cfg.tolerance = get_positive(document["tolerance"], "tolerance");
      }
      break;
    }
    case Command::Order: {
      check_keys(document, "config",
                 {"command", "output", "candidate", "reference", "base", "directions",
                  "h_sweep"});
      require(document, "candidate");
      require(document, "reference");
      cfg.candidate = parse_connection(document["candidate"], "candidate");
      cfg.reference = parse_connection(document["reference"], "reference");
      if (document.contains("base")) cfg.base = parse_point(document["base"], "base");
      if (document.contains("directions")) {
        cfg.direction_count = get_int(document["directions"], "directions");
        if (cfg.direction_count < 1) invalid("directions must be positive");
      }
      cfg.h_sweep = document.contains("h_sweep") ? parse_h_sweep(document["h_sweep"])
                                                 : numerics::log_sweep(1e-1, 1e-3, 9);
      break;
    }
    case Command::Curvature: {
      check_keys(document, "config", {"command", "output", "mesh", "gauss_bonnet_tolerance"});
      require(document, "mesh");
      cfg.mesh = parse_mesh(document["mesh"], base_dir);
      if (document.contains("gauss_bonnet_tolerance")) {
        cfg.gauss_bonnet_tolerance =
            get_positive(document["gauss_bonnet_tolerance"], "gauss_bonnet_tolerance");
      }
      break;
    }
    case Command::Holonomy: {
      check_keys(document, "config", {"command", "output", "mesh", "loop", "holonomy_tolerance"});
      require(document, "mesh");
      require(document, "loop");
      cfg.mesh = parse_mesh(document["mesh"], base_dir);
      cfg.loop = parse_loop(document["loop"]);
      if (document.contains("holonomy_tolerance")) {
        cfg.holonomy_tolerance =
            get_positive(document["holonomy_tolerance"], "holonomy_tolerance");
      }
      break;
    }
  }
  return cfg;
}

RunConfig load_run_config(Command command, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot read config '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  json document;
  try {
    document = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, "config '" + path.string() + "': " + e.what());
  }
  return parse_run_config(command, document, path.parent_path());
}

}  // namespace dconn::cli
