#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "dconn/error.hpp"
#include "dconn/parallel.hpp"
#include "dconn_cli/commands.hpp"

namespace dconn::cli {

namespace {

void apply_thread_env() {
  const char* value = std::getenv("DCONN_THREADS");
  if (value == nullptr || *value == '\0') return;
  const std::string text(value);
  int threads = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), threads);
  if (ec != std::errc() || ptr != text.data() + text.size() || threads < 1) {
    throw Error(Errc::InvalidArgument,
                "DCONN_THREADS must be a positive integer, got '" + text + "'");
  }
  set_thread_limit(threads);
}

void write_report(const std::string& text, const std::optional<std::filesystem::path>& path,
                  std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(Errc::ParseError, "cannot open output '" + path->string() + "'");
  file << text;
  if (!file.flush()) throw Error(Errc::ParseError, "cannot write output '" + path->string() + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete connections on principal bundles", "dconn"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  const std::pair<Command, const char*> commands[] = {
      {Command::Decompose, "hor/ver decomposition, connection form and isomorphism round-trip"},
      {Command::Order, "order of a candidate discrete connection against a reference"},
      {Command::Curvature, "per-vertex curvature norms and the Gauss-Bonnet total of a mesh"},
      {Command::Holonomy, "holonomy of the Levi-Civita connection around a dual loop"},
  };
  for (const auto& [command, description] : commands) {
    CLI::App* sub = app.add_subcommand(std::string(to_string(command)), description);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_path, "write the report here instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    apply_thread_env();
    const Command command = parse_command(name);
    RunConfig cfg = load_run_config(command, config_path);
    if (!out_path.empty()) cfg.output = out_path;
    write_report(render_report(run_command(cfg)), cfg.output, out);
    return kExitOk;
  } catch (const Error& e) {
    err << "dconn " << name << ": " << e.what() << "\n";
    return e.code() == Errc::ParseError ? kExitParse : kExitDomain;
  } catch (const nlohmann::json::exception& e) {
    err << "dconn " << name << ": InvalidArgument: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "dconn " << name << ": ParseError: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << "dconn " << name << ": " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace dconn::cli
