#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "resurgence/job.hpp"

namespace fs = std::filesystem;
using namespace resurgence;

namespace {

bool write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resurgence numbers of graded families of monomial ideals"};
  std::string config_path, out_path, format;
  std::optional<std::int64_t> window, cutoff, kmax, horizon;
  bool no_timing = false;
  app.add_option("--config", config_path, "job description (JSON)")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "report file (json) or directory (csv); stdout when omitted");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--window", window, "Waldschmidt window")->check(CLI::PositiveNumber);
  app.add_option("--cutoff", cutoff, "search cutoff D")->check(CLI::PositiveNumber);
  app.add_option("--kmax", kmax, "largest Veronese index searched")->check(CLI::PositiveNumber);
  app.add_option("--horizon", horizon, "validation horizon")->check(CLI::PositiveNumber);
  app.add_flag("--no-timing", no_timing, "omit the wall-clock section");
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(config_path);
  std::stringstream text;
  text << in.rdbuf();
  ParseResult parsed = parse_config(text.str());
  if (!parsed.config) {
    for (const auto& e : parsed.errors) std::cerr << "config error: " << e << "\n";
    return 2;
  }
  const JobConfig& config = *parsed.config;
  if (format.empty()) format = config.output.format;
  if (out_path.empty()) out_path = config.output.path;

  RunReport report = run(config, Overrides{window, cutoff, kmax, horizon});
  for (const auto& t : report.tasks) {
    if (!t.ok) std::cerr << "task " << t.index << " (" << t.op << ") failed: " << t.error << "\n";
  }

  if (format == "json") {
    const std::string body = emit_json(report, !no_timing);
    if (out_path.empty()) std::cout << body;
    else if (!write_file(out_path, body)) {
      std::cerr << "cannot write " << out_path << "\n";
      return 3;
    }
  } else {
    auto files = emit_csv(report);
    if (out_path.empty()) {
      for (const auto& [name, body] : files) std::cout << "# " << name << "\n" << body;
    } else {
      std::error_code ec;
      fs::create_directories(out_path, ec);
      for (const auto& [name, body] : files) {
        if (ec || !write_file(fs::path(out_path) / name, body)) {
          std::cerr << "cannot write " << (fs::path(out_path) / name).string() << "\n";
          return 3;
        }
      }
    }
  }
  return report.any_error() ? 1 : 0;
}
