#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "invtool.h"

namespace fs = std::filesystem;

namespace {

std::string scenario_dir() {
  if (const char* d = std::getenv("INVTOOL_SCENARIOS")) return d;
  return INVTOOL_SCENARIO_DIR;
}

/// A bare name such as "example_1_1" refers to a bundled scenario.
std::string resolve(const std::string& arg) {
  if (fs::exists(arg)) return arg;
  fs::path p = fs::path(scenario_dir()) / (arg + ".json");
  if (arg.find('/') == std::string::npos && fs::exists(p)) return p.string();
  return arg;
}

int list_scenarios() {
  std::vector<fs::path> files;
  std::error_code ec;
  for (auto& e : fs::directory_iterator(scenario_dir(), ec))
    if (e.path().extension() == ".json") files.push_back(e.path());
  if (ec) {
    std::cerr << "invtool: cannot read " << scenario_dir() << ": " << ec.message() << "\n";
    return 1;
  }
  std::sort(files.begin(), files.end());
  int rc = 0;
  for (auto& f : files) {
    invt_scenario* s = nullptr;
    if (invt_scenario_load_file(f.string().c_str(), &s) != INVT_OK) {
      std::cerr << "invtool: " << invt_last_error() << "\n";
      rc = 1;
      continue;
    }
    std::printf("%-22s %2zu tasks  %s\n", invt_scenario_name(s), invt_scenario_task_count(s),
                invt_scenario_description(s));
    invt_scenario_free(s);
  }
  return rc;
}

int run(const std::string& arg, int jobs, int truncation, const std::string& out_dir, const std::string& format) {
  invt_format fmt = format == "json" ? INVT_FORMAT_JSON : format == "csv" ? INVT_FORMAT_CSV : INVT_FORMAT_TEXT;
  auto start = std::chrono::steady_clock::now();
  invt_scenario* s = nullptr;
  std::string path = resolve(arg);
  if (invt_scenario_load_file(path.c_str(), &s) != INVT_OK) {
    std::cerr << "invtool: " << invt_last_error() << "\n";
    return 1;
  }
  invt_run_options opt;
  invt_run_options_init(&opt);
  opt.jobs = jobs;
  opt.truncation = truncation;
  invt_report* r = nullptr;
  auto code = invt_scenario_run(s, &opt, &r);
  std::string name = invt_scenario_name(s);
  invt_scenario_free(s);
  if (code != INVT_OK) {
    std::cerr << "invtool: " << invt_error_name(code) << ": " << invt_last_error() << "\n";
    return 1;
  }
  const char* bytes = nullptr;
  size_t len = 0;
  invt_report_render(r, fmt, &bytes, &len);
  int rc = invt_report_exit_code(r);
  if (*invt_report_notice(r)) std::cerr << "invtool: " << name << ": " << invt_report_notice(r) << "\n";
  if (out_dir.empty()) {
    std::fwrite(bytes, 1, len, stdout);
  } else {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    fs::path target = fs::path(out_dir) / (name + (fmt == INVT_FORMAT_JSON ? ".json" : fmt == INVT_FORMAT_CSV ? ".csv" : ".txt"));
    std::ofstream o(target, std::ios::binary);
    o.write(bytes, static_cast<std::streamsize>(len));
    if (!o) {
      std::cerr << "invtool: cannot write " << target.string() << "\n";
      rc = 1;
    } else {
      std::cerr << "invtool: wrote " << target.string() << "\n";
    }
  }
  invt_report_free(r);
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  std::fprintf(stderr, "invtool: %s finished in %.2f s (exit %d)\n", name.c_str(), dt.count(), rc);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariant theory verifier"};
  app.require_subcommand(1);
  std::string scenario, out_dir, format = "text";
  int jobs = 1, truncation = 0;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario file or bundled scenario name");
  run_cmd->add_option("scenario", scenario, "Scenario JSON file or bundled name")->required();
  run_cmd->add_option("--jobs", jobs, "Worker threads inside tasks")->check(CLI::PositiveNumber);
  run_cmd->add_option("--truncation", truncation, "Override the truncation degree D")->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", out_dir, "Write the report into this directory");
  run_cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json", "csv"}));
  auto* list_cmd = app.add_subcommand("list-scenarios", "List bundled scenarios");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  if (list_cmd->parsed()) return list_scenarios();
  return run(scenario, jobs, truncation, out_dir, format);
}
