// Batch entry point: runs named identity checks or convergence studies and
// emits machine- or human-readable reports.
//
// Exit codes: 0 all selected checks pass, 1 any check fails,
// 2 configuration or usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loopforms/report.hpp"

using namespace loopforms;

namespace {

RunConfig parse_connection(RunConfig cfg, const std::string& spec) {
  if (spec == "zero") {
    cfg.preset = ConnectionPreset::Zero;
  } else if (spec == "mc") {
    cfg.preset = ConnectionPreset::MaurerCartan;
  } else if (spec.rfind("scaled", 0) == 0) {
    cfg.preset = ConnectionPreset::Scaled;
    auto colon = spec.find(':');
    if (colon != std::string::npos)
      cfg.alpha = std::stod(spec.substr(colon + 1));
  } else {
    throw GridError("unknown connection preset: " + spec);
  }
  return cfg;
}

void write_output(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    if (!body.empty() && body.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot open output path: " + path);
  out << body;
  if (!body.empty() && body.back() != '\n') out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verify: numerical identity suite for loop-space form data"};

  bool run_all_checks = false;
  std::vector<std::string> selected;
  std::string convergence_name;
  std::string report_format = "json";
  std::string output_path;
  std::string connection_spec = "scaled:0.7";
  std::string group = "su2";

  RunConfig cfg;

  app.add_flag("--all", run_all_checks, "run every registered check");
  app.add_option("--check", selected, "check name (repeatable)");
  app.add_option("--samples", cfg.samples, "loop samples N (even)");
  app.add_option("--steps", cfg.steps, "family steps S");
  app.add_option("--fd-step", cfg.fd_step, "finite-difference step h");
  app.add_option("--seed", cfg.seed, "master seed");
  app.add_option("--level", cfg.level, "bilinear form level");
  app.add_option("--connection", connection_spec,
                 "connection preset: zero | mc | scaled:alpha");
  app.add_option("--trials", cfg.trials, "randomized trials per check");
  app.add_option("--group", group, "structure group (su2, su3, ...)");
  app.add_option("--convergence", convergence_name,
                 "emit a convergence table for the named check");
  app.add_option("--report", report_format, "report format: json | md")
      ->check(CLI::IsMember({"json", "md"}));
  app.add_option("-o,--output", output_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg = parse_connection(cfg, connection_spec);
    cfg.group_dim = group_dim_from_name(group);
    cfg.validate();

    if (!convergence_name.empty()) {
      std::vector<std::pair<int, double>> grid = {
          {cfg.samples, cfg.fd_step},     {cfg.samples, cfg.fd_step / 2},
          {cfg.samples, cfg.fd_step / 4}, {cfg.samples / 2, cfg.fd_step},
          {cfg.samples / 4, cfg.fd_step},
      };
      auto rows = convergence_study(convergence_name, grid, cfg);
      if (report_format == "md")
        write_output(output_path,
                     emit_convergence_markdown(convergence_name, rows, cfg));
      else
        write_output(output_path,
                     emit_convergence_json(convergence_name, rows, cfg).dump(2));
      return 0;
    }

    if (!run_all_checks && selected.empty()) {
      std::cerr << "nothing to do: pass --all, --check NAME, or "
                   "--convergence NAME\n";
      return 2;
    }
    std::vector<CheckResult> results;
    if (run_all_checks) {
      results = run_all(cfg);
    } else {
      for (const auto& name : selected) results.push_back(run_check(name, cfg));
    }
    if (report_format == "md")
      write_output(output_path, emit_markdown(results, cfg));
    else
      write_output(output_path, emit_report(results, cfg).dump(2));
    for (const auto& r : results)
      if (!r.pass) return 1;
    return 0;
  } catch (const UnknownCheck& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GridError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
