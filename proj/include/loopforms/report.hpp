#pragma once

// Report emission: a versioned JSON schema and a Markdown mirror with the
// identity-to-check cross-reference table.

#include <sstream>

#include "loopforms/suite.hpp"

namespace loopforms {

inline constexpr const char* kReportVersion = "1";

inline Json config_to_json(const RunConfig& cfg) {
  Json j;
  j["group"] = group_name(cfg.group_dim);
  j["samples"] = cfg.samples;
  j["steps"] = cfg.steps;
  j["fd_step"] = cfg.fd_step;
  j["richardson"] = cfg.richardson;
  j["seed"] = cfg.seed;
  j["level"] = cfg.level;
  std::string conn = preset_name(cfg.preset);
  if (cfg.preset == ConnectionPreset::Scaled)
    conn += ":" + std::to_string(cfg.alpha);
  j["connection"] = conn;
  j["trials"] = cfg.trials;
  j["deriv"] = deriv_name(cfg.deriv);
  j["modes"] = cfg.recipe.modes;
  j["loop_amplitude"] = cfg.recipe.loop_amp;
  j["field_amplitude"] = cfg.recipe.field_amp;
  j["under_resolved"] = cfg.under_resolved();
  return j;
}

inline Json result_to_json(const CheckResult& r) {
  Json j;
  j["name"] = r.name;
  j["paper_anchor"] = r.paper_anchor;
  j["tolerance_class"] = r.tolerance_class;
  j["trials"] = r.trials;
  j["skipped"] = r.skipped;
  j["max_rel_residual"] = r.max_rel_residual;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  if (r.thinness_defect) j["thinness_defect"] = *r.thinness_defect;
  return j;
}

inline Json emit_report(const std::vector<CheckResult>& results,
                        const RunConfig& cfg) {
  Json j;
  j["version"] = kReportVersion;
  j["config"] = config_to_json(cfg);
  j["results"] = Json::array();
  for (const auto& r : results) j["results"].push_back(result_to_json(r));
  return j;
}

inline CheckResult result_from_json(const Json& j) {
  CheckResult r;
  r.name = j.at("name").get<std::string>();
  r.paper_anchor = j.at("paper_anchor").get<std::string>();
  r.tolerance_class = j.at("tolerance_class").get<std::string>();
  r.trials = j.at("trials").get<int>();
  r.skipped = j.at("skipped").get<int>();
  r.max_rel_residual = j.at("max_rel_residual").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.pass = j.at("pass").get<bool>();
  if (j.contains("thinness_defect"))
    r.thinness_defect = j.at("thinness_defect").get<double>();
  return r;
}

inline std::vector<CheckResult> results_from_json(const Json& report) {
  std::vector<CheckResult> out;
  for (const auto& j : report.at("results")) out.push_back(result_from_json(j));
  return out;
}

inline std::string emit_markdown(const std::vector<CheckResult>& results,
                                 const RunConfig& cfg) {
  std::ostringstream md;
  Json c = config_to_json(cfg);
  md << "# Identity verification report\n\n";
  md << "Config: ";
  md << "group " << c["group"].get<std::string>() << ", N " << cfg.samples
     << ", S " << cfg.steps << ", h " << cfg.fd_step << ", seed " << cfg.seed
     << ", level " << cfg.level << ", connection "
     << c["connection"].get<std::string>() << ", trials " << cfg.trials
     << ", deriv " << c["deriv"].get<std::string>()
     << (cfg.richardson ? ", richardson" : "") << "\n";
  if (cfg.under_resolved())
    md << "\n**Warning: grid is under-resolved (N < 64); "
          "finite-difference checks may fail.**\n";
  md << "\n| check | identity | anchor | class | trials | skipped "
        "| max rel residual | tolerance | pass | thinness defect |\n";
  md << "|---|---|---|---|---|---|---|---|---|---|\n";
  char buf[64];
  for (const auto& r : results) {
    const CheckSpec& spec = find_check(r.name);
    std::snprintf(buf, sizeof(buf), "%.3e", r.max_rel_residual);
    md << "| " << r.name << " | " << spec.description << " | "
       << r.paper_anchor << " | " << r.tolerance_class << " | " << r.trials
       << " | " << r.skipped << " | " << buf << " | ";
    std::snprintf(buf, sizeof(buf), "%.1e", r.tolerance);
    md << buf << " | " << (r.pass ? "pass" : "FAIL") << " | ";
    if (r.thinness_defect) {
      std::snprintf(buf, sizeof(buf), "%.3e", *r.thinness_defect);
      md << buf;
    } else {
      md << "-";
    }
    md << " |\n";
  }
  int passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  md << "\n" << passed << "/" << results.size() << " checks passed.\n";
  return md.str();
}

inline Json emit_convergence_json(const std::string& name,
                                  const std::vector<ConvergencePoint>& rows,
                                  const RunConfig& cfg) {
  Json j;
  j["version"] = kReportVersion;
  j["config"] = config_to_json(cfg);
  j["study"] = name;
  j["rows"] = Json::array();
  for (const auto& p : rows) {
    Json row;
    row["samples"] = p.samples;
    row["fd_step"] = p.fd_step;
    row["max_rel_residual"] = p.max_rel_residual;
    j["rows"].push_back(row);
  }
  return j;
}

inline std::string emit_convergence_markdown(
    const std::string& name, const std::vector<ConvergencePoint>& rows,
    const RunConfig& cfg) {
  std::ostringstream md;
  md << "# Convergence study: " << name << "\n\n";
  md << "| N | h | max rel residual |\n|---|---|---|\n";
  char buf[64];
  for (const auto& p : rows) {
    md << "| " << p.samples << " | " << p.fd_step << " | ";
    std::snprintf(buf, sizeof(buf), "%.3e", p.max_rel_residual);
    md << buf << " |\n";
  }
  (void)cfg;
  return md.str();
}

}  // namespace loopforms
