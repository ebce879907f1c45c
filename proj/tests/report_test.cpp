#include <gtest/gtest.h>

#include "loopforms/report.hpp"

using namespace loopforms;

namespace {

std::vector<CheckResult> sample_results() {
  CheckResult a;
  a.name = "C2";
  a.paper_anchor = "multiply the indexed components";
  a.tolerance_class = "QUAD";
  a.trials = 32;
  a.skipped = 0;
  a.max_rel_residual = 3.2e-15;
  a.tolerance = 1e-9;
  a.pass = true;
  CheckResult b;
  b.name = "C16";
  b.paper_anchor = "if and only if x=1";
  b.tolerance_class = "DICHO";
  b.trials = 4;
  b.skipped = 0;
  b.max_rel_residual = 4.1e-12;
  b.tolerance = 1e-8;
  b.pass = true;
  b.thinness_defect = 2.5e-6;
  return {a, b};
}

}  // namespace

TEST(Report, EmptyResultListIsValid) {
  RunConfig cfg;
  Json j = emit_report({}, cfg);
  EXPECT_EQ(j.at("version"), kReportVersion);
  EXPECT_TRUE(j.at("results").is_array());
  EXPECT_EQ(j.at("results").size(), 0u);
  EXPECT_EQ(j.at("config").at("group"), "su2");
}

TEST(Report, JsonRoundTrip) {
  RunConfig cfg;
  auto results = sample_results();
  Json j = emit_report(results, cfg);
  // through text and back
  Json parsed = Json::parse(j.dump(2));
  auto back = results_from_json(parsed);
  ASSERT_EQ(back.size(), results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    EXPECT_EQ(back[i].name, results[i].name);
    EXPECT_EQ(back[i].paper_anchor, results[i].paper_anchor);
    EXPECT_EQ(back[i].tolerance_class, results[i].tolerance_class);
    EXPECT_EQ(back[i].trials, results[i].trials);
    EXPECT_EQ(back[i].skipped, results[i].skipped);
    EXPECT_EQ(back[i].max_rel_residual, results[i].max_rel_residual);
    EXPECT_EQ(back[i].tolerance, results[i].tolerance);
    EXPECT_EQ(back[i].pass, results[i].pass);
    EXPECT_EQ(back[i].thinness_defect.has_value(),
              results[i].thinness_defect.has_value());
    if (back[i].thinness_defect)
      EXPECT_EQ(*back[i].thinness_defect, *results[i].thinness_defect);
  }
}

TEST(Report, MarkdownCarriesAnchorsVerbatim) {
  RunConfig cfg;
  auto results = sample_results();
  std::string md = emit_markdown(results, cfg);
  for (const auto& r : results) {
    EXPECT_NE(md.find(r.paper_anchor), std::string::npos)
        << "anchor missing for " << r.name;
    EXPECT_NE(md.find("| " + r.name + " |"), std::string::npos);
  }
  EXPECT_NE(md.find("2/2 checks passed"), std::string::npos);
}

TEST(Report, MarkdownRowPerRegistryCheck) {
  // every registered check renders one row with its registry anchor
  RunConfig cfg;
  std::vector<CheckResult> results;
  for (const auto& spec : check_registry()) {
    CheckResult r;
    r.name = spec.name;
    r.paper_anchor = spec.paper_anchor;
    r.tolerance_class = spec.tolerance_class;
    r.tolerance = spec.tolerance;
    r.pass = true;
    results.push_back(r);
  }
  std::string md = emit_markdown(results, cfg);
  for (const auto& spec : check_registry())
    EXPECT_NE(md.find(spec.paper_anchor), std::string::npos)
        << spec.name << " anchor missing";
}

TEST(Report, UnderResolutionWarning) {
  RunConfig cfg;
  cfg.samples = 32;
  std::string md = emit_markdown({}, cfg);
  EXPECT_NE(md.find("under-resolved"), std::string::npos);
}
