#include <gtest/gtest.h>

#include "loopforms/report.hpp"

using namespace loopforms;

namespace {

RunConfig quick_config() {
  RunConfig cfg;
  cfg.samples = 64;
  cfg.steps = 32;
  cfg.trials = 3;
  return cfg;
}

}  // namespace

TEST(Registry, SeventeenNamedChecks) {
  auto names = check_names();
  ASSERT_EQ(names.size(), 17u);
  for (int i = 0; i < 17; ++i)
    EXPECT_EQ(names[i], "C" + std::to_string(i + 1));
  EXPECT_THROW(find_check("C99"), UnknownCheck);
  EXPECT_THROW(run_check("nope", quick_config()), UnknownCheck);
}

TEST(Registry, AnchorsAreUniqueAndNonEmpty) {
  std::vector<std::string> seen;
  for (const auto& spec : check_registry()) {
    EXPECT_FALSE(spec.paper_anchor.empty());
    for (const auto& s : seen) EXPECT_NE(s, spec.paper_anchor);
    seen.push_back(spec.paper_anchor);
  }
}

TEST(RunCheck, QuadChecksPassOnQuickGrids) {
  RunConfig cfg = quick_config();
  for (const char* name : {"C2", "C4", "C5", "C7", "C13"}) {
    CheckResult r = run_check(name, cfg);
    EXPECT_TRUE(r.pass) << name << " residual " << r.max_rel_residual;
    EXPECT_LE(r.max_rel_residual, 1e-9);
    EXPECT_EQ(r.trials, cfg.trials);
    EXPECT_EQ(r.skipped, 0);
  }
}

TEST(RunCheck, FdChecksPassOnQuickGrids) {
  RunConfig cfg = quick_config();
  for (const char* name : {"C1", "C3", "C6", "C12"}) {
    CheckResult r = run_check(name, cfg);
    EXPECT_TRUE(r.pass) << name << " residual " << r.max_rel_residual;
  }
}

TEST(RunCheck, Deterministic) {
  RunConfig cfg = quick_config();
  CheckResult a = run_check("C7", cfg);
  CheckResult b = run_check("C7", cfg);
  EXPECT_EQ(a.max_rel_residual, b.max_rel_residual);
}

TEST(RunCheck, SeedIndependenceOfTruth) {
  RunConfig cfg = quick_config();
  cfg.seed = 1;
  CheckResult a = run_check("C4", cfg);
  cfg.seed = 999;
  CheckResult b = run_check("C4", cfg);
  EXPECT_EQ(a.pass, b.pass);
  EXPECT_TRUE(a.pass);
}

TEST(RunCheck, DegenerateInputsAreSkippedAndCounted) {
  RunConfig cfg = quick_config();
  cfg.recipe.loop_amp = 50.0;  // violently rough loops
  CheckResult r = run_check("C4", cfg);
  EXPECT_GT(r.skipped, 0);
  EXPECT_FALSE(r.pass);  // more than 5% of trials skipped
}

TEST(RunCheck, ValidationRejectsBadConfigs) {
  RunConfig cfg = quick_config();
  cfg.samples = 63;
  EXPECT_THROW(run_check("C2", cfg), GridError);
  cfg = quick_config();
  cfg.fd_step = 1.0;
  EXPECT_THROW(run_check("C2", cfg), GridError);
}

TEST(RunCheck, UnderResolutionIsFlagged) {
  RunConfig cfg = quick_config();
  cfg.samples = 32;
  EXPECT_TRUE(cfg.under_resolved());
  Json j = config_to_json(cfg);
  EXPECT_TRUE(j.at("under_resolved").get<bool>());
}

TEST(Convergence, QuadFlatInN) {
  RunConfig cfg = quick_config();
  auto rows = convergence_study("C4", {{64, 1e-3}, {128, 1e-3}, {256, 1e-3}},
                                cfg);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& p : rows) EXPECT_LE(p.max_rel_residual, 1e-11);
}

TEST(Convergence, FdOrderTwo) {
  RunConfig cfg = quick_config();
  cfg.trials = 2;
  auto rows = convergence_study(
      "C6", {{128, 1e-2}, {128, 5e-3}, {128, 2.5e-3}}, cfg);
  ASSERT_EQ(rows.size(), 3u);
  double r1 = rows[0].max_rel_residual / rows[1].max_rel_residual;
  double r2 = rows[1].max_rel_residual / rows[2].max_rel_residual;
  EXPECT_GT(r1, 3.5);
  EXPECT_LT(r1, 4.5);
  EXPECT_GT(r2, 3.5);
  EXPECT_LT(r2, 4.5);
}

TEST(Convergence, PointwiseChecksUnaffectedByN) {
  RunConfig cfg = quick_config();
  cfg.trials = 2;
  auto rows = convergence_study("C3", {{64, 1e-3}, {128, 1e-3}}, cfg);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_LE(rows[1].max_rel_residual, 10.0 * (rows[0].max_rel_residual + 1e-12));
}

TEST(Fixtures, StoredLoopSatisfiesInvariants) {
  std::string dir = locate_fixture_dir("");
  Json j = read_json_file(dir + "/c17_loop.json");
  ASSERT_TRUE(j.contains("generated_by"));
  DiscreteLoop tau = loop_from_json(j);
  EXPECT_EQ(tau.samples(), 256);
  EXPECT_LE(tau.smoothness_defect(), 0.5);
  // the stored samples must agree with the stored generator coefficients
  FourierGenerator gen = generator_from_json(j.at("generator"), tau.dim());
  double worst = 0.0;
  for (int k = 0; k < tau.samples(); ++k)
    worst = std::max(
        worst, (gen.at(tau.z(k)) - tau.at(k)).cwiseAbs().maxCoeff());
  EXPECT_LT(worst, 1e-12);
}

TEST(Dichotomy, QuickDichotomyHolds) {
  RunConfig cfg = quick_config();
  cfg.samples = 128;
  cfg.steps = 128;
  cfg.trials = 1;
  CheckResult c16 = run_check("C16", cfg);
  EXPECT_TRUE(c16.pass) << c16.max_rel_residual;
  ASSERT_TRUE(c16.thinness_defect.has_value());
  CheckResult c17 = run_check("C17", cfg);
  EXPECT_TRUE(c17.pass) << c17.max_rel_residual;
}
