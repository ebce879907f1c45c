#pragma once

// Registry of the named identity checks, residual bookkeeping with auditable
// tolerance classes, and convergence studies.
//
// Residual convention: rel = |LHS - RHS| / (scale + |LHS| + |RHS|) with
// scale the median absolute value of the individual integrand terms
// collected during the trial.  The C16/C17 family checks use the documented
// absolute bounds of the dichotomy instead.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loopforms/geometry.hpp"
#include "loopforms/io.hpp"

namespace loopforms {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct GeneratorRecipe {
  int modes = 4;
  double loop_amp = 0.4;
  double field_amp = 1.0;
};

struct RunConfig {
  int group_dim = 2;
  int samples = 256;  // N
  int steps = 256;    // S
  double fd_step = 1e-3;
  bool richardson = true;
  std::uint64_t seed = 2024;
  double level = 1.0;
  ConnectionPreset preset = ConnectionPreset::Scaled;
  double alpha = 0.7;
  int trials = 32;
  DerivScheme deriv = DerivScheme::Spectral;
  GeneratorRecipe recipe;
  std::string fixture_dir;  // empty -> default search

  void validate() const {
    if (samples <= 0 || samples % 2 != 0)
      throw GridError("sample count must be positive and even");
    if (fd_step < 1e-6 || fd_step > 1e-1)
      throw GridError("fd step outside [1e-6, 1e-1]");
    if (steps < 8) throw GridError("family steps must be at least 8");
    if (trials < 1) throw GridError("trial count must be positive");
    if (group_dim < 2) throw GridError("group dimension must be at least 2");
  }

  bool under_resolved() const { return samples < 64; }

  InnerProduct inner() const { return InnerProduct{level}; }
  TrivialConnection connection() const { return make_connection(preset, alpha); }
  FDOptions fd() const { return FDOptions{fd_step, richardson}; }
};

inline std::string preset_name(ConnectionPreset p) {
  switch (p) {
    case ConnectionPreset::Zero:
      return "zero";
    case ConnectionPreset::MaurerCartan:
      return "mc";
    default:
      return "scaled";
  }
}

inline std::string deriv_name(DerivScheme s) {
  switch (s) {
    case DerivScheme::Spectral:
      return "spectral";
    case DerivScheme::LogQuot2:
      return "logq2";
    default:
      return "fd4";
  }
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

struct CheckResult {
  std::string name;
  std::string paper_anchor;
  std::string tolerance_class;
  int trials = 0;
  int skipped = 0;
  double max_rel_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::optional<double> thinness_defect;
};

struct TrialOutcome {
  double residual = 0.0;
  std::optional<double> thinness;
};

namespace detail {

inline double median_abs(std::vector<double> v) {
  if (v.empty()) return 0.0;
  for (double& x : v) x = std::abs(x);
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace detail

// Scale-aware residual accumulator for one trial.
class Residual {
 public:
  void term(double t) { terms_.push_back(std::abs(t)); }

  void compare(double lhs, double rhs) {
    lhs_ = std::max(lhs_, std::abs(lhs));
    rhs_ = std::max(rhs_, std::abs(rhs));
    diff_ = std::max(diff_, std::abs(lhs - rhs));
  }

  double value() const {
    double scale = detail::median_abs(terms_);
    return diff_ / (scale + lhs_ + rhs_);
  }

 private:
  std::vector<double> terms_;
  double lhs_ = 0.0, rhs_ = 0.0, diff_ = 0.0;
};

// ---------------------------------------------------------------------------
// Check specification
// ---------------------------------------------------------------------------

struct CheckSpec {
  std::string name;
  std::string paper_anchor;
  std::string description;
  std::string tolerance_class;  // QUAD | FD | FD2 | DICHO
  double tolerance = 0.0;
  int trials_override = 0;  // 0 -> RunConfig::trials
  std::function<TrialOutcome(const RunConfig&, std::uint64_t)> run_trial;
};

inline double class_tolerance(const std::string& cls) {
  if (cls == "QUAD") return 1e-9;
  if (cls == "FD") return 1e-6;
  if (cls == "FD2") return 1e-4;
  return 0.0;
}

// ---------------------------------------------------------------------------
// Fixture access (stored counterexample data)
// ---------------------------------------------------------------------------

#ifndef LOOPFORMS_FIXTURE_DIR
#define LOOPFORMS_FIXTURE_DIR ""
#endif

struct C17Fixture {
  FourierGenerator generator;
  double y_integral = 0.0;
  std::string source;
};

inline std::string locate_fixture_dir(const std::string& override_dir) {
  std::vector<std::string> candidates;
  if (!override_dir.empty()) candidates.push_back(override_dir);
  std::string compiled = LOOPFORMS_FIXTURE_DIR;
  if (!compiled.empty()) candidates.push_back(compiled);
  candidates.push_back("tests/fixtures");
  candidates.push_back("../tests/fixtures");
  candidates.push_back("../../tests/fixtures");
  for (const auto& dir : candidates) {
    std::ifstream probe(dir + "/c17_threshold.json");
    if (probe) return dir;
  }
  throw Error("fixture directory not found; run the oracle tools first");
}

inline C17Fixture load_c17_fixture(const RunConfig& cfg) {
  std::string dir = locate_fixture_dir(cfg.fixture_dir);
  Json loop = read_json_file(dir + "/c17_loop.json");
  Json thr = read_json_file(dir + "/c17_threshold.json");
  C17Fixture fx;
  fx.generator = generator_from_json(
      loop.at("generator"),
      group_dim_from_name(loop.at("group").get<std::string>()));
  fx.y_integral = thr.at("y_integral").get<double>();
  fx.source = dir;
  return fx;
}

// ---------------------------------------------------------------------------
// Input builders
// ---------------------------------------------------------------------------

namespace gen {

inline DiscreteLoop loop(const RunConfig& cfg, std::uint64_t seed,
                         double amp_scale = 1.0) {
  return random_loop(seed, cfg.recipe.modes, cfg.recipe.loop_amp * amp_scale,
                     cfg.samples, cfg.group_dim, cfg.deriv);
}

inline Field field(const RunConfig& cfg, std::uint64_t seed) {
  return random_field(seed, cfg.recipe.modes, cfg.recipe.field_amp,
                      cfg.samples, cfg.group_dim);
}

inline LoopConfig loops(const RunConfig& cfg, std::uint64_t seed, int arity,
                        double amp_scale = 1.0) {
  LoopConfig pt;
  for (int f = 0; f < arity; ++f)
    pt.loops.push_back(loop(cfg, derive_seed(seed, 0xA0 + f), amp_scale));
  return pt;
}

inline LoopTangent fields(const RunConfig& cfg, std::uint64_t seed, int arity) {
  LoopTangent t;
  for (int f = 0; f < arity; ++f)
    t.push_back(field(cfg, derive_seed(seed, 0xB0 + f)));
  return t;
}

inline GroupConfig points(const RunConfig& cfg, std::mt19937_64& rng,
                          int arity) {
  GroupConfig pt;
  for (int f = 0; f < arity; ++f)
    pt.g.push_back(random_group(rng, cfg.group_dim, 0.8));
  return pt;
}

inline GroupTangent vectors(const RunConfig& cfg, std::mt19937_64& rng,
                            int arity) {
  GroupTangent t;
  for (int f = 0; f < arity; ++f)
    t.push_back(random_algebra(rng, cfg.group_dim, 1.0));
  return t;
}

}  // namespace gen

// ---------------------------------------------------------------------------
// Thin family builders for the dichotomy checks
// ---------------------------------------------------------------------------

enum class ThinKind { Rotation, Reparam, Composed };

// A thin pair family in LP^[2]: gamma_2 = (base, fiber) and delta all driven
// by the same warp, so the pair (gamma_2 delta, gamma_2) has rank-one
// adjoint.
inline PTFamily make_thin_pair_family(const RunConfig& cfg, std::uint64_t seed,
                                      ThinKind kind) {
  DiscreteLoop pm = gen::loop(cfg, derive_seed(seed, 1));
  DiscreteLoop pg = gen::loop(cfg, derive_seed(seed, 2));
  DiscreteLoop d0 = gen::loop(cfg, derive_seed(seed, 3));
  const int s = cfg.steps;
  PTFamily fam;
  switch (kind) {
    case ThinKind::Rotation:
      fam = PTFamily{rotation_family(pm, s), rotation_family(pg, s),
                     rotation_family(d0, s)};
      break;
    case ThinKind::Reparam: {
      WarpSchedule ws = make_warp_schedule(0.35, 1);
      fam = PTFamily{reparam_family(pm, ws, s), reparam_family(pg, ws, s),
                     reparam_family(d0, ws, s)};
      break;
    }
    case ThinKind::Composed: {
      auto phi = [](double t, double z) {
        return z + t + 0.25 * std::sin(kTwoPi * t) *
                           std::sin(kTwoPi * z) / kTwoPi;
      };
      fam = PTFamily{warped_family(pm, phi, s, true),
                     warped_family(pg, phi, s, true),
                     warped_family(d0, phi, s, true)};
      break;
    }
  }
  return fam;
}

// The rotation counterexample family: gamma_2 is the constant path at a
// constant loop, delta the full rotation of the fixture loop.
inline PTFamily make_counterexample_family(const RunConfig& cfg,
                                           const FourierGenerator& gen_fix) {
  DiscreteLoop d0 = loop_from_generator(gen_fix, cfg.samples, cfg.deriv);
  DiscreteLoop constant(std::vector<CMat>(cfg.samples, identity(cfg.group_dim)),
                        cfg.deriv);
  Cylinder cb;
  cb.periodic = true;
  for (int i = 0; i <= cfg.steps; ++i) cb.rows.push_back(constant);
  return PTFamily{cb, cb, rotation_family(d0, cfg.steps)};
}

inline double pair_family_thinness(const PTFamily& fam) {
  // include the gamma_1 fiber component g2 * delta in the embedding
  Cylinder g1;
  g1.periodic = fam.fiber.periodic;
  const int n = fam.fiber.samples();
  for (std::size_t i = 0; i < fam.fiber.rows.size(); ++i) {
    std::vector<CMat> s(n);
    for (int j = 0; j < n; ++j)
      s[j] = fam.fiber.rows[i].at(j) * fam.delta.rows[i].at(j);
    g1.rows.emplace_back(std::move(s), fam.fiber.rows[i].scheme());
  }
  return thinness_defect({&fam.base, &fam.fiber, &g1, &fam.delta});
}

// ---------------------------------------------------------------------------
// The registry
// ---------------------------------------------------------------------------

inline std::vector<CheckSpec> check_registry();

inline const CheckSpec& find_check(const std::string& name) {
  static std::vector<CheckSpec> registry = check_registry();
  for (const auto& spec : registry)
    if (spec.name == name) return spec;
  throw UnknownCheck("no check named " + name);
}

inline std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& spec : check_registry()) names.push_back(spec.name);
  return names;
}

inline CheckResult run_check(const std::string& name, const RunConfig& cfg) {
  cfg.validate();
  const CheckSpec& spec = find_check(name);
  CheckResult res;
  res.name = spec.name;
  res.paper_anchor = spec.paper_anchor;
  res.tolerance_class = spec.tolerance_class;
  res.tolerance = spec.tolerance;
  const int trials = spec.trials_override > 0
                         ? std::min(spec.trials_override, cfg.trials)
                         : cfg.trials;
  res.trials = trials;
  for (int t = 0; t < trials; ++t) {
    std::uint64_t trial_seed =
        derive_seed(cfg.seed, string_tag(spec.name), static_cast<std::uint64_t>(t));
    try {
      TrialOutcome out = spec.run_trial(cfg, trial_seed);
      res.max_rel_residual = std::max(res.max_rel_residual, out.residual);
      if (out.thinness) {
        double d = *out.thinness;
        res.thinness_defect =
            res.thinness_defect ? std::max(*res.thinness_defect, d) : d;
      }
    } catch (const DegenerateInput&) {
      ++res.skipped;
    }
  }
  bool too_many_skips = res.skipped * 20 > res.trials;  // > 5%
  res.pass = !too_many_skips && res.max_rel_residual <= res.tolerance;
  return res;
}

inline std::vector<CheckResult> run_all(const RunConfig& cfg) {
  std::vector<CheckResult> out;
  for (const auto& spec : check_registry()) out.push_back(run_check(spec.name, cfg));
  return out;
}

// ---------------------------------------------------------------------------
// Convergence studies
// ---------------------------------------------------------------------------

struct ConvergencePoint {
  int samples = 0;
  double fd_step = 0.0;
  double max_rel_residual = 0.0;
};

// Residuals across a (N, h) grid; Richardson is disabled so finite-difference
// checks expose their raw order, and the trial seeds are shared across grid
// points so ratios compare like against like.
inline std::vector<ConvergencePoint> convergence_study(
    const std::string& name, const std::vector<std::pair<int, double>>& grid,
    RunConfig cfg) {
  (void)find_check(name);
  std::vector<ConvergencePoint> rows;
  cfg.richardson = false;
  cfg.trials = std::min(cfg.trials, 4);
  for (auto [n, h] : grid) {
    RunConfig c = cfg;
    c.samples = n;
    c.fd_step = h;
    CheckResult r = run_check(name, c);
    rows.push_back({n, h, r.max_rel_residual});
  }
  return rows;
}

}  // namespace loopforms

#include "loopforms/suite_checks.hpp"
