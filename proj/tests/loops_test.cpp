#include <gtest/gtest.h>

#include "loopforms/io.hpp"
#include "loopforms/loops.hpp"

using namespace loopforms;

namespace {

double frob(const CMat& m) { return m.norm(); }

DiscreteLoop abelian_loop(int n) {
  std::vector<CMat> s(n);
  for (int j = 0; j < n; ++j)
    s[j] = exp_map(CMat(kTwoPi * static_cast<double>(j) / n * ipauli(3)));
  return DiscreteLoop(std::move(s));
}

}  // namespace

TEST(RandomLoop, DeterministicAndSmooth) {
  DiscreteLoop a = random_loop(7, 4, 0.5, 256);
  DiscreteLoop b = random_loop(7, 4, 0.5, 256);
  for (int j = 0; j < 256; ++j) EXPECT_EQ(frob(a.at(j) - b.at(j)), 0.0);
  EXPECT_LE(a.smoothness_defect(), 0.5);
  DiscreteLoop c = random_loop(8, 4, 0.0, 64);
  for (int j = 0; j < 64; ++j) EXPECT_LT(frob(c.at(j) - identity(2)), 1e-14);
  EXPECT_THROW(random_loop(1, 100, 0.5, 256), BandLimitError);
}

TEST(RandomLoop, VelocityInvariant) {
  // exact left-logarithmic derivative of the maximal-torus loop
  DiscreteLoop tau = abelian_loop(256);
  CMat expected = kTwoPi * ipauli(3);
  double worst = 0.0;
  for (int j = 0; j < 256; ++j)
    worst = std::max(worst, frob(tau.velocity()[j] - expected));
  EXPECT_LE(worst, 1e-8);
}

TEST(RandomLoop, LogQuotientSchemeAgrees) {
  DiscreteLoop spec = random_loop(9, 4, 0.4, 256, 2, DerivScheme::Spectral);
  DiscreteLoop logq = random_loop(9, 4, 0.4, 256, 2, DerivScheme::LogQuot2);
  double worst = 0.0;
  for (int j = 0; j < 256; ++j)
    worst = std::max(worst, frob(spec.velocity()[j] - logq.velocity()[j]));
  EXPECT_LE(worst, 1e-2);  // second-order scheme at N = 256
}

TEST(RandomPath, PlateauBehavior) {
  int n = 128, p = n / 8;
  DiscretePath path = random_path(3, 4, 0.5, p, n);
  for (int j = 1; j < p; ++j) {
    EXPECT_LT(frob(path.u[j] - path.u[0]), 1e-15);
    EXPECT_LT(frob(path.u[n - j] - path.u[n]), 1e-15);
  }
  // zero velocity through the plateaus
  EXPECT_LT(frob(path.u[1] - path.u[0]), 1e-15);
  DiscretePath flat = random_path(3, 4, 0.0, p, n);
  for (int j = 0; j <= n; ++j) EXPECT_LT(frob(flat.u[j] - identity(2)), 1e-14);
}

TEST(LoopJoin, MatchesIndexOracle) {
  int n = 128, p = n / 8;
  // a shared-endpoint pair: a common plateau-warped segment times distinct
  // sine bumps that vanish at both ends
  auto rng = make_rng(21);
  CMat w = random_algebra(rng, 2, 0.5);
  auto make_path = [&](std::uint64_t s) {
    auto rngl = make_rng(s);
    std::vector<CMat> c;
    for (int k = 1; k <= 4; ++k)
      c.push_back(random_algebra(rngl, 2, 0.4 / (k * k)));
    std::vector<CMat> samples(n + 1);
    for (int j = 0; j <= n; ++j) {
      double ph = plateau_warp(static_cast<double>(j) / n, n, p);
      CMat e = ph * w;
      for (int k = 1; k <= 4; ++k) e += std::sin(kPi * k * ph) * c[k - 1];
      samples[j] = exp_map(e);
    }
    return DiscretePath(std::move(samples), p);
  };
  DiscretePath g1 = make_path(211), g2 = make_path(212);
  ASSERT_LT(frob(g1.start() - g2.start()), 1e-12);
  ASSERT_LT(frob(g1.end() - g2.end()), 1e-12);
  DiscreteLoop joined = loop_join(g1, g2);
  for (int j = 0; j < n; ++j) {
    CMat expected = (2 * j <= n) ? g1.u[2 * j] : g2.u[2 * n - 2 * j];
    EXPECT_LT(frob(joined.at(j) - expected), 1e-14);
  }
  // join of two constant paths is the constant loop
  DiscretePath c1 = random_path(5, 4, 0.0, p, n);
  DiscreteLoop cl = loop_join(c1, c1);
  for (int j = 0; j < n; ++j) EXPECT_LT(frob(cl.at(j) - c1.u[0]), 1e-14);
}

TEST(LoopJoin, EndpointMismatchDetected) {
  int n = 128, p = n / 8;
  DiscretePath g1 = random_path(31, 4, 0.5, p, n);
  DiscretePath g2 = random_path(32, 3, 0.4, p, n);
  if (frob(g1.end() - g2.end()) > 1e-12)
    EXPECT_THROW(loop_join(g1, g2), EndpointMismatch);
}

TEST(TangentJoin, SupportAndPlateauPolicy) {
  int n = 128, p = n / 8;
  DiscretePath g = random_path(41, 4, 0.5, p, n);
  Field zero(n + 1, CMat::Zero(2, 2));
  Field bump(n + 1, CMat::Zero(2, 2));
  for (int j = 0; j <= n; ++j) {
    double ph = plateau_warp(static_cast<double>(j) / n, n, p);
    bump[j] = std::sin(kPi * ph) * ipauli(1);
  }
  Field joined = tangent_join(g, {bump}, g, {zero});
  for (int j = 0; j < n; ++j) {
    if (2 * j > n) EXPECT_LT(frob(joined[j]), 1e-15);
  }
  Field all_zero = tangent_join(g, {zero}, g, {zero});
  for (const auto& v : all_zero) EXPECT_LT(frob(v), 1e-15);
  // norm recomputation oracle
  double direct = 0.0;
  for (int j = 0; j < n; ++j) direct += joined[j].squaredNorm();
  double expected = 0.0;
  for (int j = 0; 2 * j <= n; ++j) expected += bump[2 * j].squaredNorm();
  EXPECT_NEAR(direct, expected, 1e-12);
  Field bad(n + 1, ipauli(2));
  EXPECT_THROW(tangent_join(g, {bad}, g, {zero}), PlateauViolation);
}

TEST(RotateLoop, GroupAction) {
  DiscreteLoop tau = random_loop(51, 4, 0.5, 128);
  DiscreteLoop r0 = rotate_loop(tau, 0.0);
  DiscreteLoop r1 = rotate_loop(tau, 1.0);
  for (int j = 0; j < 128; ++j) {
    EXPECT_LT(frob(r0.at(j) - tau.at(j)), 1e-14);
    EXPECT_LT(frob(r1.at(j) - tau.at(j)), 1e-14);
  }
  DiscreteLoop ab = rotate_loop(rotate_loop(tau, 0.25), 0.5);
  DiscreteLoop direct = rotate_loop(tau, 0.75);
  for (int j = 0; j < 128; ++j) EXPECT_LT(frob(ab.at(j) - direct.at(j)), 1e-14);
  EXPECT_THROW(rotate_loop(tau, 0.1234567, false), GridError);
  // off-grid rotation through the generator
  DiscreteLoop off = rotate_loop(tau, 0.1234567, true);
  EXPECT_LE(off.smoothness_defect(), 0.5);
}

TEST(RotationFamily, PeriodicityAndThinness) {
  DiscreteLoop tau = random_loop(61, 4, 0.5, 128);
  Cylinder fam = rotation_family(tau, 128);
  for (int j = 0; j < 128; ++j)
    EXPECT_LT(frob(fam.rows[0].at(j) - fam.rows[128].at(j)), 1e-14);
  // with S = N the parameter and circle stencils coincide: exactly thin
  EXPECT_LT(thinness_defect(fam), 1e-10);
  // with S != N the defect is pure grid error, O(N^-2)
  double d128 = thinness_defect(rotation_family(tau, 64));
  DiscreteLoop tau256 = random_loop(61, 4, 0.5, 256);
  double d256 = thinness_defect(rotation_family(tau256, 128));
  EXPECT_LT(d128, 5e-2);
  EXPECT_GT(d128 / d256, 2.5);
  EXPECT_LT(d128 / d256, 6.0);
  // constant loop gives a constant cylinder
  DiscreteLoop c = random_loop(62, 4, 0.0, 64);
  EXPECT_LT(thinness_defect(rotation_family(c, 64)), 1e-14);
}

TEST(RotationFamily, InvariantFunctionalAgreesAcrossRows) {
  // a reparameterization-invariant functional (the loop length in the
  // flat embedding) takes the same value on every row
  DiscreteLoop tau = random_loop(63, 4, 0.5, 128);
  Cylinder fam = rotation_family(tau, 64);
  auto length = [](const DiscreteLoop& l) {
    std::vector<double> v(l.samples());
    for (int j = 0; j < l.samples(); ++j) v[j] = l.velocity()[j].norm();
    return periodic_mean(v);
  };
  double ref = length(fam.rows[0]);
  for (const auto& row : fam.rows)
    EXPECT_NEAR(length(row), ref, 1e-11 * (1.0 + ref));
}

TEST(ReparamFamily, ThinByConstruction) {
  DiscreteLoop tau = random_loop(71, 4, 0.5, 128);
  WarpSchedule id_ws;
  id_ws.w = [](double) { return 0.0; };
  id_ws.psi = [](double) { return 1.0; };
  id_ws.closed = true;
  Cylinder constant = reparam_family(tau, id_ws, 64);
  for (int j = 0; j < 128; ++j)
    EXPECT_LT(frob(constant.rows[0].at(j) - constant.rows[32].at(j)), 1e-12);
  Cylinder fam = reparam_family(tau, make_warp_schedule(0.3, 1), 128);
  EXPECT_LT(thinness_defect(fam), 5e-3);
}

TEST(ThinnessDefect, RankTwoWitness) {
  // Gamma(s)(z) = exp(s X) exp(2 pi z Y) with [X, Y] != 0 is a genuine
  // rank-two family; the defect must stay away from zero.
  int n = 64, s = 64;
  CMat x = ipauli(1), y = kTwoPi * ipauli(3);
  Cylinder fam;
  fam.periodic = false;
  for (int i = 0; i <= s; ++i) {
    std::vector<CMat> row(n);
    for (int j = 0; j < n; ++j)
      row[j] = exp_map(CMat(static_cast<double>(i) / s * x)) *
               exp_map(CMat(static_cast<double>(j) / n * y));
    fam.rows.emplace_back(std::move(row));
  }
  EXPECT_GT(thinness_defect(fam), 0.5);
}

TEST(Serialization, LoopRoundTrip) {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    DiscreteLoop tau = random_loop(seed, 4, 0.5, 64);
    Json j = loop_to_json(tau);
    EXPECT_EQ(j.at("group"), "su2");
    EXPECT_EQ(j.at("N"), 64);
    DiscreteLoop back = loop_from_json(j);
    for (int k = 0; k < 64; ++k)
      EXPECT_LT(frob(back.at(k) - tau.at(k)), 1e-15);
  }
}

TEST(Serialization, PathRoundTrip) {
  DiscretePath p = random_path(9, 4, 0.5, 16, 128);
  Json j = path_to_json(p);
  DiscretePath back = path_from_json(j);
  EXPECT_EQ(back.plateau, p.plateau);
  for (int k = 0; k <= 128; ++k) EXPECT_LT(frob(back.u[k] - p.u[k]), 1e-15);
}

TEST(DiscreteLoop, RejectsRoughData) {
  auto rng = make_rng(99);
  std::vector<CMat> rough(64);
  for (int j = 0; j < 64; ++j) rough[j] = random_group(rng, 2, 2.0);
  EXPECT_THROW(DiscreteLoop(std::move(rough)), DegenerateInput);
}
