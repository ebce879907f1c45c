#include <gtest/gtest.h>

#include "loopforms/geometry.hpp"

using namespace loopforms;

namespace {

const InnerProduct kIp{1.0};

VectorForm1 theta_factor(int arity, int factor) {
  return {arity, [factor](const GroupConfig&, const GroupTangent& t) {
            return t[factor];
          }};
}

GroupConfig rand_pts(std::mt19937_64& rng, int arity) {
  GroupConfig pt;
  for (int f = 0; f < arity; ++f) pt.g.push_back(random_group(rng, 2, 0.8));
  return pt;
}

GroupTangent rand_vecs(std::mt19937_64& rng, int arity) {
  GroupTangent t;
  for (int f = 0; f < arity; ++f) t.push_back(random_algebra(rng, 2, 1.0));
  return t;
}

}  // namespace

TEST(WedgePair, AlternationAndZero) {
  auto rng = make_rng(3);
  VectorForm1 th = theta_factor(1, 0);
  GroupForm w = wedge_pair(th, th, kIp);
  GroupConfig pt = rand_pts(rng, 1);
  GroupTangent x = rand_vecs(rng, 1);
  EXPECT_NEAR(w.eval(pt, {x, x}), 0.0, 1e-14);
  VectorForm1 zero{1, [](const GroupConfig&, const GroupTangent&) {
                     return CMat(CMat::Zero(2, 2));
                   }};
  GroupForm wz = wedge_pair(zero, th, kIp);
  EXPECT_NEAR(wz.eval(pt, {x, rand_vecs(rng, 1)}), 0.0, 1e-15);
}

TEST(WedgePair, HandExpansionOracle) {
  // <pr1* theta ^ pr2* thetabar> against the direct 2x2 expansion
  auto rng = make_rng(5);
  GroupForm rho = rho_form(kIp);
  for (int i = 0; i < 20; ++i) {
    GroupConfig pt = rand_pts(rng, 2);
    GroupTangent x = rand_vecs(rng, 2);
    GroupTangent y = rand_vecs(rng, 2);
    double expansion = kIp(x[0], adjoint(pt.g[1], y[1])) -
                       kIp(y[0], adjoint(pt.g[1], x[1]));
    EXPECT_NEAR(rho.eval(pt, {x, y}), expansion, 1e-12);
  }
}

TEST(ExteriorDerivative, ConstantFormVanishes) {
  GroupForm c{0, 1, [](const GroupConfig&, const std::vector<GroupTangent>&) {
                return 4.2;
              }};
  GroupForm dc = exterior_derivative(c, {1e-3, false});
  auto rng = make_rng(7);
  GroupConfig pt = rand_pts(rng, 1);
  EXPECT_NEAR(dc.eval(pt, {rand_vecs(rng, 1)}), 0.0, 1e-10);
}

TEST(ExteriorDerivative, MatchesAnalyticDerivative) {
  // alpha = f <P, theta> with f(g) = Re tr(g):
  // d alpha(X,Y) = df(X) <P,xi_Y> - df(Y) <P,xi_X> - f <P,[xi_X, xi_Y]>
  CMat p = ipauli(2);
  GroupForm alpha{1, 1,
                  [p](const GroupConfig& pt, const std::vector<GroupTangent>& ts) {
                    return pt.g[0].trace().real() * kIp(p, ts[0][0]);
                  }};
  auto rng = make_rng(11);
  auto analytic = [p](const GroupConfig& pt, const GroupTangent& x,
                      const GroupTangent& y) {
    double f = pt.g[0].trace().real();
    double dfx = (pt.g[0] * x[0]).trace().real();
    double dfy = (pt.g[0] * y[0]).trace().real();
    return dfx * kIp(p, y[0]) - dfy * kIp(p, x[0]) -
           f * kIp(p, bracket(x[0], y[0]));
  };
  GroupForm d1 = exterior_derivative(alpha, {1e-3, false});
  GroupForm d2 = exterior_derivative(alpha, {5e-4, false});
  double e1 = 0.0, e2 = 0.0;
  for (int i = 0; i < 10; ++i) {
    GroupConfig pt = rand_pts(rng, 1);
    GroupTangent x = rand_vecs(rng, 1);
    GroupTangent y = rand_vecs(rng, 1);
    double exact = analytic(pt, x, y);
    e1 = std::max(e1, std::abs(d1.eval(pt, {x, y}) - exact));
    e2 = std::max(e2, std::abs(d2.eval(pt, {x, y}) - exact));
  }
  EXPECT_LT(e1, 1e-5);
  // halving h divides the residual by about four
  EXPECT_GT(e1 / e2, 3.5);
  EXPECT_LT(e1 / e2, 4.5);
}

TEST(ExteriorDerivative, SquareIsSmall) {
  GroupForm beta_like{
      1, 1, [](const GroupConfig& pt, const std::vector<GroupTangent>& ts) {
        return pt.g[0].trace().real() * kIp(ipauli(3), ts[0][0]);
      }};
  GroupForm dd = exterior_derivative(exterior_derivative(beta_like, {1e-3, false}),
                                     {1e-3, false});
  auto rng = make_rng(13);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    GroupConfig pt = rand_pts(rng, 1);
    worst = std::max(worst, std::abs(dd.eval(
                                pt, {rand_vecs(rng, 1), rand_vecs(rng, 1),
                                     rand_vecs(rng, 1)})));
  }
  EXPECT_LT(worst, 1e-5);
}

TEST(ExteriorDerivative, AntisymmetricSlots) {
  auto rng = make_rng(17);
  GroupForm rho = rho_form(kIp);
  GroupForm drho = exterior_derivative(rho, {1e-3, false});
  GroupConfig pt = rand_pts(rng, 2);
  GroupTangent x = rand_vecs(rng, 2), y = rand_vecs(rng, 2),
               z = rand_vecs(rng, 2);
  double a = drho.eval(pt, {x, y, z});
  double b = drho.eval(pt, {y, x, z});
  EXPECT_NEAR(a + b, 0.0, 1e-10 * (1.0 + std::abs(a)));
}

TEST(ExteriorDerivative, StepGuard) {
  GroupForm rho = rho_form(kIp);
  EXPECT_THROW(exterior_derivative(rho, {1e-9, false}), StepUnderflow);
}

TEST(Transgression, ConstantLoopVanishes) {
  LoopForm t = transgress(rho_form(kIp));
  LoopConfig pt;
  pt.loops = {random_loop(1, 4, 0.0, 64), random_loop(2, 4, 0.0, 64)};
  std::vector<LoopTangent> ts{{random_field(3, 4, 1.0, 64),
                               random_field(4, 4, 1.0, 64)}};
  EXPECT_NEAR(t.eval(pt, ts), 0.0, 1e-14);
}

TEST(Transgression, AbelianLoopKillsBrackets) {
  LoopForm tH = transgress(wz_form(kIp));
  int n = 128;
  std::vector<CMat> s(n);
  for (int j = 0; j < n; ++j)
    s[j] = exp_map(CMat(kTwoPi * static_cast<double>(j) / n * ipauli(3)));
  LoopConfig pt{{DiscreteLoop(std::move(s))}};
  Field x(n, ipauli(3)), y(n, 0.3 * ipauli(3));
  EXPECT_NEAR(tH.eval(pt, {{x}, {y}}), 0.0, 1e-12);
}

TEST(Transgression, NaturalUnderMultiplication) {
  // transgress(m* rho') = (Lm)* transgress(rho') for the multiplication map
  auto ip = kIp;
  GroupForm rho = rho_form(ip);
  GroupForm big = pullback(rho, multiply_map(3, 0, 1));  // on G^3 -> G^2
  LoopForm route1 = transgress(big);
  LoopForm route2 = pullback(transgress(rho), lift_pointwise(multiply_map(3, 0, 1)));
  LoopConfig pt;
  pt.loops = {random_loop(11, 4, 0.4, 128), random_loop(12, 4, 0.4, 128),
              random_loop(13, 4, 0.4, 128)};
  std::vector<LoopTangent> ts{{random_field(14, 4, 1.0, 128),
                               random_field(15, 4, 1.0, 128),
                               random_field(16, 4, 1.0, 128)}};
  EXPECT_NEAR(route1.eval(pt, ts), route2.eval(pt, ts), 1e-11);
}

TEST(Transgression, NaturalUnderProjectionsAndDelta) {
  GroupForm rho = rho_form(kIp);
  // projection naturality on G^3 -> G^2
  LoopForm r1 = transgress(pullback(rho, projection_map(3, {0, 2})));
  LoopForm r2 =
      pullback(transgress(rho), lift_pointwise(projection_map(3, {0, 2})));
  LoopConfig pt;
  pt.loops = {random_loop(31, 4, 0.4, 128), random_loop(32, 4, 0.4, 128),
              random_loop(33, 4, 0.4, 128)};
  std::vector<LoopTangent> ts{{random_field(34, 4, 1.0, 128),
                               random_field(35, 4, 1.0, 128),
                               random_field(36, 4, 1.0, 128)}};
  EXPECT_NEAR(r1.eval(pt, ts), r2.eval(pt, ts), 1e-11);
  // difference-map naturality on P^[2] -> G, through the degree-3 form
  GroupForm H = wz_form(kIp);
  LoopForm h1 = transgress(pullback(H, delta_map()));
  LoopForm h2 = pullback(transgress(H), lift_pointwise(delta_map()));
  std::vector<LoopTangent> two{ts[0], {random_field(37, 4, 1.0, 128),
                                       random_field(38, 4, 1.0, 128),
                                       random_field(39, 4, 1.0, 128)}};
  double a = h1.eval(pt, two);
  double b = h2.eval(pt, two);
  EXPECT_NEAR(a, b, 1e-11 * (1.0 + std::abs(a)));
}

TEST(Transgression, AnticommutesWithDerivative) {
  // d(tau(omega)) = -tau(d omega) for the 2-form rho
  GroupForm rho = rho_form(kIp);
  LoopForm lhs = exterior_derivative(transgress(rho), {1e-3, true});
  LoopForm rhs = transgress(exterior_derivative(rho, {1e-3, true}));
  LoopConfig pt;
  pt.loops = {random_loop(21, 4, 0.4, 128), random_loop(22, 4, 0.4, 128)};
  LoopTangent x{random_field(23, 4, 1.0, 128), random_field(24, 4, 1.0, 128)};
  LoopTangent y{random_field(25, 4, 1.0, 128), random_field(26, 4, 1.0, 128)};
  double a = lhs.eval(pt, {x, y});
  double b = rhs.eval(pt, {x, y});
  EXPECT_NEAR(a, -b, 1e-6 * (1.0 + std::abs(a)));
}

TEST(Quadrature, BandLimitedExactness) {
  // trapezoid on the periodic grid integrates band-limited products exactly
  for (int n : {64, 128, 256}) {
    std::vector<double> sq(n), cross(n);
    for (int j = 0; j < n; ++j) {
      double z = static_cast<double>(j) / n;
      sq[j] = std::cos(kTwoPi * 3 * z) * std::cos(kTwoPi * 3 * z);
      cross[j] = std::cos(kTwoPi * 5 * z) * std::sin(kTwoPi * 2 * z);
    }
    EXPECT_NEAR(periodic_mean(sq), 0.5, 1e-12);
    EXPECT_NEAR(periodic_mean(cross), 0.0, 1e-12);
  }
}

TEST(SimplicialDelta, ZeroFormAndCocycleRules) {
  GroupForm zero{2, 2,
                 [](const GroupConfig&, const std::vector<GroupTangent>&) {
                   return 0.0;
                 }};
  GroupForm dz = simplicial_delta(zero, SimplicialFamily::Group);
  auto rng = make_rng(31);
  GroupConfig pt = rand_pts(rng, 3);
  EXPECT_EQ(dz.eval(pt, {rand_vecs(rng, 3), rand_vecs(rng, 3)}), 0.0);
  // Delta rho = 0
  GroupForm drho = simplicial_delta(rho_form(kIp), SimplicialFamily::Group);
  EXPECT_NEAR(drho.eval(pt, {rand_vecs(rng, 3), rand_vecs(rng, 3)}), 0.0,
              1e-12);
}

TEST(SimplicialDelta, FiberCountingRules) {
  // Delta of a pullback from the base: zero for one fiber copy, the
  // repullback for two, and Delta Delta = 0.
  InnerProduct ip = kIp;
  TrivialConnection tc = make_connection(ConnectionPreset::Scaled, 0.7);
  LoopForm zeta = zeta_form(ip, tc);
  LoopForm dz = simplicial_delta(zeta, SimplicialFamily::Fiber);
  LoopForm ddz = simplicial_delta(dz, SimplicialFamily::Fiber);
  LoopConfig pt;
  pt.loops = {random_loop(41, 4, 0.4, 128), random_loop(42, 4, 0.4, 128),
              random_loop(43, 4, 0.4, 128), random_loop(44, 4, 0.4, 128)};
  std::vector<LoopTangent> ts{{random_field(45, 4, 1.0, 128),
                               random_field(46, 4, 1.0, 128),
                               random_field(47, 4, 1.0, 128),
                               random_field(48, 4, 1.0, 128)}};
  EXPECT_NEAR(ddz.eval(pt, ts), 0.0, 1e-13);

  // alternating-count rule for pullbacks from the base: Delta of a
  // base-only form vanishes over an odd number of fiber copies and
  // reproduces the form over an even number
  auto base_only = [ip](int arity) {
    return LoopForm{1, arity,
                    [ip](const LoopConfig& pt2,
                         const std::vector<LoopTangent>& ts2) {
                      const int n = pt2.samples();
                      std::vector<double> v(n);
                      for (int j = 0; j < n; ++j)
                        v[j] = ip(pt2.loops[0].velocity()[j], ts2[0][0][j]);
                      return periodic_mean(v);
                    }};
  };
  LoopForm d_odd = simplicial_delta(base_only(2), SimplicialFamily::Fiber);
  LoopConfig pt3;
  pt3.loops = {pt.loops[0], pt.loops[1], pt.loops[2]};
  std::vector<LoopTangent> ts3{{ts[0][0], ts[0][1], ts[0][2]}};
  EXPECT_NEAR(d_odd.eval(pt3, ts3), 0.0, 1e-14);
  LoopForm d_even = simplicial_delta(base_only(3), SimplicialFamily::Fiber);
  double expected = base_only(4).eval(pt, ts);
  EXPECT_NEAR(d_even.eval(pt, ts), expected, 1e-13);
}

TEST(Forms, ArityChecks) {
  GroupForm rho = rho_form(kIp);
  auto rng = make_rng(51);
  GroupConfig wrong = rand_pts(rng, 3);
  EXPECT_THROW(rho(wrong, {rand_vecs(rng, 3), rand_vecs(rng, 3)}),
               ArityMismatch);
  GroupConfig right = rand_pts(rng, 2);
  EXPECT_THROW(rho(right, {rand_vecs(rng, 2)}), ArityMismatch);
}

TEST(Forms, AlternationOnRandomInputs) {
  // every constructed form is alternating: H with repeated slots
  GroupForm H = wz_form(kIp);
  auto rng = make_rng(53);
  GroupConfig pt = rand_pts(rng, 1);
  GroupTangent x = rand_vecs(rng, 1), y = rand_vecs(rng, 1);
  EXPECT_NEAR(H.eval(pt, {x, x, y}), 0.0, 1e-10);
  double a = H.eval(pt, {x, y, rand_vecs(rng, 1)});
  EXPECT_TRUE(std::isfinite(a));
}
