#pragma once

// Constructors for the named geometric objects: the canonical 3-form and its
// multiplicativity 2-form, the loop-algebra cocycle data, the connection
// forms on the trivial bundle model P = M x G with M = G, the corrected
// lifting connection and curving, and the parallel-transport integrand of
// the x-family of connections.
//
// Configuration conventions (factor order):
//   G      : (g)                    LG     : one loop
//   G^2    : (g1, g2)               LG x LG: two loops
//   P      : (m, g)                 LP     : base loop, fiber loop
//   P^[2]  : (m, g1, g2)            LP^[2] : three loops
//   P^[3]  : (m, g1, g2, g3)        LP^[3] : four loops

#include <array>
#include <memory>

#include "loopforms/forms.hpp"

namespace loopforms {

// ---------------------------------------------------------------------------
// Trivial-bundle connection data
// ---------------------------------------------------------------------------

enum class ConnectionPreset { Zero, MaurerCartan, Scaled };

// A principal connection on P = M x G induced by the g-valued 1-form
// a = f(m) theta_M on the base:  A_{(x,g)}(v,w) = Ad_g^{-1}(a_x(v)) + theta_g(w).
// The scaled preset has a non-flat curvature; zero and Maurer-Cartan are flat.
struct TrivialConnection {
  ConnectionPreset preset = ConnectionPreset::Scaled;
  double alpha = 0.7;

  double f(const CMat& m) const {
    switch (preset) {
      case ConnectionPreset::Zero:
        return 0.0;
      case ConnectionPreset::MaurerCartan:
        return 1.0;
      default:
        return alpha * m.trace().real() / static_cast<double>(m.rows());
    }
  }

  double df(const CMat& m, const CMat& xi_m) const {
    if (preset != ConnectionPreset::Scaled) return 0.0;
    return alpha * (m * xi_m).trace().real() / static_cast<double>(m.rows());
  }

  // a_x(v) with v = x xi_m
  CMat a(const CMat& m, const CMat& xi_m) const { return f(m) * xi_m; }

  // da(v_x, v_y) = df(v_x) xi_y - df(v_y) xi_x - f [xi_x, xi_y]
  CMat da(const CMat& m, const CMat& xi_x, const CMat& xi_y) const {
    return df(m, xi_x) * xi_y - df(m, xi_y) * xi_x -
           f(m) * bracket(xi_x, xi_y);
  }

  // F_a = da + 1/2 [a ^ a]
  CMat curv_a(const CMat& m, const CMat& xi_x, const CMat& xi_y) const {
    double fm = f(m);
    return df(m, xi_x) * xi_y - df(m, xi_y) * xi_x +
           (fm * fm - fm) * bracket(xi_x, xi_y);
  }

  // connection 1-form on P, tangents left-trivialized per factor
  CMat A(const CMat& m, const CMat& g, const CMat& xi_m,
         const CMat& xi_g) const {
    return adjoint_inv(g, a(m, xi_m)) + xi_g;
  }

  CMat A(const GroupConfig& pt, const GroupTangent& t) const {
    return A(pt.g[0], pt.g[1], t[0], t[1]);
  }

  // dA = Ad_g^{-1}(da) - [Ad_g^{-1} a ^ g*theta] - 1/2 [theta ^ theta]
  CMat dA(const GroupConfig& pt, const GroupTangent& tx,
          const GroupTangent& ty) const {
    const CMat& m = pt.g[0];
    const CMat& g = pt.g[1];
    CMat ax = adjoint_inv(g, a(m, tx[0]));
    CMat ay = adjoint_inv(g, a(m, ty[0]));
    return adjoint_inv(g, da(m, tx[0], ty[0])) - bracket(ax, ty[1]) +
           bracket(ay, tx[1]) - bracket(tx[1], ty[1]);
  }

  // curvature F = Ad_g^{-1}(F_a)
  CMat F(const GroupConfig& pt, const GroupTangent& tx,
         const GroupTangent& ty) const {
    return adjoint_inv(pt.g[1], curv_a(pt.g[0], tx[0], ty[0]));
  }
};

inline TrivialConnection make_connection(ConnectionPreset p, double alpha = 0.7) {
  TrivialConnection tc;
  tc.preset = p;
  tc.alpha = alpha;
  return tc;
}

// ---------------------------------------------------------------------------
// Bundle maps
// ---------------------------------------------------------------------------

// delta : P^[2] -> G, (m, g1, g2) -> g2^{-1} g1 (the element moving the
// second point to the first).  Left-trivialized tangent:
// xi_delta = xi_1 - Ad_delta^{-1}(xi_2).
inline GroupMap delta_map() {
  GroupMap m;
  m.in_arity = 3;
  m.out_arity = 1;
  m.fwd = [](const GroupConfig& pt) {
    GroupConfig q;
    q.g.push_back(pt.g[2].adjoint() * pt.g[1]);
    return q;
  };
  m.dfwd = [](const GroupConfig& pt, const GroupTangent& t) {
    CMat delta = pt.g[2].adjoint() * pt.g[1];
    GroupTangent q;
    q.push_back(t[1] - adjoint_inv(delta, t[2]));
    return q;
  };
  return m;
}

// delta_2 : P^[3] -> G^2, (m, g1, g2, g3) -> (delta_23, delta_12).
inline GroupMap delta2_map() {
  GroupMap m;
  m.in_arity = 4;
  m.out_arity = 2;
  m.fwd = [](const GroupConfig& pt) {
    GroupConfig q;
    q.g.push_back(pt.g[3].adjoint() * pt.g[2]);
    q.g.push_back(pt.g[2].adjoint() * pt.g[1]);
    return q;
  };
  m.dfwd = [](const GroupConfig& pt, const GroupTangent& t) {
    CMat d23 = pt.g[3].adjoint() * pt.g[2];
    CMat d12 = pt.g[2].adjoint() * pt.g[1];
    GroupTangent q;
    q.push_back(t[2] - adjoint_inv(d23, t[3]));
    q.push_back(t[1] - adjoint_inv(d12, t[2]));
    return q;
  };
  return m;
}

// P^[k] -> P keeping (m, g_i), fiber index i = 1-based.
inline GroupMap bundle_projection(int in_arity, int fiber_index) {
  return projection_map(in_arity, {0, fiber_index});
}

// The bundle pair type: a loop in P^[2] whose difference loop must itself be
// an admissible loop.
struct BundlePairLoop {
  DiscreteLoop base;
  DiscreteLoop g1;
  DiscreteLoop g2;

  BundlePairLoop(DiscreteLoop b, DiscreteLoop a1, DiscreteLoop a2)
      : base(std::move(b)), g1(std::move(a1)), g2(std::move(a2)) {
    (void)delta();  // validates the difference loop invariants
  }

  DiscreteLoop delta() const {
    const int n = base.samples();
    std::vector<CMat> samples(n);
    for (int j = 0; j < n; ++j) samples[j] = g2.at(j).adjoint() * g1.at(j);
    return DiscreteLoop(std::move(samples), base.scheme());
  }

  LoopConfig config() const { return LoopConfig{{base, g1, g2}}; }
};

// ---------------------------------------------------------------------------
// Loop-algebra data: Z, cocycle, beta
// ---------------------------------------------------------------------------

inline Field field_derivative(const Field& f) { return spectral_derivative(f); }

// Z(tau, X) = 2 int <d tau tau^{-1}, X> dz for a plain algebra-valued X.
inline double Z_map(const InnerProduct& ip, const DiscreteLoop& tau,
                    const Field& x) {
  const int n = tau.samples();
  std::vector<double> vals(n);
  for (int j = 0; j < n; ++j)
    vals[j] = ip(adjoint(tau.at(j), tau.velocity()[j]), x[j]);
  return 2.0 * periodic_mean(vals);
}

// Standard loop-algebra cocycle omega(X, Y) = 2 int <X, dY>.
inline double cocycle_omega(const InnerProduct& ip, const Field& x,
                            const Field& y) {
  Field dy = field_derivative(y);
  const int n = static_cast<int>(x.size());
  std::vector<double> vals(n);
  for (int j = 0; j < n; ++j) vals[j] = ip(x[j], dy[j]);
  return 2.0 * periodic_mean(vals);
}

// omega contracted into a pair of algebra-valued slots:
// omega(a ^ b)(X, Y) = omega(a(X), b(Y)) - omega(a(Y), b(X)).
inline double cocycle_wedge(const InnerProduct& ip, const Field& ax,
                            const Field& ay, const Field& bx,
                            const Field& by) {
  return cocycle_omega(ip, ax, by) - cocycle_omega(ip, ay, bx);
}

// beta_tau(X) = int <tau^{-1} d tau, tau^{-1} X> dz
inline LoopForm beta_form(InnerProduct ip) {
  LoopForm w;
  w.degree = 1;
  w.arity = 1;
  w.eval = [ip](const LoopConfig& pt, const std::vector<LoopTangent>& ts) {
    const DiscreteLoop& tau = pt.loops[0];
    const Field& xi = ts[0][0];
    const int n = tau.samples();
    std::vector<double> vals(n);
    for (int j = 0; j < n; ++j) vals[j] = ip(tau.velocity()[j], xi[j]);
    return periodic_mean(vals);
  };
  return w;
}

// ---------------------------------------------------------------------------
// The canonical forms H and rho
// ---------------------------------------------------------------------------

// H = (1/6) <theta ^ [theta ^ theta]>, value <X,[Y,Z]> at the identity.
inline GroupForm wz_form(InnerProduct ip) {
  VectorForm1 theta{1, [](const GroupConfig&, const GroupTangent& t) {
                      return t[0];
                    }};
  GroupForm h = wedge_pair_bracket(theta, theta, theta, ip);
  GroupForm out;
  out.degree = 3;
  out.arity = 1;
  out.eval = [h](const GroupConfig& pt, const std::vector<GroupTangent>& ts) {
    return h.eval(pt, ts) / 6.0;
  };
  return out;
}

// rho = <pr1* theta ^ pr2* thetabar> on G^2.
inline GroupForm rho_form(InnerProduct ip) {
  VectorForm1 theta1{2, [](const GroupConfig&, const GroupTangent& t) {
                       return t[0];
                     }};
  VectorForm1 thetabar2{2, [](const GroupConfig& pt, const GroupTangent& t) {
                          return adjoint(pt.g[1], t[1]);
                        }};
  return wedge_pair(theta1, thetabar2, ip);
}

// Error 1-form of the transgressed connection on LG x LG.
inline LoopForm epsilon_nu(InnerProduct ip) {
  LoopForm w;
  w.degree = 1;
  w.arity = 2;
  w.eval = [ip](const LoopConfig& pt, const std::vector<LoopTangent>& ts) {
    const DiscreteLoop& t1 = pt.loops[0];
    const DiscreteLoop& t2 = pt.loops[1];
    const Field& x1 = ts[0][0];
    const Field& x2 = ts[0][1];
    const int n = t1.samples();
    std::vector<double> vals(n);
    for (int j = 0; j < n; ++j) {
      vals[j] = ip(t1.velocity()[j], adjoint(t2.at(j), x2[j])) -
                ip(x1[j], adjoint(t2.at(j), t2.velocity()[j]));
    }
    return periodic_mean(vals);
  };
  return w;
}

// ---------------------------------------------------------------------------
// Connection-dependent loop forms
// ---------------------------------------------------------------------------

// \bar A: the pointwise looping of the connection; takes an LP configuration.
inline Field looped_connection(const TrivialConnection& tc, const LoopConfig& pt,
                               const LoopTangent& t) {
  const int n = pt.samples();
  Field out(n);
  for (int j = 0; j < n; ++j)
    out[j] = tc.A(pt.loops[0].at(j), pt.loops[1].at(j), t[0][j], t[1][j]);
  return out;
}

// r(tau, X) = -2 int <tau*A, X>; the first slot of A carries the loop velocity.
inline double reduction_r(const InnerProduct& ip, const TrivialConnection& tc,
                          const LoopConfig& pt, const Field& x) {
  const int n = pt.samples();
  std::vector<double> vals(n);
  for (int j = 0; j < n; ++j) {
    CMat a_vel = tc.A(pt.loops[0].at(j), pt.loops[1].at(j),
                      pt.loops[0].velocity()[j], pt.loops[1].velocity()[j]);
    vals[j] = ip(a_vel, x[j]);
  }
  return -2.0 * periodic_mean(vals);
}

// zeta_tau(X) = r(tau, \bar A(X)) on LP.
inline LoopForm zeta_form(InnerProduct ip, TrivialConnection tc) {
  LoopForm w;
  w.degree = 1;
  w.arity = 2;
  w.eval = [ip, tc](const LoopConfig& pt, const std::vector<LoopTangent>& ts) {
    return reduction_r(ip, tc, pt, looped_connection(tc, pt, ts[0]));
  };
  return w;
}

namespace detail {

inline DiscreteLoop delta_loop(const LoopConfig& pt) {
  const int n = pt.samples();
  std::vector<CMat> samples(n);
  for (int j = 0; j < n; ++j)
    samples[j] = pt.loops[2].at(j).adjoint() * pt.loops[1].at(j);
  return DiscreteLoop(std::move(samples), pt.loops[0].scheme());
}

inline Field delta_tangent(const LoopConfig& pt, const DiscreteLoop& delta,
                           const LoopTangent& t) {
  const int n = pt.samples();
  Field out(n);
  for (int j = 0; j < n; ++j)
    out[j] = t[1][j] - adjoint_inv(delta.at(j), t[2][j]);
  return out;
}

}  // namespace detail

// Z(Ldelta, pr2* \bar A) on LP^[2]; the shift Gomi's connection adds to the
// pulled-back splitting connection.
inline LoopForm gomi_shift_form(InnerProduct ip, TrivialConnection tc) {
  LoopForm w;
  w.degree = 1;
  w.arity = 3;
  w.eval = [ip, tc](const LoopConfig& pt, const std::vector<LoopTangent>& ts) {
    DiscreteLoop delta = detail::delta_loop(pt);
    const int n = pt.samples();
    std::vector<double> vals(n);
    for (int j = 0; j < n; ++j) {
      CMat rvel = adjoint(delta.at(j), delta.velocity()[j]);
      CMat abar = tc.A(pt.loops[0].at(j), pt.loops[2].at(j), ts[0][0][j],
                       ts[0][2][j]);
      vals[j] = ip(rvel, abar);
    }
    return 2.0 * periodic_mean(vals);
  };
  return w;
}

// xi = Ldelta* beta + Z(Ldelta, pr2* \bar A) on LP^[2].
inline LoopForm xi_form(InnerProduct ip, TrivialConnection tc) {
  LoopForm shift = gomi_shift_form(ip, tc);
  LoopForm w;
  w.degree = 1;
  w.arity = 3;
  w.eval = [ip, shift](const LoopConfig& pt,
                       const std::vector<LoopTangent>& ts) {
    DiscreteLoop delta = detail::delta_loop(pt);
    Field xi_d = detail::delta_tangent(pt, delta, ts[0]);
    const int n = pt.samples();
    std::vector<double> vals(n);
    for (int j = 0; j < n; ++j) vals[j] = ip(delta.velocity()[j], xi_d[j]);
    return periodic_mean(vals) + shift.eval(pt, ts);
  };
  return w;
}

// xi - 1/2 Delta zeta: the superficial fusion 1-form on LP^[2].
inline LoopForm fusion_1form(InnerProduct ip, TrivialConnection tc) {
  LoopForm xi = xi_form(ip, tc);
  LoopForm dz = simplicial_delta(zeta_form(ip, tc), SimplicialFamily::Fiber);
  LoopForm w;
  w.degree = 1;
  w.arity = 3;
  w.eval = [xi, dz](const LoopConfig& pt, const std::vector<LoopTangent>& ts) {
    return xi.eval(pt, ts) - 0.5 * dz.eval(pt, ts);
  };
  return w;
}

// ---------------------------------------------------------------------------
// Chern-Simons data on the bundle
// ---------------------------------------------------------------------------

// CS(A) = <A ^ dA> + (1/3) <A ^ [A ^ A]> on P.
inline GroupForm cs_form(InnerProduct ip, TrivialConnection tc) {
  GroupForm w;
  w.degree = 3;
  w.arity = 2;
  w.eval = [ip, tc](const GroupConfig& pt, const std::vector<GroupTangent>& ts) {
    std::array<CMat, 3> a{tc.A(pt, ts[0]), tc.A(pt, ts[1]), tc.A(pt, ts[2])};
    std::array<CMat, 3> da{tc.dA(pt, ts[1], ts[2]), tc.dA(pt, ts[0], ts[2]),
                           tc.dA(pt, ts[0], ts[1])};
    double first = ip(a[0], da[0]) - ip(a[1], da[1]) + ip(a[2], da[2]);
    double second = 2.0 * ip(a[0], bracket(a[1], a[2]));
    return first + second;
  };
  return w;
}

// omega = <delta* theta ^ pr1* A> on P^[2].
inline GroupForm cs_omega_form(InnerProduct ip, TrivialConnection tc) {
  GroupMap dmap = delta_map();
  GroupForm w;
  w.degree = 2;
  w.arity = 3;
  w.eval = [ip, tc, dmap](const GroupConfig& pt,
                          const std::vector<GroupTangent>& ts) {
    GroupTangent dx = dmap.dfwd(pt, ts[0]);
    GroupTangent dy = dmap.dfwd(pt, ts[1]);
    GroupConfig p1;
    p1.g = {pt.g[0], pt.g[1]};
    CMat ax = tc.A(p1, {ts[0][0], ts[0][1]});
    CMat ay = tc.A(p1, {ts[1][0], ts[1][1]});
    return ip(dx[0], ay) - ip(dy[0], ax);
  };
  return w;
}

// ---------------------------------------------------------------------------
// Curvature of \bar A, two routes
// ---------------------------------------------------------------------------

// Pointwise looping of F.
inline Field loop_curvature_pointwise(const TrivialConnection& tc,
                                      const LoopConfig& pt,
                                      const LoopTangent& tx,
                                      const LoopTangent& ty) {
  const int n = pt.samples();
  Field out(n);
  for (int j = 0; j < n; ++j)
    out[j] = tc.F(pt.at(j), tangent_at(tx, j), tangent_at(ty, j));
  return out;
}

// Loop-space finite differences: curv(\bar A) = d\bar A + [\bar A ^ \bar A]/2
// with the commuting-chart derivative, evaluated entrywise.
inline Field loop_curvature_fd(const TrivialConnection& tc, const LoopConfig& pt,
                               const LoopTangent& tx, const LoopTangent& ty,
                               FDOptions fd = {}) {
  detail::check_step(fd.h);
  const int arity = pt.arity();
  const int n = pt.samples();
  auto shifted_eval = [&](const LoopTangent& dir, double step,
                          const LoopTangent& arg) {
    LoopConfig q;
    q.loops.reserve(arity);
    for (int f = 0; f < arity; ++f) {
      std::vector<CMat> samples(n);
      for (int j = 0; j < n; ++j)
        samples[j] = pt.loops[f].at(j) * exp_map(CMat(step * dir[f][j]));
      q.loops.emplace_back(std::move(samples), pt.loops[f].scheme());
    }
    LoopTangent moved(arity, Field(n));
    for (int f = 0; f < arity; ++f)
      for (int j = 0; j < n; ++j)
        moved[f][j] = dexp_transport(CMat(step * dir[f][j]), arg[f][j]);
    return looped_connection(tc, q, moved);
  };
  auto d_abar_at = [&](double h) {
    Field xp = shifted_eval(tx, h, ty), xm = shifted_eval(tx, -h, ty);
    Field yp = shifted_eval(ty, h, tx), ym = shifted_eval(ty, -h, tx);
    Field out(n);
    for (int j = 0; j < n; ++j)
      out[j] = (xp[j] - xm[j]) / (2.0 * h) - (yp[j] - ym[j]) / (2.0 * h);
    return out;
  };
  Field d_abar = d_abar_at(fd.h);
  if (fd.richardson) {
    Field fine = d_abar_at(fd.h / 2.0);
    for (int j = 0; j < n; ++j)
      d_abar[j] = (4.0 * fine[j] - d_abar[j]) / 3.0;
  }
  Field abar_x = looped_connection(tc, pt, tx);
  Field abar_y = looped_connection(tc, pt, ty);
  Field out(n);
  for (int j = 0; j < n; ++j)
    out[j] = d_abar[j] + bracket(abar_x[j], abar_y[j]);
  return out;
}

// ---------------------------------------------------------------------------
// The corrected curving
// ---------------------------------------------------------------------------

// B_corr = 1/2 omega(\bar A ^ \bar A) + r(curv(\bar A)) - 1/2 d zeta on LP.
inline LoopForm b_corr_form(InnerProduct ip, TrivialConnection tc,
                            FDOptions fd = {}) {
  LoopForm dzeta = exterior_derivative(zeta_form(ip, tc), fd);
  LoopForm w;
  w.degree = 2;
  w.arity = 2;
  w.eval = [ip, tc, dzeta](const LoopConfig& pt,
                           const std::vector<LoopTangent>& ts) {
    Field ax = looped_connection(tc, pt, ts[0]);
    Field ay = looped_connection(tc, pt, ts[1]);
    double omega_term =
        0.5 * (cocycle_omega(ip, ax, ay) - cocycle_omega(ip, ay, ax));
    Field f = loop_curvature_pointwise(tc, pt, ts[0], ts[1]);
    double r_term = reduction_r(ip, tc, pt, f);
    return omega_term + r_term - 0.5 * dzeta.eval(pt, ts);
  };
  return w;
}

// ---------------------------------------------------------------------------
// Parallel transport along families (the x-family dichotomy)
// ---------------------------------------------------------------------------

struct PTConfig {
  double x = 1.0;
};

// A path of configurations in LP^[2] presented through gamma_2 = (base, fiber)
// and the difference family delta; gamma_1 = gamma_2 . delta is implied.
struct PTFamily {
  Cylinder base;
  Cylinder fiber;
  Cylinder delta;

  bool periodic() const { return delta.periodic; }
  int steps() const { return delta.steps(); }
};

namespace detail {

// Ambient parameter derivative of a cylinder, one field of matrices per row.
inline std::vector<std::vector<CMat>> cylinder_t_derivative(const Cylinder& c) {
  const int s = c.steps();
  const int n = c.samples();
  const int rows = c.periodic ? s : s + 1;
  std::vector<std::vector<CMat>> out(s + 1, std::vector<CMat>(n));
  if (c.periodic) {
    // spectral derivative over the periodic family parameter
    const Eigen::MatrixXd& d = spectral_diff_matrix(rows);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < rows; ++i) {
        CMat acc = CMat::Zero(c.rows[0].dim(), c.rows[0].dim());
        for (int k = 0; k < rows; ++k) {
          double w = d(i, k);
          if (w != 0.0) acc += w * c.rows[k].at(j);
        }
        out[i][j] = acc;
      }
    }
    out[s] = out[0];
    return out;
  }
  // non-periodic: 4th order central inside, one-sided at the edges
  auto row = [&](int i) -> const DiscreteLoop& { return c.rows[i]; };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= s; ++i) {
      CMat v;
      double hs = 1.0 / s;
      if (i >= 2 && i <= s - 2) {
        v = (8.0 * (row(i + 1).at(j) - row(i - 1).at(j)) -
             (row(i + 2).at(j) - row(i - 2).at(j))) /
            (12.0 * hs);
      } else if (i < 2) {
        int o = i;
        v = (-25.0 * row(o).at(j) + 48.0 * row(o + 1).at(j) -
             36.0 * row(o + 2).at(j) + 16.0 * row(o + 3).at(j) -
             3.0 * row(o + 4).at(j)) /
            (12.0 * hs);
        if (i == 1)
          v = (-3.0 * row(0).at(j) - 10.0 * row(1).at(j) +
               18.0 * row(2).at(j) - 6.0 * row(3).at(j) + row(4).at(j)) /
              (12.0 * hs);
      } else {
        int o = s - i;
        v = (25.0 * row(s - o).at(j) - 48.0 * row(s - o - 1).at(j) +
             36.0 * row(s - o - 2).at(j) - 16.0 * row(s - o - 3).at(j) +
             3.0 * row(s - o - 4).at(j)) /
            (12.0 * hs);
        if (o == 1)
          v = (3.0 * row(s).at(j) + 10.0 * row(s - 1).at(j) -
               18.0 * row(s - 2).at(j) + 6.0 * row(s - 3).at(j) -
               row(s - 4).at(j)) /
              (12.0 * hs);
      }
      out[i][j] = v;
    }
  }
  return out;
}

}  // namespace detail

// Precomputed parameter derivatives for a family; built once per family so
// repeated integrand evaluations stay cheap.
struct PTDerivatives {
  std::vector<std::vector<CMat>> d_base;
  std::vector<std::vector<CMat>> d_fiber;
  std::vector<std::vector<CMat>> d_delta;

  explicit PTDerivatives(const PTFamily& fam)
      : d_base(detail::cylinder_t_derivative(fam.base)),
        d_fiber(detail::cylinder_t_derivative(fam.fiber)),
        d_delta(detail::cylinder_t_derivative(fam.delta)) {}
};

// Integrand of the horizontal-lift 1-form along the family at row t:
//   (1-x)/2 Z(delta, d_t delta delta^{-1}) + (2-x)/2 Z(delta, \bar A(d_t g2))
//   + x/2 r(gamma2, d_t delta delta^{-1})
inline double pt_integrand(const InnerProduct& ip, const TrivialConnection& tc,
                           const PTConfig& cfg, const PTFamily& fam,
                           const PTDerivatives& der, int t_index) {
  const int n = fam.delta.samples();
  const DiscreteLoop& dl = fam.delta.rows[t_index];
  const DiscreteLoop& mb = fam.base.rows[t_index];
  const DiscreteLoop& gf = fam.fiber.rows[t_index];

  Field ddelta_right(n);
  Field abar_dt(n);
  for (int j = 0; j < n; ++j) {
    ddelta_right[j] =
        project_algebra(der.d_delta[t_index][j] * dl.at(j).adjoint());
    CMat xi_m = project_algebra(mb.at(j).adjoint() * der.d_base[t_index][j]);
    CMat xi_g = project_algebra(gf.at(j).adjoint() * der.d_fiber[t_index][j]);
    abar_dt[j] = tc.A(mb.at(j), gf.at(j), xi_m, xi_g);
  }
  double z1 = Z_map(ip, dl, ddelta_right);
  double z2 = Z_map(ip, dl, abar_dt);
  LoopConfig gamma2{{mb, gf}};
  double r3 = reduction_r(ip, tc, gamma2, ddelta_right);
  double x = cfg.x;
  return 0.5 * (1.0 - x) * z1 + 0.5 * (2.0 - x) * z2 + 0.5 * x * r3;
}

inline double pt_integrand(const InnerProduct& ip, const TrivialConnection& tc,
                           const PTConfig& cfg, const PTFamily& fam,
                           int t_index) {
  PTDerivatives der(fam);
  return pt_integrand(ip, tc, cfg, fam, der, t_index);
}

// Parameter quadrature of the integrand over the family.
inline double pt_integral(const InnerProduct& ip, const TrivialConnection& tc,
                          const PTConfig& cfg, const PTFamily& fam) {
  PTDerivatives der(fam);
  const int s = fam.steps();
  if (fam.periodic()) {
    std::vector<double> vals(s);
    for (int i = 0; i < s; ++i)
      vals[i] = pt_integrand(ip, tc, cfg, fam, der, i);
    return periodic_mean(vals);
  }
  std::vector<double> vals(s + 1);
  for (int i = 0; i <= s; ++i)
    vals[i] = pt_integrand(ip, tc, cfg, fam, der, i);
  return trapezoid(vals);
}

}  // namespace loopforms
