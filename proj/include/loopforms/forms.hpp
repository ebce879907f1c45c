#pragma once

// Differential forms on finite products of the group and on loop spaces.
//
// A configuration is a tuple of group factors; the base manifold of the
// trivial bundle is the group itself, so bundle and fiber-product spaces are
// tuples as well.  Tangent data is always passed left-trivialized: the
// component of a tangent vector at the factor g is xi with X = g xi.  Forms
// are closures over evaluators; loop-space forms have no coefficient
// representation and are evaluated on demand.

#include <functional>
#include <vector>

#include "loopforms/loops.hpp"

namespace loopforms {

// ---------------------------------------------------------------------------
// Configurations
// ---------------------------------------------------------------------------

struct GroupConfig {
  std::vector<CMat> g;
  int arity() const { return static_cast<int>(g.size()); }
};

using GroupTangent = std::vector<CMat>;  // one algebra value per factor

struct LoopConfig {
  std::vector<DiscreteLoop> loops;
  int arity() const { return static_cast<int>(loops.size()); }
  int samples() const { return loops[0].samples(); }
  int dim() const { return loops[0].dim(); }

  GroupConfig at(int j) const {
    GroupConfig c;
    c.g.reserve(loops.size());
    for (const auto& l : loops) c.g.push_back(l.at(j));
    return c;
  }

  GroupTangent velocity_at(int j) const {
    GroupTangent v;
    v.reserve(loops.size());
    for (const auto& l : loops) v.push_back(l.velocity()[j]);
    return v;
  }
};

using LoopTangent = std::vector<Field>;  // one field per factor

inline GroupTangent tangent_at(const LoopTangent& t, int j) {
  GroupTangent out;
  out.reserve(t.size());
  for (const auto& f : t) out.push_back(f[j]);
  return out;
}

// ---------------------------------------------------------------------------
// Forms
// ---------------------------------------------------------------------------

struct GroupForm {
  int degree = 0;
  int arity = 1;
  std::function<double(const GroupConfig&, const std::vector<GroupTangent>&)> eval;

  double operator()(const GroupConfig& pt,
                    const std::vector<GroupTangent>& tangents) const {
    if (pt.arity() != arity) throw ArityMismatch("configuration arity mismatch");
    if (static_cast<int>(tangents.size()) != degree)
      throw ArityMismatch("tangent slot count does not match the degree");
    return eval(pt, tangents);
  }
};

struct LoopForm {
  int degree = 0;
  int arity = 1;
  std::function<double(const LoopConfig&, const std::vector<LoopTangent>&)> eval;

  double operator()(const LoopConfig& pt,
                    const std::vector<LoopTangent>& tangents) const {
    if (pt.arity() != arity) throw ArityMismatch("configuration arity mismatch");
    if (static_cast<int>(tangents.size()) != degree)
      throw ArityMismatch("tangent slot count does not match the degree");
    return eval(pt, tangents);
  }
};

// ---------------------------------------------------------------------------
// Maps between configuration spaces and pullbacks
// ---------------------------------------------------------------------------

struct GroupMap {
  int in_arity = 1;
  int out_arity = 1;
  std::function<GroupConfig(const GroupConfig&)> fwd;
  std::function<GroupTangent(const GroupConfig&, const GroupTangent&)> dfwd;
};

inline GroupForm pullback(const GroupForm& w, const GroupMap& f) {
  if (w.arity != f.out_arity) throw ArityMismatch("pullback arity mismatch");
  GroupForm out;
  out.degree = w.degree;
  out.arity = f.in_arity;
  out.eval = [w, f](const GroupConfig& pt,
                    const std::vector<GroupTangent>& ts) {
    GroupConfig q = f.fwd(pt);
    std::vector<GroupTangent> qs;
    qs.reserve(ts.size());
    for (const auto& t : ts) qs.push_back(f.dfwd(pt, t));
    return w.eval(q, qs);
  };
  return out;
}

// Selects a subset of the factors.
inline GroupMap projection_map(int in_arity, std::vector<int> keep) {
  GroupMap m;
  m.in_arity = in_arity;
  m.out_arity = static_cast<int>(keep.size());
  m.fwd = [keep](const GroupConfig& pt) {
    GroupConfig q;
    for (int i : keep) q.g.push_back(pt.g[i]);
    return q;
  };
  m.dfwd = [keep](const GroupConfig&, const GroupTangent& t) {
    GroupTangent q;
    for (int i : keep) q.push_back(t[i]);
    return q;
  };
  return m;
}

// Multiplies factors i and j (i < j) into one, keeping the others.
// d(g h) = X g h + g Y h left-trivializes to Ad_h^{-1}(xi) + eta.
inline GroupMap multiply_map(int in_arity, int i, int j) {
  GroupMap m;
  m.in_arity = in_arity;
  m.out_arity = in_arity - 1;
  m.fwd = [=](const GroupConfig& pt) {
    GroupConfig q;
    for (int k = 0; k < in_arity; ++k) {
      if (k == i)
        q.g.push_back(pt.g[i] * pt.g[j]);
      else if (k != j)
        q.g.push_back(pt.g[k]);
    }
    return q;
  };
  m.dfwd = [=](const GroupConfig& pt, const GroupTangent& t) {
    GroupTangent q;
    for (int k = 0; k < in_arity; ++k) {
      if (k == i)
        q.push_back(adjoint_inv(pt.g[j], t[i]) + t[j]);
      else if (k != j)
        q.push_back(t[k]);
    }
    return q;
  };
  return m;
}

// A map applied sample-by-sample lifts to loop configurations.
struct LoopMap {
  int in_arity = 1;
  int out_arity = 1;
  std::function<LoopConfig(const LoopConfig&)> fwd;
  std::function<LoopTangent(const LoopConfig&, const LoopTangent&)> dfwd;
};

inline LoopMap lift_pointwise(const GroupMap& g) {
  LoopMap m;
  m.in_arity = g.in_arity;
  m.out_arity = g.out_arity;
  m.fwd = [g](const LoopConfig& pt) {
    const int n = pt.samples();
    std::vector<std::vector<CMat>> samples(g.out_arity,
                                           std::vector<CMat>(n));
    for (int j = 0; j < n; ++j) {
      GroupConfig q = g.fwd(pt.at(j));
      for (int f = 0; f < g.out_arity; ++f) samples[f][j] = q.g[f];
    }
    LoopConfig out;
    out.loops.reserve(g.out_arity);
    for (int f = 0; f < g.out_arity; ++f)
      out.loops.emplace_back(std::move(samples[f]), pt.loops[0].scheme());
    return out;
  };
  m.dfwd = [g](const LoopConfig& pt, const LoopTangent& t) {
    const int n = pt.samples();
    LoopTangent out(g.out_arity, Field(n));
    for (int j = 0; j < n; ++j) {
      GroupTangent q = g.dfwd(pt.at(j), tangent_at(t, j));
      for (int f = 0; f < g.out_arity; ++f) out[f][j] = q[f];
    }
    return out;
  };
  return m;
}

inline LoopForm pullback(const LoopForm& w, const LoopMap& f) {
  if (w.arity != f.out_arity) throw ArityMismatch("pullback arity mismatch");
  LoopForm out;
  out.degree = w.degree;
  out.arity = f.in_arity;
  out.eval = [w, f](const LoopConfig& pt, const std::vector<LoopTangent>& ts) {
    LoopConfig q = f.fwd(pt);
    std::vector<LoopTangent> qs;
    qs.reserve(ts.size());
    for (const auto& t : ts) qs.push_back(f.dfwd(pt, t));
    return w.eval(q, qs);
  };
  return out;
}

// ---------------------------------------------------------------------------
// Wedge pairing
// ---------------------------------------------------------------------------

// Algebra-valued 1-form on a finite-dimensional configuration space.
struct VectorForm1 {
  int arity = 1;
  std::function<CMat(const GroupConfig&, const GroupTangent&)> eval;
};

// <a ^ b>(X,Y) = <a(X),b(Y)> - <a(Y),b(X)>
inline GroupForm wedge_pair(const VectorForm1& a, const VectorForm1& b,
                            InnerProduct ip) {
  if (a.arity != b.arity) throw ArityMismatch("wedge factors live on different spaces");
  GroupForm out;
  out.degree = 2;
  out.arity = a.arity;
  out.eval = [a, b, ip](const GroupConfig& pt,
                        const std::vector<GroupTangent>& ts) {
    return ip(a.eval(pt, ts[0]), b.eval(pt, ts[1])) -
           ip(a.eval(pt, ts[1]), b.eval(pt, ts[0]));
  };
  return out;
}

// <a ^ [b ^ c]> with the shuffle convention; all three factors 1-forms.
inline GroupForm wedge_pair_bracket(const VectorForm1& a, const VectorForm1& b,
                                    const VectorForm1& c, InnerProduct ip) {
  if (a.arity != b.arity || a.arity != c.arity)
    throw ArityMismatch("wedge factors live on different spaces");
  GroupForm out;
  out.degree = 3;
  out.arity = a.arity;
  out.eval = [a, b, c, ip](const GroupConfig& pt,
                           const std::vector<GroupTangent>& ts) {
    static const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                   {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    double acc = 0.0;
    for (int p = 0; p < 6; ++p) {
      double sign = p < 3 ? 1.0 : -1.0;
      acc += sign * ip(a.eval(pt, ts[perm[p][0]]),
                       bracket(b.eval(pt, ts[perm[p][1]]),
                               c.eval(pt, ts[perm[p][2]])));
    }
    return acc;
  };
  return out;
}

// ---------------------------------------------------------------------------
// Finite-difference exterior derivative
// ---------------------------------------------------------------------------

struct FDOptions {
  double h = 1e-3;
  bool richardson = false;
};

namespace detail {

inline void check_step(double h) {
  if (h < 1e-8) throw StepUnderflow("finite-difference step below 1e-8");
}

// One FD evaluation of (d w) with step h; tangent data extended to commuting
// coordinate fields through the per-factor exponential chart, so no bracket
// terms appear.
inline double d_group_once(const GroupForm& w, const GroupConfig& pt,
                           const std::vector<GroupTangent>& ts, double h) {
  const int d1 = w.degree + 1;
  const int arity = pt.arity();
  double acc = 0.0;
  for (int i = 0; i < d1; ++i) {
    double side[2];
    for (int s = 0; s < 2; ++s) {
      double sgn = s == 0 ? 1.0 : -1.0;
      GroupConfig q = pt;
      for (int f = 0; f < arity; ++f)
        q.g[f] = pt.g[f] * exp_map(CMat(sgn * h * ts[i][f]));
      std::vector<GroupTangent> rest;
      rest.reserve(d1 - 1);
      for (int k = 0; k < d1; ++k) {
        if (k == i) continue;
        GroupTangent moved(arity);
        for (int f = 0; f < arity; ++f)
          moved[f] = dexp_transport(CMat(sgn * h * ts[i][f]), ts[k][f]);
        rest.push_back(std::move(moved));
      }
      side[s] = w.eval(q, rest);
    }
    double sign_i = (i % 2 == 0) ? 1.0 : -1.0;
    acc += sign_i * (side[0] - side[1]) / (2.0 * h);
  }
  return acc;
}

inline double d_loop_once(const LoopForm& w, const LoopConfig& pt,
                          const std::vector<LoopTangent>& ts, double h) {
  const int d1 = w.degree + 1;
  const int arity = pt.arity();
  const int n = pt.samples();
  double acc = 0.0;
  for (int i = 0; i < d1; ++i) {
    double side[2];
    for (int s = 0; s < 2; ++s) {
      double sgn = s == 0 ? 1.0 : -1.0;
      LoopConfig q;
      q.loops.reserve(arity);
      for (int f = 0; f < arity; ++f) {
        std::vector<CMat> samples(n);
        for (int j = 0; j < n; ++j)
          samples[j] =
              pt.loops[f].at(j) * exp_map(CMat(sgn * h * ts[i][f][j]));
        q.loops.emplace_back(std::move(samples), pt.loops[f].scheme());
      }
      std::vector<LoopTangent> rest;
      rest.reserve(d1 - 1);
      for (int k = 0; k < d1; ++k) {
        if (k == i) continue;
        LoopTangent moved(arity, Field(n));
        for (int f = 0; f < arity; ++f)
          for (int j = 0; j < n; ++j)
            moved[f][j] =
                dexp_transport(CMat(sgn * h * ts[i][f][j]), ts[k][f][j]);
        rest.push_back(std::move(moved));
      }
      side[s] = w.eval(q, rest);
    }
    double sign_i = (i % 2 == 0) ? 1.0 : -1.0;
    acc += sign_i * (side[0] - side[1]) / (2.0 * h);
  }
  return acc;
}

}  // namespace detail

inline GroupForm exterior_derivative(const GroupForm& w, FDOptions opt = {}) {
  detail::check_step(opt.h);
  GroupForm out;
  out.degree = w.degree + 1;
  out.arity = w.arity;
  out.eval = [w, opt](const GroupConfig& pt,
                      const std::vector<GroupTangent>& ts) {
    double v1 = detail::d_group_once(w, pt, ts, opt.h);
    if (!opt.richardson) return v1;
    double v2 = detail::d_group_once(w, pt, ts, opt.h / 2.0);
    return (4.0 * v2 - v1) / 3.0;
  };
  return out;
}

inline LoopForm exterior_derivative(const LoopForm& w, FDOptions opt = {}) {
  detail::check_step(opt.h);
  LoopForm out;
  out.degree = w.degree + 1;
  out.arity = w.arity;
  out.eval = [w, opt](const LoopConfig& pt,
                      const std::vector<LoopTangent>& ts) {
    double v1 = detail::d_loop_once(w, pt, ts, opt.h);
    if (!opt.richardson) return v1;
    double v2 = detail::d_loop_once(w, pt, ts, opt.h / 2.0);
    return (4.0 * v2 - v1) / 3.0;
  };
  return out;
}

// ---------------------------------------------------------------------------
// Simplicial delta
// ---------------------------------------------------------------------------

enum class SimplicialFamily {
  Group,  // multiplicative faces of the bar construction on G^k
  Fiber,  // fiber-product faces (factor 0 is the shared base point)
};

inline std::vector<std::pair<double, GroupMap>> face_maps(SimplicialFamily fam,
                                                          int in_arity) {
  std::vector<std::pair<double, GroupMap>> faces;
  if (fam == SimplicialFamily::Group) {
    const int q = in_arity;  // forms on G^{q-1} pull back to G^q
    for (int i = 0; i <= q; ++i) {
      double sign = (i % 2 == 0) ? 1.0 : -1.0;
      if (i == 0) {
        std::vector<int> keep;
        for (int k = 1; k < q; ++k) keep.push_back(k);
        faces.emplace_back(sign, projection_map(q, keep));
      } else if (i == q) {
        std::vector<int> keep;
        for (int k = 0; k < q - 1; ++k) keep.push_back(k);
        faces.emplace_back(sign, projection_map(q, keep));
      } else {
        faces.emplace_back(sign, multiply_map(q, i - 1, i));
      }
    }
  } else {
    // base factor 0 plus k+1 fiber factors; face i drops fiber i
    const int fibers = in_arity - 1;
    for (int i = 1; i <= fibers; ++i) {
      double sign = (i % 2 == 1) ? 1.0 : -1.0;
      std::vector<int> keep{0};
      for (int k = 1; k <= fibers; ++k)
        if (k != i) keep.push_back(k);
      faces.emplace_back(sign, projection_map(in_arity, keep));
    }
  }
  return faces;
}

inline GroupForm simplicial_delta(const GroupForm& w, SimplicialFamily fam) {
  const int in_arity = w.arity + 1;
  auto faces = face_maps(fam, in_arity);
  GroupForm out;
  out.degree = w.degree;
  out.arity = in_arity;
  std::vector<std::pair<double, GroupForm>> terms;
  for (auto& [sign, fmap] : faces) terms.emplace_back(sign, pullback(w, fmap));
  out.eval = [terms](const GroupConfig& pt,
                     const std::vector<GroupTangent>& ts) {
    double acc = 0.0;
    for (const auto& [sign, form] : terms) acc += sign * form.eval(pt, ts);
    return acc;
  };
  return out;
}

inline LoopForm simplicial_delta(const LoopForm& w, SimplicialFamily fam) {
  const int in_arity = w.arity + 1;
  auto faces = face_maps(fam, in_arity);
  LoopForm out;
  out.degree = w.degree;
  out.arity = in_arity;
  std::vector<std::pair<double, LoopForm>> terms;
  for (auto& [sign, fmap] : faces)
    terms.emplace_back(sign, pullback(w, lift_pointwise(fmap)));
  out.eval = [terms](const LoopConfig& pt,
                     const std::vector<LoopTangent>& ts) {
    double acc = 0.0;
    for (const auto& [sign, form] : terms) acc += sign * form.eval(pt, ts);
    return acc;
  };
  return out;
}

// ---------------------------------------------------------------------------
// Transgression
// ---------------------------------------------------------------------------

// Fiber integration along the evaluation map: contracts the first slot with
// the loop velocity and integrates over the circle.  Composite trapezoid on
// the periodic grid.
inline LoopForm transgress(const GroupForm& w) {
  if (w.degree < 1) throw ArityMismatch("transgression needs degree >= 1");
  LoopForm out;
  out.degree = w.degree - 1;
  out.arity = w.arity;
  out.eval = [w](const LoopConfig& pt, const std::vector<LoopTangent>& ts) {
    const int n = pt.samples();
    std::vector<double> vals(n);
    std::vector<GroupTangent> slot(w.degree);
    for (int j = 0; j < n; ++j) {
      slot[0] = pt.velocity_at(j);
      for (int k = 1; k < w.degree; ++k) slot[k] = tangent_at(ts[k - 1], j);
      vals[j] = w.eval(pt.at(j), slot);
    }
    return periodic_mean(vals);
  };
  return out;
}

}  // namespace loopforms
