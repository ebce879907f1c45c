#pragma once

// Discretized loops and paths in the group, tangent fields along them,
// fusion joins, and the thin families (rotations, reparameterizations) the
// identity suite drives its superficiality checks with.

#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "loopforms/grid.hpp"
#include "loopforms/lie.hpp"

namespace loopforms {

using Field = std::vector<CMat>;  // algebra-valued samples

inline constexpr double kSmoothnessBound = 0.5;

// ---------------------------------------------------------------------------
// DiscreteLoop
// ---------------------------------------------------------------------------

struct FourierGenerator {
  // tau(z) = exp( sum_k a_k cos(2 pi k z) + b_k sin(2 pi k z) ), k = 1..K
  std::vector<CMat> cos_coeff;
  std::vector<CMat> sin_coeff;

  CMat exponent(double z) const {
    const int n = static_cast<int>(cos_coeff.empty() ? 2 : cos_coeff[0].rows());
    CMat phi = CMat::Zero(n, n);
    for (std::size_t k = 0; k < cos_coeff.size(); ++k) {
      double ang = kTwoPi * static_cast<double>(k + 1) * z;
      phi += std::cos(ang) * cos_coeff[k] + std::sin(ang) * sin_coeff[k];
    }
    return phi;
  }

  GroupPoint at(double z) const { return exp_map(exponent(z)); }
};

class DiscreteLoop {
 public:
  DiscreteLoop() = default;

  DiscreteLoop(std::vector<CMat> samples, DerivScheme scheme = DerivScheme::Spectral)
      : u_(std::move(samples)), scheme_(scheme) {
    if (u_.empty() || u_.size() % 2 != 0)
      throw GridError("loop sample count must be positive and even");
    for (auto& s : u_) s = reunitarize_if_needed(s);
    check_smoothness();
    compute_velocity();
  }

  int samples() const { return static_cast<int>(u_.size()); }
  double z(int j) const { return static_cast<double>(j) / samples(); }
  const CMat& at(int j) const { return u_[wrap(j)]; }
  const std::vector<CMat>& points() const { return u_; }
  int dim() const { return static_cast<int>(u_[0].rows()); }
  DerivScheme scheme() const { return scheme_; }

  // Left-logarithmic derivative tau^{-1} d tau / dz, one algebra value per node.
  const Field& velocity() const { return lambda_; }

  double smoothness_defect() const {
    const int n = samples();
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      CMat q = u_[(j + 1) % n] * u_[j].adjoint();
      worst = std::max(worst, (q - identity(dim())).cwiseAbs().maxCoeff());
    }
    return worst;
  }

  std::optional<FourierGenerator> generator;  // set by random_loop

 private:
  int wrap(int j) const {
    const int n = samples();
    return ((j % n) + n) % n;
  }

  void check_smoothness() const {
    if (smoothness_defect() > kSmoothnessBound)
      throw DegenerateInput("loop violates the smoothness invariant");
  }

  void compute_velocity() {
    const int n = samples();
    lambda_.resize(n);
    switch (scheme_) {
      case DerivScheme::Spectral: {
        std::vector<CMat> du = spectral_derivative(u_);
        for (int j = 0; j < n; ++j)
          lambda_[j] = project_algebra(u_[j].adjoint() * du[j]);
        break;
      }
      case DerivScheme::Central4: {
        std::vector<CMat> du = central4_derivative(u_);
        for (int j = 0; j < n; ++j)
          lambda_[j] = project_algebra(u_[j].adjoint() * du[j]);
        break;
      }
      case DerivScheme::LogQuot2: {
        for (int j = 0; j < n; ++j) {
          CMat q = u_[wrap(j - 1)].adjoint() * u_[wrap(j + 1)];
          lambda_[j] = (0.5 * n) * log_map(q);
        }
        break;
      }
    }
  }

  std::vector<CMat> u_;
  Field lambda_;
  DerivScheme scheme_ = DerivScheme::Spectral;
};

// ---------------------------------------------------------------------------
// Tangent fields
// ---------------------------------------------------------------------------

// Left-trivialized tangent vector along a carrier loop: X(z) = tau(z) xi(z).
struct TangentField {
  const DiscreteLoop* carrier = nullptr;
  Field xi;

  TangentField() = default;
  TangentField(const DiscreteLoop& loop, Field values)
      : carrier(&loop), xi(std::move(values)) {
    if (static_cast<int>(xi.size()) != loop.samples())
      throw GridError("tangent field length does not match carrier");
  }
};

inline double field_sup_norm(const Field& f) {
  double m = 0.0;
  for (const auto& x : f) m = std::max(m, x.cwiseAbs().maxCoeff());
  return m;
}

// ---------------------------------------------------------------------------
// Random generators
// ---------------------------------------------------------------------------

inline DiscreteLoop random_loop(std::uint64_t seed, int modes, double amplitude,
                                int n_samples, int dim = 2,
                                DerivScheme scheme = DerivScheme::Spectral) {
  if (modes > n_samples / 4)
    throw BandLimitError("mode count exceeds the N/4 band limit");
  auto rng = make_rng(seed);
  FourierGenerator gen;
  for (int k = 1; k <= modes; ++k) {
    double decay = amplitude / static_cast<double>(k * k);
    gen.cos_coeff.push_back(random_algebra(rng, dim, decay));
    gen.sin_coeff.push_back(random_algebra(rng, dim, decay));
  }
  std::vector<CMat> samples(n_samples);
  for (int j = 0; j < n_samples; ++j)
    samples[j] = amplitude == 0.0 ? identity(dim)
                                  : gen.at(static_cast<double>(j) / n_samples);
  DiscreteLoop loop(std::move(samples), scheme);
  loop.generator = std::move(gen);
  return loop;
}

inline DiscreteLoop loop_from_generator(const FourierGenerator& gen,
                                        int n_samples,
                                        DerivScheme scheme = DerivScheme::Spectral) {
  std::vector<CMat> samples(n_samples);
  for (int j = 0; j < n_samples; ++j)
    samples[j] = gen.at(static_cast<double>(j) / n_samples);
  DiscreteLoop loop(std::move(samples), scheme);
  loop.generator = gen;
  return loop;
}

// Algebra-valued random field with the same 1/k^2 mode decay; includes the
// constant mode.
inline Field random_field(std::uint64_t seed, int modes, double amplitude,
                          int n_samples, int dim = 2) {
  auto rng = make_rng(seed);
  std::vector<CMat> c, s;
  c.push_back(random_algebra(rng, dim, amplitude));
  for (int k = 1; k <= modes; ++k) {
    double decay = amplitude / static_cast<double>(k * k);
    c.push_back(random_algebra(rng, dim, decay));
    s.push_back(random_algebra(rng, dim, decay));
  }
  Field f(n_samples, CMat::Zero(dim, dim));
  for (int j = 0; j < n_samples; ++j) {
    double z = static_cast<double>(j) / n_samples;
    CMat acc = c[0];
    for (int k = 1; k <= modes; ++k) {
      double ang = kTwoPi * k * z;
      acc += std::cos(ang) * c[k] + std::sin(ang) * s[k - 1];
    }
    f[j] = acc;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Paths with sitting instants
// ---------------------------------------------------------------------------

namespace detail {

inline double bump_half(double u) { return u <= 0.0 ? 0.0 : std::exp(-1.0 / u); }

// C-infinity step: exactly 0 for u <= 0, exactly 1 for u >= 1.
inline double smooth_step(double u) {
  double a = bump_half(u);
  double b = bump_half(1.0 - u);
  return a / (a + b);
}

}  // namespace detail

// Plateau reparameterization: phi(t) == 0 for the first p samples and == 1
// for the last p samples of an (N+1)-sample path grid.
inline double plateau_warp(double t, int n_samples, int plateau) {
  double t0 = (plateau - 0.5) / static_cast<double>(n_samples);
  return detail::smooth_step((t - t0) / (1.0 - 2.0 * t0));
}

struct DiscretePath {
  std::vector<CMat> u;  // N+1 samples on [0,1]
  int plateau = 1;

  DiscretePath() = default;
  DiscretePath(std::vector<CMat> samples, int p) : u(std::move(samples)), plateau(p) {
    if (u.size() < 3 || (u.size() - 1) % 2 != 0)
      throw GridError("path needs an even number of panels");
    if (p < 1) throw GridError("plateau width must be at least 1");
    for (auto& s : u) s = reunitarize_if_needed(s);
    for (int j = 1; j < p; ++j) {
      if ((u[j] - u[0]).cwiseAbs().maxCoeff() > 1e-12 ||
          (u[u.size() - 1 - j] - u.back()).cwiseAbs().maxCoeff() > 1e-12)
        throw PlateauViolation("plateau samples are not constant");
    }
    const int dim = static_cast<int>(u[0].rows());
    for (std::size_t j = 0; j + 1 < u.size(); ++j) {
      CMat q = u[j + 1] * u[j].adjoint();
      if ((q - CMat::Identity(dim, dim)).cwiseAbs().maxCoeff() >
          kSmoothnessBound)
        throw DegenerateInput("path violates the smoothness invariant");
    }
  }

  int panels() const { return static_cast<int>(u.size()) - 1; }
  const CMat& start() const { return u.front(); }
  const CMat& end() const { return u.back(); }
};

// Path t -> exp(phi(t) W + sum_k c_k sin(pi k phi(t))), built on the plateau
// warp; starts at the identity.
inline DiscretePath random_path(std::uint64_t seed, int modes, double amplitude,
                                int plateau, int n_panels, int dim = 2) {
  if (modes > n_panels / 4)
    throw BandLimitError("mode count exceeds the N/4 band limit");
  auto rng = make_rng(seed);
  CMat w = random_algebra(rng, dim, amplitude);
  std::vector<CMat> c;
  for (int k = 1; k <= modes; ++k)
    c.push_back(random_algebra(rng, dim, amplitude / (k * k)));
  std::vector<CMat> samples(n_panels + 1);
  for (int j = 0; j <= n_panels; ++j) {
    double s = plateau_warp(static_cast<double>(j) / n_panels, n_panels, plateau);
    CMat phi = s * w;
    for (int k = 1; k <= modes; ++k) phi += std::sin(kPi * k * s) * c[k - 1];
    samples[j] = amplitude == 0.0 ? identity(dim) : exp_map(phi);
  }
  return DiscretePath(std::move(samples), plateau);
}

// ---------------------------------------------------------------------------
// Fusion joins
// ---------------------------------------------------------------------------

// Loop traversing gamma1 on [0,1/2] and reversed gamma2 on [1/2,1]; the 2N
// raw samples are decimated back to N, which is exact because both plateaus
// cover the seams.
inline DiscreteLoop loop_join(const DiscretePath& gamma1, const DiscretePath& gamma2,
                              DerivScheme scheme = DerivScheme::Spectral) {
  const int n = gamma1.panels();
  if (gamma2.panels() != n) throw GridError("path grids do not match");
  if ((gamma1.start() - gamma2.start()).cwiseAbs().maxCoeff() > 1e-12 ||
      (gamma1.end() - gamma2.end()).cwiseAbs().maxCoeff() > 1e-12)
    throw EndpointMismatch("paths do not share endpoints");
  std::vector<CMat> samples(n);
  for (int j = 0; j < n; ++j)
    samples[j] = (2 * j <= n) ? gamma1.u[2 * j] : gamma2.u[2 * n - 2 * j];
  return DiscreteLoop(std::move(samples), scheme);
}

// Tangent data along a path; must vanish on both plateaus to be joinable.
struct PathField {
  Field xi;  // N+1 values
};

inline Field tangent_join(const DiscretePath& gamma1, const PathField& x1,
                          const DiscretePath& gamma2, const PathField& x2) {
  const int n = gamma1.panels();
  if (static_cast<int>(x1.xi.size()) != n + 1 ||
      static_cast<int>(x2.xi.size()) != n + 1)
    throw GridError("path field length mismatch");
  auto check_plateau = [&](const PathField& f, const DiscretePath& g) {
    for (int j = 0; j < g.plateau; ++j) {
      if (f.xi[j].cwiseAbs().maxCoeff() > 1e-12 ||
          f.xi[n - j].cwiseAbs().maxCoeff() > 1e-12)
        throw PlateauViolation("tangent field does not vanish on a plateau");
    }
  };
  check_plateau(x1, gamma1);
  check_plateau(x2, gamma2);
  Field out(n);
  for (int j = 0; j < n; ++j)
    out[j] = (2 * j <= n) ? x1.xi[2 * j] : x2.xi[2 * n - 2 * j];
  return out;
}

// ---------------------------------------------------------------------------
// Rotations, warps, cylinders
// ---------------------------------------------------------------------------

inline DiscreteLoop rotate_loop(const DiscreteLoop& tau, double t,
                                bool allow_resample = true) {
  const int n = tau.samples();
  double shift = t * n;
  long r = std::lround(shift);
  if (std::abs(shift - static_cast<double>(r)) < 1e-9) {
    std::vector<CMat> samples(n);
    for (int j = 0; j < n; ++j)
      samples[j] = tau.at(static_cast<int>(j + r));
    return DiscreteLoop(std::move(samples), tau.scheme());
  }
  if (!allow_resample)
    throw GridError("rotation offset is not grid aligned");
  std::vector<CMat> samples(n);
  for (int j = 0; j < n; ++j) {
    double z = tau.z(j) + t;
    samples[j] = tau.generator ? tau.generator->at(z)
                               : unitarize(trig_resample(tau.points(), z));
  }
  return DiscreteLoop(std::move(samples), tau.scheme());
}

// A path (or loop) of loops: rows are Gamma(s_i), i = 0..S.  For periodic
// families row S equals row 0 and parameter derivatives use the S-point
// periodic grid.
struct Cylinder {
  std::vector<DiscreteLoop> rows;
  bool periodic = false;

  int steps() const { return static_cast<int>(rows.size()) - 1; }
  int samples() const { return rows[0].samples(); }
};

inline Cylinder rotation_family(const DiscreteLoop& tau, int steps) {
  Cylinder c;
  c.periodic = true;
  c.rows.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i)
    c.rows.push_back(rotate_loop(tau, static_cast<double>(i) / steps));
  return c;
}

struct WarpSchedule {
  std::function<double(double)> w;    // family parameter profile, w(0) = 0
  std::function<double(double)> psi;  // periodic displacement profile
  bool closed = false;                // w(1) = 0 as well

  double phi(double s, double z) const { return z + w(s) * psi(z); }
};

// Standard schedule phi(s,z) = z + amp * sin(2 pi s) * sin(2 pi k z)/(2 pi k);
// closed in s, and a circle diffeomorphism in z whenever |amp| < 1.
inline WarpSchedule make_warp_schedule(double amp, int mode = 1) {
  WarpSchedule ws;
  ws.w = [amp](double s) { return amp * std::sin(kTwoPi * s); };
  ws.psi = [mode](double z) {
    return std::sin(kTwoPi * mode * z) / (kTwoPi * mode);
  };
  ws.closed = true;
  return ws;
}

// Evaluates the loop at an off-grid parameter: exactly through the Fourier
// generator when the loop carries one, otherwise by band-limited resampling.
inline GroupPoint sample_loop_at(const DiscreteLoop& tau, double z) {
  if (tau.generator) return tau.generator->at(z);
  return unitarize(trig_resample(tau.points(), z));
}

inline Cylinder reparam_family(const DiscreteLoop& tau, const WarpSchedule& ws,
                               int steps) {
  Cylinder c;
  c.periodic = ws.closed;
  c.rows.reserve(steps + 1);
  const int n = tau.samples();
  for (int i = 0; i <= steps; ++i) {
    double s = static_cast<double>(i) / steps;
    std::vector<CMat> samples(n);
    for (int j = 0; j < n; ++j)
      samples[j] = sample_loop_at(tau, ws.phi(s, tau.z(j)));
    c.rows.emplace_back(std::move(samples), tau.scheme());
  }
  return c;
}

// Family parameterized by an arbitrary warp phi(s, z); covers compositions of
// rotations with reparameterizations.
inline Cylinder warped_family(const DiscreteLoop& tau,
                              const std::function<double(double, double)>& phi,
                              int steps, bool periodic) {
  Cylinder c;
  c.periodic = periodic;
  c.rows.reserve(steps + 1);
  const int n = tau.samples();
  for (int i = 0; i <= steps; ++i) {
    double s = static_cast<double>(i) / steps;
    std::vector<CMat> samples(n);
    for (int j = 0; j < n; ++j)
      samples[j] = sample_loop_at(tau, phi(s, tau.z(j)));
    c.rows.emplace_back(std::move(samples), tau.scheme());
  }
  return c;
}

// ---------------------------------------------------------------------------
// Thinness certificate
// ---------------------------------------------------------------------------

// Max over grid points of the second singular value of the two-column
// Jacobian [d_s Gamma | d_z Gamma], central differences, flat matrix
// embedding.  Several cylinders may be stacked into one embedding (a family
// in a product space).
inline double thinness_defect(const std::vector<const Cylinder*>& components) {
  const Cylinder& c0 = *components.front();
  const int s_rows = c0.periodic ? c0.steps() : c0.steps() + 1;
  const int n = c0.samples();
  const int s_all = c0.steps() + 1;
  double worst = 0.0;
  const int i_lo = c0.periodic ? 0 : 1;
  const int i_hi = c0.periodic ? s_rows - 1 : s_rows - 2;
  double ds = 1.0 / c0.steps();
  std::vector<CMat> dts(components.size()), dzs(components.size());
  for (int i = i_lo; i <= i_hi; ++i) {
    int ip = c0.periodic ? (i + 1) % s_rows : i + 1;
    int im = c0.periodic ? (i - 1 + s_rows) % s_rows : i - 1;
    for (int j = 0; j < n; ++j) {
      double gtt = 0.0, gtz = 0.0, gzz = 0.0;
      for (std::size_t c = 0; c < components.size(); ++c) {
        const Cylinder* comp = components[c];
        if (comp->steps() + 1 != s_all || comp->samples() != n)
          throw GridError("cylinder grids do not match");
        const auto& rows = comp->rows;
        dts[c] = (rows[ip].at(j) - rows[im].at(j)) / (2.0 * ds);
        dzs[c] = (rows[i].at(j + 1) - rows[i].at(j - 1)) * (n / 2.0);
        gtt += dts[c].squaredNorm();
        gzz += dzs[c].squaredNorm();
        gtz += (dts[c].adjoint() * dzs[c]).trace().real();
      }
      // sigma_2 through an explicit residual projection; the Gram route
      // alone loses half the digits when the columns are nearly parallel
      double big = std::max(gtt, gzz);
      if (big < 1e-300) continue;
      bool onto_t = gtt >= gzz;
      double coef = gtz / (onto_t ? gtt : gzz);
      double res2 = 0.0;
      for (std::size_t c = 0; c < components.size(); ++c) {
        CMat r = onto_t ? CMat(dzs[c] - coef * dts[c])
                        : CMat(dts[c] - coef * dzs[c]);
        res2 += r.squaredNorm();
      }
      double tr = gtt + gzz;
      double det = std::max(0.0, big * res2);
      double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
      double lam1 = tr / 2.0 + disc;
      double sigma2 = lam1 > 0.0 ? std::sqrt(det / lam1) : 0.0;
      worst = std::max(worst, sigma2);
    }
  }
  return worst;
}

inline double thinness_defect(const Cylinder& c) {
  return thinness_defect(std::vector<const Cylinder*>{&c});
}

}  // namespace loopforms
