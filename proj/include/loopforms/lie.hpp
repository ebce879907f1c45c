#pragma once

// Numerical kernel for a fixed compact matrix group, default SU(2).  All
// operations are pure; matrices are passed by value or const reference and
// never mutated in place.

#include <cmath>
#include <cstdint>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "loopforms/common.hpp"

namespace loopforms {

using AlgebraVector = CMat;  // skew-Hermitian, traceless
using GroupPoint = CMat;     // unitary, det 1

inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kGroupTol = 1e-12;
inline constexpr double kBranchGuard = 1e-6;

inline CMat identity(int n) { return CMat::Identity(n, n); }

// Projects onto the skew-Hermitian traceless part.
inline AlgebraVector project_algebra(const CMat& m) {
  const int n = static_cast<int>(m.rows());
  CMat x = 0.5 * (m - m.adjoint());
  x -= (x.trace() / static_cast<double>(n)) * CMat::Identity(n, n);
  return x;
}

inline double algebra_defect(const CMat& x) {
  return (x + x.adjoint()).cwiseAbs().maxCoeff() + std::abs(x.trace());
}

inline double group_defect(const CMat& u) {
  const int n = static_cast<int>(u.rows());
  double d = (u * u.adjoint() - CMat::Identity(n, n)).cwiseAbs().maxCoeff();
  return d + std::abs(u.determinant() - Complex(1.0, 0.0));
}

inline void validate_algebra(const CMat& x, double tol = kAlgebraTol) {
  if (algebra_defect(x) > tol) throw Error("algebra invariant violated");
}

inline void validate_group(const CMat& u, double tol = kGroupTol) {
  if (group_defect(u) > tol) throw Error("group invariant violated");
}

// Polar re-unitarization with the det-1 phase fixed; used whenever drift
// exceeds the group tolerance.
inline GroupPoint unitarize(const CMat& m) {
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CMat u = svd.matrixU() * svd.matrixV().adjoint();
  const int n = static_cast<int>(u.rows());
  Complex det = u.determinant();
  // det lies on the unit circle; distribute the correction phase evenly.
  double phase = std::arg(det) / static_cast<double>(n);
  u *= std::polar(1.0, -phase);
  return u;
}

inline GroupPoint reunitarize_if_needed(const CMat& u, double tol = kGroupTol) {
  if (group_defect(u) > tol) return unitarize(u);
  return u;
}

// ---------------------------------------------------------------------------
// exp / log
// ---------------------------------------------------------------------------

namespace detail {

// exp for traceless skew-Hermitian 2x2: X^2 = -theta^2 I.
inline GroupPoint exp_su2(const AlgebraVector& x) {
  double theta2 = 0.5 * x.squaredNorm();
  double theta = std::sqrt(theta2);
  double c = std::cos(theta);
  double s = (theta < 1e-8) ? 1.0 - theta2 / 6.0 : std::sin(theta) / theta;
  return c * CMat::Identity(2, 2) + s * x;
}

inline AlgebraVector log_su2(const GroupPoint& u) {
  double ct = 0.5 * u.trace().real();
  ct = std::min(1.0, std::max(-1.0, ct));
  double theta = std::acos(ct);
  if (theta > kPi - kBranchGuard)
    throw BranchCutError("log_map: eigenvalue too close to -1");
  CMat v = 0.5 * (u - u.adjoint());  // = sin(theta) * direction
  double s = std::sin(theta);
  double f = (theta < 1e-8) ? 1.0 + theta * theta / 6.0 : theta / s;
  return project_algebra(f * v);
}

}  // namespace detail

inline GroupPoint exp_map(const AlgebraVector& x) {
  if (x.rows() == 2) return reunitarize_if_needed(detail::exp_su2(x));
  // General n: Schur-free scaling and squaring on the skew-Hermitian input.
  Eigen::SelfAdjointEigenSolver<CMat> es(CMat(Complex(0, -1) * x));
  CMat d = (Complex(0, 1) * es.eigenvalues().array()).exp().matrix().asDiagonal();
  return reunitarize_if_needed(es.eigenvectors() * d * es.eigenvectors().adjoint());
}

// Principal logarithm via eigendecomposition of the unitary input.  Throws
// BranchCutError when an eigenvalue is within the guard distance of -1.
inline AlgebraVector log_map(const GroupPoint& u) {
  if (u.rows() == 2) return detail::log_su2(u);
  // The complex Schur form of a unitary matrix is diagonal.
  Eigen::ComplexSchur<CMat> schur(u);
  const CMat& t = schur.matrixT();
  const CMat& q = schur.matrixU();
  const int n = static_cast<int>(u.rows());
  CMat d = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    Complex lam = t(i, i);
    if (std::abs(lam + Complex(1.0, 0.0)) < kBranchGuard)
      throw BranchCutError("log_map: eigenvalue too close to -1");
    d(i, i) = Complex(0.0, std::arg(lam));
  }
  return project_algebra(q * d * q.adjoint());
}

inline AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y) {
  return x * y - y * x;
}

inline AlgebraVector adjoint(const GroupPoint& g, const AlgebraVector& x) {
  return g * x * g.adjoint();
}

inline AlgebraVector adjoint_inv(const GroupPoint& g, const AlgebraVector& x) {
  return g.adjoint() * x * g;
}

// ---------------------------------------------------------------------------
// Invariant bilinear form <X,Y> = -level * Re tr(XY)
// ---------------------------------------------------------------------------

struct InnerProduct {
  double level = 1.0;

  double operator()(const CMat& x, const CMat& y) const {
    return -level * (x * y).trace().real();
  }
};

inline double pairing(const InnerProduct& ip, const CMat& x, const CMat& y) {
  return ip(x, y);
}

// ---------------------------------------------------------------------------
// Transport of coordinate fields through the exponential chart
// ---------------------------------------------------------------------------

// Left-trivialized derivative of the chart s -> g exp(a + s b) at s = 0:
//   exp(-a) d/ds exp(a + s b) = sum_k (-ad_a)^k b / (k+1)!
// The series is used with small chart offsets a (finite-difference steps), so
// a handful of terms reaches machine precision.
inline CMat dexp_transport(const CMat& a, const CMat& b) {
  CMat term = b;
  CMat sum = b;
  double fact = 1.0;
  for (int k = 1; k <= 8; ++k) {
    term = -(a * term - term * a);
    fact *= static_cast<double>(k + 1);
    sum += term / fact;
    if (term.cwiseAbs().maxCoeff() / fact < 1e-17) break;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Random elements
// ---------------------------------------------------------------------------

inline AlgebraVector random_algebra(std::mt19937_64& rng, int n,
                                    double scale = 1.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  AlgebraVector x = project_algebra(m);
  double nrm = x.norm();
  if (nrm < 1e-14) return CMat::Zero(n, n);
  return (scale / nrm) * x;
}

inline GroupPoint random_group(std::mt19937_64& rng, int n,
                               double scale = 1.0) {
  return exp_map(random_algebra(rng, n, scale));
}

// ---------------------------------------------------------------------------
// Pauli basis (n = 2 helpers for tests and fixtures)
// ---------------------------------------------------------------------------

inline CMat pauli(int k) {
  CMat s(2, 2);
  switch (k) {
    case 1:
      s << 0, 1, 1, 0;
      break;
    case 2:
      s << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    default:
      s << 1, 0, 0, -1;
      break;
  }
  return s;
}

inline AlgebraVector ipauli(int k) { return Complex(0, 1) * pauli(k); }

// ---------------------------------------------------------------------------
// Normalization of the canonical 3-form over SU(2)
// ---------------------------------------------------------------------------

// Integral over SU(2) of the left-invariant 3-form with value <X,[Y,Z]> at
// the identity, taken at the given level.  Hopf coordinates
//   U(eta, x1, x2) = [[cos(eta) e^{i x1}, sin(eta) e^{i x2}],
//                     [-sin(eta) e^{-i x2}, cos(eta) e^{-i x1}]]
// cover the group once for eta in [0, pi/2], x1, x2 in [0, 2pi).
inline double su2_h_integral(double level, int eta_panels = 512,
                             int angle_nodes = 8) {
  InnerProduct ip{level};
  auto integrand = [&](double eta, double x1, double x2) {
    const Complex i(0.0, 1.0);
    double ce = std::cos(eta), se = std::sin(eta);
    Complex e1 = std::polar(1.0, x1), e2 = std::polar(1.0, x2);
    CMat u(2, 2), du_eta(2, 2), du_x1(2, 2), du_x2(2, 2);
    u << ce * e1, se * e2, -se / e2, ce / e1;
    du_eta << -se * e1, ce * e2, -ce / e2, -se / e1;
    du_x1 << i * ce * e1, 0, 0, -i * ce / e1;
    du_x2 << 0, i * se * e2, i * se / e2, 0;
    CMat ui = u.adjoint();
    CMat t0 = ui * du_eta, t1 = ui * du_x1, t2 = ui * du_x2;
    // coordinate order (eta, x2, x1) matches the canonical group orientation
    return ip(t0, bracket(t2, t1));
  };
  // The integrand is constant in both circle angles; the rectangle rule over
  // a few nodes is exact.  Simpson in eta.
  int m = eta_panels;
  if (m % 2 == 1) ++m;
  double h_eta = (kPi / 2.0) / m;
  double total = 0.0;
  for (int a1 = 0; a1 < angle_nodes; ++a1) {
    double x1 = kTwoPi * (a1 + 0.5) / angle_nodes;
    for (int a2 = 0; a2 < angle_nodes; ++a2) {
      double x2 = kTwoPi * (a2 + 0.5) / angle_nodes;
      double acc = 0.0;
      for (int j = 0; j <= m; ++j) {
        double w = (j == 0 || j == m) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        acc += w * integrand(j * h_eta, x1, x2);
      }
      total += acc * h_eta / 3.0;
    }
  }
  total *= (kTwoPi / angle_nodes) * (kTwoPi / angle_nodes);
  return total;
}

// Level constant for which the integral of the canonical 3-form over SU(2)
// equals one.
inline double basic_level(int eta_panels = 512) {
  double at_unit_level = su2_h_integral(1.0, eta_panels);
  return 1.0 / at_unit_level;
}

}  // namespace loopforms
