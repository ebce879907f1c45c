#pragma once

// Periodic-grid numerics: spectral differentiation, quadrature, and
// band-limited resampling on z_j = j/N.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "loopforms/common.hpp"

namespace loopforms {

enum class DerivScheme {
  Spectral,  // exact on trigonometric polynomials of degree < N/2
  LogQuot2,  // symmetric log-quotient, 2nd order
  Central4,  // entrywise 4th-order central differences
};

// Spectral differentiation matrix for period-1 grids with an even number of
// nodes: D_{jk} = pi (-1)^{j-k} cot(pi (j-k)/N), zero diagonal.
inline const Eigen::MatrixXd& spectral_diff_matrix(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Eigen::MatrixXd>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto d = std::make_unique<Eigen::MatrixXd>(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) {
        (*d)(j, k) = 0.0;
      } else {
        int diff = j - k;
        double sign = (diff % 2 == 0) ? 1.0 : -1.0;
        (*d)(j, k) = kPi * sign / std::tan(kPi * diff / n);
      }
    }
  }
  auto& ref = *d;
  cache.emplace(n, std::move(d));
  return ref;
}

// d/dz of matrix-valued periodic samples.
inline std::vector<CMat> spectral_derivative(const std::vector<CMat>& f) {
  const int n = static_cast<int>(f.size());
  const Eigen::MatrixXd& d = spectral_diff_matrix(n);
  const int r = static_cast<int>(f[0].rows());
  const int c = static_cast<int>(f[0].cols());
  std::vector<CMat> out(n, CMat::Zero(r, c));
  for (int j = 0; j < n; ++j) {
    CMat acc = CMat::Zero(r, c);
    for (int k = 0; k < n; ++k) {
      double w = d(j, k);
      if (w != 0.0) acc += w * f[k];
    }
    out[j] = acc;
  }
  return out;
}

inline std::vector<CMat> central4_derivative(const std::vector<CMat>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<CMat> out(n);
  auto at = [&](int j) -> const CMat& { return f[((j % n) + n) % n]; };
  for (int j = 0; j < n; ++j) {
    out[j] = (8.0 * (at(j + 1) - at(j - 1)) - (at(j + 2) - at(j - 2))) *
             (n / 12.0);
  }
  return out;
}

// Mean over the periodic grid; equals the trapezoid rule for period-1 data.
inline double periodic_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Trapezoid rule on [0,1] for S+1 non-periodic samples.
inline double trapezoid(const std::vector<double>& v) {
  const int m = static_cast<int>(v.size()) - 1;
  double s = 0.5 * (v.front() + v.back());
  for (int i = 1; i < m; ++i) s += v[i];
  return s / m;
}

// Band-limited interpolation kernel for even N on the period-1 grid.
inline double periodic_sinc(int n, double u) {
  double s = std::sin(kPi * n * u);
  double t = std::tan(kPi * u);
  if (std::abs(t) < 1e-300) return 1.0;
  return s / (n * t);
}

// Evaluates the trigonometric interpolant of matrix samples at an arbitrary
// parameter value.
inline CMat trig_resample(const std::vector<CMat>& f, double z) {
  const int n = static_cast<int>(f.size());
  z -= std::floor(z);
  // Exact on-grid hits avoid kernel evaluation entirely.
  double idx = z * n;
  int j0 = static_cast<int>(std::lround(idx));
  if (std::abs(idx - j0) < 1e-13) return f[((j0 % n) + n) % n];
  CMat acc = CMat::Zero(f[0].rows(), f[0].cols());
  for (int j = 0; j < n; ++j) {
    double u = z - static_cast<double>(j) / n;
    acc += periodic_sinc(n, u) * f[j];
  }
  return acc;
}

}  // namespace loopforms
