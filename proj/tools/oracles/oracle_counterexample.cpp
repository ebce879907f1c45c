// Produces the stored counterexample fixture: a deterministic non-constant
// loop together with the rotation-family quantity
//
//   V = int_0^1 Z(delta(t), d_t delta(t) delta(t)^{-1}) dt
//     = 2 int_0^1 < R(z), R(z) > dz,   R = (d tau / dz) tau^{-1},
//
// computed independently of the library's derivative pipeline: the loop is
// tau(z) = exp(Phi(z)) with a band-limited exponent, so R is evaluated from
// the analytic Phi' through the convergent series
//   R = sum_k ad_Phi^k(Phi') / (k+1)!
// on a fine grid.  The rotation-family parallel-transport integral at
// parameter x must equal (1-x)/2 * V.
//
// Usage: oracle_counterexample [fine_grid] [-o loop.json] [-t threshold.json]

#include <cstdio>
#include <fstream>
#include <string>

#include "loopforms/io.hpp"

using namespace loopforms;

namespace {

CMat ad_series_right_derivative(const CMat& phi, const CMat& dphi) {
  CMat term = dphi;
  CMat sum = dphi;
  double fact = 1.0;
  for (int k = 1; k <= 40; ++k) {
    term = phi * term - term * phi;
    fact *= static_cast<double>(k + 1);
    sum += term / fact;
    if (term.cwiseAbs().maxCoeff() / fact < 1e-18) break;
  }
  return sum;
}

}  // namespace

int main(int argc, char** argv) {
  int fine_grid = 8192;
  std::string loop_path, threshold_path;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "-o" && i + 1 < argc)
      loop_path = argv[++i];
    else if (arg == "-t" && i + 1 < argc)
      threshold_path = argv[++i];
    else
      fine_grid = std::stoi(arg);
  }

  const std::uint64_t seed = 1472;
  const int modes = 4;
  const double amplitude = 0.5;
  const int n_samples = 256;
  DiscreteLoop tau = random_loop(seed, modes, amplitude, n_samples);
  const FourierGenerator& gen = *tau.generator;

  // independent high-resolution integral of 2 <R, R>
  double acc = 0.0;
  for (int j = 0; j < fine_grid; ++j) {
    double z = static_cast<double>(j) / fine_grid;
    CMat phi = gen.exponent(z);
    CMat dphi = CMat::Zero(2, 2);
    for (std::size_t k = 0; k < gen.cos_coeff.size(); ++k) {
      double w = kTwoPi * static_cast<double>(k + 1);
      double ang = w * z;
      dphi += -w * std::sin(ang) * gen.cos_coeff[k] +
              w * std::cos(ang) * gen.sin_coeff[k];
    }
    CMat r = ad_series_right_derivative(phi, dphi);
    acc += -(r * r).trace().real();  // unit-level pairing <R,R>
  }
  double value = 2.0 * acc / fine_grid;

  std::string cmd = "oracle_counterexample " + std::to_string(fine_grid);
  if (!loop_path.empty()) cmd += " -o " + loop_path;
  if (!threshold_path.empty()) cmd += " -t " + threshold_path;

  if (!loop_path.empty()) {
    Json j = loop_to_json(tau);
    j["generated_by"] = cmd;
    j["generator"] = generator_to_json(gen);
    j["generator_seed"] = seed;
    j["generator_modes"] = modes;
    j["generator_amplitude"] = amplitude;
    write_json_file(loop_path, j);
  }

  Json t;
  t["generated_by"] = cmd;
  t["fine_grid"] = fine_grid;
  t["y_integral"] = value;
  t["expected_integral_coefficient"] = "(1-x)/2 * y_integral";
  if (!threshold_path.empty()) write_json_file(threshold_path, t);
  std::printf("%s\n", t.dump(2).c_str());
  return 0;
}
