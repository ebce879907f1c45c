#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace loopforms {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// ---------------------------------------------------------------------------
// Error taxonomy
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BranchCutError : Error {
  using Error::Error;
};
struct BandLimitError : Error {
  using Error::Error;
};
struct EndpointMismatch : Error {
  using Error::Error;
};
struct PlateauViolation : Error {
  using Error::Error;
};
struct GridError : Error {
  using Error::Error;
};
struct ArityMismatch : Error {
  using Error::Error;
};
struct StepUnderflow : Error {
  using Error::Error;
};
struct UnknownCheck : Error {
  using Error::Error;
};
struct DegenerateInput : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Deterministic seeding
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives a stream seed from (master seed, tag, index); the mixing keeps
// per-trial streams independent of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                 std::uint64_t index = 0) {
  return splitmix64(splitmix64(master ^ splitmix64(tag)) ^ index);
}

inline std::uint64_t string_tag(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64(splitmix64(seed));
}

}  // namespace loopforms
