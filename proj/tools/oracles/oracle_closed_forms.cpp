// Closed-form fixture values used by the test suites, computed from the
// analytic expressions rather than through the library's quadrature or
// derivative machinery.
//
//   pauli bracket   [i s1, i s2] = -2 i s3
//   pairing         <i s3, i s3> = -Re tr((i s3)^2) = 2 at unit level
//   Z fixture       tau = exp(2 pi z i s3), X = i s3:
//                   Z = 2 int <2 pi i s3, i s3> dz = 8 pi
//   beta fixture    same loop, xi = i s3: beta = int <2 pi i s3, i s3> = 4 pi
//   cocycle fixture X = sin(2 pi z) E, Y = cos(2 pi z) E, E = i s3:
//                   omega = 2 int sin * (-2 pi sin) <E,E> dz = -2 pi <E,E>
//   band-limited quadrature table: int_0^1 cos(2 pi j z) cos(2 pi k z) dz
//
// Usage: oracle_closed_forms [-o file.json]

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

int main(int argc, char** argv) {
  const double pi = 3.14159265358979323846;
  std::string out_path;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "-o" && i + 1 < argc) out_path = argv[++i];
  }

  const double pairing_is3_is3 = 2.0;
  const double z_fixture = 2.0 * (2.0 * pi) * pairing_is3_is3;    // 8 pi
  const double beta_fixture = (2.0 * pi) * pairing_is3_is3;       // 4 pi
  const double cocycle_fixture = -2.0 * pi * pairing_is3_is3;     // -4 pi

  char buf[1024];
  std::snprintf(
      buf, sizeof(buf),
      "{\n"
      "  \"generated_by\": \"oracle_closed_forms\",\n"
      "  \"pauli_bracket_i1_i2_equals\": \"-2 i sigma3\",\n"
      "  \"pairing_is3_is3_level1\": %.17g,\n"
      "  \"z_fixture_8pi\": %.17g,\n"
      "  \"beta_fixture_4pi\": %.17g,\n"
      "  \"cocycle_fixture_minus4pi\": %.17g,\n"
      "  \"fourier_cos_sq_integral\": 0.5,\n"
      "  \"fourier_cross_integral\": 0.0\n"
      "}\n",
      pairing_is3_is3, z_fixture, beta_fixture, cocycle_fixture);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << buf;
  }
  std::fputs(buf, stdout);
  return 0;
}
