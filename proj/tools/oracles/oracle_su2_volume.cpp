// Quadrature oracle for the normalization of the canonical 3-form over
// SU(2), self-contained on purpose: Hopf coordinates, analytic coordinate
// frame, composite Boole rule in the polar angle.  Emits JSON with the
// integral at unit level and the level constant that normalizes it to one.
//
// Usage: oracle_su2_volume [eta_panels] [angle_nodes] [-o file.json]

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

using C = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

struct M2 {
  C a, b, c, d;  // [[a, b], [c, d]]
};

M2 mul(const M2& x, const M2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
M2 dagger(const M2& x) {
  return {std::conj(x.a), std::conj(x.c), std::conj(x.b), std::conj(x.d)};
}
M2 comm(const M2& x, const M2& y) {
  M2 xy = mul(x, y), yx = mul(y, x);
  return {xy.a - yx.a, xy.b - yx.b, xy.c - yx.c, xy.d - yx.d};
}
double pair_unit_level(const M2& x, const M2& y) {
  M2 xy = mul(x, y);
  return -(xy.a + xy.d).real();
}

// H(T_eta, T_x2, T_x1) at U(eta, x1, x2); the (eta, x2, x1) coordinate order
// matches the canonical group orientation.
double integrand(double eta, double x1, double x2) {
  const C i(0.0, 1.0);
  double ce = std::cos(eta), se = std::sin(eta);
  C e1 = std::polar(1.0, x1), e2 = std::polar(1.0, x2);
  M2 u{ce * e1, se * e2, -se / e2, ce / e1};
  M2 du_eta{-se * e1, ce * e2, -ce / e2, -se / e1};
  M2 du_x1{i * ce * e1, 0.0, 0.0, -i * ce / e1};
  M2 du_x2{0.0, i * se * e2, i * se / e2, 0.0};
  M2 ui = dagger(u);
  M2 t0 = mul(ui, du_eta), t1 = mul(ui, du_x1), t2 = mul(ui, du_x2);
  return pair_unit_level(t0, comm(t2, t1));
}

}  // namespace

int main(int argc, char** argv) {
  int eta_panels = 1024;
  int angle_nodes = 4;
  std::string out_path;
  int positional = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "-o" && i + 1 < argc)
      out_path = argv[++i];
    else if (positional++ == 0)
      eta_panels = std::stoi(arg);
    else
      angle_nodes = std::stoi(arg);
  }
  int m = eta_panels - eta_panels % 4;  // Boole needs multiples of 4
  double h = (kPi / 2.0) / m;
  double total = 0.0;
  for (int a1 = 0; a1 < angle_nodes; ++a1) {
    double x1 = 2.0 * kPi * (a1 + 0.5) / angle_nodes;
    for (int a2 = 0; a2 < angle_nodes; ++a2) {
      double x2 = 2.0 * kPi * (a2 + 0.5) / angle_nodes;
      double acc = 0.0;
      for (int j = 0; j <= m; ++j) {
        double w;
        if (j == 0 || j == m)
          w = 7.0;
        else if (j % 4 == 0)
          w = 14.0;
        else if (j % 2 == 0)
          w = 12.0;
        else
          w = 32.0;
        acc += w * integrand(j * h, x1, x2);
      }
      total += acc * (2.0 * h / 45.0);
    }
  }
  total *= (2.0 * kPi / angle_nodes) * (2.0 * kPi / angle_nodes);

  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "{\n"
                "  \"generated_by\": \"oracle_su2_volume %d %d\",\n"
                "  \"h_integral_at_unit_level\": %.17g,\n"
                "  \"basic_level\": %.17g,\n"
                "  \"eight_pi_squared\": %.17g\n"
                "}\n",
                eta_panels, angle_nodes, total, 1.0 / total,
                8.0 * kPi * kPi);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << buf;
  }
  std::fputs(buf, stdout);
  return 0;
}
