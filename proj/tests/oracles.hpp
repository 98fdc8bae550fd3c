// Brute-force 2-D quadratures used as references for the mode-wise transforms.
#ifndef WPG_TESTS_ORACLES_HPP
#define WPG_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>

#include "wpg/quad.hpp"

namespace oracle {

using cd = std::complex<double>;
using Fn = std::function<cd(cd)>;

// Chord of the unit disk along zeta + s u, s >= 0: returns false if empty.
inline bool chord(cd zeta, cd u, double& s0, double& s1) {
  const double b = (std::conj(zeta) * u).real();
  const double disc = b * b + 1.0 - std::norm(zeta);
  if (disc <= 0.0) return false;
  s0 = std::max(0.0, -b - std::sqrt(disc));
  s1 = -b + std::sqrt(disc);
  return s1 > s0;
}

// (1/pi) integral_D h(z) / z dA in polar coordinates about the origin.
inline cd origin_term(const Fn& h, int radial = 48, int angular = 512) {
  const wpg::RadialRule r = wpg::gauss_radial_rule(radial);
  cd acc(0.0);
  for (int j = 0; j < angular; ++j) {
    const cd u = std::polar(1.0, 2.0 * M_PI * (j + 0.5) / angular);
    for (size_t a = 0; a < r.nodes.size(); ++a) acc += r.weights[a] * h(r.nodes[a] * u) * std::conj(u);
  }
  return acc * (2.0 * M_PI / angular) / M_PI;
}

// Ph(zeta) = -(1/pi) integral_D h(z) (1/(z - zeta) - 1/z) dA for |zeta| < 1,
// with polar coordinates centred at zeta removing the singularity.
inline cd cauchy_inside(const Fn& h, cd zeta, int radial = 48, int angular = 1024) {
  const wpg::RadialRule r = wpg::gauss_radial_rule(radial);
  cd acc(0.0);
  for (int j = 0; j < angular; ++j) {
    const cd u = std::polar(1.0, 2.0 * M_PI * j / angular);
    double s0 = 0.0, s1 = 0.0;
    if (!chord(zeta, u, s0, s1)) continue;
    cd inner(0.0);
    for (size_t a = 0; a < r.nodes.size(); ++a) inner += r.weights[a] * h(zeta + (s0 + (s1 - s0) * r.nodes[a]) * u);
    acc += std::conj(u) * inner * (s1 - s0);
  }
  return -(acc * (2.0 * M_PI / angular) / M_PI - origin_term(h));
}

// Same transform for |zeta| > 1, where the kernel is smooth on the disk.
inline cd cauchy_outside(const Fn& h, cd zeta, int radial = 96, int angular = 2048) {
  const wpg::RadialRule r = wpg::gauss_radial_rule(radial);
  cd acc(0.0);
  for (int j = 0; j < angular; ++j) {
    const cd u = std::polar(1.0, 2.0 * M_PI * (j + 0.5) / angular);
    for (size_t a = 0; a < r.nodes.size(); ++a) {
      const cd z = r.nodes[a] * u;
      acc += r.weights[a] * r.nodes[a] * h(z) * (1.0 / (z - zeta) - 1.0 / z);
    }
  }
  return -acc * (2.0 * M_PI / angular) / M_PI;
}

// Th(zeta) = -(1/pi) p.v. integral_D h(z) / (z - zeta)^2 dA for |zeta| < 1.
// About zeta the kernel is conj(u)^2 / s ds dphi; subtracting h(zeta) leaves a
// smooth s-integrand, and the subtracted part integrates to
// h(zeta) conj(u)^2 log s_max(phi) (the log of the inner cut-off drops out).
inline cd beurling_inside(const Fn& h, cd zeta, int radial = 64, int angular = 2048) {
  const wpg::RadialRule r = wpg::gauss_radial_rule(radial);
  const cd h0 = h(zeta);
  cd acc(0.0);
  for (int j = 0; j < angular; ++j) {
    const cd u = std::polar(1.0, 2.0 * M_PI * j / angular);
    double s0 = 0.0, s1 = 0.0;
    chord(zeta, u, s0, s1);
    cd inner(0.0);
    for (size_t a = 0; a < r.nodes.size(); ++a) {
      const double s = s1 * r.nodes[a];
      inner += r.weights[a] * (h(zeta + s * u) - h0) / s;
    }
    acc += std::conj(u) * std::conj(u) * (inner * s1 + h0 * std::log(s1));
  }
  return -acc * (2.0 * M_PI / angular) / M_PI;
}

}  // namespace oracle

#endif
