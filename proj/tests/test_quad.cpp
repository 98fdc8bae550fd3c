#include <cmath>

#include "doctest.h"
#include "wpg/disk_field.hpp"
#include "wpg/errors.hpp"
#include "wpg/quad.hpp"

using namespace wpg;

TEST_CASE("gauss rule: order 1 is the midpoint") {
  const RadialRule r = gauss_radial_rule(1);
  REQUIRE(r.nodes.size() == 1);
  CHECK(r.nodes[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gauss rule: exact through degree 2m-1, nodes interior") {
  for (int m : {2, 3, 7, 32, 64, 128}) {
    const RadialRule r = gauss_radial_rule(m);
    double lin = 0.0;
    for (int i = 0; i < m; ++i) {
      CHECK(r.nodes[i] > 0.0);
      CHECK(r.nodes[i] < 1.0);
      CHECK(r.weights[i] > 0.0);
      lin += r.weights[i] * r.nodes[i];
    }
    CHECK(std::fabs(lin - 0.5) < 1e-15);
    for (int j = 0; j <= 2 * m - 1; ++j) {
      long double acc = 0.0L;
      for (int i = 0; i < m; ++i) acc += r.weights[i] * std::pow(static_cast<long double>(r.nodes[i]), j);
      CHECK(std::fabs(static_cast<double>(acc - 1.0L / (j + 1))) < 1e-13);
    }
  }
  const RadialRule r3 = gauss_radial_rule(3);
  double r5 = 0.0;
  for (int i = 0; i < 3; ++i) r5 += r3.weights[i] * std::pow(r3.nodes[i], 5);
  CHECK(std::fabs(r5 - 1.0 / 6.0) < 1e-15);
}

TEST_CASE("gauss rule: order 0 is rejected") { CHECK_THROWS_AS(gauss_radial_rule(0), DomainError); }

TEST_CASE("disk integral: constants and Beta weights") {
  const GridPtr g = make_grid(32, 8);
  const DiskField one = DiskField::disk_monomial(g, 0, 0);
  CHECK(std::abs(disk_integral(one, [](double) { return 1.0; }) - 0.5) < 1e-15);
  CHECK(std::abs(disk_integral(one, [](double r) { return (1 - r * r) * (1 - r * r); }) - 1.0 / 6.0) < 1e-15);
  for (int k : {-3, 1, 5}) {
    const DiskField f = DiskField::disk_monomial(g, std::max(k, 0) + 1, std::max(-k, 0) + 1);
    CHECK(std::abs(disk_integral(f, [](double r) { return std::exp(r); })) < 1e-16);
  }
  // (1/2pi) integral (1-r^2)^2 r^{2(n-2)} dA = (1/2) B(n-1, 3) = 1/(n(n^2-1)).
  for (int n = 2; n <= 16; ++n) {
    const DiskField f = DiskField::disk_monomial(g, n - 2, n - 2);
    const cd v = disk_integral(f, [](double r) { return (1 - r * r) * (1 - r * r); });
    CHECK(std::abs(v - 0.5 * std::beta(n - 1.0, 3.0)) < 1e-15);
    CHECK(std::abs(v - 1.0 / (n * (n * n - 1.0))) < 1e-15);
  }
}

TEST_CASE("disk integral: coarse grid raises the truncation warning") {
  const GridPtr g = make_grid(4, 4);
  const DiskField f = DiskField::disk_monomial(g, 0, 0);
  const DiskIntegral ok = disk_integral_checked(f, [](double) { return 1.0; });
  CHECK_FALSE(ok.truncation_warning);
  const DiskIntegral bad = disk_integral_checked(f, [](double r) { return std::cos(40.0 * r); });
  CHECK(bad.truncation_warning);
  CHECK(bad.truncation_gap > 0.0);
}

TEST_CASE("angular analysis: constants, single modes, round trip") {
  const int K = 6;
  std::vector<cd> ones(13, cd(2.0, -1.0));
  const AngularModes c = angular_analyze(ones, K);
  for (int k = -K; k <= K; ++k) CHECK(std::abs(c.at(k) - (k == 0 ? cd(2.0, -1.0) : cd(0.0))) < 1e-15);
  std::vector<cd> e(17);
  for (int j = 0; j < 17; ++j) e[j] = std::polar(1.0, 2.0 * M_PI * j / 17);
  const AngularModes m = angular_analyze(e, K);
  for (int k = -K; k <= K; ++k) CHECK(std::abs(m.at(k) - (k == 1 ? 1.0 : 0.0)) < 1e-15);
  AngularModes in;
  in.K = K;
  for (int k = -K; k <= K; ++k) in.coeffs.push_back(cd(std::sin(k + 0.3), std::cos(2.0 * k)));
  for (int L : {13, 14, 40}) {
    const AngularModes out = angular_analyze(angular_synthesize(in, L), K);
    for (int k = -K; k <= K; ++k) CHECK(std::abs(out.at(k) - in.at(k)) < 1e-13);
  }
  CHECK_THROWS_AS(angular_analyze(std::vector<cd>(12), K), DomainError);
}

TEST_CASE("angular analysis: energy in the top mode flags aliasing") {
  std::vector<cd> s(9);
  for (int j = 0; j < 9; ++j) s[j] = std::polar(1.0, 2.0 * M_PI * 5.0 * j / 9);  // mode 5 aliased onto k = -4
  CHECK(angular_analyze(s, 4).top_mode_fraction > 0.5);
}

TEST_CASE("Legendre projection keeps polynomials of the bound and removes higher content") {
  const GridPtr g = make_grid(24, 4);
  Eigen::VectorXcd p(24), q(24);
  for (int i = 0; i < 24; ++i) {
    const double x = g->x()[i];
    p[i] = cd(1.0 - 3.0 * x + x * x * x, x);
    q[i] = std::pow(x, 10);
  }
  CHECK((g->project(p, 3) - p).norm() < 1e-13);
  CHECK((g->project(q, 3) - q).norm() > 1e-3);
  CHECK(g->project(q, -1).norm() == 0.0);
  CHECK((g->project(q, 23) - q).norm() == 0.0);
}
