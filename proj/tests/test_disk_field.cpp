#include <cmath>
#include <random>

#include "doctest.h"
#include "wpg/disk_field.hpp"
#include "wpg/errors.hpp"
#include "wpg/schwarzian.hpp"

using namespace wpg;

namespace {

PsiCoefficients mode(int n, cd a, int N = 12) {
  PsiCoefficients p(N);
  p.set(n, a);
  return p;
}

// Golden-section maximum of (1-r^2)^2 r^j on [0, 1]; analytic value at r^2 = j/(j+4).
double radial_peak(int j) {
  const double x = j / (j + 4.0);
  return std::pow(1 - x, 2) * std::pow(x, j / 2.0);
}

}  // namespace

TEST_CASE("eval_psi_bar") {
  CHECK(eval_psi_bar(mode(2, 1.0), cd(0.3, 0.4)) == cd(1.0));
  CHECK(std::abs(eval_psi_bar(mode(3, 1.0), cd(0.5, 0.0)) - 0.5) < 1e-16);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  PsiCoefficients p(15);
  for (int n = 2; n <= 15; ++n) p.set(n, cd(g(rng), g(rng)));
  const cd z = std::polar(0.3, M_PI / 7);
  cd naive(0.0);
  for (int n = 2; n <= 15; ++n) naive += p.at(n) * std::pow(std::conj(z), n - 2);
  CHECK(std::abs(eval_psi_bar(p, z) - naive) < 1e-14);
  CHECK_THROWS_AS(eval_psi_bar(p, cd(1.0, 0.0)), DomainError);
}

TEST_CASE("mu_from_psi values and sup norms") {
  const GridPtr g = make_grid(48, 30);
  const BeltramiCoefficient one = mu_from_psi(mode(2, 1.0), g);
  CHECK(std::abs(one.field.eval(0.0) - 1.0) < 1e-14);
  CHECK(std::abs(one.field.eval(std::polar(1.0, 0.3))) == 0.0);
  CHECK(std::abs(one.field.eval(std::polar(1.7, 0.3))) == 0.0);
  CHECK(one.sup_norm == doctest::Approx(1.0).epsilon(1e-12));
  const BeltramiCoefficient zb = mu_from_psi(mode(3, 1.0), g);
  CHECK(std::fabs(zb.sup_norm - radial_peak(1)) < 1e-10);
  CHECK(std::fabs(radial_peak(1) - 0.64 / std::sqrt(5.0)) < 1e-15);
  const BeltramiCoefficient zero = mu_from_psi(PsiCoefficients(12), g);
  CHECK(zero.sup_norm == 0.0);
  CHECK(zero.field.active_modes().empty());
  // Pointwise against (1-|z|^2)^2 psi(zbar).
  PsiCoefficients p(9);
  p.set(2, cd(0.2, 0.1));
  p.set(4, -0.3);
  p.set(9, cd(0.0, 0.5));
  const BeltramiCoefficient mu = mu_from_psi(p, g);
  for (double r : {0.0, 0.2, 0.55, 0.9, 0.999})
    for (double t : {0.0, 1.0, 2.5}) {
      const cd z = std::polar(r, t);
      CHECK(std::abs(mu.field.eval(z) - std::pow(1 - r * r, 2) * eval_psi_bar(p, z)) < 1e-12);
    }
}

TEST_CASE("sup bound: equality at n=2, strict elsewhere, zero") {
  const SupBound a = sup_bound_check(mode(2, 1.0));
  CHECK(std::fabs(a.sup - 1.0) < 1e-12);
  CHECK(std::fabs(a.bound - 1.0) < 1e-15);
  const SupBound b = sup_bound_check(mode(3, 1.0));
  CHECK(std::fabs(b.sup - 0.28621670111997307) < 1e-10);
  CHECK(std::fabs(b.bound - 0.5) < 1e-15);
  const SupBound z = sup_bound_check(PsiCoefficients(6));
  CHECK(z.sup == 0.0);
  CHECK(z.bound == 0.0);
}

TEST_CASE("DiskField algebra keeps exact polynomial content") {
  const GridPtr g = make_grid(32, 12);
  const DiskField a = DiskField::disk_monomial(g, 2, 1, cd(0.5, 1.0));
  const DiskField b = DiskField::disk_monomial(g, 0, 3);
  const DiskField p = a * b;
  const cd z(0.3, -0.45);
  CHECK(std::abs(p.eval(z) - cd(0.5, 1.0) * z * z * std::pow(std::conj(z), 4)) < 1e-15);
  // z^2 zbar^4 = r^2 e^{-2i theta} x^2.
  CHECK(p.degree(-2) == 2);
  const DiskField c = a.conj();
  CHECK(std::abs(c.eval(z) - std::conj(a.eval(z))) < 1e-15);
  CHECK(std::abs((a + b - a).eval(z) - b.eval(z)) < 1e-15);
  CHECK_THROWS_AS(DiskField::disk_monomial(g, 13, 0), DomainError);
  CHECK_THROWS_AS(DiskField::disk_monomial(g, 8, 0) * DiskField::disk_monomial(g, 8, 0), DomainError);
}

TEST_CASE("L2 norm of the indicator") {
  const GridPtr g = make_grid(16, 4);
  // ((1/2pi) * pi)^{1/2}
  CHECK(DiskField::disk_monomial(g, 0, 0).l2_norm() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("Schwarzian: Mobius maps vanish, z^2 gives -3/(2 z^2)") {
  const PowerSeries m = PowerSeries::mobius(cd(2.0, 1.0), cd(0.3), cd(0.5, -0.2), cd(1.0), 14);
  const PowerSeries s = schwarzian(m);
  for (int j = 0; j <= s.order(); ++j) CHECK(std::abs(s[j]) < 1e-12);
  const PowerSeries sq(std::vector<cd>{0.0, 0.0, 1.0}, 12);
  for (cd z0 : {cd(0.5, 0.1), cd(-0.3, 0.7)}) CHECK(std::abs(schwarzian_at(sq, z0) + 1.5 / (z0 * z0)) < 1e-12);
  CHECK_THROWS_AS(schwarzian(sq), SingularityError);
}

TEST_CASE("Schwarzian chain rule") {
  const int order = 16;
  const PowerSeries f(std::vector<cd>{0.0, 1.0, cd(0.3, 0.1), -0.2, cd(0.0, 0.05)}, order);
  const PowerSeries g(std::vector<cd>{0.0, cd(0.8, 0.2), 0.1, cd(0.0, -0.07)}, order);
  const PowerSeries lhs = schwarzian(f.compose(g));
  const PowerSeries gp = g.derivative();
  const PowerSeries rhs = schwarzian(f).compose(g) * gp * gp + schwarzian(g);
  const int top = std::min(lhs.order(), rhs.order());
  REQUIRE(top >= 8);
  for (int j = 0; j <= top; ++j) CHECK(std::abs(lhs[j] - rhs[j]) < 1e-12);
}

TEST_CASE("Ahlfors-Weill coefficient") {
  const GridPtr g = make_grid(48, 20);
  const BeltramiCoefficient zero = ahlfors_weill_mu(SchwarzianCoeffs{}, g);
  CHECK(zero.sup_norm == 0.0);
  const cd c(0.4, -0.3);
  const BeltramiCoefficient b4 = ahlfors_weill_mu(SchwarzianCoeffs{{{4, c}}}, g);
  CHECK(std::fabs(b4.sup_norm - std::abs(c) / 2) < 1e-12);
  const cd z(0.2, 0.5);
  CHECK(std::abs(b4.field.eval(z) + 0.5 * c * std::pow(1 - std::norm(z), 2)) < 1e-14);
  const BeltramiCoefficient b5 = ahlfors_weill_mu(SchwarzianCoeffs{{{5, 1.0}}}, g);
  CHECK(std::fabs(b5.sup_norm - 0.5 * radial_peak(1)) < 1e-10);
  CHECK(std::fabs(b5.sup_norm - 0.14310835055998654) < 1e-10);
  CHECK(std::abs(b5.field.eval(z) + 0.5 * std::pow(1 - std::norm(z), 2) * std::conj(z)) < 1e-14);
  for (int k : b5.field.active_modes()) CHECK(k <= 0);
}

TEST_CASE("exterior Schwarzian of z + c/z") {
  // S[z + c/z] = -6c/(z^2 - c)^2 = -6c z^{-4} - 12 c^2 z^{-6} - ...
  const cd c(0.1, 0.05);
  const SchwarzianCoeffs s = exterior_schwarzian(1.0, {0.0, c}, 10);
  const auto b = [&](int k) {
    const auto it = s.b.find(k);
    return it == s.b.end() ? cd(0.0) : it->second;
  };
  CHECK(std::abs(b(4) + 6.0 * c) < 1e-15);
  CHECK(std::abs(b(5)) < 1e-15);
  CHECK(std::abs(b(6) + 12.0 * c * c) < 1e-15);
  CHECK(std::abs(b(8) + 18.0 * c * c * c) < 1e-15);
}
