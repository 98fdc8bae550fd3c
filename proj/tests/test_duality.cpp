#include <cmath>
#include <random>

#include "doctest.h"
#include "wpg/duality.hpp"
#include "wpg/errors.hpp"

using namespace wpg;

namespace {

PsiCoefficients random_tail(std::mt19937_64& rng, int N) {
  std::normal_distribution<double> g;
  PsiCoefficients p(N);
  for (int n = 2; n <= N; ++n) p.set(n, cd(g(rng), g(rng)) / static_cast<double>(n));
  return p;
}

PsiCoefficients mode(int n, cd a, int N = 32) {
  PsiCoefficients p(N);
  p.set(n, a);
  return p;
}

}  // namespace

TEST_CASE("big_psi weights and isometry") {
  const PsiCoefficients b = big_psi(mode(2, 1.0));
  CHECK(std::abs(b.at(2) - 1.0 / 6.0) < 1e-17);
  CHECK(std::fabs(std::pow(sobolev_norm(b, 1.5, WeightKind::wp), 2) - 1.0 / 6.0) < 1e-16);
  CHECK(big_psi(PsiCoefficients(5)).tail().empty());
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const PsiCoefficients p = random_tail(rng, 32);
    const double a = sobolev_norm(big_psi(p), 1.5, WeightKind::wp), c = sobolev_norm(p, -1.5, WeightKind::wp);
    CHECK(std::fabs(a - c) < 1e-14 * c);
    const PsiCoefficients back = big_psi_inverse(big_psi(p));
    for (const auto& [n, v] : p.tail()) CHECK(std::abs(back.at(n) - v) < 1e-14 * std::abs(v));
  }
}

TEST_CASE("disk pairing: monomials, orthogonality, random pairs") {
  for (int n = 2; n <= 32; ++n) {
    const cd v = disk_pairing(mode(n, 1.0), mode(n, 1.0));
    CHECK(std::abs(v - 1.0 / (n * (n * n - 1.0))) < 1e-16);
    // Independent quadrature value against (1/2) B(n-1, 3).
    const cd q = disk_pairing_quadrature(mode(n, 1.0), mode(n, 1.0), pairing_grid(mode(n, 1.0), mode(n, 1.0)));
    CHECK(std::abs(q - 0.5 * std::beta(n - 1.0, 3.0)) < 1e-12 * std::abs(q));
  }
  CHECK(std::abs(disk_pairing(mode(2, 1.0), mode(4, 1.0))) == 0.0);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    const PsiCoefficients a = random_tail(rng, 20), b = random_tail(rng, 20);
    cd sum(0.0);
    for (int n = 2; n <= 20; ++n) sum += a.at(n) * std::conj(b.at(n)) / (n * (n * n - 1.0));
    CHECK(std::abs(disk_pairing(a, b) - sum) < 1e-10 * std::abs(sum));
    CHECK(std::abs(disk_pairing_quadrature(a, b, pairing_grid(a, b)) - sum) < 1e-10 * std::abs(sum) + 1e-15);
  }
}

TEST_CASE("disk pairing raises an integrity error on a grid too coarse for the integrand") {
  const PsiCoefficients p = mode(30, 1.0);
  const GridPtr coarse = make_grid(6, 64);
  CHECK_THROWS_AS(disk_pairing(p, p, coarse), IntegrityError);
}

TEST_CASE("L_psi: triple equality, saturation, Cauchy-Schwarz, zero") {
  std::mt19937_64 rng(4);
  const PsiCoefficients psi = random_tail(rng, 16);
  const double n = sobolev_norm(psi, -1.5, WeightKind::wp);
  CHECK(std::abs(l_psi(psi, psi.scaled(1.0 / n)) - n) < 1e-12 * n);
  for (int t = 0; t < 50; ++t) {
    PsiCoefficients eta = random_tail(rng, 16);
    eta = eta.scaled(1.0 / sobolev_norm(eta, -1.5, WeightKind::wp));
    const cd v = l_psi(psi, eta);
    CHECK(std::abs(v - l2_pairing(big_psi(psi), eta)) < 1e-12 * n);
    CHECK(std::abs(v) <= n * (1 + 1e-12));
  }
  CHECK(l_psi(PsiCoefficients(16), psi) == cd(0.0));
}

TEST_CASE("continuity modulus") {
  PsiCoefficients p(8);
  p.set(3, cd(0.2, 0.1));
  const ContinuityModulus z = continuity_modulus(p, p);
  CHECK(z.sup_diff == 0.0);
  CHECK(z.norm_diff == 0.0);
  PsiCoefficients q = p;
  q.set(2, 0.01);
  const ContinuityModulus d = continuity_modulus(q, p);
  CHECK(std::fabs(d.sup_diff - 0.01) < 1e-12);
  CHECK(std::fabs(d.norm_diff - 0.01 / std::sqrt(6.0)) < 1e-16);
  std::mt19937_64 rng(8);
  const PsiCoefficients a = random_tail(rng, 12), b = random_tail(rng, 12);
  const ContinuityModulus r = continuity_modulus(a, b);
  CHECK(std::fabs(r.norm_diff * r.norm_diff - disk_pairing(a - b, a - b).real()) < 1e-12);
}

TEST_CASE("Serre contraction reproduces mu_psi") {
  std::mt19937_64 rng(9);
  const PsiCoefficients p = random_tail(rng, 14);
  const GridPtr g = make_grid(48, 36);
  const DiskField s = serre_contraction(p, g);
  const DiskField mu = mu_from_psi(p, g).field;
  for (double r : {0.0, 0.3, 0.7, 0.95})
    for (double t : {0.2, 2.0, -1.3}) CHECK(std::abs(s.eval(std::polar(r, t)) - mu.eval(std::polar(r, t))) < 1e-14);
}
