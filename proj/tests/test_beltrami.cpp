#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "wpg/beltrami.hpp"
#include "wpg/errors.hpp"
#include "wpg/transforms.hpp"

using namespace wpg;

namespace {

const GridPtr& grid() {
  static const GridPtr g = make_grid(64, 40);
  return g;
}

BeltramiCoefficient mu_of(std::initializer_list<std::pair<int, cd>> modes, int N = 16) {
  PsiCoefficients p(N);
  for (const auto& [n, a] : modes) p.set(n, a);
  return mu_from_psi(p, grid());
}

}  // namespace

TEST_CASE("mu = 0: empty Neumann series, w = z^n to machine precision") {
  const BeltramiCoefficient mu = mu_of({});
  const NeumannResult r = neumann_nu(3, mu, 1e-10);
  CHECK(r.depth == 0);
  CHECK(r.nu.active_modes().empty());
  for (int n = 1; n <= 4; ++n) {
    const BasisEntry e = solve_w(n, mu, 1e-10);
    CHECK(e.w_tail.active_modes().empty());
    CHECK(e.w_tail.exterior().empty());
    CHECK(e.boundary.coeffs().size() == 1);
    CHECK(std::abs(e.boundary.at(n) - 1.0) < 1e-15);
    const Residual res = residual(e, mu);
    CHECK(res.pde == 0.0);
    CHECK(res.mean == 0.0);
    CHECK(res.tail_modes < 1e-15);
  }
}

TEST_CASE("first Neumann term against brute-force singular quadrature") {
  const cd c(0.3, 0.1);
  const BeltramiCoefficient mu = mu_of({{2, c}});
  const DiskField t1 = neumann_partial_sum(1, mu, 1);
  const oracle::Fn h = [&](cd z) { return c * std::pow(1.0 - std::norm(z), 2); };
  for (cd z : {cd(0.1, 0.2), cd(-0.5, 0.3), cd(0.0, -0.85), cd(0.7, 0.6)})
    CHECK(std::abs(t1.eval(z) - oracle::beurling_inside(h, z)) < 1e-8);
}

TEST_CASE("Neumann tail obeys the geometric bound against a deeper reference") {
  const BeltramiCoefficient mu = mu_of({{2, 0.3}, {3, cd(0.0, 0.4)}, {5, -0.2}});
  REQUIRE(mu.sup_norm < 0.6);
  for (int n : {1, 2, 5, 9}) {
    const NeumannResult r = neumann_nu(n, mu, 1e-8);
    CHECK(r.converged);
    CHECK(r.fixed_point_residual < 2e-8);
    const DiskField ref = neumann_partial_sum(n, mu, r.depth + 5);
    CHECK((ref - r.nu).l2_norm() <= r.tail_bound);
  }
}

TEST_CASE("solved entries satisfy the boundary-value problem") {
  const BeltramiCoefficient mu = mu_of({{2, 0.3}, {4, cd(0.1, -0.2)}});
  const double tol = 1e-9;
  for (int n : {1, 2, 3, 7}) {
    const BasisEntry e = solve_w(n, mu, tol);
    const Residual r = residual(e, mu);
    CHECK(r.pde < 10 * tol);
    CHECK(r.mean < 1e-10);
    CHECK(r.tail_modes < 1e-8);
    CHECK(holomorphic_identity_residual(e) < 1e-8);
    CHECK(continuity_jump(e) < 1e-6);
  }
}

TEST_CASE("a corrupted boundary coefficient is detected by the PDE residual") {
  const BeltramiCoefficient mu = mu_of({{2, 0.3}});
  BasisEntry e = solve_w(1, mu, 1e-9);
  e.w_tail += DiskField::disk_monomial(grid(), 0, 1, 0.1);
  CHECK(residual(e, mu).pde > 1e-3);
}

TEST_CASE("sup norm >= 1 is a contraction error") {
  const BeltramiCoefficient mu = mu_of({{2, 1.0}});
  CHECK_THROWS_AS(neumann_nu(1, mu, 1e-8), ContractionError);
  CHECK_THROWS_AS(basis(mu, 3, 1e-8), ContractionError);
}

TEST_CASE("parallel and serial bases agree bit for bit; diagnostics are finite") {
  const BeltramiCoefficient mu = mu_of({{2, 0.2}, {3, cd(0.1, 0.1)}});
  const SolutionBasis a = basis(mu, 6, 1e-9), b = basis_serial(mu, 6, 1e-9);
  REQUIRE(a.entries.size() == 6);
  for (size_t i = 0; i < 6; ++i) {
    CHECK(a.entries[i].boundary.coeffs() == b.entries[i].boundary.coeffs());
    CHECK(a.entries[i].depth == b.entries[i].depth);
  }
  CHECK(a.converged());
  const double cond = trace_gram_condition(a);
  CHECK(std::isfinite(cond));
  CHECK(cond >= 1.0);
  CHECK(std::isfinite(power_span_distance(a, 2)));
  const SolutionBasis zero = basis(mu_of({}), 4, 1e-9);
  CHECK(trace_gram_condition(zero) == doctest::Approx(1.0));
  CHECK(power_span_distance(zero, 3) < 1e-14);
}

TEST_CASE("linear response: (w - z^n)/lambda -> n P(mu0 z^{n-1})") {
  const BeltramiCoefficient mu0 = mu_of({{2, 0.5}, {3, cd(0.0, 0.3)}});
  const int n = 2;
  const DiskField lin = cauchy_P(mu0.field * DiskField::disk_monomial(grid(), n - 1, 0));
  double prev = 0.0;
  for (double lambda : {0.2, 0.1, 0.05}) {
    PsiCoefficients p = mu0.source.scaled(lambda);
    const BasisEntry e = solve_w(n, mu_from_psi(p, grid()), 1e-12);
    FourierCoefficients d = e.boundary;
    d.add(n, -1.0);
    const FourierCoefficients l = lin.boundary_trace();
    double err = 0.0;
    for (int k = -20; k <= -1; ++k) err = std::max(err, std::abs(d.at(k) / lambda - double(n) * l.at(k)));
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(2.0).epsilon(0.1));
    prev = err;
  }
}
