#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wpg/errors.hpp"
#include "wpg/transforms.hpp"

using namespace wpg;

namespace {

const GridPtr& grid() {
  static const GridPtr g = make_grid(48, 24);
  return g;
}

// h = c0 + c1 zbar + c2 z zbar^2 + c3 z^2 restricted to the disk.
struct Sample {
  cd c0{0.4, -0.2}, c1{0.0, 0.7}, c2{-0.5, 0.1}, c3{0.3, 0.3};
  DiskField field() const {
    return DiskField::disk_monomial(grid(), 0, 0, c0) + DiskField::disk_monomial(grid(), 0, 1, c1) +
           DiskField::disk_monomial(grid(), 1, 2, c2) + DiskField::disk_monomial(grid(), 2, 0, c3);
  }
  cd operator()(cd z) const {
    const cd b = std::conj(z);
    return c0 + c1 * b + c2 * z * b * b + c3 * z * z;
  }
};

const std::vector<cd> inside = {std::polar(0.05, 1.0), std::polar(0.35, -2.0), std::polar(0.6, 0.4),
                                std::polar(0.8, 2.9),  std::polar(0.93, -0.7), std::polar(0.2, 3.1)};
const std::vector<cd> outside = {std::polar(1.1, 0.3), std::polar(1.6, -1.5), std::polar(2.5, 2.2),
                                 std::polar(4.0, 0.9), std::polar(1.25, 3.0), std::polar(7.0, -2.6)};

}  // namespace

TEST_CASE("P of the indicator: closed form and quadrature oracle") {
  const DiskField chi = DiskField::disk_monomial(grid(), 0, 0);
  const DiskField P = cauchy_P(chi);
  const oracle::Fn one = [](cd) { return cd(1.0); };
  for (cd z : inside) {
    CHECK(std::abs(P.eval(z) - std::conj(z)) < 1e-12);
    CHECK(std::abs(oracle::cauchy_inside(one, z) - std::conj(z)) < 1e-10);
  }
  for (cd z : outside) {
    CHECK(std::abs(P.eval(z) - 1.0 / z) < 1e-12);
    CHECK(std::abs(oracle::cauchy_outside(one, z) - 1.0 / z) < 1e-10);
  }
  CHECK(std::abs(P.eval(0.0)) == 0.0);
  const DiskField T = beurling_T(chi);
  for (cd z : inside) CHECK(std::abs(T.eval(z)) < 1e-12);
  for (cd z : outside) CHECK(std::abs(T.eval(z) + 1.0 / (z * z)) < 1e-12);
}

TEST_CASE("P and T of a mixed field against brute-force singular quadrature") {
  const Sample h;
  const DiskField f = h.field();
  const DiskField P = cauchy_P(f), T = beurling_T(f);
  const oracle::Fn fn = [&](cd z) { return h(z); };
  for (cd z : inside) {
    CHECK(std::abs(P.eval(z) - oracle::cauchy_inside(fn, z)) < 1e-9);
    CHECK(std::abs(T.eval(z) - oracle::beurling_inside(fn, z)) < 1e-8);
  }
  for (cd z : outside) CHECK(std::abs(P.eval(z) - oracle::cauchy_outside(fn, z)) < 1e-9);
}

TEST_CASE("dbar P = h, dz P = T, Ph(0) = 0") {
  const DiskField f = Sample{}.field();
  const DiskField P = cauchy_P(f);
  const DiskField d1 = dbar(P).interior_only() - f;
  const DiskField d2 = dz(P).interior_only() - beurling_T(f).interior_only();
  for (cd z : inside) {
    CHECK(std::abs(d1.eval(z)) < 1e-12);
    CHECK(std::abs(d2.eval(z)) < 1e-12);
  }
  CHECK(std::abs(P.eval(0.0)) < 1e-15);
}

TEST_CASE("mode k of h feeds only mode k-1 of Ph and k-2 of Th") {
  for (int k = -5; k <= 5; ++k) {
    const DiskField h = DiskField::disk_monomial(grid(), std::max(k, 0) + 1, std::max(-k, 0) + 1);
    const DiskField P = cauchy_P(h), T = beurling_T(h);
    for (int j : P.active_modes()) CHECK(j == k - 1);
    for (const auto& [q, c] : P.exterior()) CHECK((q == k - 1 || std::abs(c) == 0.0));
    for (int j : T.active_modes()) CHECK(j == k - 2);
    for (const auto& [q, c] : T.exterior()) CHECK((q == k - 2 || std::abs(c) == 0.0));
  }
}

TEST_CASE("T is an L2 isometry; L^p norms are homogeneous") {
  const DiskField chi_zbar = DiskField::disk_monomial(grid(), 0, 1);
  CHECK(std::fabs(lp_norm(beurling_T(chi_zbar), 2.0) - lp_norm(chi_zbar, 2.0)) < 1e-12);
  const DiskField f = Sample{}.field();
  CHECK(std::fabs(lp_norm(beurling_T(f), 2.0) / lp_norm(f, 2.0) - 1.0) < 1e-10);
  const DiskField chi = DiskField::disk_monomial(grid(), 0, 0);
  // (1/2pi) area = 1/2.
  CHECK(std::fabs(lp_norm(chi, 2.0) - std::sqrt(0.5)) < 1e-14);
  CHECK(std::fabs(lp_norm(chi, 2.0) - std::sqrt(disk_integral(chi, [](double) { return 1.0; }).real())) < 1e-14);
  CHECK(std::fabs(lp_norm(cd(0.0, 3.0) * f, 3.0) - 3.0 * lp_norm(f, 3.0)) < 1e-12 * lp_norm(f, 3.0));
  CHECK_THROWS_AS(lp_norm(f, 1.0), DomainError);
}

TEST_CASE("transforms reject fields with an exterior tail, zero maps to zero") {
  const DiskField f = cauchy_P(DiskField::disk_monomial(grid(), 0, 0));
  CHECK_THROWS_AS(cauchy_P(f), UnsupportedInput);
  CHECK_THROWS_AS(beurling_T(f), UnsupportedInput);
  const DiskField z(grid());
  CHECK(beurling_T(z).active_modes().empty());
  CHECK(beurling_T(z).exterior().empty());
}
