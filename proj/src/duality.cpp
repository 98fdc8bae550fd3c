#include "wpg/duality.hpp"

#include <algorithm>
#include <cmath>

#include "wpg/errors.hpp"

namespace wpg {

namespace {

double wp_weight(int n) { return static_cast<double>(n) * (static_cast<double>(n) * n - 1.0); }

DiskField psi_bar_field(const PsiCoefficients& psi, const GridPtr& grid) {
  DiskField f(grid);
  for (const auto& [n, a] : psi.tail())
    if (a != cd(0.0)) f.set_mode(-(n - 2), Eigen::VectorXcd::Constant(grid->m(), a), 0);
  return f;
}

}  // namespace

PsiCoefficients big_psi(const PsiCoefficients& psi) {
  PsiCoefficients out(psi.truncation());
  for (const auto& [n, a] : psi.tail()) out.set(n, a / wp_weight(n));
  return out;
}

PsiCoefficients big_psi_inverse(const PsiCoefficients& Psi) {
  PsiCoefficients out(Psi.truncation());
  for (const auto& [n, b] : Psi.tail()) out.set(n, b * wp_weight(n));
  return out;
}

cd disk_pairing_coefficients(const PsiCoefficients& psi1, const PsiCoefficients& psi2) {
  cd acc(0.0);
  for (const auto& [n, a] : psi1.tail()) acc += a * std::conj(psi2.at(n)) / wp_weight(n);
  return acc;
}

GridPtr pairing_grid(const PsiCoefficients& psi1, const PsiCoefficients& psi2) {
  const int top = std::max({psi1.truncation(), psi2.truncation(), 2});
  return make_grid(std::max(64, top + 8), top);
}

cd disk_pairing_quadrature(const PsiCoefficients& psi1, const PsiCoefficients& psi2, GridPtr grid) {
  const DiskField f = psi_bar_field(psi1, grid) * psi_bar_field(psi2, grid).conj();
  return disk_integral(f, [](double r) {
    const double s = 1.0 - r * r;
    return s * s;
  });
}

cd disk_pairing(const PsiCoefficients& psi1, const PsiCoefficients& psi2, GridPtr grid) {
  const cd coef = disk_pairing_coefficients(psi1, psi2);
  const cd quad = disk_pairing_quadrature(psi1, psi2, std::move(grid));
  const double scale = std::max(std::abs(coef), sobolev_norm(psi1, -1.5, WeightKind::wp) *
                                                     sobolev_norm(psi2, -1.5, WeightKind::wp));
  if (std::abs(coef - quad) > 1e-8 * std::max(scale, 1e-300))
    throw IntegrityError("disk_pairing: quadrature and coefficient routes disagree");
  return coef;
}

cd disk_pairing(const PsiCoefficients& psi1, const PsiCoefficients& psi2) {
  return disk_pairing(psi1, psi2, pairing_grid(psi1, psi2));
}

cd l_psi(const PsiCoefficients& psi, const PsiCoefficients& eta, GridPtr grid) {
  const cd v = disk_pairing(psi, eta, std::move(grid));
  const cd w = l2_pairing(big_psi(psi), eta);
  const double scale = sobolev_norm(psi, -1.5, WeightKind::wp) * sobolev_norm(eta, -1.5, WeightKind::wp);
  if (std::abs(v - w) > 1e-10 * std::max(scale, 1e-300))
    throw IntegrityError("l_psi: disk pairing and L2 pairing with big_psi disagree");
  return v;
}

cd l_psi(const PsiCoefficients& psi, const PsiCoefficients& eta) { return l_psi(psi, eta, pairing_grid(psi, eta)); }

ContinuityModulus continuity_modulus(const PsiCoefficients& psi, const PsiCoefficients& psi0) {
  const PsiCoefficients d = psi - psi0;
  return {weighted_sup(d), sobolev_norm(big_psi(d), 1.5, WeightKind::wp)};
}

DiskField serre_contraction(const PsiCoefficients& psi, GridPtr grid) {
  DiskField q(grid);
  for (const auto& [n, a] : psi.tail())
    if (a != cd(0.0)) q += DiskField::disk_monomial(grid, n - 2, 0, std::conj(a));
  DiskField weight(grid);
  weight.set_mode(0, (1.0 - grid->x_pow(1).array()).square().cast<cd>().matrix(), 2);
  return (weight * q).conj();
}

}  // namespace wpg
