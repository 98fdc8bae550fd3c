#ifndef WPG_DUALITY_HPP
#define WPG_DUALITY_HPP

#include "wpg/circle.hpp"
#include "wpg/disk_field.hpp"

namespace wpg {

// b_n = a_n / (n(n^2-1)).
PsiCoefficients big_psi(const PsiCoefficients& psi);
// a_n = b_n n(n^2-1).
PsiCoefficients big_psi_inverse(const PsiCoefficients& Psi);

// sum a1_n conj(a2_n) / (n(n^2-1)).
cd disk_pairing_coefficients(const PsiCoefficients& psi1, const PsiCoefficients& psi2);
// (1/2pi) integral_D (1-|z|^2)^2 psi1(zbar) conj(psi2(zbar)) dA on the grid.
cd disk_pairing_quadrature(const PsiCoefficients& psi1, const PsiCoefficients& psi2, GridPtr grid);
// Coefficient value, after checking it against the quadrature route
// (IntegrityError beyond 1e-8 relative).
cd disk_pairing(const PsiCoefficients& psi1, const PsiCoefficients& psi2, GridPtr grid);
cd disk_pairing(const PsiCoefficients& psi1, const PsiCoefficients& psi2);

// L_psi(eta); checked against l2_pairing(big_psi(psi), eta) to 1e-10 relative.
cd l_psi(const PsiCoefficients& psi, const PsiCoefficients& eta, GridPtr grid);
cd l_psi(const PsiCoefficients& psi, const PsiCoefficients& eta);

struct ContinuityModulus {
  double sup_diff = 0.0;   // sup (1-|z|^2)^2 |psi - psi0|
  double norm_diff = 0.0;  // ||Psi - Psi0||_{3/2}
};
ContinuityModulus continuity_modulus(const PsiCoefficients& psi, const PsiCoefficients& psi0);

// conj((1-|z|^2)^2 q(z)) for the holomorphic quadratic differential
// q(z) = sum conj(a_n) z^{n-2}; equals mu_psi.
DiskField serre_contraction(const PsiCoefficients& psi, GridPtr grid);

// Grid large enough for psi's modes.
GridPtr pairing_grid(const PsiCoefficients& psi1, const PsiCoefficients& psi2);

}  // namespace wpg

#endif
