#ifndef WPG_BELTRAMI_HPP
#define WPG_BELTRAMI_HPP

#include <vector>

#include <Eigen/Dense>

#include "wpg/circle.hpp"
#include "wpg/disk_field.hpp"

namespace wpg {

struct NeumannResult {
  DiskField nu;
  int depth = 0;
  double tail_bound = 0.0;
  double fixed_point_residual = 0.0;
  // False when the depth cap was hit or the fixed-point residual exceeds 2 tol.
  bool converged = true;
};

// nu = sum_{m=1}^{M} T_m with T_1 = T(mu z^{n-1}), T_m = T(mu T_{m-1}); M is the
// smallest depth whose geometric tail c0^M/(1-c0) ||mu z^{n-1}||_2 is below tol.
// Throws ContractionError if mu.sup_norm >= 1.
NeumannResult neumann_nu(int n, const BeltramiCoefficient& mu, double tol, int max_depth = 200);
// Same series at a prescribed depth (reference runs).
DiskField neumann_partial_sum(int n, const BeltramiCoefficient& mu, int depth);

struct BasisEntry {
  int n = 0;
  DiskField nu;
  DiskField w_tail;  // w^{(n)} - z^n, circle mean removed
  FourierCoefficients boundary;
  int depth = 0;
  double tail_bound = 0.0;
  double fixed_point_residual = 0.0;
  bool converged = true;
};

// w = z^n + n P(mu (nu + z^{n-1})) - c, with c fixing the circle mean to 0.
BasisEntry solve_w(int n, const BeltramiCoefficient& mu, double tol);
DiskField full_w(const BasisEntry& entry);

struct SolutionBasis {
  BeltramiCoefficient mu;
  std::vector<BasisEntry> entries;  // entries[n-1] holds n
  double tol = 0.0;
  bool converged() const;
};

// Parallel over n; the serial variant is the reference implementation.
SolutionBasis basis(const BeltramiCoefficient& mu, int N, double tol);
SolutionBasis basis_serial(const BeltramiCoefficient& mu, int N, double tol);

struct Residual {
  double pde = 0.0;         // ||dbar w - mu d w||_2
  double mean = 0.0;        // |circle mean of w|
  double tail_modes = 0.0;  // deviation of the positive boundary modes from delta_n
};
Residual residual(const BasisEntry& entry, const BeltramiCoefficient& mu);

// ||d w - n z^{n-1} - n nu||_2 on the disk.
double holomorphic_identity_residual(const BasisEntry& entry);
// sum over modes of |interior limit - exterior Laurent| on |z| = 1.
double continuity_jump(const BasisEntry& entry);

// Diagnostics on the span of the traces.
double trace_gram_condition(const SolutionBasis& b);
double power_span_distance(const SolutionBasis& b, int power);

}  // namespace wpg

#endif
