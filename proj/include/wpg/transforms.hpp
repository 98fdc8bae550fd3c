#ifndef WPG_TRANSFORMS_HPP
#define WPG_TRANSFORMS_HPP

#include <vector>

#include <Eigen/Dense>

#include "wpg/disk_field.hpp"

namespace wpg {

// Radial operators acting on the node values of g_k (variable x = r^2).
class ModeKernelCache {
 public:
  explicit ModeKernelCache(const PolarGrid& grid);

  // Differentiation in x.
  const Eigen::MatrixXd& D() const { return D_; }
  // (U g)(x_i) = integral_{x_i}^1 g.
  const Eigen::MatrixXd& U() const { return U_; }
  // integral_0^1 g.
  const Eigen::RowVectorXd& I0() const { return I0_; }
  // (A_a g)(x_i) = integral_0^1 s^a g(x_i s) ds, 0 <= a <= K+1.
  const Eigen::MatrixXd& A(int a) const;
  // integral_0^1 s^a g(s) ds, 0 <= a <= K+1.
  const Eigen::RowVectorXd& M(int a) const;

 private:
  Eigen::MatrixXd D_, U_;
  Eigen::RowVectorXd I0_;
  std::vector<Eigen::MatrixXd> A_;
  std::vector<Eigen::RowVectorXd> M_;
};

const ModeKernelCache& kernel_cache(const PolarGrid& grid);

// Cauchy transform normalized to vanish at 0:
// Ph(zeta) = -(1/pi) integral h(z) (1/(z - zeta) - 1/z) dA(z).
// Mode k of h feeds mode k-1 of Ph.  Throws UnsupportedInput unless h vanishes
// off the disk.
DiskField cauchy_P(const DiskField& h);

// Beurling transform T = d/dz P; mode k feeds mode k-2.
DiskField beurling_T(const DiskField& h);

// Wirtinger derivatives d/dzbar and d/dz, interior by spectral
// differentiation, exterior termwise.
DiskField dbar(const DiskField& f);
DiskField dz(const DiskField& f);

// ((1/2pi) integral over the plane of |h|^p dA)^{1/p}; +inf when the exterior
// tail is not p-integrable.  Throws DomainError for p <= 1.
double lp_norm(const DiskField& h, double p);

}  // namespace wpg

#endif
