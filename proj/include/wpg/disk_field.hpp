#ifndef WPG_DISK_FIELD_HPP
#define WPG_DISK_FIELD_HPP

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wpg/circle.hpp"
#include "wpg/quad.hpp"

namespace wpg {

// Function on the plane: band-limited angular modes inside the unit disk and
// an optional Laurent series sum_q c_q z^q outside it.  An empty exterior
// means the field is extended by zero off the disk.
//
// Interior mode k is r^{|k|} g_k(r^2) e^{ik theta}; g_k lives at the grid's
// x-nodes and carries a polynomial degree bound.  Operations propagate the
// bound exactly and project onto it, which keeps rounding noise out of the
// high Legendre modes that differentiation would amplify.  Modes below -K are dropped on every operation (all operators in
// this library shift modes downward, so the retained modes stay exact).
class DiskField {
 public:
  DiskField() = default;
  explicit DiskField(GridPtr grid);

  // c z^p zbar^q restricted to the disk.
  static DiskField disk_monomial(GridPtr grid, int p, int q, cd c = 1.0);
  // c z^n on the whole plane (n >= 0).
  static DiskField entire_monomial(GridPtr grid, int n, cd c = 1.0);

  const PolarGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int K() const { return grid_->K(); }

  // nullptr when the mode is identically zero.
  const Eigen::VectorXcd* mode(int k) const;
  // Raw access; marks the mode's degree bound as unknown (m-1).
  Eigen::VectorXcd& mode_mut(int k);
  // Degree bound of g_k; -1 for an absent mode.
  int degree(int k) const;
  void set_mode(int k, const Eigen::VectorXcd& g, int degree);
  // Adds g (degree bound `degree`); a negative bound adds nothing.
  void add_mode(int k, const Eigen::VectorXcd& g, int degree);
  // Projects every mode onto its degree bound.
  void project_to_degrees();
  bool in_range(int k) const { return k >= -K() && k <= K(); }
  std::vector<int> active_modes() const;

  const std::map<int, cd>& exterior() const { return exterior_; }
  std::map<int, cd>& exterior_mut() { return exterior_; }
  bool outside_zero() const { return exterior_.empty(); }

  // Interior series on the open disk, Laurent tail for |z| >= 1.  Fields
  // that are continuous across the circle agree on both branches there.
  cd eval(cd z) const;
  cd eval_interior(cd z) const;
  cd eval_exterior(cd z) const;

  DiskField& operator+=(const DiskField& o);
  DiskField& operator-=(const DiskField& o);
  DiskField& operator*=(cd s);
  friend DiskField operator+(DiskField a, const DiskField& b) { return a += b; }
  friend DiskField operator-(DiskField a, const DiskField& b) { return a -= b; }
  friend DiskField operator*(cd s, DiskField a) { return a *= s; }
  // Pointwise product of interiors and of exteriors.
  friend DiskField operator*(const DiskField& a, const DiskField& b);

  DiskField conj() const;
  DiskField interior_only() const;

  // ((1/2pi) integral over the disk of |f|^2 dA)^{1/2}.
  double l2_norm_interior() const;
  // Same over |z| > 1; infinite if c_0 or c_{-1} is nonzero or any q >= 0.
  double l2_norm_exterior() const;
  double l2_norm() const;

  // Interior limit on |z| = 1 as a Fourier series.
  FourierCoefficients boundary_trace() const;
  FourierCoefficients exterior_trace() const;

  // Largest |value| over the supplied mode list (diagnostics).
  double max_abs_mode(int k) const;

 private:
  GridPtr grid_;
  std::vector<Eigen::VectorXcd> modes_;  // index k + K; size 0 means zero
  std::vector<int> deg_;
  std::map<int, cd> exterior_;
};

// psi(zbar) by Horner; |z| < 1 required.
cd eval_psi_bar(const PsiCoefficients& psi, cd z);

struct BeltramiCoefficient {
  DiskField field;
  PsiCoefficients source;
  double sup_norm = 0.0;
};

// (1-|z|^2)^2 psi(zbar) inside, 0 outside.
BeltramiCoefficient mu_from_psi(const PsiCoefficients& psi, GridPtr grid);

// sup over the disk of (1-|z|^2)^2 |psi(zbar)| by dense scan plus local refinement.
double weighted_sup(const PsiCoefficients& psi);

struct SupBound {
  double sup = 0.0;
  double bound = 0.0;
};
SupBound sup_bound_check(const PsiCoefficients& psi);

}  // namespace wpg

#endif
