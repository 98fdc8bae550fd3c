#ifndef WPG_QUAD_HPP
#define WPG_QUAD_HPP

#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

namespace wpg {

using cd = std::complex<double>;

class ModeKernelCache;

// Gauss-Legendre rule on (0,1) with unit weight.
struct RadialRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

// Throws DomainError for m < 1.
RadialRule gauss_radial_rule(int m);

// Discretization shared by every DiskField.
//
// Mode k of a field is stored as r^{|k|} g_k(r^2) e^{ik theta}; g_k is kept as
// its values at the Gauss nodes of `x_rule` (variable x = r^2) and read as the
// degree m-1 interpolant through them.  `angular_count` is the sample count
// used when a field is sampled on circles.
class PolarGrid {
 public:
  PolarGrid(int m, int K);

  int m() const { return m_; }
  int K() const { return K_; }
  int angular_count() const { return angular_count_; }
  const RadialRule& x_rule() const { return x_rule_; }
  const std::vector<double>& x() const { return x_rule_.nodes; }
  const std::vector<double>& r() const { return r_nodes_; }
  const Eigen::VectorXd& bary() const { return bary_; }

  // Lagrange basis values l_j(y), j = 0..m-1.
  void lagrange_row(double y, double* out) const;
  Eigen::RowVectorXd lagrange_row(double y) const;
  // Rows l_j(y_i) for each point y_i.
  Eigen::MatrixXd interpolation_matrix(const std::vector<double>& y) const;
  cd interpolate(const Eigen::VectorXcd& g, double y) const;
  // x^e at the nodes, 0 <= e <= 2K+2.
  const Eigen::VectorXd& x_pow(int e) const;

  // Rule exact for x^a |g|^2 with g of degree m-1; used by the L2 norm.
  struct WeightedRule {
    Eigen::VectorXd weights;  // already multiplied by x^a
    Eigen::MatrixXd interp;   // rows: Lagrange basis at the rule's nodes
  };
  const WeightedRule& norm_rule(int a) const;

  // Orthonormal shifted Legendre polynomials at the nodes, column j = degree j.
  const Eigen::MatrixXd& legendre() const { return legendre_; }
  // Node values of the least-squares (= interpolatory) truncation of g to
  // degree <= degree; identity for degree >= m-1, zero for degree < 0.
  Eigen::VectorXcd project(const Eigen::VectorXcd& g, int degree) const;

 private:
  int m_, K_, angular_count_;
  RadialRule x_rule_;
  std::vector<double> r_nodes_;
  Eigen::VectorXd bary_;
  std::vector<WeightedRule> norm_rules_;
  std::vector<Eigen::VectorXd> x_pows_;
  Eigen::MatrixXd legendre_;

  // Radial operator matrices for P and T, built on first use.
  mutable std::once_flag kernel_once_;
  mutable std::shared_ptr<const ModeKernelCache> kernels_;
  friend const ModeKernelCache& kernel_cache(const PolarGrid& grid);
};

using GridPtr = std::shared_ptr<const PolarGrid>;
GridPtr make_grid(int m, int K);

// Mode coefficients c_k, k in [-K, K], stored at index k + K.
struct AngularModes {
  int K = 0;
  std::vector<cd> coeffs;
  // Fraction of energy carried by |k| = K; large values hint at aliasing.
  double top_mode_fraction = 0.0;
  cd at(int k) const { return coeffs[static_cast<std::size_t>(k + K)]; }
};

// Samples f(theta_j), theta_j = 2 pi j / L, with L >= 2K+1.
AngularModes angular_analyze(const std::vector<cd>& samples, int K);
std::vector<cd> angular_synthesize(const AngularModes& modes, int L);

class DiskField;

// (1/2pi) * integral over the unit disk of f(z) w(|z|) dA.
cd disk_integral(const DiskField& f, const std::function<double(double)>& radial_weight);

struct DiskIntegral {
  cd value;
  // Gap between the node rule and a finer rule; nonzero when the grid is too
  // coarse for the integrand.
  double truncation_gap = 0.0;
  bool truncation_warning = false;
};
DiskIntegral disk_integral_checked(const DiskField& f,
                                   const std::function<double(double)>& radial_weight);

}  // namespace wpg

#endif
