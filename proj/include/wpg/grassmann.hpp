#ifndef WPG_GRASSMANN_HPP
#define WPG_GRASSMANN_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wpg/beltrami.hpp"
#include "wpg/circle.hpp"
#include "wpg/disk_field.hpp"

namespace wpg {

// Operator H+ -> H-.  Row k-1 holds H- mode z^{-k} (k >= 1); column n holds
// H+ mode z^n (n >= 0).
struct HSMatrix {
  Eigen::MatrixXcd data;

  HSMatrix() = default;
  explicit HSMatrix(Eigen::MatrixXcd d) : data(std::move(d)) {}
  // N x (N+1): H- modes 1..N, H+ modes 0..N.
  static HSMatrix zero(int N) { return HSMatrix(Eigen::MatrixXcd::Zero(N, N + 1)); }

  int rows() const { return static_cast<int>(data.rows()); }
  int cols() const { return static_cast<int>(data.cols()); }
  cd& at(int k, int n) { return data(k - 1, n); }
  cd at(int k, int n) const { return data(k - 1, n); }
  double hs_norm() const { return data.norm(); }
};

// Tr(psi^* chi).
cd hs_inner(const HSMatrix& psi, const HSMatrix& chi);

// Column n: negative boundary modes of w^{(n)}; column 0 is zero.
HSMatrix a_mu_via_trace(const SolutionBasis& b);
// Entry (k, n) = (1/pi) integral_D n mu (nu^{(n)} + z^{n-1}) z^{k-1} dA.
HSMatrix a_mu_via_integral(const BeltramiCoefficient& mu, int N, double tol);

struct Embedding {
  HSMatrix A;  // (1/lambda) A_{lambda mu_psi}
  double lambda = 1.0;
  double sup_norm = 0.0;  // of mu_psi before scaling
  bool converged = true;
};
// lambda <= 0 selects min(1, 0.5 / sup_norm).
Embedding embed_iota(const PsiCoefficients& psi, GridPtr grid, int N, double lambda, double tol);
// lambda -> 0 limit: entry (k, n) = 2 n a_{n+k} / (m (m^2 - 1)), m = n + k.
HSMatrix linearized_embedding(const PsiCoefficients& psi, int N);
// Entries rescaled by sqrt(k/n): the H^{1/2} Hilbert-Schmidt normalization.
HSMatrix half_sobolev_weight(const HSMatrix& A);

// (Tr A Tr B - Tr AB) / 2.
cd wedge_trace(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

// -2 + Tr(psi psi^* wedge psi psi^*); requires ||psi||_HS = 1.
double sectional_curvature(const HSMatrix& psi);
// Requires an orthonormal basis.  The diagonal case (k,l) = (i,j) uses
// -2 delta_ij + Tr(psi_i psi_j^* wedge psi_i psi_j^*).
cd curvature_component(const std::vector<HSMatrix>& basis, int i, int j, int k, int l);
void check_orthonormal(const std::vector<HSMatrix>& basis, double tol = 1e-10);

// -log det(id - phi phi^*), phi = sum t_i psi_i; ChartError outside the chart.
double kahler_potential(const std::vector<HSMatrix>& basis, const Eigen::VectorXcd& t);

struct CartanReport {
  int size = 0;
  double h = 0.0;
  // Numeric d_k dbar_l d_i dbar_j of the potential at 0, index ((i*d+j)*d+k)*d+l.
  std::vector<cd> numeric;
  // Tr(psi_i psi_j^* psi_k psi_l^*) + Tr(psi_i psi_l^* psi_k psi_j^*).
  std::vector<cd> trace_formula;
  // Same coefficient written with the halved wedge: dd + dd - 2W - 2W.
  std::vector<cd> wedge_formula;
  // Wedge terms with coefficient one (the literal curvature display).
  std::vector<cd> literal_formula;
  double max_deviation = 0.0;          // numeric vs trace_formula
  double wedge_identity_gap = 0.0;     // trace_formula vs wedge_formula
  double literal_deviation = 0.0;      // numeric vs literal_formula (diagnostic)
  // Curvature read off the diagonal coefficient, without and with the 1/3 factor.
  std::vector<double> curvature_direct, curvature_third;
  std::vector<double> sectional;
  double hessian_deviation = 0.0;  // numeric Hessian at 0 vs Gram matrix
};
CartanReport cartan_expansion_check(const std::vector<HSMatrix>& basis, double h);
// Numeric d_i dbar_j of the potential at 0.
Eigen::MatrixXcd potential_hessian(const std::vector<HSMatrix>& basis, double h);

struct GeodesicSpec {
  HSMatrix psi;
  cd s0 = 0.0;
  double theta = 0.0;
  double t = 0.0;
  // Throws NormalizationError unless ||psi||_HS = 1 within 1e-12.
  static GeodesicSpec make(HSMatrix psi, cd s0, double theta, double t);
  cd s() const { return s0 + t * std::polar(1.0, theta); }
};

struct ASBlocks {
  Eigen::MatrixXcd A;     // [[id, -sbar psi^*], [s psi, id]] on H+ (+) H-
  Eigen::MatrixXcd Ainv;  // [[id, sbar psi^*], [-s psi, id]] diag(resolvents)
};
ASBlocks a_s_blocks(const HSMatrix& psi, cd s);
ASBlocks a_s_blocks(const GeodesicSpec& spec);
// Residuals of (id+|s|^2 psi^*psi)^{-1} psi^* = psi^* (id+|s|^2 psi psi^*)^{-1}
// and of its adjoint form.
double intertwining_residual_1(const HSMatrix& psi, cd s);
double intertwining_residual_2(const HSMatrix& psi, cd s);

// HS norm of (A_s^{-1} Xt A_s) restricted to H+, where
// Xt = [[0, -delta^*], [delta, 0]] for the velocity operator delta.
double pulled_back_speed(const HSMatrix& psi, cd s, const HSMatrix& delta);
double geodesic_speed(const GeodesicSpec& spec);

struct GrassmannChart {
  HSMatrix graph_op;
  Eigen::VectorXcd t;
};
GrassmannChart exp_map(const std::vector<HSMatrix>& basis, const Eigen::VectorXcd& t);
// Graph operator F_- F_+^{-1} recovered from a spanning frame of the chart point.
HSMatrix graph_from_frame(const GrassmannChart& chart);

struct SiegelResult {
  double det = 1.0;
  bool member = true;
};
SiegelResult siegel_membership(const HSMatrix& T);

// ||d exp_{cw}(w)|| / ||w|| with the velocity from a central difference of the
// graph operator and the norm pulled back through A_s.
double dexp_lower_bound_probe(const std::vector<HSMatrix>& basis, cd c, const Eigen::VectorXcd& w, double h);

// Random unit HS matrix of the given rank; trial 0 has equal singular values.
HSMatrix random_unit_hs(int rank, int rows, int cols, std::uint64_t seed, int trial);

struct CurvatureRow {
  int rank = 0;
  int trial = 0;
  double K = 0.0;
  double wedge = 0.0;
};
std::vector<CurvatureRow> curvature_sweep(const std::vector<int>& ranks, int trials, std::uint64_t seed, int dim);
std::vector<CurvatureRow> curvature_sweep_serial(const std::vector<int>& ranks, int trials, std::uint64_t seed,
                                                 int dim);

}  // namespace wpg

#endif
