#include "wpg/beltrami.hpp"

#include <algorithm>
#include <cmath>

#include "wpg/errors.hpp"
#include "wpg/transforms.hpp"

namespace wpg {

namespace {

void check_mu(const BeltramiCoefficient& mu) {
  if (!(mu.sup_norm < 1.0))
    throw ContractionError("Beltrami coefficient sup norm " + std::to_string(mu.sup_norm) + " is not < 1");
}

}  // namespace

DiskField neumann_partial_sum(int n, const BeltramiCoefficient& mu, int depth) {
  if (n < 1) throw DomainError("neumann_partial_sum: n must be >= 1");
  const GridPtr& grid = mu.field.grid_ptr();
  DiskField nu(grid);
  if (depth <= 0) return nu;
  DiskField term = beurling_T(mu.field * DiskField::disk_monomial(grid, n - 1, 0));
  nu += term;
  for (int m = 2; m <= depth; ++m) {
    term = beurling_T(mu.field * term.interior_only());
    nu += term;
  }
  return nu;
}

NeumannResult neumann_nu(int n, const BeltramiCoefficient& mu, double tol, int max_depth) {
  if (n < 1) throw DomainError("neumann_nu: n must be >= 1");
  check_mu(mu);
  const GridPtr& grid = mu.field.grid_ptr();
  NeumannResult out;
  out.nu = DiskField(grid);
  const DiskField seed = mu.field * DiskField::disk_monomial(grid, n - 1, 0);
  const double norm0 = seed.l2_norm();
  const double c0 = mu.sup_norm;
  if (norm0 == 0.0 || c0 == 0.0) return out;

  int M = 1;
  double bound = c0 / (1.0 - c0) * norm0;
  while (!(bound < tol) && M < max_depth) {
    ++M;
    bound *= c0;
  }
  out.depth = M;
  out.tail_bound = bound;

  DiskField term = beurling_T(seed);
  out.nu += term;
  for (int m = 2; m <= M; ++m) {
    term = beurling_T(mu.field * term.interior_only());
    out.nu += term;
  }
  const DiskField zn1 = DiskField::disk_monomial(grid, n - 1, 0);
  const DiskField fixed = beurling_T(mu.field * (out.nu.interior_only() + zn1));
  out.fixed_point_residual = (out.nu - fixed).l2_norm();
  out.converged = bound < tol && out.fixed_point_residual < 2.0 * tol;
  return out;
}

BasisEntry solve_w(int n, const BeltramiCoefficient& mu, double tol) {
  NeumannResult nr = neumann_nu(n, mu, tol);
  const GridPtr& grid = mu.field.grid_ptr();
  BasisEntry e;
  e.n = n;
  e.depth = nr.depth;
  e.tail_bound = nr.tail_bound;
  e.fixed_point_residual = nr.fixed_point_residual;
  e.converged = nr.converged;
  DiskField src = mu.field * (nr.nu.interior_only() + DiskField::disk_monomial(grid, n - 1, 0));
  src *= static_cast<double>(n);
  e.w_tail = cauchy_P(src);
  // P's exterior constant equals the circle mean of the interior; remove it.
  auto it = e.w_tail.exterior().find(0);
  if (it != e.w_tail.exterior().end()) {
    const cd c = it->second;
    e.w_tail.add_mode(0, Eigen::VectorXcd::Constant(grid->m(), -c), 0);
    e.w_tail.exterior_mut().erase(0);
  }
  e.nu = std::move(nr.nu);
  e.boundary = full_w(e).boundary_trace();
  return e;
}

DiskField full_w(const BasisEntry& entry) {
  return DiskField::entire_monomial(entry.w_tail.grid_ptr(), entry.n) + entry.w_tail;
}

bool SolutionBasis::converged() const {
  return std::all_of(entries.begin(), entries.end(), [](const BasisEntry& e) { return e.converged; });
}

SolutionBasis basis(const BeltramiCoefficient& mu, int N, double tol) {
  check_mu(mu);
  SolutionBasis b;
  b.mu = mu;
  b.tol = tol;
  b.entries.resize(static_cast<size_t>(std::max(N, 0)));
  kernel_cache(mu.field.grid());
#pragma omp parallel for schedule(dynamic)
  for (int n = 1; n <= N; ++n) b.entries[static_cast<size_t>(n - 1)] = solve_w(n, mu, tol);
  return b;
}

SolutionBasis basis_serial(const BeltramiCoefficient& mu, int N, double tol) {
  check_mu(mu);
  SolutionBasis b;
  b.mu = mu;
  b.tol = tol;
  for (int n = 1; n <= N; ++n) b.entries.push_back(solve_w(n, mu, tol));
  return b;
}

Residual residual(const BasisEntry& entry, const BeltramiCoefficient& mu) {
  Residual r;
  const DiskField w = full_w(entry);
  const DiskField lhs = dbar(w).interior_only();
  const DiskField rhs = mu.field * dz(w).interior_only();
  r.pde = (lhs - rhs).l2_norm_interior();
  r.mean = std::abs(entry.boundary.at(0));
  double dev = std::abs(entry.boundary.at(entry.n) - 1.0);
  for (const auto& [k, c] : entry.boundary.coeffs())
    if (k >= 1 && k != entry.n) dev = std::max(dev, std::abs(c));
  r.tail_modes = dev;
  return r;
}

double holomorphic_identity_residual(const BasisEntry& entry) {
  const GridPtr& grid = entry.w_tail.grid_ptr();
  DiskField diff = dz(full_w(entry)).interior_only();
  diff -= DiskField::disk_monomial(grid, entry.n - 1, 0, static_cast<double>(entry.n));
  diff -= static_cast<double>(entry.n) * entry.nu.interior_only();
  return diff.l2_norm_interior();
}

double continuity_jump(const BasisEntry& entry) {
  const DiskField w = full_w(entry);
  const FourierCoefficients in = w.boundary_trace();
  const FourierCoefficients out = w.exterior_trace();
  double jump = 0.0;
  for (const auto& [k, c] : in.coeffs()) jump += std::abs(c - out.at(k));
  for (const auto& [k, c] : out.coeffs())
    if (!in.coeffs().count(k)) jump += std::abs(c);
  return jump;
}

namespace {

Eigen::MatrixXcd trace_matrix(const SolutionBasis& b, int K) {
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(2 * K + 1, static_cast<Eigen::Index>(b.entries.size()));
  for (size_t j = 0; j < b.entries.size(); ++j)
    for (const auto& [k, c] : b.entries[j].boundary.coeffs())
      if (std::abs(k) <= K) B(k + K, static_cast<Eigen::Index>(j)) = c;
  return B;
}

}  // namespace

double trace_gram_condition(const SolutionBasis& b) {
  if (b.entries.empty()) return 1.0;
  const Eigen::MatrixXcd B = trace_matrix(b, b.mu.field.K());
  const Eigen::MatrixXcd G = B.adjoint() * B;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G);
  const auto& s = svd.singularValues();
  return s[0] / s[s.size() - 1];
}

double power_span_distance(const SolutionBasis& b, int power) {
  if (b.entries.empty() || power < 1) return 0.0;
  const int K = b.mu.field.K();
  const FourierCoefficients& w1 = b.entries.front().boundary;
  std::vector<cd> acc(static_cast<size_t>(2 * K + 1), cd(0.0));
  acc[static_cast<size_t>(K)] = 1.0;
  for (int p = 0; p < power; ++p) {
    std::vector<cd> next(acc.size(), cd(0.0));
    for (int k1 = -K; k1 <= K; ++k1) {
      if (acc[static_cast<size_t>(k1 + K)] == cd(0.0)) continue;
      for (const auto& [k2, c] : w1.coeffs()) {
        const int k = k1 + k2;
        if (std::abs(k) <= K) next[static_cast<size_t>(k + K)] += acc[static_cast<size_t>(k1 + K)] * c;
      }
    }
    acc = std::move(next);
  }
  Eigen::VectorXcd target(2 * K + 1);
  for (int i = 0; i < 2 * K + 1; ++i) target[i] = acc[static_cast<size_t>(i)];
  const Eigen::MatrixXcd B = trace_matrix(b, K);
  const Eigen::VectorXcd coef = B.colPivHouseholderQr().solve(target);
  const double tn = target.norm();
  return tn > 0.0 ? (target - B * coef).norm() / tn : 0.0;
}

}  // namespace wpg
