#include "wpg/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "wpg/errors.hpp"
#include "wpg/quad.hpp"

namespace wpg {

using Eigen::MatrixXcd;

cd hs_inner(const HSMatrix& psi, const HSMatrix& chi) {
  if (psi.rows() != chi.rows() || psi.cols() != chi.cols()) throw ShapeError("hs_inner: shape mismatch");
  return (psi.data.adjoint() * chi.data).trace();
}

HSMatrix a_mu_via_trace(const SolutionBasis& b) {
  const int N = static_cast<int>(b.entries.size());
  HSMatrix A = HSMatrix::zero(N);
  for (int n = 1; n <= N; ++n) {
    const BasisEntry& e = b.entries[static_cast<size_t>(n - 1)];
    if (e.n != n) throw ShapeError("a_mu_via_trace: basis entries out of order or missing");
    for (int k = 1; k <= N; ++k) A.at(k, n) = e.boundary.at(-k);
  }
  return A;
}

HSMatrix a_mu_via_integral(const BeltramiCoefficient& mu, int N, double tol) {
  if (!(mu.sup_norm < 1.0)) throw ContractionError("a_mu_via_integral: sup norm is not < 1");
  HSMatrix A = HSMatrix::zero(N);
  const GridPtr& grid = mu.field.grid_ptr();
  const auto one = [](double) { return 1.0; };
#pragma omp parallel for schedule(dynamic)
  for (int n = 1; n <= N; ++n) {
    const NeumannResult nr = neumann_nu(n, mu, tol);
    DiskField src = mu.field * (nr.nu.interior_only() + DiskField::disk_monomial(grid, n - 1, 0));
    src *= static_cast<double>(n);
    for (int k = 1; k <= N; ++k) {
      // (1/pi) = 2 * (1/2pi).
      A.at(k, n) = 2.0 * disk_integral(src * DiskField::disk_monomial(grid, k - 1, 0), one);
    }
  }
  return A;
}

Embedding embed_iota(const PsiCoefficients& psi, GridPtr grid, int N, double lambda, double tol) {
  Embedding out;
  out.sup_norm = weighted_sup(psi);
  if (lambda <= 0.0) lambda = out.sup_norm > 0.0 ? std::min(1.0, 0.5 / out.sup_norm) : 1.0;
  out.lambda = lambda;
  if (out.sup_norm == 0.0) {
    out.A = HSMatrix::zero(N);
    return out;
  }
  if (!(lambda * out.sup_norm < 1.0)) throw ContractionError("embed_iota: lambda * sup norm is not < 1");
  const BeltramiCoefficient mu = mu_from_psi(psi.scaled(lambda), std::move(grid));
  const SolutionBasis b = basis(mu, N, tol);
  out.converged = b.converged();
  out.A = a_mu_via_trace(b);
  out.A.data /= lambda;
  return out;
}

HSMatrix linearized_embedding(const PsiCoefficients& psi, int N) {
  HSMatrix A = HSMatrix::zero(N);
  for (int k = 1; k <= N; ++k)
    for (int n = 1; n <= N; ++n) {
      const int m = n + k;
      const double w = static_cast<double>(m) * (static_cast<double>(m) * m - 1.0);
      A.at(k, n) = 2.0 * n * psi.at(m) / w;
    }
  return A;
}

HSMatrix half_sobolev_weight(const HSMatrix& A) {
  HSMatrix out = A;
  for (int k = 1; k <= A.rows(); ++k)
    for (int n = 0; n < A.cols(); ++n)
      out.at(k, n) = n == 0 ? cd(0.0) : A.at(k, n) * std::sqrt(static_cast<double>(k) / n);
  return out;
}

cd wedge_trace(const MatrixXcd& A, const MatrixXcd& B) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw ShapeError("wedge_trace: operands must be square and of equal size");
  return 0.5 * (A.trace() * B.trace() - (A * B).trace());
}

namespace {

// Tr(psi psi^* wedge psi psi^*) = sum_{i<j} s_i^2 s_j^2; summed pairwise so the
// result is never negative.
double self_wedge(const HSMatrix& psi) {
  Eigen::JacobiSVD<MatrixXcd> svd(psi.data);
  const Eigen::VectorXd lam = svd.singularValues().array().square();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    for (Eigen::Index j = i + 1; j < lam.size(); ++j) acc += lam[i] * lam[j];
  return acc;
}

}  // namespace

double sectional_curvature(const HSMatrix& psi) {
  if (std::abs(psi.hs_norm() - 1.0) > 1e-12) throw NormalizationError("sectional_curvature: input is not unit");
  return -2.0 + self_wedge(psi);
}

void check_orthonormal(const std::vector<HSMatrix>& basis, double tol) {
  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t b = 0; b < basis.size(); ++b) {
      const cd g = hs_inner(basis[a], basis[b]);
      if (std::abs(g - (a == b ? 1.0 : 0.0)) > tol) throw NormalizationError("basis is not orthonormal");
    }
}

cd curvature_component(const std::vector<HSMatrix>& basis, int i, int j, int k, int l) {
  check_orthonormal(basis);
  const auto& P = basis;
  auto pp = [&](int a, int b) { return MatrixXcd(P[static_cast<size_t>(a)].data * P[static_cast<size_t>(b)].data.adjoint()); };
  const double dij = i == j, dkl = k == l, dil = i == l, dkj = k == j;
  if (k == i && l == j) return -2.0 * dij + wedge_trace(pp(i, j), pp(i, j));
  return -dij * dkl - dil * dkj + wedge_trace(pp(i, j), pp(k, l)) + wedge_trace(pp(i, l), pp(k, j));
}

double kahler_potential(const std::vector<HSMatrix>& basis, const Eigen::VectorXcd& t) {
  if (basis.empty()) return 0.0;
  if (static_cast<size_t>(t.size()) != basis.size()) throw ShapeError("kahler_potential: coordinate count mismatch");
  MatrixXcd phi = MatrixXcd::Zero(basis[0].rows(), basis[0].cols());
  for (size_t i = 0; i < basis.size(); ++i) phi += t[static_cast<Eigen::Index>(i)] * basis[i].data;
  Eigen::JacobiSVD<MatrixXcd> svd(phi);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double s = svd.singularValues()[i];
    if (s >= 1.0) throw ChartError("kahler_potential: id - phi phi^* is not positive definite");
    acc -= std::log1p(-s * s);
  }
  return acc;
}

namespace {

// Central-difference stencils for d^q/dx^q: offsets -2..2.
const double kStencil[5][5] = {
    {0, 0, 1, 0, 0},
    {0, -0.5, 0, 0.5, 0},
    {0, 1, -2, 1, 0},
    {-0.5, 1, 0, -1, 0.5},
    {1, -4, 6, -4, 1},
};

// Mixed Wirtinger derivative of the potential at 0.  `ops` lists
// (coordinate, conjugate?) pairs; d = (dx - i dy)/2, dbar = (dx + i dy)/2.
class WirtingerDiff {
 public:
  WirtingerDiff(const std::vector<HSMatrix>& basis, double h) : basis_(basis), h_(h), d_(static_cast<int>(basis.size())) {}

  cd operator()(const std::vector<std::pair<int, bool>>& ops) {
    const int nops = static_cast<int>(ops.size());
    cd total(0.0);
    // Each op splits into an x-part (coefficient 1/2) and a y-part (-+i/2).
    for (int mask = 0; mask < (1 << nops); ++mask) {
      cd coef(1.0);
      std::vector<int> order(static_cast<size_t>(2 * d_), 0);
      for (int o = 0; o < nops; ++o) {
        const auto [var, conj] = ops[static_cast<size_t>(o)];
        if (mask & (1 << o)) {
          coef *= cd(0.0, conj ? 0.5 : -0.5);
          ++order[static_cast<size_t>(2 * var + 1)];
        } else {
          coef *= 0.5;
          ++order[static_cast<size_t>(2 * var)];
        }
      }
      total += coef * real_derivative(order);
    }
    return total;
  }

 private:
  double real_derivative(const std::vector<int>& order) {
    std::vector<int> vars;
    int tot = 0;
    for (size_t v = 0; v < order.size(); ++v)
      if (order[v]) {
        vars.push_back(static_cast<int>(v));
        tot += order[v];
      }
    double acc = 0.0;
    std::vector<int> off(order.size(), 0);
    std::function<void(size_t, double)> rec = [&](size_t idx, double w) {
      if (idx == vars.size()) {
        acc += w * eval(off);
        return;
      }
      const int v = vars[idx];
      for (int o = -2; o <= 2; ++o) {
        const double sw = kStencil[order[static_cast<size_t>(v)]][o + 2];
        if (sw == 0.0) continue;
        off[static_cast<size_t>(v)] = o;
        rec(idx + 1, w * sw);
      }
      off[static_cast<size_t>(v)] = 0;
    };
    rec(0, 1.0);
    return acc / std::pow(h_, tot);
  }

  double eval(const std::vector<int>& off) {
    auto it = cache_.find(off);
    if (it != cache_.end()) return it->second;
    Eigen::VectorXcd t(d_);
    for (int i = 0; i < d_; ++i) t[i] = cd(off[static_cast<size_t>(2 * i)] * h_, off[static_cast<size_t>(2 * i + 1)] * h_);
    const double v = kahler_potential(basis_, t);
    cache_.emplace(off, v);
    return v;
  }

  const std::vector<HSMatrix>& basis_;
  double h_;
  int d_;
  std::map<std::vector<int>, double> cache_;
};

}  // namespace

Eigen::MatrixXcd potential_hessian(const std::vector<HSMatrix>& basis, double h) {
  const int d = static_cast<int>(basis.size());
  WirtingerDiff diff(basis, h);
  MatrixXcd H(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) H(i, j) = diff({{i, false}, {j, true}});
  return H;
}

CartanReport cartan_expansion_check(const std::vector<HSMatrix>& basis, double h) {
  check_orthonormal(basis);
  if (!(h > 0.0) || h > 0.05) throw DomainError("cartan_expansion_check: step must lie in (0, 0.05]");
  const int d = static_cast<int>(basis.size());
  CartanReport rep;
  rep.size = d;
  rep.h = h;
  WirtingerDiff diff(basis, h);
  auto pp = [&](int a, int b) { return MatrixXcd(basis[static_cast<size_t>(a)].data * basis[static_cast<size_t>(b)].data.adjoint()); };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const cd num = diff({{i, false}, {j, true}, {k, false}, {l, true}});
          const cd tr = (pp(i, j) * pp(k, l)).trace() + (pp(i, l) * pp(k, j)).trace();
          const double dd = static_cast<double>(i == j && k == l) + static_cast<double>(i == l && k == j);
          const cd w1 = wedge_trace(pp(i, j), pp(k, l)), w2 = wedge_trace(pp(i, l), pp(k, j));
          rep.numeric.push_back(num);
          rep.trace_formula.push_back(tr);
          rep.wedge_formula.push_back(dd - 2.0 * w1 - 2.0 * w2);
          rep.literal_formula.push_back(dd - w1 - w2);
          rep.max_deviation = std::max(rep.max_deviation, std::abs(num - tr));
          rep.wedge_identity_gap = std::max(rep.wedge_identity_gap, std::abs(tr - rep.wedge_formula.back()));
          rep.literal_deviation = std::max(rep.literal_deviation, std::abs(num - rep.literal_formula.back()));
        }
  for (int i = 0; i < d; ++i) {
    const cd c = rep.numeric[static_cast<size_t>(((i * d + i) * d + i) * d + i)];
    rep.curvature_direct.push_back(-c.real());
    rep.curvature_third.push_back(-c.real() / 3.0);
    rep.sectional.push_back(sectional_curvature(basis[static_cast<size_t>(i)]));
  }
  const MatrixXcd H = potential_hessian(basis, h);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      rep.hessian_deviation = std::max(rep.hessian_deviation, std::abs(H(i, j) - hs_inner(basis[static_cast<size_t>(j)], basis[static_cast<size_t>(i)])));
  return rep;
}

GeodesicSpec GeodesicSpec::make(HSMatrix psi, cd s0, double theta, double t) {
  if (std::abs(psi.hs_norm() - 1.0) > 1e-12) throw NormalizationError("GeodesicSpec: psi must have unit HS norm");
  GeodesicSpec g;
  g.psi = std::move(psi);
  g.s0 = s0;
  g.theta = theta;
  g.t = t;
  return g;
}

ASBlocks a_s_blocks(const HSMatrix& psi, cd s) {
  const int C = psi.cols(), R = psi.rows();
  const MatrixXcd& P = psi.data;
  const double s2 = std::norm(s);
  ASBlocks out;
  out.A = MatrixXcd::Identity(C + R, C + R);
  out.A.topRightCorner(C, R) = -std::conj(s) * P.adjoint();
  out.A.bottomLeftCorner(R, C) = s * P;
  MatrixXcd left = MatrixXcd::Identity(C + R, C + R);
  left.topRightCorner(C, R) = std::conj(s) * P.adjoint();
  left.bottomLeftCorner(R, C) = -s * P;
  MatrixXcd diag = MatrixXcd::Zero(C + R, C + R);
  diag.topLeftCorner(C, C) = (MatrixXcd::Identity(C, C) + s2 * P.adjoint() * P).inverse();
  diag.bottomRightCorner(R, R) = (MatrixXcd::Identity(R, R) + s2 * P * P.adjoint()).inverse();
  out.Ainv = left * diag;
  return out;
}

ASBlocks a_s_blocks(const GeodesicSpec& spec) { return a_s_blocks(spec.psi, spec.s()); }

double intertwining_residual_1(const HSMatrix& psi, cd s) {
  const MatrixXcd& P = psi.data;
  const double s2 = std::norm(s);
  const MatrixXcd lhs = (MatrixXcd::Identity(P.cols(), P.cols()) + s2 * P.adjoint() * P).inverse() * P.adjoint();
  const MatrixXcd rhs = P.adjoint() * (MatrixXcd::Identity(P.rows(), P.rows()) + s2 * P * P.adjoint()).inverse();
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double intertwining_residual_2(const HSMatrix& psi, cd s) {
  const MatrixXcd& P = psi.data;
  const double s2 = std::norm(s);
  const MatrixXcd lhs = (MatrixXcd::Identity(P.rows(), P.rows()) + s2 * P * P.adjoint()).inverse() * P;
  const MatrixXcd rhs = P * (MatrixXcd::Identity(P.cols(), P.cols()) + s2 * P.adjoint() * P).inverse();
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double pulled_back_speed(const HSMatrix& psi, cd s, const HSMatrix& delta) {
  const int C = psi.cols(), R = psi.rows();
  const ASBlocks b = a_s_blocks(psi, s);
  MatrixXcd X = MatrixXcd::Zero(C + R, C + R);
  X.topRightCorner(C, R) = -delta.data.adjoint();
  X.bottomLeftCorner(R, C) = delta.data;
  const MatrixXcd Y = b.Ainv * X * b.A;
  return Y.leftCols(C).norm();
}

double geodesic_speed(const GeodesicSpec& spec) {
  if (std::abs(spec.psi.hs_norm() - 1.0) > 1e-12) throw NormalizationError("geodesic_speed: psi must have unit HS norm");
  HSMatrix delta = spec.psi;
  delta.data *= std::polar(1.0, spec.theta);
  return pulled_back_speed(spec.psi, spec.s(), delta);
}

GrassmannChart exp_map(const std::vector<HSMatrix>& basis, const Eigen::VectorXcd& t) {
  if (basis.empty()) throw ShapeError("exp_map: empty basis");
  if (static_cast<size_t>(t.size()) != basis.size()) throw ShapeError("exp_map: coordinate count mismatch");
  GrassmannChart c;
  c.t = t;
  c.graph_op = HSMatrix(MatrixXcd::Zero(basis[0].rows(), basis[0].cols()));
  for (size_t i = 0; i < basis.size(); ++i) c.graph_op.data += t[static_cast<Eigen::Index>(i)] * basis[i].data;
  return c;
}

HSMatrix graph_from_frame(const GrassmannChart& chart) {
  const MatrixXcd& G = chart.graph_op.data;
  const int C = static_cast<int>(G.cols());
  // Orthonormal frame [id; G] (id + G^*G)^{-1/2} of W, then F_- F_+^{-1}.
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(MatrixXcd::Identity(C, C) + G.adjoint() * G);
  const MatrixXcd inv_sqrt = es.operatorInverseSqrt();
  const MatrixXcd Fp = inv_sqrt;
  const MatrixXcd Fm = G * inv_sqrt;
  return HSMatrix(Fm * Fp.inverse());
}

SiegelResult siegel_membership(const HSMatrix& T) {
  SiegelResult r;
  if (T.data.size() == 0) return r;
  Eigen::JacobiSVD<MatrixXcd> svd(T.data);
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double s = svd.singularValues()[i];
    r.det *= 1.0 - s * s;
    if (!(s < 1.0)) r.member = false;
  }
  if (r.det <= 0.0) r.member = false;
  return r;
}

double dexp_lower_bound_probe(const std::vector<HSMatrix>& basis, cd c, const Eigen::VectorXcd& w, double h) {
  if (!(h > 0.0) || h > 0.1) throw DomainError("dexp_lower_bound_probe: step must lie in (0, 0.1]");
  const HSMatrix W = exp_map(basis, w).graph_op;
  const double wn = W.hs_norm();
  if (wn == 0.0) throw NormalizationError("dexp_lower_bound_probe: zero direction");
  const HSMatrix gp = graph_from_frame(exp_map(basis, (c + h) * w));
  const HSMatrix gm = graph_from_frame(exp_map(basis, (c - h) * w));
  HSMatrix delta((gp.data - gm.data) / (2.0 * h));
  delta.data /= wn;
  HSMatrix unit = W;
  unit.data /= wn;
  return pulled_back_speed(unit, c * wn, delta);
}

HSMatrix random_unit_hs(int rank, int rows, int cols, std::uint64_t seed, int trial) {
  if (rank < 1 || rank > std::min(rows, cols)) throw DomainError("random_unit_hs: rank out of range");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(rank), static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  auto random_frame = [&](int n) {
    MatrixXcd G(n, rank);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < rank; ++j) G(i, j) = cd(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<MatrixXcd> qr(G);
    return MatrixXcd(qr.householderQ() * MatrixXcd::Identity(n, rank));
  };
  const MatrixXcd U = random_frame(rows), V = random_frame(cols);
  Eigen::VectorXd sv(rank);
  for (int i = 0; i < rank; ++i) sv[i] = trial == 0 ? 1.0 : unif(rng);
  sv /= sv.norm();
  return HSMatrix(U * sv.cast<cd>().asDiagonal() * V.adjoint());
}

namespace {

CurvatureRow curvature_row(int rank, int trial, std::uint64_t seed, int dim) {
  const HSMatrix psi = random_unit_hs(rank, dim, dim + 1, seed, trial);
  // Renormalize to absorb the last-ulp drift of the frame product.
  HSMatrix unit = psi;
  unit.data /= psi.hs_norm();
  CurvatureRow row;
  row.rank = rank;
  row.trial = trial;
  row.wedge = self_wedge(unit);
  row.K = -2.0 + row.wedge;
  return row;
}

}  // namespace

std::vector<CurvatureRow> curvature_sweep(const std::vector<int>& ranks, int trials, std::uint64_t seed, int dim) {
  const int nr = static_cast<int>(ranks.size());
  std::vector<CurvatureRow> rows(static_cast<size_t>(nr) * static_cast<size_t>(std::max(trials, 0)));
#pragma omp parallel for collapse(2) schedule(static)
  for (int r = 0; r < nr; ++r)
    for (int t = 0; t < trials; ++t)
      rows[static_cast<size_t>(r) * static_cast<size_t>(trials) + static_cast<size_t>(t)] =
          curvature_row(ranks[static_cast<size_t>(r)], t, seed, dim);
  return rows;
}

std::vector<CurvatureRow> curvature_sweep_serial(const std::vector<int>& ranks, int trials, std::uint64_t seed,
                                                 int dim) {
  std::vector<CurvatureRow> rows;
  for (int r : ranks)
    for (int t = 0; t < trials; ++t) rows.push_back(curvature_row(r, t, seed, dim));
  return rows;
}

}  // namespace wpg
