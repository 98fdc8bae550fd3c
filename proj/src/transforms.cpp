#include "wpg/transforms.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "wpg/errors.hpp"

namespace wpg {

namespace {

Eigen::VectorXcd mat_apply(const Eigen::MatrixXd& M, const Eigen::VectorXcd& g) {
  const Eigen::VectorXd re = M * g.real();
  const Eigen::VectorXd im = M * g.imag();
  Eigen::VectorXcd out(re.size());
  for (Eigen::Index i = 0; i < re.size(); ++i) out[i] = cd(re[i], im[i]);
  return out;
}

cd dot(const Eigen::RowVectorXd& row, const Eigen::VectorXcd& g) {
  return cd(row.dot(g.real()), row.dot(g.imag()));
}

Eigen::VectorXcd times_x(const PolarGrid& grid, const Eigen::VectorXcd& g) {
  return (grid.x_pow(1).array().cast<cd>() * g.array()).matrix();
}

void require_compact(const DiskField& h, const char* who) {
  if (!h.outside_zero()) throw UnsupportedInput(std::string(who) + ": input must vanish outside the disk");
}

}  // namespace

ModeKernelCache::ModeKernelCache(const PolarGrid& grid) {
  const int m = grid.m();
  const int K = grid.K();
  const auto& x = grid.x();
  const auto& lam = grid.bary();

  D_ = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    double diag = 0.0;
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      D_(i, j) = (lam[j] / lam[i]) / (x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)]);
      diag -= D_(i, j);
    }
    D_(i, i) = diag;
  }

  I0_.resize(m);
  for (int j = 0; j < m; ++j) I0_[j] = grid.x_rule().weights[static_cast<size_t>(j)];

  const RadialRule base = gauss_radial_rule(m);
  U_ = Eigen::MatrixXd::Zero(m, m);
  Eigen::RowVectorXd row(m);
  for (int i = 0; i < m; ++i) {
    const double lo = x[static_cast<size_t>(i)], len = 1.0 - lo;
    for (int l = 0; l < m; ++l) {
      grid.lagrange_row(lo + len * base.nodes[static_cast<size_t>(l)], row.data());
      U_.row(i) += len * base.weights[static_cast<size_t>(l)] * row;
    }
  }

  A_.resize(static_cast<size_t>(K + 2));
  M_.resize(static_cast<size_t>(K + 2));
  for (int a = 0; a <= K + 1; ++a) {
    const int q = (a + m) / 2 + 1;
    const RadialRule s = gauss_radial_rule(q);
    Eigen::MatrixXd Aa = Eigen::MatrixXd::Zero(m, m);
    Eigen::RowVectorXd Ma = Eigen::RowVectorXd::Zero(m);
    for (int l = 0; l < q; ++l) {
      const double sl = s.nodes[static_cast<size_t>(l)];
      const double wl = s.weights[static_cast<size_t>(l)] * std::pow(sl, a);
      grid.lagrange_row(sl, row.data());
      Ma += wl * row;
      for (int i = 0; i < m; ++i) {
        grid.lagrange_row(x[static_cast<size_t>(i)] * sl, row.data());
        Aa.row(i) += wl * row;
      }
    }
    A_[static_cast<size_t>(a)] = std::move(Aa);
    M_[static_cast<size_t>(a)] = std::move(Ma);
  }
}

const Eigen::MatrixXd& ModeKernelCache::A(int a) const {
  if (a < 0 || a >= static_cast<int>(A_.size())) throw DomainError("ModeKernelCache::A: index out of range");
  return A_[static_cast<size_t>(a)];
}

const Eigen::RowVectorXd& ModeKernelCache::M(int a) const {
  if (a < 0 || a >= static_cast<int>(M_.size())) throw DomainError("ModeKernelCache::M: index out of range");
  return M_[static_cast<size_t>(a)];
}

const ModeKernelCache& kernel_cache(const PolarGrid& grid) {
  std::call_once(grid.kernel_once_, [&] { grid.kernels_ = std::make_shared<const ModeKernelCache>(grid); });
  return *grid.kernels_;
}

DiskField cauchy_P(const DiskField& h) {
  require_compact(h, "cauchy_P");
  const PolarGrid& grid = h.grid();
  const ModeKernelCache& kc = kernel_cache(grid);
  const int K = grid.K();
  DiskField out(h.grid_ptr());
  for (int k : h.active_modes()) {
    const Eigen::VectorXcd& g = *h.mode(k);
    const int d = h.degree(k);
    if (k <= 0) {
      const int a = -k;
      if (k - 1 >= -K) out.add_mode(k - 1, mat_apply(kc.A(a), g), d);
      out.exterior_mut()[k - 1] += dot(kc.M(a), g);
    } else {
      out.add_mode(k - 1, -mat_apply(kc.U(), g), d + 1);
      if (k == 1) {
        const cd c = dot(kc.I0(), g);
        out.add_mode(0, Eigen::VectorXcd::Constant(grid.m(), c), 0);
        out.exterior_mut()[0] += c;
      }
    }
  }
  out.project_to_degrees();
  return out;
}

DiskField beurling_T(const DiskField& h) {
  require_compact(h, "beurling_T");
  const PolarGrid& grid = h.grid();
  const ModeKernelCache& kc = kernel_cache(grid);
  const int K = grid.K();
  DiskField out(h.grid_ptr());
  for (int k : h.active_modes()) {
    const Eigen::VectorXcd& g = *h.mode(k);
    const int d = h.degree(k);
    if (k <= 0) {
      const int a = -k;
      if (k - 2 >= -K) out.add_mode(k - 2, mat_apply(kc.A(a + 1), mat_apply(kc.D(), g)), d - 1);
      out.exterior_mut()[k - 2] += static_cast<double>(k - 1) * dot(kc.M(a), g);
    } else if (k == 1) {
      out.add_mode(-1, g, d);
    } else {
      out.add_mode(k - 2, -static_cast<double>(k - 1) * mat_apply(kc.U(), g) + times_x(grid, g), d + 1);
    }
  }
  out.project_to_degrees();
  return out;
}

DiskField dbar(const DiskField& f) {
  const PolarGrid& grid = f.grid();
  const ModeKernelCache& kc = kernel_cache(grid);
  const int K = grid.K();
  DiskField out(f.grid_ptr());
  for (int k : f.active_modes()) {
    const Eigen::VectorXcd& g = *f.mode(k);
    const int d = f.degree(k);
    const Eigen::VectorXcd dg = mat_apply(kc.D(), g);
    if (k >= 0) {
      if (k + 1 > K) {
        if (d >= 1 && dg.cwiseAbs().maxCoeff() > 0.0) throw DomainError("dbar: result exceeds mode cutoff");
        continue;
      }
      out.add_mode(k + 1, dg, d - 1);
    } else {
      out.add_mode(k + 1, static_cast<double>(-k) * g + times_x(grid, dg), d);
    }
  }
  out.project_to_degrees();
  return out;
}

DiskField dz(const DiskField& f) {
  const PolarGrid& grid = f.grid();
  const ModeKernelCache& kc = kernel_cache(grid);
  const int K = grid.K();
  DiskField out(f.grid_ptr());
  for (int k : f.active_modes()) {
    const Eigen::VectorXcd& g = *f.mode(k);
    const int d = f.degree(k);
    const Eigen::VectorXcd dg = mat_apply(kc.D(), g);
    if (k >= 1) {
      out.add_mode(k - 1, static_cast<double>(k) * g + times_x(grid, dg), d);
    } else if (k - 1 >= -K) {
      out.add_mode(k - 1, dg, d - 1);
    }
  }
  for (const auto& [q, c] : f.exterior())
    if (q != 0) out.exterior_mut()[q - 1] += static_cast<double>(q) * c;
  out.project_to_degrees();
  return out;
}

double lp_norm(const DiskField& h, double p) {
  if (!(p > 1.0)) throw DomainError("lp_norm: p must exceed 1");
  if (p == 2.0) return h.l2_norm();
  const PolarGrid& grid = h.grid();
  const int K = grid.K();
  const int L = 4 * K + 9;
  const std::vector<int> modes = h.active_modes();
  std::vector<cd> tw(static_cast<size_t>(L));

  // Interior: Gauss in r, uniform in theta.
  const RadialRule rr = gauss_radial_rule(2 * grid.m());
  double interior = 0.0;
  for (size_t i = 0; i < rr.nodes.size(); ++i) {
    const double r = rr.nodes[i];
    const Eigen::RowVectorXcd row = grid.lagrange_row(r * r).cast<cd>();
    std::vector<std::pair<int, cd>> vals;
    for (int k : modes) vals.emplace_back(k, std::pow(r, std::abs(k)) * (row * *h.mode(k))(0));
    double ring = 0.0;
    for (int j = 0; j < L; ++j) {
      const double t = 2.0 * std::numbers::pi * j / L;
      cd acc(0.0);
      for (const auto& [k, v] : vals) acc += v * std::polar(1.0, k * t);
      ring += std::pow(std::abs(acc), p);
    }
    interior += rr.weights[i] * r * ring / L;
  }

  // Exterior: rho = 1/u maps |z| > 1 to u in (0, 1), dA -> u^{-3} du dtheta.
  double exterior = 0.0;
  bool any = false;
  for (const auto& [q, c] : h.exterior()) {
    if (c == cd(0.0)) continue;
    any = true;
    if (q >= 0) return std::numeric_limits<double>::infinity();
    if (q == -1 && p <= 2.0) return std::numeric_limits<double>::infinity();
  }
  if (any) {
    const RadialRule ur = gauss_radial_rule(4 * grid.m());
    for (size_t i = 0; i < ur.nodes.size(); ++i) {
      const double u = ur.nodes[i];
      double ring = 0.0;
      for (int j = 0; j < L; ++j) {
        const double t = 2.0 * std::numbers::pi * j / L;
        cd acc(0.0);
        for (const auto& [q, c] : h.exterior()) acc += c * std::pow(u, -q) * std::polar(1.0, q * t);
        ring += std::pow(std::abs(acc), p);
      }
      exterior += ur.weights[i] * ring / L / (u * u * u);
    }
  }
  return std::pow(interior + exterior, 1.0 / p);
}

}  // namespace wpg
