#include "wpg/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gsl/gsl_integration.h>

#include "wpg/disk_field.hpp"
#include "wpg/errors.hpp"

namespace wpg {

namespace {

// P_n(t) and P_n'(t) by the three-term recurrence.
void legendre(int n, long double t, long double& p, long double& dp) {
  long double p0 = 1.0L, p1 = t;
  if (n == 0) { p = 1.0L; dp = 0.0L; return; }
  for (int k = 2; k <= n; ++k) {
    const long double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (t * p1 - p0) / (t * t - 1.0L);
}

}  // namespace

RadialRule gauss_radial_rule(int m) {
  if (m < 1) throw DomainError("gauss_radial_rule: order must be >= 1");
  // GSL supplies the nodes; its non-tabulated orders are only good to ~1e-11,
  // so each node is polished by Newton steps on P_m in extended precision.
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(static_cast<size_t>(m));
  if (!table) throw std::runtime_error("gauss_radial_rule: allocation failed");
  std::vector<std::pair<double, double>> pts(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    double xi = 0.0, wi = 0.0;
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<size_t>(i), &xi, &wi, table);
    long double t = xi, p = 0.0L, dp = 0.0L;
    for (int it = 0; it < 3; ++it) {
      legendre(m, t, p, dp);
      t -= p / dp;
    }
    legendre(m, t, p, dp);
    const long double w = 2.0L / ((1.0L - t * t) * dp * dp);
    pts[static_cast<size_t>(i)] = {static_cast<double>(0.5L * (t + 1.0L)), static_cast<double>(0.5L * w)};
  }
  gsl_integration_glfixed_table_free(table);
  std::sort(pts.begin(), pts.end());
  RadialRule rule;
  rule.order = m;
  for (const auto& [x, w] : pts) {
    rule.nodes.push_back(x);
    rule.weights.push_back(w);
  }
  return rule;
}

PolarGrid::PolarGrid(int m, int K) : m_(m), K_(K), angular_count_(2 * K + 1) {
  if (m < 2) throw DomainError("PolarGrid: radial order must be >= 2");
  if (K < 0) throw DomainError("PolarGrid: mode cutoff must be >= 0");
  x_rule_ = gauss_radial_rule(m);
  r_nodes_.resize(static_cast<size_t>(m));
  bary_.resize(m);
  for (int j = 0; j < m; ++j) {
    const double x = x_rule_.nodes[static_cast<size_t>(j)];
    r_nodes_[static_cast<size_t>(j)] = std::sqrt(x);
    // Barycentric weights for Legendre points: (-1)^j sqrt((1 - xi^2) w_xi).
    const double xi = 2.0 * x - 1.0;
    const double wxi = 2.0 * x_rule_.weights[static_cast<size_t>(j)];
    bary_[j] = ((j % 2) ? -1.0 : 1.0) * std::sqrt((1.0 - xi * xi) * wxi);
  }
  x_pows_.resize(static_cast<size_t>(2 * K + 3));
  for (int e = 0; e <= 2 * K + 2; ++e) {
    Eigen::VectorXd v(m);
    for (int j = 0; j < m; ++j) v[j] = std::pow(x_rule_.nodes[static_cast<size_t>(j)], e);
    x_pows_[static_cast<size_t>(e)] = v;
  }
  legendre_.resize(m, m);
  for (int i = 0; i < m; ++i) {
    const double t = 2.0 * x_rule_.nodes[static_cast<size_t>(i)] - 1.0;
    double p0 = 1.0, p1 = t;
    for (int j = 0; j < m; ++j) {
      double pj;
      if (j == 0) {
        pj = p0;
      } else if (j == 1) {
        pj = p1;
      } else {
        pj = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = pj;
      }
      legendre_(i, j) = std::sqrt(2.0 * j + 1.0) * pj;
    }
  }
  norm_rules_.resize(static_cast<size_t>(K + 1));
  for (int a = 0; a <= K; ++a) {
    const int q = (a + 2 * m - 1) / 2 + 1;
    RadialRule fine = gauss_radial_rule(q);
    WeightedRule& wr = norm_rules_[static_cast<size_t>(a)];
    wr.weights.resize(q);
    for (int i = 0; i < q; ++i)
      wr.weights[i] = fine.weights[static_cast<size_t>(i)] * std::pow(fine.nodes[static_cast<size_t>(i)], a);
    wr.interp = interpolation_matrix(fine.nodes);
  }
}

void PolarGrid::lagrange_row(double y, double* out) const {
  const auto& xs = x_rule_.nodes;
  for (int j = 0; j < m_; ++j) {
    if (y == xs[static_cast<size_t>(j)]) {
      std::fill(out, out + m_, 0.0);
      out[j] = 1.0;
      return;
    }
  }
  double denom = 0.0;
  for (int j = 0; j < m_; ++j) {
    out[j] = bary_[j] / (y - xs[static_cast<size_t>(j)]);
    denom += out[j];
  }
  for (int j = 0; j < m_; ++j) out[j] /= denom;
}

Eigen::RowVectorXd PolarGrid::lagrange_row(double y) const {
  Eigen::RowVectorXd row(m_);
  lagrange_row(y, row.data());
  return row;
}

Eigen::MatrixXd PolarGrid::interpolation_matrix(const std::vector<double>& y) const {
  Eigen::MatrixXd mat(static_cast<Eigen::Index>(y.size()), m_);
  Eigen::RowVectorXd row(m_);
  for (size_t i = 0; i < y.size(); ++i) {
    lagrange_row(y[i], row.data());
    mat.row(static_cast<Eigen::Index>(i)) = row;
  }
  return mat;
}

cd PolarGrid::interpolate(const Eigen::VectorXcd& g, double y) const {
  return lagrange_row(y).cast<cd>() * g;
}

const PolarGrid::WeightedRule& PolarGrid::norm_rule(int a) const {
  if (a < 0 || a > K_) throw DomainError("PolarGrid::norm_rule: exponent outside [0, K]");
  return norm_rules_[static_cast<size_t>(a)];
}

Eigen::VectorXcd PolarGrid::project(const Eigen::VectorXcd& g, int degree) const {
  if (degree >= m_ - 1) return g;
  if (degree < 0) return Eigen::VectorXcd::Zero(m_);
  const auto V = legendre_.leftCols(degree + 1);
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(x_rule_.weights.data(), m_);
  const Eigen::VectorXd re = V * (V.transpose() * w.cwiseProduct(g.real()));
  const Eigen::VectorXd im = V * (V.transpose() * w.cwiseProduct(g.imag()));
  Eigen::VectorXcd out(m_);
  for (int i = 0; i < m_; ++i) out[i] = cd(re[i], im[i]);
  return out;
}

const Eigen::VectorXd& PolarGrid::x_pow(int e) const {
  if (e < 0 || e > 2 * K_ + 2) throw DomainError("PolarGrid::x_pow: exponent out of range");
  return x_pows_[static_cast<size_t>(e)];
}

GridPtr make_grid(int m, int K) { return std::make_shared<const PolarGrid>(m, K); }

AngularModes angular_analyze(const std::vector<cd>& samples, int K) {
  const int L = static_cast<int>(samples.size());
  if (K < 0 || L < 2 * K + 1) throw DomainError("angular_analyze: need at least 2K+1 samples");
  AngularModes out;
  out.K = K;
  out.coeffs.assign(static_cast<size_t>(2 * K + 1), cd(0.0));
  double total = 0.0, top = 0.0;
  for (int k = -K; k <= K; ++k) {
    cd acc(0.0);
    for (int j = 0; j < L; ++j) {
      // Reduce k*j mod L before forming the angle to keep twiddles exact-ish.
      const long long kj = (static_cast<long long>(k) * j) % L;
      acc += samples[static_cast<size_t>(j)] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(kj) / L);
    }
    acc /= static_cast<double>(L);
    out.coeffs[static_cast<size_t>(k + K)] = acc;
    total += std::norm(acc);
    if (std::abs(k) == K) top += std::norm(acc);
  }
  out.top_mode_fraction = total > 0.0 ? top / total : 0.0;
  return out;
}

std::vector<cd> angular_synthesize(const AngularModes& modes, int L) {
  if (L < 2 * modes.K + 1) throw DomainError("angular_synthesize: need at least 2K+1 samples");
  std::vector<cd> out(static_cast<size_t>(L), cd(0.0));
  for (int j = 0; j < L; ++j) {
    cd acc(0.0);
    for (int k = -modes.K; k <= modes.K; ++k) {
      const long long kj = (static_cast<long long>(k) * j) % L;
      acc += modes.at(k) * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(kj) / L);
    }
    out[static_cast<size_t>(j)] = acc;
  }
  return out;
}

namespace {

cd mode0_integral(const PolarGrid& grid, const Eigen::VectorXcd& g0, const RadialRule& rule,
                  const Eigen::MatrixXd* interp, const std::function<double(double)>& w) {
  cd acc(0.0);
  const size_t n = rule.nodes.size();
  Eigen::VectorXcd vals = interp ? Eigen::VectorXcd(interp->cast<cd>() * g0) : g0;
  for (size_t i = 0; i < n; ++i)
    acc += rule.weights[i] * vals[static_cast<Eigen::Index>(i)] * w(std::sqrt(rule.nodes[i]));
  (void)grid;
  return 0.5 * acc;
}

}  // namespace

DiskIntegral disk_integral_checked(const DiskField& f, const std::function<double(double)>& radial_weight) {
  DiskIntegral out;
  const Eigen::VectorXcd* g0 = f.mode(0);
  if (!g0) return out;
  const PolarGrid& grid = f.grid();
  const cd coarse = mode0_integral(grid, *g0, grid.x_rule(), nullptr, radial_weight);
  const RadialRule fine = gauss_radial_rule(2 * grid.m());
  const Eigen::MatrixXd interp = grid.interpolation_matrix(fine.nodes);
  out.value = mode0_integral(grid, *g0, fine, &interp, radial_weight);
  out.truncation_gap = std::abs(out.value - coarse);
  out.truncation_warning = out.truncation_gap > 1e-10 * std::max(1.0, std::abs(out.value));
  return out;
}

cd disk_integral(const DiskField& f, const std::function<double(double)>& radial_weight) {
  return disk_integral_checked(f, radial_weight).value;
}

}  // namespace wpg
