#include "wpg/disk_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wpg/errors.hpp"

namespace wpg {

DiskField::DiskField(GridPtr grid) : grid_(std::move(grid)) {
  modes_.resize(static_cast<size_t>(2 * grid_->K() + 1));
  deg_.assign(modes_.size(), -1);
}

DiskField DiskField::disk_monomial(GridPtr grid, int p, int q, cd c) {
  if (p < 0 || q < 0) throw DomainError("disk_monomial: exponents must be >= 0");
  DiskField f(std::move(grid));
  const int k = p - q;
  if (!f.in_range(k)) throw DomainError("disk_monomial: mode outside cutoff");
  f.set_mode(k, c * f.grid().x_pow(std::min(p, q)).cast<cd>(), std::min(p, q));
  return f;
}

DiskField DiskField::entire_monomial(GridPtr grid, int n, cd c) {
  if (n < 0) throw DomainError("entire_monomial: exponent must be >= 0");
  DiskField f = disk_monomial(std::move(grid), n, 0, c);
  f.exterior_[n] = c;
  return f;
}

const Eigen::VectorXcd* DiskField::mode(int k) const {
  if (!in_range(k)) return nullptr;
  const auto& v = modes_[static_cast<size_t>(k + K())];
  return v.size() == 0 ? nullptr : &v;
}

Eigen::VectorXcd& DiskField::mode_mut(int k) {
  if (!in_range(k)) throw DomainError("DiskField: mode " + std::to_string(k) + " outside cutoff");
  auto& v = modes_[static_cast<size_t>(k + K())];
  if (v.size() == 0) v = Eigen::VectorXcd::Zero(grid_->m());
  deg_[static_cast<size_t>(k + K())] = grid_->m() - 1;
  return v;
}

int DiskField::degree(int k) const { return mode(k) ? deg_[static_cast<size_t>(k + K())] : -1; }

void DiskField::set_mode(int k, const Eigen::VectorXcd& g, int degree) {
  if (!in_range(k)) throw DomainError("DiskField: mode " + std::to_string(k) + " outside cutoff");
  const size_t i = static_cast<size_t>(k + K());
  if (degree < 0) {
    modes_[i] = Eigen::VectorXcd();
    deg_[i] = -1;
    return;
  }
  modes_[i] = g;
  deg_[i] = std::min(degree, grid_->m() - 1);
}

void DiskField::add_mode(int k, const Eigen::VectorXcd& g, int degree) {
  if (degree < 0) return;
  if (!in_range(k)) throw DomainError("DiskField: mode " + std::to_string(k) + " outside cutoff");
  const size_t i = static_cast<size_t>(k + K());
  if (modes_[i].size() == 0) {
    modes_[i] = g;
    deg_[i] = std::min(degree, grid_->m() - 1);
  } else {
    modes_[i] += g;
    deg_[i] = std::max(deg_[i], std::min(degree, grid_->m() - 1));
  }
}

void DiskField::project_to_degrees() {
  for (size_t i = 0; i < modes_.size(); ++i)
    if (modes_[i].size() && deg_[i] < grid_->m() - 1) modes_[i] = grid_->project(modes_[i], deg_[i]);
}

std::vector<int> DiskField::active_modes() const {
  std::vector<int> out;
  for (int k = -K(); k <= K(); ++k)
    if (mode(k)) out.push_back(k);
  return out;
}

cd DiskField::eval_interior(cd z) const {
  const double r = std::abs(z);
  const double x = r * r;
  const double theta = std::arg(z);
  Eigen::RowVectorXcd row = grid_->lagrange_row(x).cast<cd>();
  cd acc(0.0);
  for (int k = -K(); k <= K(); ++k) {
    const Eigen::VectorXcd* g = mode(k);
    if (!g) continue;
    acc += std::pow(r, std::abs(k)) * (row * *g)(0) * std::polar(1.0, k * theta);
  }
  return acc;
}

cd DiskField::eval_exterior(cd z) const {
  cd acc(0.0);
  for (const auto& [q, c] : exterior_) acc += c * std::pow(z, q);
  return acc;
}

cd DiskField::eval(cd z) const { return std::abs(z) < 1.0 ? eval_interior(z) : eval_exterior(z); }

DiskField& DiskField::operator+=(const DiskField& o) {
  if (!grid_) *this = DiskField(o.grid_);
  for (int k = -K(); k <= K(); ++k)
    if (const Eigen::VectorXcd* g = o.mode(k)) add_mode(k, *g, o.degree(k));
  for (const auto& [q, c] : o.exterior_) exterior_[q] += c;
  return *this;
}

DiskField& DiskField::operator-=(const DiskField& o) {
  if (!grid_) *this = DiskField(o.grid_);
  for (int k = -K(); k <= K(); ++k)
    if (const Eigen::VectorXcd* g = o.mode(k)) add_mode(k, -*g, o.degree(k));
  for (const auto& [q, c] : o.exterior_) exterior_[q] -= c;
  return *this;
}

DiskField& DiskField::operator*=(cd s) {
  for (auto& v : modes_)
    if (v.size()) v *= s;
  for (auto& [q, c] : exterior_) c *= s;
  return *this;
}

DiskField operator*(const DiskField& a, const DiskField& b) {
  DiskField out(a.grid_);
  const int K = a.K();
  const std::vector<int> ma = a.active_modes(), mb = b.active_modes();
  for (int k1 : ma) {
    const Eigen::VectorXcd& g1 = *a.mode(k1);
    for (int k2 : mb) {
      const int k = k1 + k2;
      if (k < -K) continue;
      if (k > K) throw DomainError("DiskField product: mode " + std::to_string(k) + " exceeds cutoff");
      const int e = (std::abs(k1) + std::abs(k2) - std::abs(k)) / 2;
      out.add_mode(k, (a.grid().x_pow(e).array().cast<cd>() * g1.array() * b.mode(k2)->array()).matrix(),
                   a.degree(k1) + b.degree(k2) + e);
    }
  }
  out.project_to_degrees();
  if (!a.exterior_.empty() && !b.exterior_.empty())
    for (const auto& [q1, c1] : a.exterior_)
      for (const auto& [q2, c2] : b.exterior_) out.exterior_[q1 + q2] += c1 * c2;
  return out;
}

DiskField DiskField::conj() const {
  if (!exterior_.empty()) throw DomainError("DiskField::conj: exterior Laurent series is not conjugable");
  DiskField out(grid_);
  for (int k = -K(); k <= K(); ++k)
    if (const Eigen::VectorXcd* g = mode(k)) out.set_mode(-k, g->conjugate(), degree(k));
  return out;
}

DiskField DiskField::interior_only() const {
  DiskField out = *this;
  out.exterior_.clear();
  return out;
}

double DiskField::l2_norm_interior() const {
  double acc = 0.0;
  for (int k = -K(); k <= K(); ++k) {
    const Eigen::VectorXcd* g = mode(k);
    if (!g) continue;
    const auto& rule = grid_->norm_rule(std::abs(k));
    const Eigen::VectorXcd v = rule.interp.cast<cd>() * *g;
    acc += 0.5 * rule.weights.dot(v.cwiseAbs2());
  }
  return std::sqrt(acc);
}

double DiskField::l2_norm_exterior() const {
  double acc = 0.0;
  for (const auto& [q, c] : exterior_) {
    if (c == cd(0.0)) continue;
    if (q >= -1) return std::numeric_limits<double>::infinity();
    acc += std::norm(c) / (-2.0 * q - 2.0);
  }
  return std::sqrt(acc);
}

double DiskField::l2_norm() const {
  const double a = l2_norm_interior(), b = l2_norm_exterior();
  return std::sqrt(a * a + b * b);
}

FourierCoefficients DiskField::boundary_trace() const {
  FourierCoefficients f(K());
  const Eigen::RowVectorXcd row = grid_->lagrange_row(1.0).cast<cd>();
  for (int k = -K(); k <= K(); ++k)
    if (const Eigen::VectorXcd* g = mode(k)) f.set(k, (row * *g)(0));
  return f;
}

FourierCoefficients DiskField::exterior_trace() const {
  int trunc = K() + 2;
  for (const auto& [q, c] : exterior_) trunc = std::max(trunc, std::abs(q));
  FourierCoefficients f(trunc);
  for (const auto& [q, c] : exterior_) f.set(q, c);
  return f;
}

double DiskField::max_abs_mode(int k) const {
  const Eigen::VectorXcd* g = mode(k);
  return g ? g->cwiseAbs().maxCoeff() : 0.0;
}

cd eval_psi_bar(const PsiCoefficients& psi, cd z) {
  if (std::abs(z) >= 1.0) throw DomainError("eval_psi_bar: |z| must be < 1");
  const cd w = std::conj(z);
  cd acc(0.0);
  const auto& tail = psi.tail();
  if (tail.empty()) return acc;
  for (int n = tail.rbegin()->first; n >= 2; --n) acc = acc * w + psi.at(n);
  return acc;
}

BeltramiCoefficient mu_from_psi(const PsiCoefficients& psi, GridPtr grid) {
  BeltramiCoefficient mu;
  mu.field = DiskField(grid);
  mu.source = psi;
  Eigen::VectorXd weight(grid->m());
  for (int j = 0; j < grid->m(); ++j) {
    const double s = 1.0 - grid->x()[static_cast<size_t>(j)];
    weight[j] = s * s;
  }
  for (const auto& [n, a] : psi.tail()) {
    if (a == cd(0.0)) continue;
    mu.field.set_mode(-(n - 2), a * weight.cast<cd>(), 2);
  }
  mu.sup_norm = weighted_sup(psi);
  return mu;
}

namespace {

// |(1-r^2)^2 psi(r e^{i theta} conj)|; psi(zbar) at zbar = r e^{-i theta}.
double weighted_abs(const PsiCoefficients& psi, const std::vector<cd>& coef, double r, double theta) {
  (void)psi;
  const cd w = std::polar(r, -theta);
  cd acc(0.0);
  for (auto it = coef.rbegin(); it != coef.rend(); ++it) acc = acc * w + *it;
  const double s = 1.0 - r * r;
  return s * s * std::abs(acc);
}

template <class F>
double golden_max(F f, double a, double b, double& arg) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80 && (b - a) > 1e-15; ++it) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - g * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + g * (b - a); fd = f(d);
    }
  }
  double best = std::max(fc, fd);
  arg = fc > fd ? c : d;
  const double fa = f(a), fb = f(b);
  if (fa > best) { best = fa; arg = a; }
  if (fb > best) { best = fb; arg = b; }
  return best;
}

}  // namespace

double weighted_sup(const PsiCoefficients& psi) {
  const auto& tail = psi.tail();
  if (tail.empty()) return 0.0;
  const int deg = tail.rbegin()->first - 2;
  std::vector<cd> coef(static_cast<size_t>(deg + 1), cd(0.0));
  for (const auto& [n, a] : tail) coef[static_cast<size_t>(n - 2)] = a;

  const int R = 200;
  const int L = std::max(64, 8 * deg + 8);
  struct Cand { double v, r, t; };
  std::vector<Cand> cands;
  for (int i = 0; i < R; ++i) {
    const double r = static_cast<double>(i) / R;
    const int Li = i == 0 ? 1 : L;
    for (int j = 0; j < Li; ++j) {
      const double t = 2.0 * std::numbers::pi * j / L;
      cands.push_back({weighted_abs(psi, coef, r, t), r, t});
    }
  }
  std::partial_sort(cands.begin(), cands.begin() + std::min<size_t>(12, cands.size()), cands.end(),
                    [](const Cand& x, const Cand& y) { return x.v > y.v; });
  double best = cands.front().v;
  const double hr = 1.0 / R, ht = 2.0 * std::numbers::pi / L;
  for (size_t c = 0; c < std::min<size_t>(12, cands.size()); ++c) {
    double r = cands[c].r, t = cands[c].t, v = cands[c].v;
    double wr = hr, wt = ht;
    for (int round = 0; round < 60; ++round) {
      double rn = r, tn = t;
      golden_max([&](double rr) { return weighted_abs(psi, coef, rr, t); }, std::max(0.0, r - wr),
                 std::min(1.0, r + wr), rn);
      const double vt = golden_max([&](double tt) { return weighted_abs(psi, coef, rn, tt); }, t - wt, t + wt, tn);
      const double step = std::abs(rn - r) + std::abs(tn - t);
      r = rn;
      t = tn;
      if (vt <= v + 1e-17 && step < 1e-13) { v = std::max(v, vt); break; }
      v = std::max(v, vt);
      wr = std::max(2.0 * std::abs(rn - r) + 1e-9, 0.5 * wr);
      wt = std::max(2.0 * std::abs(tn - t) + 1e-9, 0.5 * wt);
    }
    best = std::max(best, v);
  }
  return best;
}

SupBound sup_bound_check(const PsiCoefficients& psi) {
  return {weighted_sup(psi), std::sqrt(6.0) * sobolev_norm(psi, -1.5, WeightKind::wp)};
}

}  // namespace wpg
