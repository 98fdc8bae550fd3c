#include "wpg/circle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wpg/errors.hpp"

namespace wpg {

cd FourierCoefficients::at(int n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? cd(0.0) : it->second;
}

void FourierCoefficients::set(int n, cd value) {
  if (std::abs(n) > truncation_)
    throw DomainError("FourierCoefficients: mode " + std::to_string(n) + " exceeds truncation");
  coeffs_[n] = value;
}

void FourierCoefficients::add(int n, cd value) { set(n, at(n) + value); }

cd FourierCoefficients::eval(double theta) const {
  cd acc(0.0);
  for (const auto& [n, c] : coeffs_) acc += c * std::polar(1.0, n * theta);
  return acc;
}

std::vector<cd> FourierCoefficients::sample(int L) const {
  std::vector<cd> out(static_cast<size_t>(L));
  for (int j = 0; j < L; ++j) out[static_cast<size_t>(j)] = eval(2.0 * std::numbers::pi * j / L);
  return out;
}

FourierCoefficients& FourierCoefficients::operator+=(const FourierCoefficients& o) {
  truncation_ = std::max(truncation_, o.truncation_);
  for (const auto& [n, c] : o.coeffs_) coeffs_[n] += c;
  return *this;
}

cd PsiCoefficients::at(int n) const {
  auto it = tail_.find(n);
  return it == tail_.end() ? cd(0.0) : it->second;
}

void PsiCoefficients::set(int n, cd value) {
  if (n < 2 || n > truncation_)
    throw DomainError("PsiCoefficients: index " + std::to_string(n) + " outside [2, truncation]");
  tail_[n] = value;
}

FourierCoefficients PsiCoefficients::on_circle() const {
  FourierCoefficients f(std::max(0, truncation_ - 2));
  for (const auto& [n, a] : tail_) f.set(-(n - 2), a);
  return f;
}

PsiCoefficients PsiCoefficients::scaled(cd s) const {
  PsiCoefficients out(truncation_);
  for (const auto& [n, a] : tail_) out.tail_[n] = s * a;
  return out;
}

PsiCoefficients operator+(const PsiCoefficients& a, const PsiCoefficients& b) {
  PsiCoefficients out(std::max(a.truncation_, b.truncation_));
  out.tail_ = a.tail_;
  for (const auto& [n, c] : b.tail_) out.tail_[n] += c;
  return out;
}

PsiCoefficients operator-(const PsiCoefficients& a, const PsiCoefficients& b) { return a + b.scaled(-1.0); }

namespace {

double wp_weight(int n, double alpha) {
  const double w = static_cast<double>(n) * (static_cast<double>(n) * n - 1.0);
  return alpha > 0 ? w : 1.0 / w;
}

void check_wp_alpha(double alpha) {
  if (alpha != 1.5 && alpha != -1.5) throw DomainError("sobolev_norm: wp weights exist only for alpha = +-3/2");
}

}  // namespace

double sobolev_norm(const FourierCoefficients& f, double alpha, WeightKind kind) {
  double acc = 0.0;
  if (kind == WeightKind::wp) check_wp_alpha(alpha);
  for (const auto& [n, c] : f.coeffs()) {
    if (c == cd(0.0)) continue;
    const int an = std::abs(n);
    if (kind == WeightKind::wp) {
      if (an < 2) throw DomainError("sobolev_norm: wp weight undefined on modes 0, +-1");
      acc += wp_weight(an, alpha) * std::norm(c);
    } else {
      if (an == 0) {
        if (alpha < 0) throw DomainError("sobolev_norm: negative power weight at mode 0");
        if (alpha == 0) acc += std::norm(c);
        continue;
      }
      acc += std::pow(static_cast<double>(an), 2.0 * alpha) * std::norm(c);
    }
  }
  return std::sqrt(acc);
}

double sobolev_norm(const PsiCoefficients& f, double alpha, WeightKind kind) {
  double acc = 0.0;
  if (kind == WeightKind::wp) check_wp_alpha(alpha);
  for (const auto& [n, a] : f.tail()) {
    const double w = kind == WeightKind::wp ? wp_weight(n, alpha) : std::pow(static_cast<double>(n), 2.0 * alpha);
    acc += w * std::norm(a);
  }
  return std::sqrt(acc);
}

double wp_tangent_norm(const PsiCoefficients& f) {
  double acc = 0.0;
  for (const auto& [n, a] : f.tail()) acc += static_cast<double>(n) * (static_cast<double>(n) * n - 1.0) * std::norm(a) / 12.0;
  return std::sqrt(acc);
}

cd l2_pairing(const FourierCoefficients& f, const FourierCoefficients& g) {
  cd acc(0.0);
  for (const auto& [n, c] : f.coeffs()) acc += c * std::conj(g.at(n));
  return acc;
}

cd l2_pairing(const PsiCoefficients& f, const PsiCoefficients& g) {
  cd acc(0.0);
  for (const auto& [n, a] : f.tail()) acc += a * std::conj(g.at(n));
  return acc;
}

FourierCoefficients project_plus(const FourierCoefficients& f) {
  FourierCoefficients out(f.truncation());
  for (const auto& [n, c] : f.coeffs())
    if (n >= 0) out.set(n, c);
  return out;
}

FourierCoefficients project_minus(const FourierCoefficients& f) {
  FourierCoefficients out(f.truncation());
  for (const auto& [n, c] : f.coeffs())
    if (n <= -1) out.set(n, c);
  return out;
}

double bergman_weight_sum(double r) {
  if (r < 0.0 || r >= 1.0) throw DomainError("bergman_weight_sum: r must lie in [0, 1)");
  const double s = 1.0 - r * r;
  return 6.0 / (s * s * s * s);
}

double bergman_weight_partial(double r, int n_max) {
  const double x = r * r;
  double acc = 0.0, p = 1.0;
  for (int n = 2; n <= n_max; ++n) {
    acc += static_cast<double>(n) * (static_cast<double>(n) * n - 1.0) * p;
    p *= x;
  }
  return acc;
}

}  // namespace wpg
