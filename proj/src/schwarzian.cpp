#include "wpg/schwarzian.hpp"

#include <algorithm>
#include <sstream>

#include "wpg/errors.hpp"

namespace wpg {

PowerSeries::PowerSeries(std::vector<cd> coeffs, int order) : c_(std::move(coeffs)), order_(order) {
  c_.resize(static_cast<size_t>(order_ + 1), cd(0.0));
}

PowerSeries PowerSeries::identity(int order) {
  std::vector<cd> c(static_cast<size_t>(order + 1), cd(0.0));
  if (order >= 1) c[1] = 1.0;
  return PowerSeries(c, order);
}

PowerSeries PowerSeries::mobius(cd a, cd b, cd c, cd d, int order) {
  if (d == cd(0.0)) throw SingularityError("mobius: pole at the expansion point");
  // (a u + b) * (1/d) * sum (-c u / d)^j
  std::vector<cd> out(static_cast<size_t>(order + 1), cd(0.0));
  cd geo = 1.0 / d;
  for (int j = 0; j <= order; ++j) {
    out[static_cast<size_t>(j)] += b * geo;
    if (j + 1 <= order) out[static_cast<size_t>(j + 1)] += a * geo;
    geo *= -c / d;
  }
  return PowerSeries(out, order);
}

cd PowerSeries::eval(cd u) const {
  cd acc(0.0);
  for (int j = order_; j >= 0; --j) acc = acc * u + c_[static_cast<size_t>(j)];
  return acc;
}

PowerSeries PowerSeries::derivative() const {
  if (order_ == 0) return PowerSeries({cd(0.0)}, 0);
  std::vector<cd> d(static_cast<size_t>(order_));
  for (int j = 1; j <= order_; ++j) d[static_cast<size_t>(j - 1)] = static_cast<double>(j) * c_[static_cast<size_t>(j)];
  return PowerSeries(d, order_ - 1);
}

PowerSeries PowerSeries::reciprocal() const {
  if (c_[0] == cd(0.0)) throw SingularityError("reciprocal: series vanishes at 0");
  std::vector<cd> q(static_cast<size_t>(order_ + 1), cd(0.0));
  q[0] = 1.0 / c_[0];
  for (int j = 1; j <= order_; ++j) {
    cd acc(0.0);
    for (int i = 1; i <= j; ++i) acc += c_[static_cast<size_t>(i)] * q[static_cast<size_t>(j - i)];
    q[static_cast<size_t>(j)] = -acc / c_[0];
  }
  return PowerSeries(q, order_);
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  const int o = std::min(a.order_, b.order_);
  std::vector<cd> c(static_cast<size_t>(o + 1));
  for (int j = 0; j <= o; ++j) c[static_cast<size_t>(j)] = a[j] + b[j];
  return PowerSeries(c, o);
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + cd(-1.0) * b; }

PowerSeries operator*(cd s, const PowerSeries& a) {
  PowerSeries out = a;
  for (auto& v : out.c_) v *= s;
  return out;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  const int o = std::min(a.order_, b.order_);
  std::vector<cd> c(static_cast<size_t>(o + 1), cd(0.0));
  for (int i = 0; i <= o; ++i) {
    if (a[i] == cd(0.0)) continue;
    for (int j = 0; i + j <= o; ++j) c[static_cast<size_t>(i + j)] += a[i] * b[j];
  }
  return PowerSeries(c, o);
}

PowerSeries PowerSeries::compose(const PowerSeries& g) const {
  if (g[0] != cd(0.0)) throw DomainError("compose: inner series must vanish at 0");
  const int o = std::min(order_, g.order_);
  PowerSeries acc({c_[static_cast<size_t>(order_)]}, o);
  for (int j = order_ - 1; j >= 0; --j) {
    acc = acc * g;
    acc.c_[0] += c_[static_cast<size_t>(j)];
  }
  return acc;
}

PowerSeries PowerSeries::shifted(cd z0) const {
  std::vector<cd> out(static_cast<size_t>(order_ + 1), cd(0.0));
  // Repeated synthetic division (Taylor shift).
  std::vector<cd> w = c_;
  for (int i = 0; i <= order_; ++i) {
    for (int j = order_ - 1; j >= i; --j) w[static_cast<size_t>(j)] += z0 * w[static_cast<size_t>(j + 1)];
    out[static_cast<size_t>(i)] = w[static_cast<size_t>(i)];
  }
  return PowerSeries(out, order_);
}

PowerSeries schwarzian(const PowerSeries& f) {
  if (f.order() < 3) throw DomainError("schwarzian: need order >= 3");
  const PowerSeries d1 = f.derivative();
  if (d1[0] == cd(0.0)) throw SingularityError("schwarzian: f' vanishes at the expansion point");
  const PowerSeries d2 = d1.derivative();
  const PowerSeries d3 = d2.derivative();
  const PowerSeries q = d1.reciprocal();
  const PowerSeries a = d2 * q;
  return d3 * q - cd(1.5) * (a * a);
}

cd schwarzian_at(const PowerSeries& f, cd z0) {
  const PowerSeries g = f.shifted(z0);
  if (g.derivative()[0] == cd(0.0)) {
    std::ostringstream os;
    os << "schwarzian: f' vanishes at z = " << z0;
    throw SingularityError(os.str());
  }
  return schwarzian(g)[0];
}

SchwarzianCoeffs exterior_schwarzian(cd a, const std::vector<cd>& laurent, int k_max) {
  if (a == cd(0.0)) throw SingularityError("exterior_schwarzian: leading coefficient is 0");
  // h(w) = 1/Phi(1/w) = w / (a + c_0 w + c_1 w^2 + ...), S[h](w) = sum b_k w^{k-4}.
  const int order = std::max(k_max - 1, 3);
  std::vector<cd> den(static_cast<size_t>(order + 1), cd(0.0));
  den[0] = a;
  for (size_t j = 0; j < laurent.size() && static_cast<int>(j) + 1 <= order; ++j) den[j + 1] = laurent[j];
  const PowerSeries h = PowerSeries::identity(order) * PowerSeries(den, order).reciprocal();
  const PowerSeries s = schwarzian(h);
  SchwarzianCoeffs out;
  for (int k = 4; k <= k_max && k - 4 <= s.order(); ++k)
    if (s[k - 4] != cd(0.0)) out.b[k] = s[k - 4];
  return out;
}

BeltramiCoefficient ahlfors_weill_mu(const SchwarzianCoeffs& s, GridPtr grid) {
  int top = 2;
  for (const auto& [k, v] : s.b) top = std::max(top, k - 2);
  PsiCoefficients psi(top);
  for (const auto& [k, v] : s.b) {
    if (k < 4) throw DomainError("ahlfors_weill_mu: coefficients start at k = 4");
    psi.set(k - 2, -0.5 * v);
  }
  return mu_from_psi(psi, std::move(grid));
}

}  // namespace wpg
