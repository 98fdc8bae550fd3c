#ifndef WPG_SCHWARZIAN_HPP
#define WPG_SCHWARZIAN_HPP

#include <complex>
#include <map>
#include <vector>

#include "wpg/disk_field.hpp"

namespace wpg {

// Truncated power series sum_{j<=order} c_j u^j; arithmetic keeps the order
// of the least precise operand.
class PowerSeries {
 public:
  PowerSeries() = default;
  PowerSeries(std::vector<cd> coeffs, int order);
  static PowerSeries identity(int order);
  // (a u + b) / (c u + d) expanded at 0; requires d != 0.
  static PowerSeries mobius(cd a, cd b, cd c, cd d, int order);

  int order() const { return order_; }
  cd operator[](int j) const { return j <= order_ && j < static_cast<int>(c_.size()) ? c_[static_cast<size_t>(j)] : cd(0.0); }
  cd eval(cd u) const;

  PowerSeries derivative() const;
  PowerSeries reciprocal() const;  // requires c_0 != 0
  // f(g(u)) with g(0) = 0.
  PowerSeries compose(const PowerSeries& g) const;
  // Re-expansion f(z0 + u) of the polynomial part.
  PowerSeries shifted(cd z0) const;

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(cd s, const PowerSeries& a);

 private:
  std::vector<cd> c_;
  int order_ = 0;
};

// S(f) = f'''/f' - (3/2)(f''/f')^2; result order is order(f) - 3.
// Throws SingularityError if f'(0) = 0.
PowerSeries schwarzian(const PowerSeries& f);
// S(f)(z0) through re-expansion at z0.
cd schwarzian_at(const PowerSeries& f, cd z0);

// S[Phi](z) = sum_{k>=4} b_k z^{-k} on the exterior disk.
struct SchwarzianCoeffs {
  std::map<int, cd> b;
};

// Phi(z) = a z + c_0 + c_1/z + c_2/z^2 + ... (laurent[j] = c_j); coefficients
// b_k for 4 <= k <= k_max.
SchwarzianCoeffs exterior_schwarzian(cd a, const std::vector<cd>& laurent, int k_max);

// mu(z) = -(1/2)(1-|z|^2)^2 sum b_k zbar^{k-4} inside, 0 outside.
BeltramiCoefficient ahlfors_weill_mu(const SchwarzianCoeffs& s, GridPtr grid);

}  // namespace wpg

#endif
