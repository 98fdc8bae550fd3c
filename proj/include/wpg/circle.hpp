#ifndef WPG_CIRCLE_HPP
#define WPG_CIRCLE_HPP

#include <complex>
#include <map>
#include <vector>

namespace wpg {

using cd = std::complex<double>;

// Truncated two-sided Fourier series sum_n c_n e^{in theta}, |n| <= truncation.
class FourierCoefficients {
 public:
  FourierCoefficients() = default;
  explicit FourierCoefficients(int truncation) : truncation_(truncation) {}

  int truncation() const { return truncation_; }
  const std::map<int, cd>& coeffs() const { return coeffs_; }
  cd at(int n) const;
  // Throws DomainError when |n| exceeds the truncation.
  void set(int n, cd value);
  void add(int n, cd value);

  cd eval(double theta) const;
  std::vector<cd> sample(int L) const;

  FourierCoefficients& operator+=(const FourierCoefficients& o);
  friend FourierCoefficients operator+(FourierCoefficients a, const FourierCoefficients& b) { return a += b; }

 private:
  int truncation_ = 0;
  std::map<int, cd> coeffs_;
};

// Tail {a_n}_{n>=2}: psi(zbar) = sum a_n zbar^{n-2} inside the disk,
// psi(z) = sum a_n z^{-(n-2)} outside.
class PsiCoefficients {
 public:
  PsiCoefficients() = default;
  explicit PsiCoefficients(int truncation) : truncation_(truncation) {}

  int truncation() const { return truncation_; }
  const std::map<int, cd>& tail() const { return tail_; }
  cd at(int n) const;
  // Throws DomainError for n < 2 or n > truncation.
  void set(int n, cd value);

  // Boundary function on the circle, psi(e^{i theta}) = sum a_n e^{-i(n-2) theta}.
  FourierCoefficients on_circle() const;

  PsiCoefficients scaled(cd s) const;
  friend PsiCoefficients operator-(const PsiCoefficients& a, const PsiCoefficients& b);
  friend PsiCoefficients operator+(const PsiCoefficients& a, const PsiCoefficients& b);

 private:
  int truncation_ = 0;
  std::map<int, cd> tail_;
};

enum class WeightKind { power, wp };

// power: sqrt(sum |n|^{2 alpha} |c_n|^2).
// wp: alpha = 3/2 uses n(n^2-1), alpha = -3/2 its reciprocal, modes |n| >= 2 only.
double sobolev_norm(const FourierCoefficients& f, double alpha, WeightKind kind);
// Same norms on the tail sequence indexed by n >= 2.
double sobolev_norm(const PsiCoefficients& f, double alpha, WeightKind kind);

// sqrt(sum n(n^2-1)|a_n|^2 / 12).
double wp_tangent_norm(const PsiCoefficients& f);

cd l2_pairing(const FourierCoefficients& f, const FourierCoefficients& g);
cd l2_pairing(const PsiCoefficients& f, const PsiCoefficients& g);

FourierCoefficients project_plus(const FourierCoefficients& f);
FourierCoefficients project_minus(const FourierCoefficients& f);

// Closed form 6/(1-r^2)^4 of sum_{n>=2} n(n^2-1) r^{2n-4}.
double bergman_weight_sum(double r);
double bergman_weight_partial(double r, int n_max);

}  // namespace wpg

#endif
