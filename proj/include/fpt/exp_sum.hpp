#pragma once

#include <string>
#include <vector>

namespace fpt {

/// coefficient * t^power * exp(-rate * t)
struct ExpTerm {
  double coefficient = 0.0;
  double rate = 0.0;
  int power = 0;
};

/// Finite exponential polynomial f(t) = sum_i c_i t^{p_i} exp(-g_i t).
///
/// Every survival function of the Marshall-Olkin style jump models is of
/// this form, which makes derivatives, convolutions with exponential kernels
/// and discounted integrals exact.
class ExpSum {
 public:
  ExpSum() = default;
  explicit ExpSum(std::vector<ExpTerm> terms);

  /// Single term c exp(-rate t).
  static ExpSum exponential(double coefficient, double rate);

  /// Two rates closer than this (relative) are treated as equal, and the
  /// confluent limit t^(p+1)/(p+1) is used instead of partial fractions.
  static constexpr double kConfluentGap = 1e-12;

  const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  double operator()(double t) const;

  ExpSum& operator+=(const ExpSum& other);
  ExpSum& operator-=(const ExpSum& other);
  ExpSum& operator*=(double scale);
  friend ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
  friend ExpSum operator-(ExpSum a, const ExpSum& b) { return a -= b; }
  friend ExpSum operator*(ExpSum a, double s) { return a *= s; }
  friend ExpSum operator*(double s, ExpSum a) { return a *= s; }

  /// df/dt.
  ExpSum derivative() const;

  /// g(t) = int_0^t exp(-kernel_rate (t - tau)) f(tau) dtau.
  ExpSum convolve_exponential(double kernel_rate) const;

  /// int_0^T exp(-discount * t) f(t) dt.
  double discounted_integral(double discount, double T) const;

  /// Merge terms sharing (rate, power) and drop exact zeros.
  ExpSum& simplify();

  std::string to_string() const;

 private:
  std::vector<ExpTerm> terms_;
};

/// Time-ordered nested integral over 0 < tau_1 < ... < tau_n < t of
///   exp(-r_n tau_1) exp(-r_{n-1} (tau_2 - tau_1)) ... exp(-r_0 (t - tau_n)),
/// given rates ordered from the last segment (r_0, ending at t) back to the
/// first (r_n, starting at 0). A single rate gives exp(-r_0 t).
ExpSum ordered_exponential_integral(const std::vector<double>& rates_last_first);

}  // namespace fpt
