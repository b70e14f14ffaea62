#include "fpt/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace fpt {

void QuadTolerance::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("QuadTolerance: abs_tol must be > 0");
  if (!(rel_tol > 0.0)) throw DomainError("QuadTolerance: rel_tol must be > 0");
  if (max_subdivisions < 1)
    throw DomainError("QuadTolerance: max_subdivisions must be >= 1");
}

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double ln_gamma_lanczos(double x) {
  x -= 1.0;
  double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i)
    series += kLanczos[i] / (x + static_cast<double>(i));
  const double t = x + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t +
         std::log(series);
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be > 0");
  // Integer arguments: log of the factorial, exact products up to 22!.
  if (x == std::floor(x) && x <= 171.0) {
    double log_fact = 0.0;
    double prod = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) {
      prod *= k;
      if (prod > 1e280) {
        log_fact += std::log(prod);
        prod = 1.0;
      }
    }
    return log_fact + std::log(prod);
  }
  if (x < 0.5) {
    // Reflection keeps Lanczos on its accurate half-plane.
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
           ln_gamma_lanczos(1.0 - x);
  }
  return ln_gamma_lanczos(x);
}

double ln_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw DomainError("beta: arguments must be > 0");
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  return ln_gamma(lo) + ln_gamma(hi) - ln_gamma(lo + hi);
}

double beta(double a, double b) { return std::exp(ln_beta(a, b)); }

double log_kummer_positive(double a, double b, double x) {
  if (!(a >= 0.0) || !(b > 0.0) || !(x >= 0.0))
    throw DomainError("log_kummer_positive: require a >= 0, b > 0, x >= 0");
  if (a == 0.0 || x == 0.0) return 0.0;

  auto ratio = [&](double n) { return (a + n) * x / ((b + n) * (n + 1.0)); };

  // Index of the largest term: first n with ratio(n) <= 1.
  const double lin = b + 1.0 - x;
  const double disc = lin * lin - 4.0 * (b - a * x);
  double peak = 0.0;
  if (disc >= 0.0) {
    const double root = 0.5 * (-lin + std::sqrt(disc));
    if (root > 0.0) peak = std::ceil(root);
  }
  while (peak > 0.0 && ratio(peak - 1.0) <= 1.0) peak -= 1.0;
  while (ratio(peak) > 1.0) peak += 1.0;

  constexpr long kBudget = 20'000'000;
  if (peak > static_cast<double>(kBudget))
    throw ConvergenceError("kummer_1f1: series peak beyond iteration budget");

  double log_peak = 0.0;
  if (peak <= 1e5) {
    CompensatedSum acc;
    for (double n = 0.0; n < peak; n += 1.0) acc += std::log(ratio(n));
    log_peak = acc.value();
  } else {
    log_peak = ln_gamma(a + peak) - ln_gamma(a) - ln_gamma(b + peak) +
               ln_gamma(b) + peak * std::log(x) - ln_gamma(peak + 1.0);
  }

  constexpr double kEps = 1e-18;
  CompensatedSum sum;
  sum += 1.0;
  long iterations = 0;
  double term = 1.0;
  for (double n = peak;; n += 1.0) {
    term *= ratio(n);
    sum += term;
    if (term < kEps * sum.value()) break;
    if (++iterations > kBudget)
      throw ConvergenceError("kummer_1f1: forward series did not converge");
  }
  term = 1.0;
  for (double n = peak; n > 0.0; n -= 1.0) {
    term /= ratio(n - 1.0);
    sum += term;
    if (term < kEps * sum.value()) break;
    if (++iterations > kBudget)
      throw ConvergenceError("kummer_1f1: backward series did not converge");
  }
  return log_peak + std::log(sum.value());
}

double kummer_1f1(double p, double q, double z) {
  if (!(q > 0.0)) throw DomainError("kummer_1f1: q must be > 0");
  if (z == 0.0) return 1.0;
  if (z < 0.0) {
    if (!(q - p >= 0.0))
      throw DomainError("kummer_1f1: negative z requires q >= p");
    return std::exp(z + log_kummer_positive(q - p, q, -z));
  }
  if (!(p >= 0.0)) throw DomainError("kummer_1f1: positive z requires p >= 0");
  return std::exp(log_kummer_positive(p, q, z));
}

double conv_integral(int alpha, int beta_exp, double lambda, double t) {
  if (alpha < 0 || beta_exp < 0)
    throw DomainError("conv_integral: exponents must be >= 0");
  if (!(lambda >= 0.0) || !(t >= 0.0))
    throw DomainError("conv_integral: require lambda >= 0 and t >= 0");
  if (t == 0.0) return 0.0;
  // Without the (t - tau) factor this is a lower incomplete gamma integral,
  // evaluated directly; the log-space route below loses ~lambda t ulps.
  if (alpha == 0) return power_exp_integral(beta_exp, lambda, t);
  const double a = alpha + 1.0;
  const double b = beta_exp + 1.0;
  // 1F1(b; a+b; -lambda t) = exp(-lambda t) 1F1(a; a+b; lambda t)
  const double log_value = ln_beta(a, b) + (a + b - 1.0) * std::log(t) -
                           lambda * t +
                           log_kummer_positive(a, a + b, lambda * t);
  return std::exp(log_value);
}

double conv_integral_dt(int alpha, int beta_exp, double lambda, double t) {
  if (alpha < 0 || beta_exp < 0)
    throw DomainError("conv_integral_dt: exponents must be >= 0");
  if (alpha == 0) return std::pow(t, beta_exp) * std::exp(-lambda * t);
  return alpha * conv_integral(alpha - 1, beta_exp, lambda, t);
}

double power_exp_integral(int p, double kappa, double T) {
  if (p < 0) throw DomainError("power_exp_integral: p must be >= 0");
  if (!(T >= 0.0)) throw DomainError("power_exp_integral: T must be >= 0");
  if (T == 0.0) return 0.0;
  const double x = kappa * T;
  const double tp1 = std::pow(T, p + 1);
  constexpr double kEps = 1e-17;
  if (x >= 0.0 && x < p + 20.0) {
    // T^(p+1) e^-x sum_n x^n / ((p+1)(p+2)...(p+1+n)), all terms positive.
    CompensatedSum sum;
    double term = 1.0 / (p + 1.0);
    for (int n = 0; n < 10'000; ++n) {
      sum += term;
      term *= x / (p + n + 2.0);
      if (term < kEps * sum.value()) break;
    }
    return tp1 * std::exp(-x) * sum.value();
  }
  if (x < 0.0 && x > -30.0) {
    // T^(p+1) sum_n (-x)^n / (n! (p+n+1)), all terms positive for x < 0.
    CompensatedSum sum;
    double power = 1.0;
    for (int n = 0; n < 1000; ++n) {
      sum += power / (p + n + 1.0);
      power *= -x / (n + 1.0);
      if (power < kEps * sum.value()) break;
    }
    return tp1 * sum.value();
  }
  // p! / kappa^(p+1) [1 - e^-x sum_{m<=p} x^m / m!]
  double partial = 0.0;
  double term = 1.0;
  for (int m = 0; m <= p; ++m) {
    partial += term;
    term *= x / (m + 1.0);
  }
  double fact = 1.0;
  for (int m = 2; m <= p; ++m) fact *= m;
  return fact / std::pow(kappa, p + 1) * (1.0 - std::exp(-x) * partial);
}

std::vector<double> decay_panels(double t, double rate) {
  if (!(t >= 0.0)) throw DomainError("decay_panels: t must be >= 0");
  std::vector<double> points{0.0};
  if (rate > 0.0 && std::isfinite(rate)) {
    for (double edge = 1.0 / rate; edge < t; edge *= 4.0) points.push_back(edge);
  }
  points.push_back(t);
  return points;
}

}  // namespace fpt
