#include "fpt/bipoisson.hpp"

#include <cmath>
#include <vector>

#include "fpt/error.hpp"
#include "fpt/specfun.hpp"

namespace fpt {

void BiPoissonParams::validate() const {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0) || !(lambda12 >= 0.0))
    throw DomainError("BiPoissonParams: intensities must be >= 0");
  if (!(lambda1 + lambda12 > 0.0) && !(lambda2 + lambda12 > 0.0))
    throw DomainError("BiPoissonParams: at least one coordinate must move");
  if (barrier_M < 1) throw DomainError("BiPoissonParams: barrier M must be >= 1");
}

namespace {

void check_time(double t, const char* op) {
  if (!(t >= 0.0)) throw DomainError(std::string(op) + ": t must be >= 0");
}

// log(mu^n / n!), or -inf when the term vanishes.
double log_power_over_factorial(double mu, int n) {
  if (n == 0) return 0.0;
  if (mu == 0.0) return -INFINITY;
  return n * std::log(mu) - ln_gamma(n + 1.0);
}

double power_over_factorial(double base, int n) {
  return std::exp(log_power_over_factorial(base, n));
}

double binomial(int n, int k) {
  return std::exp(ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0));
}

// Summand of the joint pmf for common-stream count k, including exp(-a t).
double joint_term(int x1, int x2, int k, const BiPoissonParams& p, double t) {
  const double log_term = log_power_over_factorial(p.lambda1 * t, x1 - k) +
                          log_power_over_factorial(p.lambda2 * t, x2 - k) +
                          log_power_over_factorial(p.lambda12 * t, k) -
                          p.total_rate() * t;
  return std::exp(log_term);
}

// Table of conv_integral(alpha, beta, rate, t) for all index pairs the
// last-exit sum touches, together with its time derivative.
struct ConvTable {
  ConvTable(int max_alpha, int max_beta, double rate, double t, bool derivative)
      : n_beta(max_beta + 1),
        value(static_cast<std::size_t>((max_alpha + 1) * n_beta)),
        slope(derivative ? value.size() : 0) {
    for (int a = 0; a <= max_alpha; ++a) {
      for (int b = 0; b <= max_beta; ++b) {
        value[index(a, b)] = conv_integral(a, b, rate, t);
        if (derivative) slope[index(a, b)] = conv_integral_dt(a, b, rate, t);
      }
    }
  }
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a * n_beta + b);
  }
  int n_beta;
  std::vector<double> value;
  std::vector<double> slope;
};

// Sum over (j, i, k, l) of coefficient * (h1 + h2) or of its negative time
// derivative. X2 is the coordinate killed first, X1 the survivor.
double after_first_kill(const BiPoissonParams& params, double t, bool density) {
  const int M = params.barrier_M;
  const double survivor = params.lambda1;
  const double killed = params.lambda2 + params.lambda12;
  if (killed == 0.0 || t == 0.0) return 0.0;
  const double share = params.lambda12 / killed;  // common-stream fraction
  const double own = params.lambda2 / killed;

  const ConvTable table(M - 1, 2 * M - 2, killed, t, density);
  const double decay = std::exp(-survivor * t);

  std::vector<double> binom_weight(static_cast<std::size_t>(M));
  for (int k = 0; k < M; ++k)
    binom_weight[static_cast<std::size_t>(k)] =
        binomial(M, k) * std::pow(share, k) * std::pow(own, M - k);

  CompensatedSum sum;
  for (int j = 0; j < M; ++j) {
    for (int i = 0; i <= j; ++i) {
      const double after = power_over_factorial(survivor, j - i);
      if (after == 0.0) continue;
      const int alpha = j - i;
      for (int k = 0; k <= i; ++k) {
        const double before = power_over_factorial(survivor, i - k) *
                              binom_weight[static_cast<std::size_t>(k)];
        if (before == 0.0) continue;
        for (int l = 0; l < M; ++l) {
          const double coef = after * before * power_over_factorial(killed, l);
          const int beta = i - k + l;
          const std::size_t i1 = table.index(alpha, beta);
          // h1 + h2 without the common exp(-survivor t) factor.
          double h = killed * table.value[i1];
          double dh = density ? killed * table.slope[i1] : 0.0;
          if (l > 0) {
            const std::size_t i2 = table.index(alpha, beta - 1);
            h -= l * table.value[i2];
            if (density) dh -= l * table.slope[i2];
          }
          sum += coef * (density ? survivor * h - dh : h);
        }
      }
    }
  }
  return decay * sum.value();
}

}  // namespace

double poisson_pmf(int k, double rate, double t) {
  if (k < 0) throw DomainError("poisson_pmf: k must be >= 0");
  if (!(rate >= 0.0)) throw DomainError("poisson_pmf: rate must be >= 0");
  check_time(t, "poisson_pmf");
  const double mu = rate * t;
  return std::exp(log_power_over_factorial(mu, k) - mu);
}

double marginal_survival(double rate, int M, double t) {
  if (M < 1) throw DomainError("marginal_survival: M must be >= 1");
  CompensatedSum sum;
  for (int k = 0; k < M; ++k) sum += poisson_pmf(k, rate, t);
  return std::min(1.0, sum.value());
}

double marginal_fpt(double rate, int M, double t) {
  if (M < 1) throw DomainError("marginal_fpt: M must be >= 1");
  if (!(t > 0.0)) throw DomainError("marginal_fpt: t must be > 0");
  // sum_k lambda^k t^(k-1) / k! (lambda t - k) e^{-lambda t}
  CompensatedSum sum;
  for (int k = 0; k < M; ++k) sum += poisson_pmf(k, rate, t) * (rate - k / t);
  return sum.value();
}

double joint_pmf(int x1, int x2, const BiPoissonParams& params, double t) {
  params.validate();
  if (x1 < 0 || x2 < 0) throw DomainError("joint_pmf: counts must be >= 0");
  check_time(t, "joint_pmf");
  CompensatedSum sum;
  for (int k = 0; k <= std::min(x1, x2); ++k) sum += joint_term(x1, x2, k, params, t);
  return sum.value();
}

double conditional_pmf(int x, int y, const BiPoissonParams& params, double t) {
  params.validate();
  if (x < 0 || y < 0) throw DomainError("conditional_pmf: counts must be >= 0");
  check_time(t, "conditional_pmf");
  const double rate2 = params.lambda2 + params.lambda12;
  // A coordinate that never moves has no common-stream share.
  const double share = rate2 > 0.0 ? params.lambda12 / rate2 : 0.0;
  const double own = rate2 > 0.0 ? params.lambda2 / rate2 : 1.0;
  const double mu = params.lambda1 * t;
  CompensatedSum sum;
  for (int j = 0; j <= std::min(x, y); ++j) {
    sum += binomial(y, j) * std::pow(share, j) * std::pow(own, y - j) *
           power_over_factorial(mu, x - j);
  }
  return std::exp(-mu) * sum.value();
}

double survival_both(const BiPoissonParams& params, double t) {
  params.validate();
  check_time(t, "survival_both");
  const int M = params.barrier_M;
  CompensatedSum sum;
  for (int x = 0; x < M; ++x)
    for (int y = 0; y < M; ++y)
      for (int k = 0; k <= std::min(x, y); ++k)
        sum += joint_term(x, y, k, params, t);
  return std::min(1.0, sum.value());
}

double fpt_both(const BiPoissonParams& params, double t) {
  params.validate();
  if (!(t > 0.0)) throw DomainError("fpt_both: t must be > 0");
  const int M = params.barrier_M;
  const double a = params.total_rate();
  // Each joint summand is c t^n e^{-a t}, n = x + y - k; its negative
  // derivative is the summand times (a - n / t).
  CompensatedSum sum;
  for (int x = 0; x < M; ++x)
    for (int y = 0; y < M; ++y)
      for (int k = 0; k <= std::min(x, y); ++k)
        sum += joint_term(x, y, k, params, t) * (a - (x + y - k) / t);
  return sum.value();
}

HelperIntegrals helper_integrals(const BiPoissonParams& params, int j, int i,
                                 int k, int l, double t) {
  params.validate();
  if (!(0 <= k && k <= i && i <= j && l >= 0))
    throw DomainError("helper_integrals: require 0 <= k <= i <= j, l >= 0");
  check_time(t, "helper_integrals");
  const double killed = params.lambda2 + params.lambda12;
  const double decay = std::exp(-params.lambda1 * t);
  HelperIntegrals h;
  h.h1 = killed * decay * conv_integral(j - i, i - k + l, killed, t);
  if (l > 0) h.h2 = -l * decay * conv_integral(j - i, i - k + l - 1, killed, t);
  return h;
}

double survival_after_first_kill(const BiPoissonParams& params, double t) {
  params.validate();
  check_time(t, "survival_after_first_kill");
  return after_first_kill(params, t, false);
}

double fpt_after_first_kill(const BiPoissonParams& params, double t) {
  params.validate();
  if (!(t > 0.0)) throw DomainError("fpt_after_first_kill: t must be > 0");
  return after_first_kill(params, t, true);
}

double survival_last(const BiPoissonParams& params, double t) {
  params.validate();
  check_time(t, "survival_last");
  CompensatedSum sum;
  sum += survival_both(params, t);
  sum += after_first_kill(params, t, false);
  sum += after_first_kill(params.swapped(), t, false);
  return std::min(1.0, sum.value());
}

double fpt_last(const BiPoissonParams& params, double t) {
  params.validate();
  if (!(t > 0.0)) throw DomainError("fpt_last: t must be > 0");
  CompensatedSum sum;
  sum += fpt_both(params, t);
  sum += after_first_kill(params, t, true);
  sum += after_first_kill(params.swapped(), t, true);
  return sum.value();
}

}  // namespace fpt
