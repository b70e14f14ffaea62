#pragma once

namespace fpt {

/// Bivariate Poisson process X1 = Y1 + Y12, X2 = Y2 + Y12 built from three
/// independent Poisson streams, with a killing barrier at M on each
/// coordinate.
struct BiPoissonParams {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda12 = 0.0;
  int barrier_M = 1;

  void validate() const;
  /// Parameters with the roles of the two coordinates exchanged.
  BiPoissonParams swapped() const {
    return {lambda2, lambda1, lambda12, barrier_M};
  }
  double total_rate() const { return lambda1 + lambda2 + lambda12; }
};

/// (rate t)^k exp(-rate t) / k!
double poisson_pmf(int k, double rate, double t);

/// Probability that a Poisson(rate) counter has not reached M by time t.
double marginal_survival(double rate, int M, double t);

/// First-passage density of a Poisson(rate) counter through M (Erlang).
double marginal_fpt(double rate, int M, double t);

double joint_pmf(int x1, int x2, const BiPoissonParams& params, double t);

/// P(X1(t) = x | X2(t) = y): a Poisson(lambda1 t) count plus a
/// Binomial(y, lambda12 / (lambda2 + lambda12)) share of the common stream.
double conditional_pmf(int x, int y, const BiPoissonParams& params, double t);

/// Probability both coordinates are still below the barrier.
double survival_both(const BiPoissonParams& params, double t);
/// -d/dt survival_both.
double fpt_both(const BiPoissonParams& params, double t);

/// Probability at least one coordinate is still below the barrier.
double survival_last(const BiPoissonParams& params, double t);
/// -d/dt survival_last, differentiated term by term.
double fpt_last(const BiPoissonParams& params, double t);

/// The pair of helper integrals of the last-exit sum for one index tuple.
/// h1 = (l2 + l12) e^{-l1 t} int_0^t (t-tau)^(j-i) tau^(i-k+l) e^{-(l2+l12) tau}
/// h2 = -l e^{-l1 t} int_0^t (t-tau)^(j-i) tau^(i-k+l-1) e^{-(l2+l12) tau}
/// (h2 = 0 when l = 0). The coordinate killed first is X2.
struct HelperIntegrals {
  double h1 = 0.0;
  double h2 = 0.0;
};
HelperIntegrals helper_integrals(const BiPoissonParams& params, int j, int i,
                                 int k, int l, double t);

/// Contribution to survival_last from paths where X2 is killed first and X1
/// is still alive at t. Swap the parameters for the mirror term.
double survival_after_first_kill(const BiPoissonParams& params, double t);
double fpt_after_first_kill(const BiPoissonParams& params, double t);

}  // namespace fpt
