#pragma once

#include <vector>

#include "fpt/specfun.hpp"

namespace fpt {

/// Two hard-core Brownian particles (unit diffusion coefficient) on [0, 1]
/// with a reflecting wall at 0 and a killing wall at 1, started from two
/// independent uniform positions.
///
/// Normalisation: the single-particle eigenfunctions are taken as
///   phi_k(x) = sqrt(2) cos((2k+1) pi x / 2),
/// the orthonormal choice on [0, 1], which gives the single-particle survival
/// s(t) = (8/pi^2) sum_k e^{-lambda_k t} / (2k+1)^2.
struct SpectralParams {
  int K = 64;               // modes per index
  QuadTolerance quad_tol{};
  double time_floor = 1e-3;

  /// Throws DomainError unless K >= 8, time_floor > 0 and quad_tol is valid.
  void validate() const;
};

/// lambda_k = (2k+1)^2 pi^2 / 4
double eigenvalue(int k);
double phi(int k, double x);
double phi_prime(int k, double x);
/// int_0^1 phi_k = 2 sqrt(2) (-1)^k / ((2k+1) pi)
double phi_integral(int k);
/// int_x^1 phi_k and int_0^x phi_k.
double phi_integral_upper(int k, double x);
double phi_integral_lower(int k, double x);

/// Projection of the uniform initial pair on mode (k1, k2):
/// 8 (-1)^{k1+k2} / (pi^2 (2k1+1)(2k2+1)).
double psi(int k1, int k2);

/// V_{k1,k2}(x) = 2 phi_{k1}(x) int_x^1 phi_{k2}, the leftmost particle's mode.
double v_upper(int k1, int k2, double x);
/// V_{k1,k2}(x) = 2 phi_{k1}(x) int_0^x phi_{k2}, the rightmost particle's mode.
double v_lower(int k1, int k2, double x);
/// d/dx v_lower at x = 1.
double v_lower_prime_at_one(int k1, int k2);

/// Bound on the series mass beyond the K x K block at time t.
double series_tail_bound(const SpectralParams& sp, double t);

/// Single-particle survival s(t) = sum_k (int phi_k)^2 e^{-lambda_k t}.
double single_survival(const SpectralParams& sp, double t);

/// Marginal densities of the leftmost / rightmost particle while both live.
double leftmost_density(const SpectralParams& sp, double x, double t);
double rightmost_density(const SpectralParams& sp, double x, double t);

/// S^2(t) = sum Psi^2 e^{-Lambda t}; both particles alive.
double survival_both_sf(const SpectralParams& sp, double t);
/// F^2(t) = sum Lambda Psi^2 e^{-Lambda t}; first-exit density.
double fpt_both_sf(const SpectralParams& sp, double t);

/// C(t) = -sum V'_{k1,k2}(1) Psi e^{-Lambda t}, the probability flux of the
/// rightmost particle into the killing wall. The bare sum is the slope of the
/// rightmost density at x = 1 and is negative, so the sign is folded in here
/// to keep C > 0. Over the K x K block it coincides with F^2(t).
double c_denominator(const SpectralParams& sp, double t);

/// Density of the surviving particle at the instant the other is killed,
/// obtained from the 0/0 limit at x2 -> 1 by l'Hopital's rule.
double conditioned_density(const SpectralParams& sp, double x1, double t);

/// H(t,i,k2,l1,l2) = int_0^t e^{-lambda_i (t-tau)} e^{-(Lambda_{i,k2} +
/// Lambda_{l1,l2}) tau} / C(tau) dtau. Only decaying exponentials appear in
/// the integrand. Non-negative because C > 0.
double h_integral(const SpectralParams& sp, double t, int i, int k2, int l1, int l2);

/// S^1(t): probability at least one particle is alive. Assembled from the
/// two-particle term and the path term whose mode sums are folded under a
/// single time integral per k2; the k2 loop runs in parallel.
double survival_last_sf(const SpectralParams& sp, double t);
/// F^1(t) = -dS^1/dt via Leibniz' rule on the same integrals.
double fpt_last_sf(const SpectralParams& sp, double t);

/// Serial reference for survival_last_sf and fpt_last_sf: the literal
/// quadruple sum over (i, k2, l1, l2) with one h_integral per term. Cost
/// grows as K^4; meant for small K in tests.
double survival_last_sf_reference(const SpectralParams& sp, double t);
double fpt_last_sf_reference(const SpectralParams& sp, double t);

/// Reflection-principle closed form S^1 = 2 s (1 - s) + s^2 with s the
/// single-particle survival. Relabelling at collisions makes the pair of
/// identical non-crossing particles exit as two independent ones would.
double reflection_reference(const SpectralParams& sp, double t);

}  // namespace fpt
