#include "fpt/singlefile.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fpt/error.hpp"
#include "fpt/parallel.hpp"

namespace fpt {

using std::numbers::pi;
using std::numbers::sqrt2;

void SpectralParams::validate() const {
  if (K < 8) throw DomainError("SpectralParams: K must be >= 8");
  if (!(time_floor > 0.0)) throw DomainError("SpectralParams: time_floor must be > 0");
  quad_tol.validate();
}

namespace {

double frequency(int k) { return (2 * k + 1) * pi / 2.0; }
double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

void check_index(int k) {
  if (k < 0) throw DomainError("singlefile: eigen index must be >= 0");
}

void check_position(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("singlefile: x must lie in [0, 1]");
}

// Series are summed over the K x K block; refuse times where the block tail is
// not negligible.
void check_time(const SpectralParams& sp, double t, const char* op) {
  sp.validate();
  if (!(t >= sp.time_floor))
    throw DomainError(std::string(op) + ": t = " + std::to_string(t) +
                      " is below time_floor");
  const double tail = series_tail_bound(sp, t);
  if (tail > sp.quad_tol.abs_tol)
    throw TruncationError(std::string(op) + ": series tail bound " + std::to_string(tail) +
                              " exceeds tolerance; raise K or t",
                          tail);
}

// Per-index quantities and pair coefficient tables for the first K modes.
// Exponentials are stored scaled by e^{lambda_0 t} so that ratios of pair
// sums never underflow.
struct Modes {
  explicit Modes(int k_count)
      : K(k_count), lambda(K), c(K), slope(K), scaled(K), mass(K * K), weighted(K * K),
        flux(K * K) {
    for (int k = 0; k < K; ++k) {
      lambda[k] = eigenvalue(k);
      c[k] = phi_integral(k);
      slope[k] = phi_prime(k, 1.0);
    }
    for (int k1 = 0; k1 < K; ++k1) {
      for (int k2 = 0; k2 < K; ++k2) {
        const double p = psi(k1, k2);
        mass[k1 * K + k2] = p * p;
        weighted[k1 * K + k2] = pair_rate(k1, k2) * p * p;
        flux[k1 * K + k2] = -v_lower_prime_at_one(k1, k2) * p;
      }
    }
  }

  void set_time(double t) {
    for (int k = 0; k < K; ++k) scaled[k] = std::exp(-(lambda[k] - lambda[0]) * t);
  }

  double pair_rate(int k1, int k2) const { return lambda[k1] + lambda[k2]; }

  double pair_sum(const std::vector<double>& table) const {
    CompensatedSum sum;
    for (int k1 = 0; k1 < K; ++k1) {
      const double* row = &table[k1 * K];
      double inner = 0.0;
      for (int k2 = 0; k2 < K; ++k2) inner += row[k2] * scaled[k2];
      sum += inner * scaled[k1];
    }
    return sum.value();
  }

  // sum Psi^2 e^{-Lambda t} e^{2 lambda_0 t}, with an optional Lambda weight.
  double both_scaled(bool with_rate) const { return pair_sum(with_rate ? weighted : mass); }

  // C(t) e^{2 lambda_0 t}.
  double flux_scaled() const {
    const double value = pair_sum(flux);
    if (!(value > 0.0) || !std::isfinite(value))
      throw NumericalError("singlefile: wall flux C(t) is not positive (degenerate denominator)");
    return value;
  }

  int K;
  std::vector<double> lambda, c, slope, scaled;
  std::vector<double> mass, weighted, flux;
};

// F^2(tau) / C(tau). Identically one on the K x K block in exact arithmetic;
// evaluated literally so the quadrature sees the same rounding as the sums.
double flux_ratio(Modes& m, double tau) {
  m.set_time(tau);
  return m.both_scaled(true) / m.flux_scaled();
}

// Coefficient of the path term: -2 c_i phi'_{k2}(1) Psi_{i,k2} >= 0.
double path_weight(const Modes& m, int i, int k2) {
  return -2.0 * m.c[i] * m.slope[k2] * psi(i, k2);
}

struct FoldedTerms {
  double survival = 0.0;
  double density = 0.0;
};

// Path-term modes k2 >= K. The time integral reaches tau = 0, where the k2
// series only converges like 1/K, so these modes are not negligible. Once the
// pair sum is symmetrised F^2 = C term by term, hence g_{k2}(t) =
// (1 - e^{-lambda_{k2} t}) / lambda_{k2} exactly and the tail sums in closed
// form: 2 s_K(t) A(t) with A(t) = sum_{k>=K} c_k^2 (1 - e^{-lambda_k t}).
FoldedTerms k2_tail_terms(const Modes& m, double t) {
  CompensatedSum block_mass, decayed, decay_rate;
  for (int k = 0; k < m.K; ++k) block_mass += m.c[k] * m.c[k];
  for (int k = m.K;; ++k) {
    const double e = std::exp(-eigenvalue(k) * t);
    if (e < 1e-18) break;
    decayed += phi_integral(k) * phi_integral(k) * e;  // c_k^2 e^{-lambda_k t}
    decay_rate += 2.0 * e;                              // c_k^2 lambda_k = 2
  }
  const double a = (1.0 - block_mass.value()) - decayed.value();
  const double a_prime = decay_rate.value();
  CompensatedSum s, s_prime;
  for (int i = 0; i < m.K; ++i) {
    const double e = m.c[i] * m.c[i] * std::exp(-m.lambda[i] * t);
    s += e;
    s_prime += m.lambda[i] * e;
  }
  return {2.0 * s.value() * a, 2.0 * (s_prime.value() * a - s.value() * a_prime)};
}

// The l-sum of the path term collapses: sum_l Lambda_l Psi_l^2 H(t,i,k2,l)
// = e^{-lambda_i t} g_{k2}(t), g_{k2}(t) = int_0^t e^{-lambda_{k2} tau} F^2/C.
FoldedTerms folded_path_terms(const SpectralParams& sp, double t, Execution exec) {
  const int K = sp.K;
  const Modes base(K);
  std::vector<double> g(K);
  for_each_index(exec, static_cast<std::size_t>(K), [&](std::size_t k2) {
    Modes local = base;
    const double rate = local.lambda[k2];
    g[k2] = adaptive_quad_decaying(
                [&](double tau) { return std::exp(-rate * tau) * flux_ratio(local, tau); }, t,
                rate, sp.quad_tol)
                .value;
  });

  Modes m = base;
  const double ratio_now = flux_ratio(m, t);
  CompensatedSum survival, density;
  for (int i = 0; i < K; ++i) {
    const double ei = std::exp(-m.lambda[i] * t);
    for (int k2 = 0; k2 < K; ++k2) {
      const double w = path_weight(m, i, k2);
      survival += w * ei * g[k2];
      density += w * (m.lambda[i] * ei * g[k2] -
                      std::exp(-m.pair_rate(i, k2) * t) * ratio_now);
    }
  }
  const FoldedTerms tail = k2_tail_terms(m, t);
  survival += tail.survival;
  density += tail.density;
  return {survival.value(), density.value()};
}

double h_integral_impl(const SpectralParams& sp, Modes& m, double t, int i, int k2, int l1,
                       int l2) {
  const double lead = m.lambda[i];
  const double rate = m.pair_rate(i, k2) + m.pair_rate(l1, l2) - 2.0 * m.lambda[0];
  return adaptive_quad_decaying(
             [&](double tau) {
               m.set_time(tau);
               return std::exp(-lead * (t - tau)) * std::exp(-rate * tau) / m.flux_scaled();
             },
             t, rate - lead, sp.quad_tol)
      .value;
}

FoldedTerms reference_path_terms(const SpectralParams& sp, double t) {
  const int K = sp.K;
  Modes m(K);
  m.set_time(t);
  const double flux_now = m.flux_scaled();
  CompensatedSum survival, density;
  for (int i = 0; i < K; ++i) {
    for (int k2 = 0; k2 < K; ++k2) {
      const double w = path_weight(m, i, k2);
      for (int l1 = 0; l1 < K; ++l1) {
        for (int l2 = 0; l2 < K; ++l2) {
          const double p = psi(l1, l2);
          const double ql = m.pair_rate(l1, l2) * p * p;
          const double h = h_integral_impl(sp, m, t, i, k2, l1, l2);
          const double boundary =
              std::exp(-(m.pair_rate(i, k2) + m.pair_rate(l1, l2) - 2.0 * m.lambda[0]) * t) /
              flux_now;
          survival += w * ql * h;
          density += w * ql * (m.lambda[i] * h - boundary);
        }
      }
    }
  }
  const FoldedTerms tail = k2_tail_terms(m, t);
  survival += tail.survival;
  density += tail.density;
  return {survival.value(), density.value()};
}

}  // namespace

double eigenvalue(int k) {
  check_index(k);
  const double w = frequency(k);
  return w * w;
}

double phi(int k, double x) {
  check_index(k);
  check_position(x);
  return sqrt2 * std::cos(frequency(k) * x);
}

double phi_prime(int k, double x) {
  check_index(k);
  check_position(x);
  return -sqrt2 * frequency(k) * std::sin(frequency(k) * x);
}

double phi_integral(int k) {
  check_index(k);
  return sqrt2 * parity(k) / frequency(k);
}

double phi_integral_upper(int k, double x) {
  check_index(k);
  check_position(x);
  const double w = frequency(k);
  return sqrt2 * (parity(k) - std::sin(w * x)) / w;
}

double phi_integral_lower(int k, double x) {
  check_index(k);
  check_position(x);
  const double w = frequency(k);
  return sqrt2 * std::sin(w * x) / w;
}

double psi(int k1, int k2) {
  check_index(k1);
  check_index(k2);
  return 8.0 * parity(k1) * parity(k2) / (pi * pi * (2 * k1 + 1) * (2 * k2 + 1));
}

double v_upper(int k1, int k2, double x) {
  return 2.0 * phi(k1, x) * phi_integral_upper(k2, x);
}

double v_lower(int k1, int k2, double x) {
  return 2.0 * phi(k1, x) * phi_integral_lower(k2, x);
}

double v_lower_prime_at_one(int k1, int k2) {
  return 2.0 * (phi_prime(k1, 1.0) * phi_integral_lower(k2, 1.0) +
                phi(k1, 1.0) * phi(k2, 1.0));
}

double series_tail_bound(const SpectralParams& sp, double t) {
  sp.validate();
  if (!(t >= 0.0)) throw DomainError("series_tail_bound: t must be >= 0");
  // sum_{k>=K} 1/(2k+1)^2 < 1/(2(2K-1)); the pair tail is at most twice the
  // single-index tail since the other index sums to at most one.
  const double single = 8.0 / (pi * pi) * std::exp(-eigenvalue(sp.K) * t) /
                        (2.0 * (2 * sp.K - 1));
  return 2.0 * single;
}

double single_survival(const SpectralParams& sp, double t) {
  sp.validate();
  if (!(t >= 0.0)) throw DomainError("single_survival: t must be >= 0");
  if (t == 0.0) return 1.0;
  CompensatedSum sum;
  for (int k = 0;; ++k) {
    const double c = phi_integral(k);
    sum += c * c * std::exp(-eigenvalue(k) * t);
    const double tail = 8.0 / (pi * pi) * std::exp(-eigenvalue(k + 1) * t) / (2.0 * (2 * k + 1));
    if (k + 1 >= sp.K && tail < 1e-17) break;
    if (k > 50'000'000)
      throw ConvergenceError("single_survival: series did not converge; t is too small");
  }
  return sum.value();
}

double leftmost_density(const SpectralParams& sp, double x, double t) {
  check_time(sp, t, "leftmost_density");
  check_position(x);
  CompensatedSum sum;
  for (int k1 = 0; k1 < sp.K; ++k1)
    for (int k2 = 0; k2 < sp.K; ++k2)
      sum += v_upper(k1, k2, x) * psi(k1, k2) * std::exp(-(eigenvalue(k1) + eigenvalue(k2)) * t);
  return sum.value();
}

double rightmost_density(const SpectralParams& sp, double x, double t) {
  check_time(sp, t, "rightmost_density");
  check_position(x);
  CompensatedSum sum;
  for (int k1 = 0; k1 < sp.K; ++k1)
    for (int k2 = 0; k2 < sp.K; ++k2)
      sum += v_lower(k1, k2, x) * psi(k1, k2) * std::exp(-(eigenvalue(k1) + eigenvalue(k2)) * t);
  return sum.value();
}

double survival_both_sf(const SpectralParams& sp, double t) {
  check_time(sp, t, "survival_both_sf");
  Modes m(sp.K);
  m.set_time(t);
  return m.both_scaled(false) * std::exp(-2.0 * m.lambda[0] * t);
}

double fpt_both_sf(const SpectralParams& sp, double t) {
  check_time(sp, t, "fpt_both_sf");
  Modes m(sp.K);
  m.set_time(t);
  return m.both_scaled(true) * std::exp(-2.0 * m.lambda[0] * t);
}

double c_denominator(const SpectralParams& sp, double t) {
  check_time(sp, t, "c_denominator");
  Modes m(sp.K);
  m.set_time(t);
  return m.flux_scaled() * std::exp(-2.0 * m.lambda[0] * t);
}

double conditioned_density(const SpectralParams& sp, double x1, double t) {
  check_time(sp, t, "conditioned_density");
  check_position(x1);
  Modes m(sp.K);
  m.set_time(t);
  CompensatedSum numerator;
  for (int k1 = 0; k1 < sp.K; ++k1) {
    const double p1 = phi(k1, x1);
    for (int k2 = 0; k2 < sp.K; ++k2)
      numerator += -2.0 * p1 * m.slope[k2] * psi(k1, k2) * m.scaled[k1] * m.scaled[k2];
  }
  return numerator.value() / m.flux_scaled();
}

double h_integral(const SpectralParams& sp, double t, int i, int k2, int l1, int l2) {
  check_time(sp, t, "h_integral");
  for (int k : {i, k2, l1, l2}) {
    check_index(k);
    if (k >= sp.K) throw DomainError("h_integral: mode index must be < K");
  }
  Modes m(sp.K);
  return h_integral_impl(sp, m, t, i, k2, l1, l2);
}

double survival_last_sf(const SpectralParams& sp, double t) {
  const double both = survival_both_sf(sp, t);
  return both + folded_path_terms(sp, t, Execution::parallel).survival;
}

double fpt_last_sf(const SpectralParams& sp, double t) {
  const double both = fpt_both_sf(sp, t);
  return both + folded_path_terms(sp, t, Execution::parallel).density;
}

double survival_last_sf_reference(const SpectralParams& sp, double t) {
  const double both = survival_both_sf(sp, t);
  return both + reference_path_terms(sp, t).survival;
}

double fpt_last_sf_reference(const SpectralParams& sp, double t) {
  const double both = fpt_both_sf(sp, t);
  return both + reference_path_terms(sp, t).density;
}

double reflection_reference(const SpectralParams& sp, double t) {
  if (!(t >= 0.0)) throw DomainError("reflection_reference: t must be >= 0");
  const double s = single_survival(sp, t);
  return 2.0 * s * (1.0 - s) + s * s;
}

}  // namespace fpt
