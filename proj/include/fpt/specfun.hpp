#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fpt/error.hpp"

namespace fpt {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct QuadTolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 200;

  /// Throws DomainError when a field is outside its admissible range.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int intervals = 0;
};

double ln_gamma(double x);

/// Beta function B(a, b), evaluated in log space.
double beta(double a, double b);
double ln_beta(double a, double b);

/// log 1F1(a; b; x) for a >= 0, b > 0, x >= 0: every term of the series is
/// non-negative, so it is summed around its largest term without cancellation.
double log_kummer_positive(double a, double b, double x);

/// Confluent hypergeometric function 1F1(p; q; z). Negative arguments go
/// through the Kummer transformation 1F1(p;q;z) = e^z 1F1(q-p;q;-z).
/// Supported region: q > 0 and either z >= 0 with p >= 0 or z <= 0 with
/// q >= p.
double kummer_1f1(double p, double q, double z);

/// int_0^t (t - tau)^alpha tau^beta exp(-lambda tau) dtau
///   = B(alpha+1, beta+1) t^(alpha+beta+1) 1F1(beta+1; alpha+beta+2; -lambda t)
double conv_integral(int alpha, int beta, double lambda, double t);

/// d/dt of conv_integral: alpha * conv_integral(alpha-1, ...) for alpha >= 1,
/// t^beta exp(-lambda t) for alpha = 0.
double conv_integral_dt(int alpha, int beta, double lambda, double t);

/// int_0^T tau^p exp(-kappa tau) dtau for integer p >= 0 and any real kappa.
double power_exp_integral(int p, double kappa, double T);

namespace detail {

// Gauss-Kronrod 7/15 nodes on [-1, 1] (abscissae of the Kronrod rule; the odd
// entries are the Gauss nodes).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gauss_kronrod15(F&& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(centre - dx) + f(centre + dx);
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature over [points.front(),
/// points.back()], starting from the panels between consecutive points: the
/// panel with the largest error estimate is bisected until the summed error
/// is below max(abs_tol, rel_tol * |I|). Throws QuadratureError with the best
/// estimate if the subdivision budget runs out.
template <class F>
QuadResult integrate_panels(F&& f, const std::vector<double>& points,
                            const QuadTolerance& tol = {}) {
  if (points.size() < 2) throw DomainError("integrate: need at least two points");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i] >= points[i - 1])) throw DomainError("integrate: points must be ordered");
  std::vector<detail::Segment> segments;
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i] > points[i - 1])
      segments.push_back(detail::gauss_kronrod15(f, points[i - 1], points[i]));
  if (segments.empty()) return {0.0, 0.0, 0};
  const int budget = tol.max_subdivisions + static_cast<int>(segments.size());
  double total = 0.0, error = 0.0;
  auto resum = [&] {
    // Re-sum instead of updating incrementally so the estimate does not drift.
    CompensatedSum v, e;
    for (const auto& seg : segments) {
      v += seg.value;
      e += seg.error;
    }
    total = v.value();
    error = e.value();
  };
  resum();
  auto converged = [&] {
    return error <= std::max(tol.abs_tol, tol.rel_tol * std::abs(total));
  };
  while (!converged()) {
    if (static_cast<int>(segments.size()) >= budget) {
      throw QuadratureError("integrate: tolerance not met after " +
                                std::to_string(segments.size()) +
                                " subdivisions",
                            total, error);
    }
    auto worst = std::max_element(segments.begin(), segments.end());
    const double lo = worst->a, hi = worst->b;
    const double mid = 0.5 * (lo + hi);
    *worst = detail::gauss_kronrod15(f, lo, mid);
    segments.push_back(detail::gauss_kronrod15(f, mid, hi));
    resum();
  }
  const int intervals = static_cast<int>(segments.size());
  return {total, error, intervals};
}

template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadTolerance& tol = {}) {
  if (!(b >= a)) throw DomainError("integrate: require b >= a");
  return integrate_panels(std::forward<F>(f), std::vector<double>{a, b}, tol);
}

/// integrate() on [0, t].
template <class F>
QuadResult adaptive_quad(F&& f, double t, const QuadTolerance& tol = {}) {
  if (!(t >= 0.0)) throw DomainError("adaptive_quad: require t >= 0");
  return integrate(std::forward<F>(f), 0.0, t, tol);
}

/// Panel edges 0, 1/rate, 4/rate, 16/rate, ... clipped to [0, t]. A single
/// Gauss-Kronrod panel on [0, t] can miss a peak of width 1/rate at 0
/// entirely and report convergence on a near-zero value.
std::vector<double> decay_panels(double t, double rate);

/// adaptive_quad for integrands that decay like e^{-rate tau} from tau = 0.
template <class F>
QuadResult adaptive_quad_decaying(F&& f, double t, double rate,
                                  const QuadTolerance& tol = {}) {
  if (!(t >= 0.0)) throw DomainError("adaptive_quad: require t >= 0");
  return integrate_panels(std::forward<F>(f), decay_panels(t, rate), tol);
}

}  // namespace fpt
