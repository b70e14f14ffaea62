#include "fpt/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "fpt/bipoisson.hpp"
#include "fpt/cds.hpp"
#include "fpt/montecarlo.hpp"
#include "fpt/paths.hpp"
#include "fpt/singlefile.hpp"
#include "fpt/specfun.hpp"
#include "fpt/trivpoisson.hpp"

namespace fpt {

namespace {

// Returns an empty string on success, otherwise what went wrong.
using Check = std::function<std::string()>;

void run(std::vector<InvariantResult>& out, const char* module, const char* name,
         const Check& check) {
  InvariantResult r{module, name, false, {}};
  try {
    r.detail = check();
    r.passed = r.detail.empty();
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  out.push_back(std::move(r));
}

std::string describe(const char* what, double value, double limit) {
  std::ostringstream s;
  s.precision(6);
  s << what << " = " << value << " exceeds " << limit;
  return s.str();
}

void specfun_suite(std::vector<InvariantResult>& out) {
  run(out, "specfun", "conv_integral agrees with quadrature", [] {
    double worst = 0.0;
    for (int alpha : {0, 2, 7})
      for (int beta : {0, 3, 9})
        for (double lambda : {0.5, 3.0})
          for (double t : {0.5, 2.0}) {
            const double exact = conv_integral(alpha, beta, lambda, t);
            const double quad =
                adaptive_quad(
                    [&](double s) {
                      return std::pow(t - s, alpha) * std::pow(s, beta) * std::exp(-lambda * s);
                    },
                    t)
                    .value;
            worst = std::max(worst, std::abs(exact - quad) / std::abs(quad));
          }
    return worst <= 1e-8 ? std::string{} : describe("max rel err", worst, 1e-8);
  });
  run(out, "specfun", "Kummer transformation", [] {
    const double lhs = kummer_1f1(2.5, 4.0, -3.0);
    const double rhs = std::exp(-3.0) * kummer_1f1(1.5, 4.0, 3.0);
    const double err = std::abs(lhs - rhs) / std::abs(rhs);
    return err <= 1e-12 ? std::string{} : describe("rel err", err, 1e-12);
  });
}

void paths_suite(std::vector<InvariantResult>& out) {
  run(out, "paths", "edge count 3^N - 2^N", [] {
    for (int n = 1; n <= 6; ++n) {
      const auto g = build_gamma(n);
      const auto expect = static_cast<std::size_t>(std::pow(3, n) - std::pow(2, n));
      if (g.edge_count() != expect || g.edges().size() != expect)
        return "N = " + std::to_string(n) + ": wrong edge count";
    }
    return std::string{};
  });
  run(out, "paths", "paths end with the requested alive count", [] {
    const auto g = build_gamma(4);
    for (int alive = 0; alive < 4; ++alive)
      for (const auto& p : enumerate_paths(g, alive))
        if (p.nodes().back().alive_count() != alive) return "bad path " + p.to_string();
    return std::string{};
  });
}

void bipoisson_suite(std::vector<InvariantResult>& out) {
  const BiPoissonParams p{1.0, 2.0, 0.8, 5};
  run(out, "bipoisson", "joint pmf sums to one", [&] {
    CompensatedSum total;
    for (int x1 = 0; x1 < 60; ++x1)
      for (int x2 = 0; x2 < 60; ++x2) total += joint_pmf(x1, x2, p, 1.5);
    const double err = std::abs(total.value() - 1.0);
    return err <= 1e-9 ? std::string{} : describe("|sum - 1|", err, 1e-9);
  });
  run(out, "bipoisson", "S1 >= S2, both non-increasing", [&] {
    double prev1 = 1.0, prev2 = 1.0;
    for (double t = 0.25; t <= 4.0; t += 0.25) {
      const double s1 = survival_last(p, t), s2 = survival_both(p, t);
      if (s1 < s2 - 1e-12 || s1 > prev1 + 1e-12 || s2 > prev2 + 1e-12)
        return "ordering broken at t = " + std::to_string(t);
      prev1 = s1;
      prev2 = s2;
    }
    return std::string{};
  });
  run(out, "bipoisson", "F = -dS/dt", [&] {
    double worst = 0.0;
    const double h = 1e-4;
    for (double t : {0.5, 1.5, 3.0}) {
      const double fd2 = (survival_both(p, t - h) - survival_both(p, t + h)) / (2 * h);
      const double fd1 = (survival_last(p, t - h) - survival_last(p, t + h)) / (2 * h);
      worst = std::max({worst, std::abs(fd2 - fpt_both(p, t)), std::abs(fd1 - fpt_last(p, t))});
    }
    return worst <= 1e-6 ? std::string{} : describe("max abs err", worst, 1e-6);
  });
  run(out, "bipoisson", "independent M = 1 reduction", [] {
    const BiPoissonParams q{1.3, 0.7, 0.0, 1};
    double worst = 0.0;
    for (double t : {0.1, 1.0, 3.0}) {
      const double expect = std::exp(-1.3 * t) + std::exp(-0.7 * t) - std::exp(-2.0 * t);
      worst = std::max(worst, std::abs(survival_last(q, t) - expect));
    }
    return worst <= 1e-12 ? std::string{} : describe("max abs err", worst, 1e-12);
  });
}

void trivpoisson_suite(std::vector<InvariantResult>& out) {
  const TriPoissonParams p{{1.2, 0.5, 3.3}, {1.4, 3.1, 0.12}};
  run(out, "trivpoisson", "S^n(0) = 1", [&] {
    const TriPoissonModel m(p);
    for (int n = 1; n <= 3; ++n)
      if (std::abs(m.survival(n)(0.0) - 1.0) > 1e-12) return "S" + std::to_string(n) + "(0) != 1";
    return std::string{};
  });
  run(out, "trivpoisson", "S1 >= S2 >= S3, densities >= 0", [&] {
    const TriPoissonModel m(p);
    for (double t = 0.0; t <= 3.0; t += 0.05) {
      const double s1 = m.survival(1)(t), s2 = m.survival(2)(t), s3 = m.survival(3)(t);
      if (s1 < s2 - 1e-12 || s2 < s3 - 1e-12) return "ordering broken at t = " + std::to_string(t);
      for (int n = 1; n <= 3; ++n)
        if (m.fpt(n)(t) < -1e-12) return "negative density at t = " + std::to_string(t);
    }
    return std::string{};
  });
  run(out, "trivpoisson", "independent exponential order statistics", [] {
    const TriPoissonParams q{{0.4, 1.1, 2.0}, {0.0, 0.0, 0.0}};
    const TriPoissonModel m(q);
    double worst = 0.0;
    for (double t : {0.1, 0.7, 2.5}) {
      const double e0 = std::exp(-0.4 * t), e1 = std::exp(-1.1 * t), e2 = std::exp(-2.0 * t);
      const double s1 = 1.0 - (1 - e0) * (1 - e1) * (1 - e2);
      const double s2 = e0 * e1 + e0 * e2 + e1 * e2 - 2 * e0 * e1 * e2;
      worst = std::max({worst, std::abs(m.survival(1)(t) - s1), std::abs(m.survival(2)(t) - s2)});
    }
    return worst <= 1e-12 ? std::string{} : describe("max abs err", worst, 1e-12);
  });
}

void singlefile_suite(std::vector<InvariantResult>& out) {
  SpectralParams sp;
  run(out, "singlefile", "sum Psi^2 plus tail bound brackets 1", [&] {
    CompensatedSum mass;
    for (int k1 = 0; k1 < sp.K; ++k1)
      for (int k2 = 0; k2 < sp.K; ++k2) mass += psi(k1, k2) * psi(k1, k2);
    const double tail = 2.0 / (4.0 * sp.K);
    if (!(mass.value() <= 1.0 && mass.value() + tail >= 1.0)) return std::string("not bracketed");
    return std::string{};
  });
  run(out, "singlefile", "C(t) > 0", [&] {
    for (double t : {0.01, 0.1, 1.0, 5.0})
      if (!(c_denominator(sp, t) > 0.0)) return "C <= 0 at t = " + std::to_string(t);
    return std::string{};
  });
  run(out, "singlefile", "conditioned density integrates to 1", [&] {
    QuadTolerance tol;
    tol.abs_tol = 1e-10;
    double worst = 0.0;
    for (double t : {0.05, 0.2, 0.5}) {
      const double mass =
          integrate([&](double x) { return conditioned_density(sp, x, t); }, 0.0, 1.0, tol).value;
      worst = std::max(worst, std::abs(mass - 1.0));
    }
    return worst <= 1e-3 ? std::string{} : describe("max |mass - 1|", worst, 1e-3);
  });
  run(out, "singlefile", "S2 <= S1 <= 1 and agreement with 2s - s^2", [&] {
    double worst = 0.0;
    for (double t : {0.05, 0.2, 0.5}) {
      const double s1 = survival_last_sf(sp, t), s2 = survival_both_sf(sp, t);
      if (!(s2 <= s1 + 1e-12 && s1 <= 1.0 + 1e-12)) return "ordering broken at t = " + std::to_string(t);
      worst = std::max(worst, std::abs(s1 - reflection_reference(sp, t)));
    }
    return worst <= 1e-3 ? std::string{} : describe("sup diff", worst, 1e-3);
  });
}

void montecarlo_suite(std::vector<InvariantResult>& out) {
  run(out, "montecarlo", "result independent of execution mode", [] {
    const TriPoissonParams p{{1.2, 0.5, 3.3}, {1.4, 3.1, 0.12}};
    McConfig cfg;
    cfg.n_realizations = 2000;
    cfg.seed = 11;
    cfg.horizon = 2.0;
    cfg.grid = TimeGrid::uniform(0.0, 2.0, 0.25);
    cfg.exec = Execution::serial;
    const auto a = simulate_trivariate(p, cfg);
    cfg.exec = Execution::parallel;
    const auto b = simulate_trivariate(p, cfg);
    for (int n = 0; n < 3; ++n)
      if (a[n].estimate != b[n].estimate) return std::string("serial and parallel runs differ");
    return std::string{};
  });
}

void cds_suite(std::vector<InvariantResult>& out) {
  const TriPoissonModel model(TriPoissonParams{{2.5, 2.5, 2.5}, {2.5, 2.5, 2.5}});
  run(out, "cds", "fee leg + protection leg = 0 at par", [&] {
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
      const auto c = CdsContract::regular(n, 5.0, 0.5, 0.02);
      const auto q = par_spread(c, model);
      const double sum = fee_leg(q.spread, c, model) + protection_leg(c, model);
      worst = std::max(worst, std::abs(sum) / std::abs(q.protection_pv));
    }
    return worst <= 1e-10 ? std::string{} : describe("rel residual", worst, 1e-10);
  });
  run(out, "cds", "spreads decrease with default order", [] {
    for (double l : {0.01, 0.5, 2.5})
      for (double c : {0.01, 0.5, 2.5}) {
        const TriPoissonModel m(TriPoissonParams{{l, l, l}, {c, c, c}});
        double prev = INFINITY;
        for (int n = 1; n <= 3; ++n) {
          const double u = par_spread(CdsContract::regular(n, 5.0, 0.5, 0.02), m).spread;
          if (u > prev * (1 + 1e-12)) return std::string("spread increases with order");
          prev = u;
        }
      }
    return std::string{};
  });
}

}  // namespace

std::vector<InvariantResult> run_invariant_suites() {
  std::vector<InvariantResult> out;
  specfun_suite(out);
  paths_suite(out);
  bipoisson_suite(out);
  trivpoisson_suite(out);
  singlefile_suite(out);
  montecarlo_suite(out);
  cds_suite(out);
  return out;
}

}  // namespace fpt
