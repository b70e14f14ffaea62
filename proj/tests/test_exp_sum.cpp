#include <cmath>

#include "doctest.h"
#include "fpt/error.hpp"
#include "fpt/exp_sum.hpp"
#include "oracles.hpp"

using namespace fpt;

TEST_CASE("evaluation and arithmetic") {
  ExpSum f({{2.0, 1.0, 0}, {-0.5, 3.0, 1}});
  const double t = 0.7;
  CHECK(f(t) == doctest::Approx(2.0 * std::exp(-t) - 0.5 * t * std::exp(-3.0 * t)));
  const ExpSum g = ExpSum::exponential(1.5, 1.0);
  CHECK((f + g)(t) == doctest::Approx(f(t) + g(t)));
  CHECK((f - g)(t) == doctest::Approx(f(t) - g(t)));
  CHECK((3.0 * f)(t) == doctest::Approx(3.0 * f(t)));
}

TEST_CASE("simplify merges equal rates and powers") {
  ExpSum f({{1.0, 2.0, 0}, {2.0, 2.0, 0}, {1.0, 2.0, 1}, {0.0, 5.0, 0}});
  f.simplify();
  CHECK(f.terms().size() == 2);
  CHECK(f(0.3) == doctest::Approx(3.0 * std::exp(-0.6) + 0.3 * std::exp(-0.6)));
}

TEST_CASE("derivative matches a central difference") {
  const ExpSum f({{1.0, 0.5, 0}, {-2.0, 4.0, 2}, {0.3, 0.0, 1}});
  const ExpSum df = f.derivative();
  for (double t : {0.1, 1.0, 3.0}) {
    const double fd = oracle::central_difference([&](double s) { return f(s); }, t, 1e-5);
    CHECK(df(t) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("exponential convolution against quadrature") {
  const ExpSum f({{1.0, 0.5, 0}, {-2.0, 4.0, 1}});
  for (double kernel : {0.2, 4.0, 7.5}) {
    const ExpSum g = f.convolve_exponential(kernel);
    for (double t : {0.3, 2.0}) {
      const double expect = oracle::integral(
          [&](long double s) { return std::exp(-kernel * (t - s)) * f(static_cast<double>(s)); },
          0.0, t);
      CHECK(g(t) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("confluent rates give the t-power limit") {
  // int_0^t e^{-2 (t - s)} e^{-2 s} ds = t e^{-2 t}
  const ExpSum g = ExpSum::exponential(1.0, 2.0).convolve_exponential(2.0);
  for (double t : {0.5, 1.5}) CHECK(g(t) == doctest::Approx(t * std::exp(-2.0 * t)).epsilon(1e-14));
  // a gap below kConfluentGap is treated as equal
  const ExpSum h = ExpSum::exponential(1.0, 2.0 * (1 + 1e-14)).convolve_exponential(2.0);
  CHECK(h(1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(std::isfinite(h(1.0)));
}

TEST_CASE("discounted integral") {
  const ExpSum f({{7.5, 7.5, 0}});
  const double r = 0.02, T = 5.0;
  CHECK(f.discounted_integral(r, T) ==
        doctest::Approx(7.5 * (1 - std::exp(-7.52 * T)) / 7.52).epsilon(1e-14));
  const ExpSum g({{1.0, -0.02, 0}, {2.0, 1.0, 3}});
  const double expect = oracle::integral(
      [&](long double s) { return std::exp(-r * s) * g(static_cast<double>(s)); }, 0.0, T);
  CHECK(g.discounted_integral(r, T) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("ordered exponential integral") {
  CHECK(ordered_exponential_integral({1.3})(0.8) == doctest::Approx(std::exp(-1.3 * 0.8)));
  // two segments: int_0^t e^{-r1 s} e^{-r0 (t - s)} ds
  const double r0 = 0.7, r1 = 2.9, t = 1.1;
  const double expect = (std::exp(-r0 * t) - std::exp(-r1 * t)) / (r1 - r0);
  CHECK(ordered_exponential_integral({r0, r1})(t) == doctest::Approx(expect).epsilon(1e-14));
  // three equal rates: t^2 / 2 e^{-r t}
  CHECK(ordered_exponential_integral({2.0, 2.0, 2.0})(t) ==
        doctest::Approx(t * t / 2 * std::exp(-2.0 * t)).epsilon(1e-14));
}
