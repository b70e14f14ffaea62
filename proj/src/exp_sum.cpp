#include "fpt/exp_sum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fpt/error.hpp"
#include "fpt/specfun.hpp"

namespace fpt {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

ExpSum::ExpSum(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {}

ExpSum ExpSum::exponential(double coefficient, double rate) {
  return ExpSum({ExpTerm{coefficient, rate, 0}});
}

double ExpSum::operator()(double t) const {
  CompensatedSum sum;
  for (const auto& term : terms_) {
    if (term.coefficient == 0.0) continue;
    const double poly = term.power == 0 ? 1.0 : std::pow(t, term.power);
    sum += term.coefficient * poly * std::exp(-term.rate * t);
  }
  return sum.value();
}

ExpSum& ExpSum::operator+=(const ExpSum& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

ExpSum& ExpSum::operator-=(const ExpSum& other) {
  for (auto term : other.terms_) {
    term.coefficient = -term.coefficient;
    terms_.push_back(term);
  }
  return *this;
}

ExpSum& ExpSum::operator*=(double scale) {
  for (auto& term : terms_) term.coefficient *= scale;
  return *this;
}

ExpSum ExpSum::derivative() const {
  std::vector<ExpTerm> out;
  out.reserve(2 * terms_.size());
  for (const auto& term : terms_) {
    if (term.power > 0)
      out.push_back({term.coefficient * term.power, term.rate, term.power - 1});
    if (term.rate != 0.0)
      out.push_back({-term.coefficient * term.rate, term.rate, term.power});
  }
  return ExpSum(std::move(out));
}

ExpSum ExpSum::convolve_exponential(double kernel_rate) const {
  std::vector<ExpTerm> out;
  for (const auto& term : terms_) {
    const double c = term.coefficient;
    const int p = term.power;
    const double gap = term.rate - kernel_rate;
    const double scale = std::max(std::abs(term.rate), std::abs(kernel_rate));
    if (std::abs(gap) <= kConfluentGap * scale) {
      // exp(-x0 t) int_0^t tau^p dtau
      out.push_back({c / (p + 1.0), kernel_rate, p + 1});
      continue;
    }
    // exp(-x0 t) int_0^t tau^p exp(-gap tau) dtau, expanded in partial
    // fractions.
    const double pf = factorial(p);
    out.push_back({c * pf / std::pow(gap, p + 1), kernel_rate, 0});
    for (int m = 0; m <= p; ++m) {
      out.push_back(
          {-c * pf / (factorial(m) * std::pow(gap, p + 1 - m)), term.rate, m});
    }
  }
  ExpSum result(std::move(out));
  result.simplify();
  return result;
}

double ExpSum::discounted_integral(double discount, double T) const {
  if (!(T >= 0.0)) throw DomainError("discounted_integral: T must be >= 0");
  CompensatedSum sum;
  for (const auto& term : terms_) {
    if (term.coefficient == 0.0) continue;
    sum += term.coefficient *
           power_exp_integral(term.power, term.rate + discount, T);
  }
  return sum.value();
}

ExpSum& ExpSum::simplify() {
  std::sort(terms_.begin(), terms_.end(),
            [](const ExpTerm& a, const ExpTerm& b) {
              if (a.rate != b.rate) return a.rate < b.rate;
              return a.power < b.power;
            });
  std::vector<ExpTerm> merged;
  for (const auto& term : terms_) {
    if (!merged.empty() && merged.back().rate == term.rate &&
        merged.back().power == term.power) {
      merged.back().coefficient += term.coefficient;
    } else {
      merged.push_back(term);
    }
  }
  std::erase_if(merged, [](const ExpTerm& t) { return t.coefficient == 0.0; });
  terms_ = std::move(merged);
  return *this;
}

std::string ExpSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& term : terms_) {
    if (!first) os << " + ";
    first = false;
    os << term.coefficient;
    if (term.power == 1) os << "*t";
    if (term.power > 1) os << "*t^" << term.power;
    os << "*exp(-" << term.rate << "*t)";
  }
  return os.str();
}

ExpSum ordered_exponential_integral(const std::vector<double>& rates_last_first) {
  if (rates_last_first.empty())
    throw DomainError("ordered_exponential_integral: need at least one rate");
  ExpSum f = ExpSum::exponential(1.0, rates_last_first.back());
  for (auto it = rates_last_first.rbegin() + 1; it != rates_last_first.rend();
       ++it) {
    f = f.convolve_exponential(*it);
  }
  return f;
}

}  // namespace fpt
