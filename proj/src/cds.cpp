#include "fpt/cds.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "fpt/error.hpp"
#include "fpt/specfun.hpp"

namespace fpt {

void CdsContract::validate() const {
  if (basket_size != 3)
    throw DomainError("CdsContract: only three-name baskets are supported");
  if (order < 1 || order > basket_size)
    throw DomainError("CdsContract: default order must lie in [1, N]");
  if (!(maturity > 0.0)) throw DomainError("CdsContract: maturity must be > 0");
  if (!(short_rate >= 0.0)) throw DomainError("CdsContract: short rate must be >= 0");
  if (payment_times.empty())
    throw DomainError("CdsContract: payment schedule is empty");
  double previous = 0.0;
  for (double t : payment_times) {
    if (!(t > previous))
      throw DomainError("CdsContract: payment times must be strictly increasing in (0, T]");
    previous = t;
  }
  if (std::abs(payment_times.back() - maturity) > 1e-12 * maturity)
    throw DomainError("CdsContract: last payment must fall on the maturity");
}

CdsContract CdsContract::regular(int order, double maturity, double interval,
                                 double short_rate, int basket_size) {
  if (!(interval > 0.0)) throw DomainError("CdsContract: payment interval must be > 0");
  CdsContract c;
  c.basket_size = basket_size;
  c.order = order;
  c.maturity = maturity;
  c.short_rate = short_rate;
  const auto count = static_cast<long>(std::llround(maturity / interval));
  if (count < 1 || std::abs(count * interval - maturity) > 1e-9 * maturity)
    throw DomainError("CdsContract: maturity must be a multiple of the payment interval");
  for (long i = 1; i <= count; ++i) c.payment_times.push_back(i * interval);
  c.payment_times.back() = maturity;
  c.validate();
  return c;
}

namespace {

int survival_index(const CdsContract& c) { return c.basket_size - c.order + 1; }

double annuity(const CdsContract& contract, const TriPoissonModel& model) {
  const ExpSum& survival = model.survival(survival_index(contract));
  CompensatedSum sum;
  for (double t : contract.payment_times)
    sum += std::exp(-contract.short_rate * t) * survival(t);
  return sum.value();
}

}  // namespace

double fee_leg(double spread, const CdsContract& contract,
               const TriPoissonModel& model) {
  contract.validate();
  return spread * annuity(contract, model);
}

double protection_leg(const CdsContract& contract, const TriPoissonModel& model) {
  contract.validate();
  const ExpSum& density = model.fpt(survival_index(contract));
  return -density.discounted_integral(contract.short_rate, contract.maturity);
}

SpreadQuote par_spread(const CdsContract& contract, const TriPoissonModel& model) {
  contract.validate();
  const double a = annuity(contract, model);
  if (!(a > 0.0) || !std::isfinite(a))
    throw NumericalError("par_spread: fee-leg annuity is degenerate (survival underflow)");
  SpreadQuote q;
  q.protection_pv = protection_leg(contract, model);
  q.spread = -q.protection_pv / a;
  q.fee_pv = q.spread * a;
  return q;
}

CdsConfig parse_cds_config(std::istream& in) {
  std::map<std::string, double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos)
      throw DomainError("cds config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string text = trim(line.substr(eq + 1));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size())
      throw DomainError("cds config line " + std::to_string(line_no) +
                        ": value for '" + key + "' is not a number");
    values[key] = v;
  }

  static const char* const kKnown[] = {"N",  "n",  "T",   "payment_interval",
                                       "r",  "l1", "l2",  "l3",
                                       "l12", "l13", "l23"};
  for (const auto& [key, v] : values) {
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) throw DomainError("cds config: unknown key '" + key + "'");
  }
  auto get = [&](const char* key, double fallback) {
    const auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
  };
  auto require = [&](const char* key) {
    const auto it = values.find(key);
    if (it == values.end())
      throw DomainError(std::string("cds config: missing key '") + key + "'");
    return it->second;
  };

  CdsConfig cfg;
  cfg.model.single = {require("l1"), require("l2"), require("l3")};
  cfg.model.cross = {require("l12"), require("l13"), require("l23")};
  cfg.model.validate();
  cfg.contract = CdsContract::regular(static_cast<int>(get("n", 1)), require("T"),
                                      require("payment_interval"), get("r", 0.0),
                                      static_cast<int>(get("N", 3)));
  return cfg;
}

CdsConfig load_cds_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cds config: cannot open '" + path + "'");
  return parse_cds_config(in);
}

}  // namespace fpt
