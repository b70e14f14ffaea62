#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fpt/trivpoisson.hpp"

namespace fpt {

/// nth-to-default swap on a basket of N names. Premiums are paid at
/// payment_times; the last payment date is the maturity.
struct CdsContract {
  int basket_size = 3;
  int order = 1;  // n: protection triggers at the n-th default
  double maturity = 5.0;
  std::vector<double> payment_times;
  double short_rate = 0.0;

  void validate() const;

  /// Payments every `interval` up to and including `maturity`.
  static CdsContract regular(int order, double maturity, double interval,
                             double short_rate, int basket_size = 3);
};

struct SpreadQuote {
  double spread = 0.0;
  double fee_pv = 0.0;
  double protection_pv = 0.0;
};

/// u sum_i e^{-r T_i} S^{N-n+1}(T_i)
double fee_leg(double spread, const CdsContract& contract,
               const TriPoissonModel& model);

/// -int_0^T e^{-r t} F^{N-n+1}(t) dt, evaluated in closed form.
double protection_leg(const CdsContract& contract, const TriPoissonModel& model);

/// Spread u at which fee_leg + protection_leg = 0.
SpreadQuote par_spread(const CdsContract& contract, const TriPoissonModel& model);

/// Contract and model read from a flat "key = value" file. Recognised keys:
/// N, n, T, payment_interval, r, l1, l2, l3, l12, l13, l23. Blank lines and
/// lines starting with '#' are ignored.
struct CdsConfig {
  CdsContract contract;
  TriPoissonParams model;
};
CdsConfig parse_cds_config(std::istream& in);
CdsConfig load_cds_config(const std::string& path);

}  // namespace fpt
