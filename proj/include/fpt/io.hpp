#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fpt/curve.hpp"

namespace fpt {

/// A curve as it is written out: analytic curves have no stderr column.
struct CurveTable {
  std::string label;
  std::vector<double> t;
  std::vector<double> value;
  std::vector<double> std_err;  // empty for analytic curves

  bool has_std_err() const noexcept { return !std_err.empty(); }

  static CurveTable from(const SurvivalCurve& curve);
  static CurveTable from(const EmpiricalCurve& curve);
};

/// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);

/// Header "t,value" or "t,value,stderr", then one row per grid point.
void write_csv(std::ostream& out, const CurveTable& curve);

/// Reads what write_csv produced. Lines starting with '#' are skipped.
/// Throws DomainError on malformed input.
CurveTable read_csv(std::istream& in);

using ParameterList = std::vector<std::pair<std::string, std::string>>;

/// {"metadata": {"model", "parameters", "version"}, "curves": [...]}
std::string to_json(const std::string& model, const ParameterList& parameters,
                    const std::vector<CurveTable>& curves);

/// Library version string.
const char* version();

}  // namespace fpt
