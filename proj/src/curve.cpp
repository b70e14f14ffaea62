#include "fpt/curve.hpp"

#include <cmath>
#include <sstream>

#include "fpt/error.hpp"

namespace fpt {

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw DomainError("TimeGrid: grid is empty");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i]) || points_[i] < 0.0)
      throw DomainError("TimeGrid: points must be finite and >= 0");
    if (i > 0 && !(points_[i] > points_[i - 1]))
      throw DomainError("TimeGrid: points must be strictly increasing");
  }
}

TimeGrid TimeGrid::uniform(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("TimeGrid: step must be > 0");
  if (!(stop >= start)) throw DomainError("TimeGrid: stop must be >= start");
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count > 10'000'000) throw DomainError("TimeGrid: too many points");
  std::vector<double> points(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) points[i] = start + static_cast<double>(i) * step;
  if (std::abs(points.back() - stop) <= 1e-9 * step) points.back() = stop;
  return TimeGrid(std::move(points));
}

TimeGrid TimeGrid::parse(const std::string& spec) {
  std::istringstream in(spec);
  std::string parts[3];
  for (auto& p : parts)
    if (!std::getline(in, p, ':')) throw DomainError("TimeGrid: expected start:stop:step");
  std::string extra;
  if (std::getline(in, extra)) throw DomainError("TimeGrid: expected start:stop:step");
  double v[3];
  for (int i = 0; i < 3; ++i) {
    std::size_t used = 0;
    try {
      v[i] = std::stod(parts[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != parts[i].size())
      throw DomainError("TimeGrid: '" + parts[i] + "' is not a number");
  }
  return uniform(v[0], v[1], v[2]);
}

void SurvivalCurve::validate(double slack) const {
  if (values.size() != grid.size())
    throw NumericalError("SurvivalCurve " + label + ": size does not match grid");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= -slack && values[i] <= 1.0 + slack))
      throw NumericalError("SurvivalCurve " + label + ": value outside [0, 1] at t = " +
                           std::to_string(grid[i]));
    if (i > 0 && values[i] > values[i - 1] + slack)
      throw NumericalError("SurvivalCurve " + label + ": increases at t = " +
                           std::to_string(grid[i]));
  }
}

void EmpiricalCurve::validate() const {
  if (estimate.size() != times.size() || std_err.size() != times.size())
    throw NumericalError("EmpiricalCurve " + label + ": size does not match grid");
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    if (!(estimate[i] >= 0.0 && estimate[i] <= 1.0) || !(std_err[i] >= 0.0))
      throw NumericalError("EmpiricalCurve " + label + ": invalid estimate");
    if (i > 0 && estimate[i] > estimate[i - 1])
      throw NumericalError("EmpiricalCurve " + label + ": estimate increases");
  }
}

}  // namespace fpt
