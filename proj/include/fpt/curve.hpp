#pragma once

#include <string>
#include <vector>

namespace fpt {

/// Strictly increasing, non-empty set of evaluation times, all >= 0.
class TimeGrid {
 public:
  TimeGrid() = default;
  /// Throws DomainError unless the points satisfy the invariants.
  explicit TimeGrid(std::vector<double> points);

  /// start, start + step, ... up to stop inclusive (stop is kept when it lies
  /// within 1e-9 step of the last point).
  static TimeGrid uniform(double start, double stop, double step);
  /// "start:stop:step"
  static TimeGrid parse(const std::string& spec);

  const std::vector<double>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }

 private:
  std::vector<double> points_;
};

/// A survival function sampled on a grid, labelled e.g. "S1" and tagged with
/// the model that produced it.
struct SurvivalCurve {
  TimeGrid grid;
  std::vector<double> values;
  std::string label;
  std::string model_tag;

  /// Checks sizes, values in [0, 1] (up to `slack`) and monotonicity (a rise
  /// of at most `slack` is tolerated). Throws NumericalError on violation.
  void validate(double slack = 1e-12) const;
};

/// Monte Carlo estimate of a survival function with per-point standard
/// errors sqrt(p (1 - p) / n).
struct EmpiricalCurve {
  TimeGrid times;
  std::vector<double> estimate;
  std::vector<double> std_err;
  std::string label;

  void validate() const;
};

}  // namespace fpt
