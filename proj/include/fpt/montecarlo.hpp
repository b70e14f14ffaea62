#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fpt/bipoisson.hpp"
#include "fpt/curve.hpp"
#include "fpt/parallel.hpp"
#include "fpt/trivpoisson.hpp"

namespace fpt {

struct McConfig {
  long n_realizations = 10'000;
  std::uint64_t seed = 1;
  double horizon = 1.0;
  double dt = 1e-5;  // diffusion runs only
  TimeGrid grid;
  Execution exec = Execution::parallel;

  /// Checks n > 0, horizon > 0 and that the grid lies in [0, horizon].
  void validate() const;
  /// As validate(), plus dt > 0 and dt <= 1e-3 horizon.
  void validate_diffusion() const;
};

/// Empirical survival P(t < tau) for the given kill times (infinite for
/// realizations still alive at the horizon).
EmpiricalCurve empirical_survival(const TimeGrid& grid, std::vector<double> kill_times,
                                  const char* label);

struct BiPoissonMc {
  EmpiricalCurve first;  // tau_m, estimates S^2
  EmpiricalCurve last;   // tau_M, estimates S^1
};

/// Exact event-driven simulation: exponential waiting times for Y1, Y2, Y12.
/// Once a coordinate reaches M it is removed together with Y12.
BiPoissonMc simulate_bipoisson(const BiPoissonParams& params, const McConfig& cfg);

/// Kill curves for the first, second and third default of the trivariate
/// model (estimating S^3, S^2, S^1). A cross stream firing kills both of its
/// coordinates at once; streams touching a dead coordinate are removed.
std::array<EmpiricalCurve, 3> simulate_trivariate(const TriPoissonParams& params,
                                                  const McConfig& cfg);

struct SingleFileMc {
  EmpiricalCurve rightmost;  // first exit, estimates S^2
  EmpiricalCurve leftmost;   // last exit, estimates S^1
  /// Per realization: time of the first kill and the survivor's position at
  /// that step (infinite / NaN when no kill happened before the horizon).
  std::vector<double> first_kill_times;
  std::vector<double> survivor_positions;
};

/// Euler-Maruyama for two hard-core particles on [0, 1]: steps of variance
/// 2 dt, reflection at 0 by folding, ordering restored by sorting, killing at
/// 1 checked after each step.
SingleFileMc simulate_singlefile(const McConfig& cfg);

/// One particle alone with the same scheme; estimates s(t).
EmpiricalCurve simulate_single_particle(const McConfig& cfg);

}  // namespace fpt
