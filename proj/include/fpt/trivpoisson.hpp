#pragma once

#include <array>

#include "fpt/exp_sum.hpp"
#include "fpt/paths.hpp"

namespace fpt {

/// Trivariate Poisson model X_i = Y_i + sum_{j != i} Y_ij with a killing
/// barrier at 1, i.e. a Marshall-Olkin exponential default model with
/// pairwise common shocks. Coordinates are indexed 0, 1, 2.
struct TriPoissonParams {
  std::array<double, 3> single{};  // lambda_1, lambda_2, lambda_3
  std::array<double, 3> cross{};   // lambda_12, lambda_13, lambda_23

  void validate() const;
  /// Total rate a of all six streams.
  double a() const;
  /// lambda_ij for i != j (symmetric).
  double pair(int i, int j) const;
  /// Total rate of streams that can fire while exactly the coordinates in
  /// the alive mask (bit i = coordinate i alive) are alive: their own
  /// single streams plus the cross streams between two alive coordinates.
  double exit_rate(unsigned alive_mask) const;
};

/// P(X(t) = x): sum over the common-stream counts (y12, y13, y23) compatible
/// with x of the product of the six independent Poisson probabilities.
double trivariate_pmf(const std::array<int, 3>& x, const TriPoissonParams& params, double t);

/// e^{-a t}
ExpSum survival3(const TriPoissonParams& params);

/// Path "only i is killed, by its own stream":
///   lambda_i / (lambda_i + lambda_ij + lambda_ir)
///     (e^{-(lambda_j + lambda_r + lambda_jr) t} - e^{-a t}).
ExpSum contrib_one_kill(const TriPoissonParams& params, int i, int j, int r);

/// Path "i killed alone, then j killed alone, r alive at t".
ExpSum contrib_two_sequential(const TriPoissonParams& params, int i, int j, int r);

/// Path "i and j killed together by Y_ij, r alive at t":
///   lambda_ij / (a - lambda_r) (e^{-lambda_r t} - e^{-a t}).
ExpSum contrib_two_simultaneous(const TriPoissonParams& params, int i, int j,
                                int r);

/// Contribution of any killing path of the three-coordinate graph, dispatched
/// to the closed forms above by the path's shape.
ExpSum path_contribution(const TriPoissonParams& params, const KillPath& path);

/// S^n(t) = S^{n+1}(t) + sum over paths ending with n alive coordinates.
ExpSum survival2(const TriPoissonParams& params);
ExpSum survival1(const TriPoissonParams& params);

/// All three survival functions assembled once per parameter set.
class TriPoissonModel {
 public:
  explicit TriPoissonModel(const TriPoissonParams& params);

  const TriPoissonParams& params() const noexcept { return params_; }

  /// S^n for n alive coordinates, n in {1, 2, 3}.
  const ExpSum& survival(int n) const;
  /// F^n = -dS^n/dt.
  const ExpSum& fpt(int n) const;

 private:
  TriPoissonParams params_;
  std::array<ExpSum, 3> survival_;
  std::array<ExpSum, 3> fpt_;
};

/// F^n(t) for n in {1, 2, 3}.
ExpSum fpt_n(const TriPoissonParams& params, int n);

}  // namespace fpt
