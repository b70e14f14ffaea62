#include "fpt/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "fpt/error.hpp"
#include "fpt/philox.hpp"

namespace fpt {

namespace {

constexpr double kNever = std::numeric_limits<double>::infinity();

}  // namespace

void McConfig::validate() const {
  if (n_realizations < 1) throw DomainError("McConfig: n_realizations must be >= 1");
  if (!(horizon > 0.0)) throw DomainError("McConfig: horizon must be > 0");
  if (grid.size() == 0) throw DomainError("McConfig: grid is empty");
  if (grid.back() > horizon) throw DomainError("McConfig: grid extends past the horizon");
}

void McConfig::validate_diffusion() const {
  validate();
  if (!(dt > 0.0)) throw DomainError("McConfig: dt must be > 0");
  if (dt > 1e-3 * horizon)
    throw DomainError("McConfig: dt too coarse, need dt <= 1e-3 * horizon");
}

EmpiricalCurve empirical_survival(const TimeGrid& grid, std::vector<double> kill_times,
                                  const char* label) {
  std::sort(kill_times.begin(), kill_times.end());
  const double n = static_cast<double>(kill_times.size());
  EmpiricalCurve curve;
  curve.times = grid;
  curve.label = label;
  for (double t : grid.points()) {
    // realizations with tau > t
    const auto alive = kill_times.end() - std::upper_bound(kill_times.begin(), kill_times.end(), t);
    const double p = static_cast<double>(alive) / n;
    curve.estimate.push_back(p);
    curve.std_err.push_back(std::sqrt(p * (1.0 - p) / n));
  }
  curve.validate();
  return curve;
}

BiPoissonMc simulate_bipoisson(const BiPoissonParams& params, const McConfig& cfg) {
  params.validate();
  cfg.validate();
  const auto n = static_cast<std::size_t>(cfg.n_realizations);
  std::vector<double> first(n), last(n);

  for_each_index(cfg.exec, n, [&](std::size_t r) {
    PhiloxStream rng(cfg.seed, r);
    int x1 = 0, x2 = 0;
    double t = 0.0;
    double kill1 = kNever, kill2 = kNever;
    while (t <= cfg.horizon) {
      const bool alive1 = kill1 == kNever, alive2 = kill2 == kNever;
      if (!alive1 && !alive2) break;
      const double r1 = alive1 ? params.lambda1 : 0.0;
      const double r2 = alive2 ? params.lambda2 : 0.0;
      const double r12 = (alive1 && alive2) ? params.lambda12 : 0.0;
      const double total = r1 + r2 + r12;
      if (total <= 0.0) break;
      t += rng.exponential(total);
      if (t > cfg.horizon) break;
      const double pick = rng.uniform() * total;
      if (pick < r1) {
        ++x1;
      } else if (pick < r1 + r2) {
        ++x2;
      } else {
        ++x1;
        ++x2;
      }
      if (alive1 && x1 >= params.barrier_M) kill1 = t;
      if (alive2 && x2 >= params.barrier_M) kill2 = t;
    }
    first[r] = std::min(kill1, kill2);
    last[r] = std::max(kill1, kill2);
  });

  return {empirical_survival(cfg.grid, std::move(first), "S2"),
          empirical_survival(cfg.grid, std::move(last), "S1")};
}

std::array<EmpiricalCurve, 3> simulate_trivariate(const TriPoissonParams& params,
                                                  const McConfig& cfg) {
  params.validate();
  cfg.validate();
  const auto n = static_cast<std::size_t>(cfg.n_realizations);
  std::array<std::vector<double>, 3> kills;
  for (auto& k : kills) k.assign(n, kNever);

  // Stream s < 3 is Y_s; stream 3 + p is the cross stream of pair p.
  static constexpr int kPair[3][2] = {{0, 1}, {0, 2}, {1, 2}};

  for_each_index(cfg.exec, n, [&](std::size_t r) {
    PhiloxStream rng(cfg.seed, r);
    unsigned alive = 0b111;
    int killed = 0;
    double t = 0.0;
    while (alive != 0) {
      std::array<double, 6> rate{};
      for (int i = 0; i < 3; ++i)
        if (alive & (1u << i)) rate[i] = params.single[i];
      for (int p = 0; p < 3; ++p)
        if ((alive & (1u << kPair[p][0])) && (alive & (1u << kPair[p][1])))
          rate[3 + p] = params.cross[p];
      double total = 0.0;
      for (double x : rate) total += x;
      if (total <= 0.0) break;
      t += rng.exponential(total);
      if (t > cfg.horizon) break;
      double pick = rng.uniform() * total;
      int stream = 0;
      while (stream < 5 && pick >= rate[stream]) pick -= rate[stream++];
      // guard against rounding landing on a zero-rate stream
      while (rate[stream] == 0.0) --stream;
      unsigned victims = stream < 3 ? (1u << stream)
                                    : (1u << kPair[stream - 3][0]) | (1u << kPair[stream - 3][1]);
      victims &= alive;
      for (int i = 0; i < 3; ++i) {
        if (victims & (1u << i)) kills[killed++][r] = t;
      }
      alive &= ~victims;
    }
  });

  return {empirical_survival(cfg.grid, std::move(kills[0]), "S3"),
          empirical_survival(cfg.grid, std::move(kills[1]), "S2"),
          empirical_survival(cfg.grid, std::move(kills[2]), "S1")};
}

SingleFileMc simulate_singlefile(const McConfig& cfg) {
  cfg.validate_diffusion();
  const auto n = static_cast<std::size_t>(cfg.n_realizations);
  const auto max_steps = static_cast<long>(std::ceil(cfg.horizon / cfg.dt));
  const double sigma = std::sqrt(2.0 * cfg.dt);
  std::vector<double> first(n), last(n), survivor(n);

  for_each_index(cfg.exec, n, [&](std::size_t r) {
    PhiloxStream rng(cfg.seed, r);
    double a = rng.uniform(), b = rng.uniform();
    if (a > b) std::swap(a, b);
    first[r] = last[r] = kNever;
    survivor[r] = std::numeric_limits<double>::quiet_NaN();
    long step = 0;
    while (step < max_steps) {
      ++step;
      const auto [z1, z2] = rng.normal_pair();
      a = std::abs(a + sigma * z1);
      b = std::abs(b + sigma * z2);
      if (a > b) std::swap(a, b);
      if (b >= 1.0) {
        first[r] = static_cast<double>(step) * cfg.dt;
        if (a >= 1.0) {
          last[r] = first[r];
          return;
        }
        survivor[r] = a;
        break;
      }
    }
    if (first[r] == kNever) return;
    // The survivor alone; normals are drawn in pairs, one step each.
    while (step < max_steps) {
      const auto [z1, z2] = rng.normal_pair();
      for (double z : {z1, z2}) {
        ++step;
        a = std::abs(a + sigma * z);
        if (a >= 1.0) {
          last[r] = static_cast<double>(step) * cfg.dt;
          return;
        }
        if (step >= max_steps) return;
      }
    }
  });

  SingleFileMc out;
  out.first_kill_times = first;
  out.survivor_positions = std::move(survivor);
  out.rightmost = empirical_survival(cfg.grid, std::move(first), "S2");
  out.leftmost = empirical_survival(cfg.grid, std::move(last), "S1");
  return out;
}

EmpiricalCurve simulate_single_particle(const McConfig& cfg) {
  cfg.validate_diffusion();
  const auto n = static_cast<std::size_t>(cfg.n_realizations);
  const auto max_steps = static_cast<long>(std::ceil(cfg.horizon / cfg.dt));
  const double sigma = std::sqrt(2.0 * cfg.dt);
  std::vector<double> kill(n, kNever);

  for_each_index(cfg.exec, n, [&](std::size_t r) {
    PhiloxStream rng(cfg.seed, r);
    double x = rng.uniform();
    long step = 0;
    while (step < max_steps) {
      const auto [z1, z2] = rng.normal_pair();
      for (double z : {z1, z2}) {
        ++step;
        x = std::abs(x + sigma * z);
        if (x >= 1.0) {
          kill[r] = static_cast<double>(step) * cfg.dt;
          return;
        }
        if (step >= max_steps) return;
      }
    }
  });
  return empirical_survival(cfg.grid, std::move(kill), "s");
}

}  // namespace fpt
