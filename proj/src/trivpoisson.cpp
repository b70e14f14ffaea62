#include "fpt/trivpoisson.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "fpt/bipoisson.hpp"
#include "fpt/error.hpp"
#include "fpt/specfun.hpp"

namespace fpt {

namespace {

int pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == 0 && j == 1) return 0;
  if (i == 0 && j == 2) return 1;
  if (i == 1 && j == 2) return 2;
  throw DomainError("TriPoissonParams: invalid coordinate pair");
}

void check_permutation(int i, int j, int r, const char* op) {
  const bool in_range = i >= 0 && i < 3 && j >= 0 && j < 3 && r >= 0 && r < 3;
  if (!in_range || i == j || i == r || j == r)
    throw DomainError(std::string(op) + ": (i, j, r) must permute {0, 1, 2}");
}

unsigned bit(int i) { return 1u << i; }

// Rate of the single stream or common shock that kills exactly `killed`.
double transition_rate(const TriPoissonParams& p, const std::vector<int>& killed) {
  if (killed.size() == 1) return p.single[static_cast<std::size_t>(killed[0])];
  if (killed.size() == 2) return p.pair(killed[0], killed[1]);
  return 0.0;  // no three-way stream in this model
}

}  // namespace

void TriPoissonParams::validate() const {
  for (double v : single)
    if (!(v >= 0.0)) throw DomainError("TriPoissonParams: intensities must be >= 0");
  for (double v : cross)
    if (!(v >= 0.0))
      throw DomainError("TriPoissonParams: cross intensities must be >= 0");
  if (!(a() > 0.0)) throw DomainError("TriPoissonParams: total rate must be > 0");
}

double TriPoissonParams::a() const {
  return single[0] + single[1] + single[2] + cross[0] + cross[1] + cross[2];
}

double TriPoissonParams::pair(int i, int j) const {
  return cross[static_cast<std::size_t>(pair_index(i, j))];
}

double TriPoissonParams::exit_rate(unsigned alive_mask) const {
  double rate = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (!(alive_mask & bit(i))) continue;
    rate += single[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < 3; ++j)
      if (alive_mask & bit(j)) rate += pair(i, j);
  }
  return rate;
}

double trivariate_pmf(const std::array<int, 3>& x, const TriPoissonParams& params,
                      double t) {
  params.validate();
  if (!(t >= 0.0)) throw DomainError("trivariate_pmf: t must be >= 0");
  for (int v : x)
    if (v < 0) return 0.0;
  const auto& l = params.single;
  const auto& c = params.cross;  // 12, 13, 23
  auto table = [t](double rate, int n) {
    std::vector<double> p(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) p[k] = poisson_pmf(k, rate, t);
    return p;
  };
  const auto p0 = table(l[0], x[0]), p1 = table(l[1], x[1]), p2 = table(l[2], x[2]);
  const auto p12 = table(c[0], std::min(x[0], x[1]));
  const auto p13 = table(c[1], std::min(x[0], x[2]));
  const auto p23 = table(c[2], std::min(x[1], x[2]));
  CompensatedSum sum;
  for (int y12 = 0; y12 <= std::min(x[0], x[1]); ++y12) {
    for (int y13 = 0; y12 + y13 <= x[0] && y13 <= x[2]; ++y13) {
      const double outer = p12[y12] * p13[y13] * p0[x[0] - y12 - y13];
      for (int y23 = 0; y12 + y23 <= x[1] && y13 + y23 <= x[2]; ++y23)
        sum += outer * p1[x[1] - y12 - y23] * p2[x[2] - y13 - y23] * p23[y23];
    }
  }
  return sum.value();
}

ExpSum survival3(const TriPoissonParams& params) {
  params.validate();
  return ExpSum::exponential(1.0, params.a());
}

ExpSum contrib_one_kill(const TriPoissonParams& params, int i, int j, int r) {
  params.validate();
  check_permutation(i, j, r, "contrib_one_kill");
  const double remaining = params.exit_rate(bit(j) | bit(r));
  return params.single[static_cast<std::size_t>(i)] *
         ordered_exponential_integral({remaining, params.a()});
}

ExpSum contrib_two_sequential(const TriPoissonParams& params, int i, int j,
                              int r) {
  params.validate();
  check_permutation(i, j, r, "contrib_two_sequential");
  const double pair_alive = params.exit_rate(bit(j) | bit(r));
  const double last_alive = params.single[static_cast<std::size_t>(r)];
  return params.single[static_cast<std::size_t>(i)] *
         params.single[static_cast<std::size_t>(j)] *
         ordered_exponential_integral({last_alive, pair_alive, params.a()});
}

ExpSum contrib_two_simultaneous(const TriPoissonParams& params, int i, int j,
                                int r) {
  params.validate();
  check_permutation(i, j, r, "contrib_two_simultaneous");
  const double last_alive = params.single[static_cast<std::size_t>(r)];
  return params.pair(i, j) *
         ordered_exponential_integral({last_alive, params.a()});
}

ExpSum path_contribution(const TriPoissonParams& params, const KillPath& path) {
  if (path.terminal().size() != 3)
    throw DomainError("path_contribution: path must live on the 3-coordinate graph");
  const auto& nodes = path.nodes();
  auto alive_mask = [](const GammaNode& n) { return ~n.dead_mask() & 7u; };
  auto others = [](std::vector<int> killed) {
    std::vector<int> rest;
    for (int c = 0; c < 3; ++c)
      if (std::find(killed.begin(), killed.end(), c) == killed.end())
        rest.push_back(c);
    return rest;
  };

  if (path.steps() == 1) {
    const auto killed = path.killed_at(1);
    const auto rest = others(killed);
    if (killed.size() == 1) return contrib_one_kill(params, killed[0], rest[0], rest[1]);
    if (killed.size() == 2)
      return contrib_two_simultaneous(params, killed[0], killed[1], rest[0]);
  }
  if (path.steps() == 2 && path.terminal().alive_count() == 1 &&
      path.killed_at(1).size() == 1) {
    const int i = path.killed_at(1)[0];
    const int j = path.killed_at(2)[0];
    return contrib_two_sequential(params, i, j, 3 - i - j);
  }

  // Remaining shapes end with every coordinate dead: product of the
  // transition rates times the time-ordered exponential integral.
  double weight = 1.0;
  std::vector<double> rates;
  for (auto it = nodes.rbegin(); it != nodes.rend(); ++it)
    rates.push_back(params.exit_rate(alive_mask(*it)));
  for (std::size_t s = 1; s < nodes.size(); ++s)
    weight *= transition_rate(params, path.killed_at(s));
  if (weight == 0.0) return {};
  return weight * ordered_exponential_integral(rates);
}

namespace {

ExpSum assemble(const TriPoissonParams& params, const ExpSum& above, int n_alive) {
  static const GammaGraph graph = build_gamma(3);
  ExpSum s = above;
  for (const auto& path : enumerate_paths(graph, n_alive))
    s += path_contribution(params, path);
  s.simplify();
  return s;
}

}  // namespace

ExpSum survival2(const TriPoissonParams& params) {
  return assemble(params, survival3(params), 2);
}

ExpSum survival1(const TriPoissonParams& params) {
  return assemble(params, survival2(params), 1);
}

TriPoissonModel::TriPoissonModel(const TriPoissonParams& params) : params_(params) {
  survival_[2] = survival3(params);
  survival_[1] = assemble(params, survival_[2], 2);
  survival_[0] = assemble(params, survival_[1], 1);
  for (std::size_t n = 0; n < 3; ++n) fpt_[n] = survival_[n].derivative() * -1.0;
}

const ExpSum& TriPoissonModel::survival(int n) const {
  if (n < 1 || n > 3) throw DomainError("TriPoissonModel: n must be 1, 2 or 3");
  return survival_[static_cast<std::size_t>(n - 1)];
}

const ExpSum& TriPoissonModel::fpt(int n) const {
  if (n < 1 || n > 3) throw DomainError("TriPoissonModel: n must be 1, 2 or 3");
  return fpt_[static_cast<std::size_t>(n - 1)];
}

ExpSum fpt_n(const TriPoissonParams& params, int n) {
  return TriPoissonModel(params).fpt(n);
}

}  // namespace fpt
