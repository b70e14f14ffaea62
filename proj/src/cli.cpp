#include "fpt/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include "CLI11.hpp"
#include "fpt/bipoisson.hpp"
#include "fpt/cds.hpp"
#include "fpt/error.hpp"
#include "fpt/io.hpp"
#include "fpt/montecarlo.hpp"
#include "fpt/singlefile.hpp"
#include "fpt/trivpoisson.hpp"
#include "fpt/validate.hpp"

namespace fpt {

namespace {

struct Shared {
  std::string grid;
  std::string format = "csv";
  std::string output_dir;
  std::uint64_t seed = 1;
  long n = 10'000;
  double dt = 1e-5;
  double horizon = 0.0;  // 0: last grid point
  int k_trunc = 64;
  double quad_tol = 1e-12;
  double time_floor = 1e-3;
  bool fpt = false;
};

struct BiArgs {
  double l1 = 1.0, l2 = 2.0, l12 = 0.8;
  int M = 5;
};

struct TriArgs {
  double l[3] = {1.2, 0.5, 3.3};
  double c[3] = {1.4, 3.1, 0.12};
};

void add_output_options(CLI::App* app, Shared& s, const std::string& default_grid) {
  s.grid = default_grid;
  app->add_option("--grid", s.grid, "time grid start:stop:step")->capture_default_str();
  app->add_option("--out", s.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app->add_option("--output-dir", s.output_dir, "write one file per curve into DIR");
}

void add_bi_options(CLI::App* app, BiArgs& b) {
  app->add_option("--l1", b.l1, "intensity of Y1")->capture_default_str();
  app->add_option("--l2", b.l2, "intensity of Y2")->capture_default_str();
  app->add_option("--l12", b.l12, "intensity of the common stream Y12")->capture_default_str();
  app->add_option("--M", b.M, "killing barrier")->capture_default_str();
}

void add_tri_options(CLI::App* app, TriArgs& a) {
  app->add_option("--l1", a.l[0])->capture_default_str();
  app->add_option("--l2", a.l[1])->capture_default_str();
  app->add_option("--l3", a.l[2])->capture_default_str();
  app->add_option("--l12", a.c[0])->capture_default_str();
  app->add_option("--l13", a.c[1])->capture_default_str();
  app->add_option("--l23", a.c[2])->capture_default_str();
}

void add_spectral_options(CLI::App* app, Shared& s) {
  app->add_option("--k-trunc", s.k_trunc, "modes per index")->capture_default_str();
  app->add_option("--quad-tol", s.quad_tol, "absolute quadrature tolerance")->capture_default_str();
  app->add_option("--time-floor", s.time_floor, "smallest admissible t")->capture_default_str();
}

void add_mc_options(CLI::App* app, Shared& s) {
  app->add_option("--seed", s.seed, "generator seed")->capture_default_str();
  app->add_option("--n", s.n, "number of realizations")->capture_default_str();
  app->add_option("--horizon", s.horizon, "simulation horizon (default: last grid point)");
}

BiPoissonParams bi_params(const BiArgs& b) {
  BiPoissonParams p{b.l1, b.l2, b.l12, b.M};
  p.validate();
  return p;
}

TriPoissonParams tri_params(const TriArgs& a) {
  TriPoissonParams p{{a.l[0], a.l[1], a.l[2]}, {a.c[0], a.c[1], a.c[2]}};
  p.validate();
  return p;
}

SpectralParams spectral_params(const Shared& s) {
  SpectralParams sp;
  sp.K = s.k_trunc;
  sp.quad_tol.abs_tol = s.quad_tol;
  sp.time_floor = s.time_floor;
  sp.validate();
  return sp;
}

ParameterList bi_parameters(const BiArgs& b) {
  return {{"l1", format_double(b.l1)},
          {"l2", format_double(b.l2)},
          {"l12", format_double(b.l12)},
          {"M", std::to_string(b.M)}};
}

ParameterList tri_parameters(const TriArgs& a) {
  return {{"l1", format_double(a.l[0])},  {"l2", format_double(a.l[1])},
          {"l3", format_double(a.l[2])},  {"l12", format_double(a.c[0])},
          {"l13", format_double(a.c[1])}, {"l23", format_double(a.c[2])}};
}

// Survival curves are checked against their invariants before being emitted;
// density curves only need to be finite.
CurveTable evaluate(const TimeGrid& grid, const std::string& label, const std::string& model,
                    bool is_survival, const std::function<double(double)>& f) {
  const auto values = map_points(Execution::parallel, grid.points(), f);
  if (is_survival) {
    SurvivalCurve curve{grid, values, label, model};
    curve.validate(1e-9);
    return CurveTable::from(curve);
  }
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i]))
      throw NumericalError(label + ": non-finite density at t = " + format_double(grid[i]));
  return {label, grid.points(), values, {}};
}

void emit(const Shared& s, const std::string& model, const ParameterList& parameters,
          const std::vector<CurveTable>& curves, std::ostream& out) {
  namespace fs = std::filesystem;
  if (!s.output_dir.empty()) fs::create_directories(s.output_dir);
  auto open = [&](const std::string& name) {
    const auto path = fs::path(s.output_dir) / name;
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    return file;
  };
  if (s.format == "json") {
    const std::string doc = to_json(model, parameters, curves);
    if (s.output_dir.empty()) {
      out << doc << '\n';
    } else {
      auto file = open(model + ".json");
      file << doc << '\n';
    }
    return;
  }
  for (const auto& c : curves) {
    if (s.output_dir.empty()) {
      out << "# curve: " << c.label << " model: " << model << '\n';
      write_csv(out, c);
    } else {
      auto file = open(c.label + ".csv");
      write_csv(file, c);
    }
  }
}

McConfig mc_config(const Shared& s) {
  McConfig cfg;
  cfg.grid = TimeGrid::parse(s.grid);
  cfg.n_realizations = s.n;
  cfg.seed = s.seed;
  cfg.dt = s.dt;
  cfg.horizon = s.horizon > 0.0 ? s.horizon : cfg.grid.back();
  if (!(cfg.horizon > 0.0)) cfg.horizon = 1.0;
  return cfg;
}

int print_validation(std::ostream& out) {
  const auto results = run_invariant_suites();
  int failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.module << ": " << r.name;
    if (!r.passed) {
      out << " (" << r.detail << ')';
      ++failed;
    }
    out << '\n';
  }
  out << results.size() - failed << '/' << results.size() << " invariants hold\n";
  return failed == 0 ? kExitOk : kExitNumerical;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"First-passage-time order statistics: survival curves, Monte Carlo, CDS spreads",
               "fpt-order"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(0, 1);

  bool validate = false;
  app.add_flag("--validate", validate, "run the invariant suites and report pass/fail");

  Shared shared;
  BiArgs bi;
  TriArgs tri;
  std::string model_file;
  int order = 0;
  bool with_reference = false;

  auto* bi_cmd = app.add_subcommand("bipoisson", "bivariate Poisson with killing barrier M");
  add_output_options(bi_cmd, shared, "0:4:0.05");
  add_bi_options(bi_cmd, bi);
  bi_cmd->add_flag("--fpt", shared.fpt, "emit densities F2, F1 instead of survivals");

  auto* sf_cmd = app.add_subcommand("singlefile", "two hard-core Brownian particles on [0, 1]");
  add_output_options(sf_cmd, shared, "0.01:1:0.01");
  add_spectral_options(sf_cmd, shared);
  sf_cmd->add_flag("--fpt", shared.fpt, "emit densities F2, F1 instead of survivals");
  sf_cmd->add_flag("--with-reference", with_reference, "also emit the 2s - s^2 closed form");

  auto* tri_cmd = app.add_subcommand("trivariate", "trivariate Poisson, barrier 1");
  add_output_options(tri_cmd, shared, "0:3:0.05");
  add_tri_options(tri_cmd, tri);
  tri_cmd->add_flag("--fpt", shared.fpt, "emit densities F3, F2, F1 instead of survivals");

  auto* cds_cmd = app.add_subcommand("cds", "nth-to-default swap par spread");
  cds_cmd->add_option("--model-file", model_file, "key = value contract and model file")
      ->required()
      ->check(CLI::ExistingFile);
  cds_cmd->add_option("--order", order, "default order n (overrides the file)")
      ->check(CLI::Range(1, 3));
  cds_cmd->add_option("--out", shared.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo estimates with standard errors");
  mc_cmd->require_subcommand(1);
  auto* mc_bi = mc_cmd->add_subcommand("bipoisson");
  add_output_options(mc_bi, shared, "0:4:0.25");
  add_bi_options(mc_bi, bi);
  add_mc_options(mc_bi, shared);
  auto* mc_tri = mc_cmd->add_subcommand("trivariate");
  add_output_options(mc_tri, shared, "0:3:0.25");
  add_tri_options(mc_tri, tri);
  add_mc_options(mc_tri, shared);
  auto* mc_sf = mc_cmd->add_subcommand("singlefile");
  add_output_options(mc_sf, shared, "0:1:0.05");
  add_mc_options(mc_sf, shared);
  mc_sf->add_option("--dt", shared.dt, "Euler-Maruyama time step")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate) return print_validation(out);

    if (bi_cmd->parsed()) {
      const auto p = bi_params(bi);
      const auto grid = TimeGrid::parse(shared.grid);
      std::vector<CurveTable> curves;
      if (shared.fpt) {
        curves.push_back(evaluate(grid, "F2", "bipoisson", false,
                                  [&](double t) { return fpt_both(p, t); }));
        curves.push_back(evaluate(grid, "F1", "bipoisson", false,
                                  [&](double t) { return fpt_last(p, t); }));
      } else {
        curves.push_back(evaluate(grid, "S2", "bipoisson", true,
                                  [&](double t) { return survival_both(p, t); }));
        curves.push_back(evaluate(grid, "S1", "bipoisson", true,
                                  [&](double t) { return survival_last(p, t); }));
      }
      emit(shared, "bipoisson", bi_parameters(bi), curves, out);
    } else if (sf_cmd->parsed()) {
      const auto sp = spectral_params(shared);
      const auto grid = TimeGrid::parse(shared.grid);
      std::vector<CurveTable> curves;
      if (shared.fpt) {
        curves.push_back(evaluate(grid, "F2", "singlefile", false,
                                  [&](double t) { return fpt_both_sf(sp, t); }));
        curves.push_back(evaluate(grid, "F1", "singlefile", false,
                                  [&](double t) { return fpt_last_sf(sp, t); }));
      } else {
        curves.push_back(evaluate(grid, "S2", "singlefile", true,
                                  [&](double t) { return survival_both_sf(sp, t); }));
        curves.push_back(evaluate(grid, "S1", "singlefile", true,
                                  [&](double t) { return survival_last_sf(sp, t); }));
        if (with_reference)
          curves.push_back(evaluate(grid, "S1_reference", "singlefile", true,
                                    [&](double t) { return reflection_reference(sp, t); }));
      }
      emit(shared, "singlefile",
           {{"K", std::to_string(sp.K)},
            {"quad_tol", format_double(sp.quad_tol.abs_tol)},
            {"time_floor", format_double(sp.time_floor)}},
           curves, out);
    } else if (tri_cmd->parsed()) {
      const TriPoissonModel m(tri_params(tri));
      const auto grid = TimeGrid::parse(shared.grid);
      std::vector<CurveTable> curves;
      for (int n = 3; n >= 1; --n) {
        const ExpSum& f = shared.fpt ? m.fpt(n) : m.survival(n);
        curves.push_back(evaluate(grid, (shared.fpt ? "F" : "S") + std::to_string(n),
                                  "trivariate", !shared.fpt, [&](double t) { return f(t); }));
      }
      emit(shared, "trivariate", tri_parameters(tri), curves, out);
    } else if (cds_cmd->parsed()) {
      auto cfg = load_cds_config(model_file);
      if (order > 0) cfg.contract.order = order;
      cfg.contract.validate();
      const TriPoissonModel m(cfg.model);
      const auto q = par_spread(cfg.contract, m);
      if (shared.format == "json") {
        const CurveTable row{"quote", {static_cast<double>(cfg.contract.order)}, {q.spread}, {}};
        ParameterList params = tri_parameters(
            {{cfg.model.single[0], cfg.model.single[1], cfg.model.single[2]},
             {cfg.model.cross[0], cfg.model.cross[1], cfg.model.cross[2]}});
        params.push_back({"order", std::to_string(cfg.contract.order)});
        params.push_back({"maturity", format_double(cfg.contract.maturity)});
        params.push_back({"short_rate", format_double(cfg.contract.short_rate)});
        params.push_back({"fee_pv", format_double(q.fee_pv)});
        params.push_back({"protection_pv", format_double(q.protection_pv)});
        out << to_json("cds", params, {row}) << '\n';
      } else {
        out << "order,spread,fee_pv,protection_pv\n"
            << cfg.contract.order << ',' << format_double(q.spread) << ','
            << format_double(q.fee_pv) << ',' << format_double(q.protection_pv) << '\n';
      }
    } else if (mc_cmd->parsed()) {
      const auto cfg = mc_config(shared);
      ParameterList params{{"seed", std::to_string(shared.seed)},
                           {"n", std::to_string(shared.n)},
                           {"horizon", format_double(cfg.horizon)}};
      std::vector<CurveTable> curves;
      std::string model;
      if (mc_bi->parsed()) {
        model = "mc-bipoisson";
        const auto r = simulate_bipoisson(bi_params(bi), cfg);
        curves = {CurveTable::from(r.first), CurveTable::from(r.last)};
        auto extra = bi_parameters(bi);
        params.insert(params.end(), extra.begin(), extra.end());
      } else if (mc_tri->parsed()) {
        model = "mc-trivariate";
        for (const auto& c : simulate_trivariate(tri_params(tri), cfg))
          curves.push_back(CurveTable::from(c));
        auto extra = tri_parameters(tri);
        params.insert(params.end(), extra.begin(), extra.end());
      } else {
        model = "mc-singlefile";
        const auto r = simulate_singlefile(cfg);
        curves = {CurveTable::from(r.rightmost), CurveTable::from(r.leftmost)};
        params.push_back({"dt", format_double(cfg.dt)});
      }
      emit(shared, model, params, curves, out);
    } else {
      err << app.help();
      return kExitUsage;
    }
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace fpt
