#include "polyproj/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>

#include <CLI11.hpp>

#include "polyproj/angle_cache.hpp"
#include "polyproj/errors.hpp"
#include "polyproj/expected.hpp"
#include "polyproj/report.hpp"
#include "polyproj/simulate.hpp"

namespace polyproj {

namespace {

struct CommonOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0x5eed;
  unsigned workers = 0;
  std::string format = "csv";
  std::string output;
  std::string angle_cache;
  bool timing = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--samples", o.samples, "Monte Carlo samples per angle")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--workers", o.workers, "worker threads (default: $POLYPROJ_WORKERS or all cores)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output,-o", o.output, "write the report to this file");
  cmd->add_option("--angle-cache", o.angle_cache, "append-only angle cache file");
  cmd->add_flag("--timing", o.timing, "record per-row wall time (breaks byte-identical output)");
}

class Session {
 public:
  explicit Session(const CommonOptions& o) : opts_(o) {
    if (!o.angle_cache.empty())
      cache_ = std::make_unique<AngleCache>(o.angle_cache);
    else
      cache_ = std::make_unique<AngleCache>();
    cfg_.samples = o.samples;
    cfg_.seed = o.seed;
    cfg_.workers = o.workers;
    cfg_.cache = cache_.get();
  }
  const MCConfig& angles() const { return cfg_; }

  template <class F>
  double timed(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    if (!opts_.timing) return 0.0;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  void emit(const std::vector<ReportRow>& rows, std::ostream& out) const {
    const ReportFormat fmt = parse_format(opts_.format);
    if (opts_.output.empty()) {
      write_report(out, rows, fmt);
      return;
    }
    std::ofstream file(opts_.output, std::ios::binary);
    if (!file) throw Error("cannot open output file '" + opts_.output + "'");
    write_report(file, rows, fmt);
  }

 private:
  CommonOptions opts_;
  std::unique_ptr<AngleCache> cache_;
  MCConfig cfg_;
};

std::string equivalent_family(const Subject& s) {
  if (const auto* f = std::get_if<Family>(&s)) return std::string(to_string(*f));
  switch (std::get<Model>(s)) {
    case Model::Gaussian: return "simplex";
    case Model::Symmetric: return "crosspolytope";
    case Model::Zonotope: return "cube";
  }
  return {};
}

ReportRow make_row(const Subject& s, int n, int d, int k, const ValueEstimate& v) {
  ReportRow r;
  r.model = std::holds_alternative<Family>(s) ? "projection" : subject_name(s);
  r.family = equivalent_family(s);
  r.n = n;
  r.d = d;
  r.k = k;
  r.value = v.value;
  r.stderr_ = v.std_error;
  r.method = v.exact ? "exact" : "monte_carlo";
  return r;
}

std::string sim_family(SimModel m) {
  switch (m) {
    case SimModel::Gaussian:
    case SimModel::ProjectedSimplex: return "simplex";
    case SimModel::Symmetric:
    case SimModel::ProjectedCrosspolytope: return "crosspolytope";
    case SimModel::Zonotope:
    case SimModel::ProjectedCube: return "cube";
  }
  return {};
}

Subject pick_subject(const std::string& family, const std::string& model) {
  if (!family.empty() && !model.empty()) throw InvalidArgument("give either --family or --model, not both");
  if (!family.empty()) return parse_family(family);
  if (!model.empty()) return parse_model(model);
  throw InvalidArgument("one of --family or --model is required");
}

std::vector<int> k_values(const std::vector<int>& ks, bool all_k, int d, int k_max) {
  if (all_k && !ks.empty()) throw InvalidArgument("give either --k or --all-k, not both");
  if (all_k) {
    std::vector<int> out;
    for (int k = 0; k <= k_max; ++k) out.push_back(k);
    return out;
  }
  if (ks.empty()) throw InvalidArgument("one of --k or --all-k is required");
  for (int k : ks)
    if (k < 0) throw InvalidArgument("k must be >= 0");
  (void)d;
  return ks;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expected f-vectors of random projections of regular polytopes"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // expected
  CommonOptions exp_opts;
  std::string exp_family, exp_model;
  int exp_n = 0, exp_d = 0;
  std::vector<int> exp_k;
  bool exp_all_k = false;
  auto* expected = app.add_subcommand("expected", "expected face numbers from the angle-sum formula");
  expected->add_option("--family", exp_family, "simplex, crosspolytope or cube");
  expected->add_option("--model", exp_model, "gaussian, symmetric or zonotope");
  expected->add_option("--n", exp_n, "polytope dimension (family) or number of points (model)")->required();
  expected->add_option("--d", exp_d, "projection dimension")->required();
  expected->add_option("--k", exp_k, "face dimension(s)");
  expected->add_flag("--all-k", exp_all_k, "all k in [0, d-1]");
  add_common(expected, exp_opts);

  // simulate
  CommonOptions sim_opts;
  std::string sim_model;
  SimConfig sim_cfg;
  std::string sim_dump;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo face counts of sampled hulls");
  simulate->add_option("--model", sim_model,
                       "gaussian, symmetric, zonotope, projected_simplex, projected_crosspolytope, "
                       "projected_cube")
      ->required();
  simulate->add_option("--n", sim_cfg.n, "points (gaussian models) or polytope dimension (projected)")
      ->required();
  simulate->add_option("--d", sim_cfg.d, "ambient dimension, 2..6")->required();
  simulate->add_option("--reps", sim_cfg.replications, "replications")->check(CLI::PositiveNumber);
  simulate->add_option("--dump", sim_dump, "write one CSV line per replication");
  add_common(simulate, sim_opts);

  // monotonicity
  CommonOptions mono_opts;
  std::vector<std::string> mono_families, mono_models;
  int mono_d = 0, mono_n_min = 1, mono_n_max = 0;
  std::vector<int> mono_k;
  bool mono_all_k = false;
  auto* mono = app.add_subcommand("monotonicity", "monotonicity in n of expected face numbers");
  mono->add_option("--family", mono_families, "simplex, crosspolytope or cube (repeatable)");
  mono->add_option("--model", mono_models, "gaussian, symmetric or zonotope (repeatable)");
  mono->add_option("--d", mono_d, "projection dimension")->required();
  mono->add_option("--k", mono_k, "face dimension(s)");
  mono->add_flag("--all-k", mono_all_k, "all k in [0, d]");
  mono->add_option("--n-min", mono_n_min, "first n");
  mono->add_option("--n-max", mono_n_max, "last n")->required();
  add_common(mono, mono_opts);

  // poisson
  CommonOptions poi_opts;
  std::string poi_model = "gaussian";
  int poi_d = 0;
  std::vector<int> poi_k;
  std::vector<double> poi_t;
  double poi_t_min = 1.0, poi_t_max = 30.0, poi_t_step = 1.0, poi_eps = 1e-8, poi_b = 0.0;
  auto* poisson = app.add_subcommand("poisson", "Poissonized expected face numbers on a grid of t");
  poisson->add_option("--model", poi_model, "gaussian, symmetric or zonotope");
  poisson->add_option("--d", poi_d, "dimension")->required();
  poisson->add_option("--k", poi_k, "face dimension(s)")->required();
  poisson->add_option("--t", poi_t, "explicit intensities (overrides the grid)");
  poisson->add_option("--t-min", poi_t_min, "first intensity");
  poisson->add_option("--t-max", poi_t_max, "last intensity");
  poisson->add_option("--t-step", poi_t_step, "grid step");
  poisson->add_option("--eps", poi_eps, "tail tolerance of the truncated mixture");
  poisson->add_option("--b", poi_b, "exponent of the T-functional column (gaussian model)");
  add_common(poisson, poi_opts);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (expected->parsed()) {
      Session session(exp_opts);
      const Subject subject = pick_subject(exp_family, exp_model);
      std::vector<ReportRow> rows;
      for (int k : k_values(exp_k, exp_all_k, exp_d, exp_d - 1)) {
        ValueEstimate v;
        const double wall = session.timed([&] { v = expected_value(subject, exp_n, exp_d, k, session.angles()); });
        ReportRow row = make_row(subject, exp_n, exp_d, k, v);
        row.wall_time = wall;
        rows.push_back(std::move(row));
      }
      session.emit(rows, out);
    } else if (simulate->parsed()) {
      Session session(sim_opts);
      sim_cfg.model = parse_sim_model(sim_model);
      sim_cfg.seed = sim_opts.seed;
      sim_cfg.workers = sim_opts.workers;
      SimResult result;
      const double wall = session.timed([&] { result = simulate_expected_f(sim_cfg); });
      if (!sim_dump.empty()) {
        std::ofstream dump(sim_dump, std::ios::binary);
        if (!dump) throw Error("cannot open dump file '" + sim_dump + "'");
        write_raw_dump(dump, sim_cfg, result);
      }
      std::vector<ReportRow> rows;
      for (const auto& [k, v] : result.expected.entries) {
        const ValueEstimate ref = formula_value(sim_cfg, k, session.angles());
        ReportRow r;
        r.model = std::string(to_string(sim_cfg.model));
        r.family = sim_family(sim_cfg.model);
        r.n = sim_cfg.n;
        r.d = sim_cfg.d;
        r.k = k;
        r.value = v.value;
        r.stderr_ = v.std_error;
        r.method = "simulation";
        r.reference = ref.value;
        const double se = std::hypot(v.std_error, ref.std_error);
        const double diff = v.value - ref.value;
        if (se > 0.0)
          r.z_score = diff / se;
        else if (diff == 0.0)
          r.z_score = 0.0;
        r.wall_time = wall;
        rows.push_back(std::move(r));
      }
      if (result.resampled > 0) err << "resampled " << result.resampled << " degenerate draws\n";
      session.emit(rows, out);
    } else if (mono->parsed()) {
      Session session(mono_opts);
      std::vector<Subject> subjects;
      for (const auto& f : mono_families) subjects.emplace_back(parse_family(f));
      for (const auto& m : mono_models) subjects.emplace_back(parse_model(m));
      if (subjects.empty()) throw InvalidArgument("monotonicity needs at least one --family or --model");
      const auto ks = k_values(mono_k, mono_all_k, mono_d, mono_d);
      std::vector<ReportRow> rows;
      bool all_strict = true;
      for (const auto& s : subjects) {
        for (int k : ks) {
          std::vector<MonotonicityRow> table;
          const double wall = session.timed(
              [&] { table = monotonicity_table(s, mono_d, k, mono_n_min, mono_n_max, session.angles()); });
          int expected_pairs = 0, strict_pairs = 0, other_strict = 0;
          for (const auto& t : table) {
            ReportRow r = make_row(s, t.n, mono_d, k, t.value);
            r.strict_increase = t.strict_increase;
            r.wall_time = wall;
            rows.push_back(std::move(r));
            if (!t.strict_increase) continue;
            if (t.strict_expected) {
              ++expected_pairs;
              if (*t.strict_increase) ++strict_pairs;
            } else if (*t.strict_increase) {
              ++other_strict;
            }
          }
          const bool ok = strict_pairs == expected_pairs;
          all_strict = all_strict && ok;
          err << "monotonicity " << subject_name(s) << " d=" << mono_d << " k=" << k << ": "
              << strict_pairs << "/" << expected_pairs << " expected-strict pairs increase, "
              << other_strict << " further strict pairs: " << (ok ? "PASS" : "FAIL") << "\n";
        }
      }
      err << "summary: all expected-strict pairs increase: " << (all_strict ? "yes" : "no") << "\n";
      session.emit(rows, out);
    } else if (poisson->parsed()) {
      Session session(poi_opts);
      const Model model = parse_model(poi_model);
      if (poi_b < 0.0) throw InvalidArgument("--b must be >= 0");
      if (!(poi_eps > 0.0)) throw InvalidArgument("--eps must be > 0");
      std::vector<double> grid = poi_t;
      if (grid.empty()) {
        if (!(poi_t_step > 0.0) || !(poi_t_min > 0.0) || poi_t_max < poi_t_min)
          throw InvalidArgument("need 0 < t-min <= t-max and t-step > 0");
        const long steps = static_cast<long>(std::floor((poi_t_max - poi_t_min) / poi_t_step + 1e-9));
        for (long i = 0; i <= steps; ++i) grid.push_back(poi_t_min + static_cast<double>(i) * poi_t_step);
      }
      std::vector<ReportRow> rows;
      bool monotone = true;
      for (int k : poi_k) {
        PoissonMixture mix(model, poi_d, k, session.angles());
        std::optional<PoissonResult> prev;
        for (double t : grid) {
          PoissonResult res;
          const double wall = session.timed([&] { res = mix.evaluate(t, poi_eps); });
          ReportRow r;
          r.model = std::string(to_string(model));
          r.family = equivalent_family(model);
          r.d = poi_d;
          r.k = k;
          r.t = t;
          r.b = poi_b;
          r.value = res.value;
          r.stderr_ = res.std_error;
          r.method = "poisson";
          if (model == Model::Gaussian) r.t_functional = res.value * t_functional_factor(poi_d, k, poi_b);
          if (prev) {
            const bool up = res.value - prev->value >=
                            -(3.0 * (res.std_error + prev->std_error) + 2.0 * poi_eps);
            r.strict_increase = up;
            monotone = monotone && up;
          }
          r.wall_time = wall;
          rows.push_back(std::move(r));
          prev = res;
        }
      }
      err << "summary: non-decreasing in t: " << (monotone ? "yes" : "no") << "\n";
      session.emit(rows, out);
    }
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace polyproj
