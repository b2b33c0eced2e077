// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polyproj/angle_cache.hpp"
#include "polyproj/cli.hpp"
#include "polyproj/expected.hpp"
#include "polyproj/simulate.hpp"

using namespace polyproj;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

MCConfig angles(std::uint64_t samples, AngleCache* cache = nullptr) {
  MCConfig c;
  c.samples = samples;
  c.seed = 0x5eed;
  c.cache = cache;
  return c;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

double combined(double a, double b) { return std::hypot(a, b); }

// 1. cube formula equals the closed form and strictly increases in n
Outcome cube_exactness() {
  Outcome o;
  const MCConfig cfg = angles(1);
  for (int n = 1; n <= 12; ++n)
    for (int d = 1; d <= n; ++d)
      for (int k = 0; k < d; ++k) {
        const ValueEstimate v = expected_f_projection(Family::Cube, n, d, k, cfg);
        o.check(v.exact && v.exact_value && *v.exact_value == expected_f_cube_closed_form(n, d, k),
                "mismatch at n=" + std::to_string(n) + " d=" + std::to_string(d) + " k=" + std::to_string(k));
      }
  int pairs = 0;
  for (int d = 2; d <= 12; ++d)
    for (int k = 0; k < d; ++k)
      for (const auto& row : monotonicity_table(Family::Cube, d, k, 1, 12, cfg)) {
        if (!row.strict_expected) continue;
        ++pairs;
        o.check(row.strict_increase.value() && row.value.exact_value,
                "not strict at n=" + std::to_string(row.n) + " d=" + std::to_string(d) + " k=" + std::to_string(k));
      }
  if (o.pass) o.detail = std::to_string(pairs) + " exact strict pairs";
  return o;
}

// 2. every zonotope replication has the closed-form f-vector
Outcome zonotope_determinism() {
  Outcome o;
  int configs = 0;
  for (int d = 2; d <= 4; ++d)
    for (int n = 1; n <= 10; ++n) {
      SimConfig cfg;
      cfg.model = SimModel::Zonotope;
      cfg.n = n;
      cfg.d = d;
      cfg.replications = 100;
      const SimResult r = simulate_expected_f(cfg);
      ++configs;
      for (int k = 0; k < d; ++k) {
        const double expected = expected_f_zonotope(n, d, k).convert_to<double>();
        o.check(r.expected.entries.at(k).std_error == 0.0, "nonzero variance at n=" + std::to_string(n));
        for (const auto& s : r.samples)
          o.check(static_cast<double>(s.counts[k]) == expected,
                  "replication differs at n=" + std::to_string(n) + " d=" + std::to_string(d) +
                      " k=" + std::to_string(k));
      }
    }
  o.check(expected_f_zonotope(4, 3, 0) == 14, "(4,3,0) is not 14");
  if (o.pass) o.detail = std::to_string(configs) + " (n,d) pairs x 100 replications";
  return o;
}

// 3. simulated Gaussian polytopes against the projected-simplex formula
Outcome gaussian_equivalence(AngleCache& cache) {
  Outcome o;
  const double pinned = 12.0 * (M_PI - std::acos(1.0 / 3.0)) / (2.0 * M_PI);
  std::ostringstream detail;
  for (auto [n, d] : {std::pair{4, 2}, std::pair{5, 2}, std::pair{5, 3}, std::pair{6, 3}}) {
    SimConfig cfg;
    cfg.model = SimModel::Gaussian;
    cfg.n = n;
    cfg.d = d;
    cfg.replications = 100'000;
    const ValueEstimate sim = simulate_expected_f(cfg).expected.entries.at(0);
    const ValueEstimate f = expected_f_projection(Family::Simplex, n - 1, d, 0, angles(1'000'000, &cache));
    const double z = (sim.value - f.value) / combined(sim.std_error, f.std_error);
    detail << "(" << n << "," << d << ") z=" << fmt(z) << " ";
    o.check(std::abs(z) <= 3.0, "(" + std::to_string(n) + "," + std::to_string(d) + ") z=" + fmt(z));
    if (n == 4 && d == 2) {
      o.check(std::abs(f.value - pinned) <= 3.0 * f.std_error, "formula misses 3.6490: " + fmt(f.value));
      o.check(std::abs(sim.value - pinned) <= 3.0 * sim.std_error, "simulation misses 3.6490: " + fmt(sim.value));
    }
  }
  if (o.pass) o.detail = detail.str();
  return o;
}

// 4. random-frame projection of the simplex against Gaussian points
Outcome frame_vs_gaussian() {
  Outcome o;
  SimConfig g;
  g.model = SimModel::Gaussian;
  g.n = 5;
  g.d = 2;
  g.replications = 10'000;
  SimConfig p = g;
  p.model = SimModel::ProjectedSimplex;
  p.n = 4;  // five vertices
  const SimResult a = simulate_expected_f(g);
  const SimResult b = simulate_expected_f(p);
  std::ostringstream detail;
  for (int k : {0, 1}) {
    const ValueEstimate& x = a.expected.entries.at(k);
    const ValueEstimate& y = b.expected.entries.at(k);
    const double z = (x.value - y.value) / combined(x.std_error, y.std_error);
    detail << "k=" << k << " z=" << fmt(z) << " ";
    o.check(std::abs(z) <= 3.0, "k=" + std::to_string(k) + " z=" + fmt(z));
  }
  if (o.pass) o.detail = detail.str();
  return o;
}

// 5. vertex external angles partition space; tetrahedron solid angle; codimension one
Outcome angle_identities() {
  Outcome o;
  const MCConfig cfg = angles(1'000'000);
  for (int n = 1; n <= 12; ++n) {
    const AngleEstimate c = external_angle(Family::Cube, n, 0, cfg);
    o.check(c.is_exact() && std::ldexp(c.value, n) == 1.0, "cube vertex angles at n=" + std::to_string(n));
  }
  double worst = 0.0;
  for (Family f : {Family::Simplex, Family::Crosspolytope})
    for (int n = 1; n <= 6; ++n) {
      const double vertices = face_count(f, n, 0, FaceScope::Polytope).convert_to<double>();
      const AngleEstimate a = external_angle(f, n, 0, cfg);
      const double dev = std::abs(vertices * a.value - 1.0);
      const double tol = 3.0 * vertices * a.std_error;
      if (tol > 0) worst = std::max(worst, dev / (tol / 3.0));
      o.check(a.is_exact() ? vertices * a.value == 1.0 : dev <= tol,
              std::string(to_string(f)) + " n=" + std::to_string(n) + " sum=" + fmt(vertices * a.value));
    }
  const double tetra = (3.0 * std::acos(1.0 / 3.0) - M_PI) / (4.0 * M_PI);
  const AngleEstimate t = internal_angle(Family::Simplex, 3, 0, 3, cfg);
  o.check(std::abs(tetra - 0.043869) < 1e-6 && std::abs(t.value - tetra) <= 3.0 * t.std_error,
          "tetrahedron vertex angle " + fmt(t.value));
  for (Family f : {Family::Simplex, Family::Crosspolytope, Family::Cube})
    for (int n = 1; n <= 8; ++n) {
      const AngleEstimate facet = external_angle(f, n, n - 1, cfg);
      o.check(facet.is_exact() && facet.value == 0.5, "facet external angle " + std::string(to_string(f)));
      for (int k = 0; k + 1 <= n; ++k) {
        const AngleEstimate b = internal_angle(f, n, k, k + 1, cfg);
        o.check(b.is_exact() && b.value == 0.5, "codimension-one internal angle " + std::string(to_string(f)));
      }
    }
  if (o.pass) o.detail = "max |vertex sum - 1| = " + fmt(worst) + " SE; tetrahedron " + fmt(t.value);
  return o;
}

// 6. strict monotonicity tables and the flat top row
Outcome monotonicity_tables(AngleCache& cache) {
  Outcome o;
  const MCConfig cfg = angles(4'000'000, &cache);
  int strict = 0;
  struct Case {
    Subject subject;
    int n_max;
  };
  const std::vector<Case> cases{{Family::Simplex, 8},     {Family::Crosspolytope, 8}, {Family::Cube, 12},
                                {Model::Gaussian, 8},     {Model::Symmetric, 8},      {Model::Zonotope, 12}};
  for (const auto& c : cases)
    for (int d : {2, 3}) {
      for (int k = 0; k < d; ++k)
        for (const auto& row : monotonicity_table(c.subject, d, k, 1, c.n_max, cfg)) {
          if (!row.strict_expected) continue;
          ++strict;
          o.check(row.strict_increase.value(), subject_name(c.subject) + " d=" + std::to_string(d) +
                                                   " k=" + std::to_string(k) + " n=" + std::to_string(row.n - 1) +
                                                   "->" + std::to_string(row.n));
        }
      if (std::holds_alternative<Family>(c.subject)) {
        const Family f = std::get<Family>(c.subject);
        for (int n = 1; n <= c.n_max; ++n) {
          const ValueEstimate top = expected_f_projection(f, n, d, std::min(n, d), cfg);
          o.check(top.exact && top.value == 1.0, "top row not 1 at n=" + std::to_string(n));
        }
        const auto flat = monotonicity_table(f, d, d, d, c.n_max, cfg);
        for (const auto& row : flat)
          o.check(row.value.value == 1.0 && !row.strict_increase.value_or(false), "k=d row not flat");
      }
    }
  if (o.pass) o.detail = std::to_string(strict) + " strict pairs";
  return o;
}

// 7. cube intrinsic volumes are binomials; simplex and crosspolytope ones increase in n
Outcome intrinsic_volumes(AngleCache& cache) {
  Outcome o;
  const MCConfig cfg = angles(1'000'000, &cache);
  for (int n = 1; n <= 12; ++n)
    for (int k = 0; k <= n; ++k) {
      const ValueEstimate v = intrinsic_volume(Family::Cube, n, k, cfg);
      o.check(v.exact_value && *v.exact_value == Rational(oracle::choose(n, k)),
              "cube V_" + std::to_string(k) + " at n=" + std::to_string(n));
    }
  double min_z = 1e300;
  for (Family f : {Family::Simplex, Family::Crosspolytope})
    for (int n = 1; n <= 6; ++n)
      for (int j = 1; j <= std::min(3, n); ++j) {
        const ValueEstimate lo = intrinsic_volume(f, n, j, cfg);
        const ValueEstimate hi = intrinsic_volume(f, n + 1, j, cfg);
        const double se = combined(lo.std_error, hi.std_error);
        const double gap = hi.value - lo.value;
        if (se > 0) min_z = std::min(min_z, gap / se);
        o.check(gap > 3.0 * se && gap > 0.0,
                std::string(to_string(f)) + " V_" + std::to_string(j) + " n=" + std::to_string(n));
      }
  if (o.pass) o.detail = "smallest gap " + fmt(min_z) + " combined SE";
  return o;
}

// 8. Poissonized expectations and the T-functional factor
Outcome poissonization() {
  Outcome o;
  const double eps = 1e-8;
  const MCConfig cfg = angles(100'000);
  long deepest = 0;
  for (int k : {0, 1}) {
    PoissonMixture mix(Model::Gaussian, 2, k, cfg);
    std::optional<PoissonResult> prev;
    for (int t = 1; t <= 30; ++t) {
      const PoissonResult r = mix.evaluate(t, eps);
      const PoissonResult ext = mix.evaluate_to(t, r.truncation + 50);
      deepest = std::max(deepest, r.truncation);
      o.check(r.tail_bound < eps && std::abs(ext.value - r.value) <= eps,
              "truncation at t=" + std::to_string(t) + " off by " + fmt(ext.value - r.value));
      if (prev)
        o.check(r.value - prev->value >= -3.0 * (r.std_error + prev->std_error) - 2.0 * eps,
                "decrease at t=" + std::to_string(t) + " k=" + std::to_string(k));
      prev = r;
    }
  }
  for (double ef : {0.5, 3.6490, 17.25}) {
    o.check(t_functional_expected(10, 3, 2, 0.0, ef) == ef, "b = 0 does not reduce to E f_k");
    o.check(t_functional_expected(10, 3, 0, 2.5, ef) == ef, "k = 0 does not reduce to E f_k");
  }
  o.check(std::abs(t_functional_factor(2, 1, 1.0) - std::sqrt(M_PI / 2.0)) <= 1e-12, "factor is not sqrt(pi/2)");
  if (o.pass) o.detail = "deepest truncation L=" + std::to_string(deepest);
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 9. identical report bytes for any worker count
Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "polyproj_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::vector<std::string>> commands{
      {"expected", "--family", "crosspolytope", "--n", "6", "--d", "3", "--all-k", "--samples", "200000"},
      {"simulate", "--model", "gaussian", "--n", "6", "--d", "3", "--reps", "5000", "--samples", "200000"},
      {"simulate", "--model", "projected_crosspolytope", "--n", "5", "--d", "3", "--reps", "2000", "--samples",
       "200000", "--format", "json"},
      {"monotonicity", "--family", "simplex", "--model", "symmetric", "--d", "3", "--all-k", "--n-min", "1",
       "--n-max", "6", "--samples", "100000"},
      {"poisson", "--model", "gaussian", "--d", "2", "--k", "0", "1", "--t-max", "10", "--samples", "20000",
       "--b", "1"}};
  int index = 0;
  for (const auto& base : commands) {
    std::vector<std::string> outputs;
    for (const char* workers : {"1", "4", "1"}) {
      const auto path = dir / ("run" + std::to_string(index) + "_w" + workers + "_" + std::to_string(outputs.size()));
      auto args = base;
      args.insert(args.end(), {"--seed", "2718", "--workers", workers, "--output", path.string()});
      std::ostringstream out, err;
      const int code = run_cli(args, out, err);
      o.check(code == kExitOk, base[0] + " exited with " + std::to_string(code) + ": " + err.str());
      outputs.push_back(slurp(path));
    }
    o.check(!outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2],
            base[0] + " output differs across worker counts");
    ++index;
  }
  std::filesystem::remove_all(dir);
  if (o.pass) o.detail = std::to_string(commands.size()) + " commands x workers {1,4,1}";
  return o;
}

}  // namespace

int main() {
  AngleCache cache;
  struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "cube exactness", 1.0, cube_exactness},
      {2, "zonotope determinism", 60.0, zonotope_determinism},
      {3, "gaussian equivalence", 600.0, [&] { return gaussian_equivalence(cache); }},
      {4, "frame vs gaussian", 300.0, frame_vs_gaussian},
      {5, "angle identities", 300.0, angle_identities},
      {6, "monotonicity tables", 900.0, [&] { return monotonicity_tables(cache); }},
      {7, "intrinsic volumes", 300.0, [&] { return intrinsic_volumes(cache); }},
      {8, "poissonization and T-functional", 120.0, poissonization},
      {9, "determinism across workers", 600.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.limit_seconds) {
      o.pass = false;
      o.detail = "runtime " + fmt(secs) + " s exceeds " + fmt(c.limit_seconds) + " s";
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail
              << " [" << fmt(secs) << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
