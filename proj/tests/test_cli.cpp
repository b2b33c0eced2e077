#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "polyproj/cli.hpp"
#include "polyproj/report.hpp"

using namespace polyproj;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<ReportRow> rows_of(const CliRun& r, ReportFormat fmt = ReportFormat::Csv) {
  std::istringstream in(r.out);
  return read_report(in, fmt);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, ExpectedCube) {
  const CliRun r = run({"expected", "--family", "cube", "--n", "3", "--d", "2", "--k", "0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = rows_of(r);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].value, 6.0);
  EXPECT_EQ(rows[0].method, "exact");
  EXPECT_EQ(rows[0].stderr_, 0.0);
}

TEST(Cli, ExpectedTrivialCases) {
  const CliRun g = run({"expected", "--model", "gaussian", "--n", "3", "--d", "2", "--k", "0"});
  ASSERT_EQ(g.code, kExitOk) << g.err;
  EXPECT_EQ(rows_of(g)[0].value, 3.0);
  EXPECT_EQ(rows_of(g)[0].family, "simplex");
  const CliRun s = run({"expected", "--family", "simplex", "--n", "5", "--d", "1", "--k", "0"});
  ASSERT_EQ(s.code, kExitOk) << s.err;
  EXPECT_EQ(rows_of(s)[0].value, 2.0);
}

TEST(Cli, ExpectedAllKJson) {
  const CliRun r = run({"expected", "--family", "simplex", "--n", "4", "--d", "3", "--all-k", "--samples", "20000",
                     "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = rows_of(r, ReportFormat::Json);
  ASSERT_EQ(rows.size(), 3u);
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(rows[k].k, k);
    EXPECT_EQ(rows[k].method == "exact", rows[k].stderr_ == 0.0);
  }
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"expected", "--n", "3", "--d", "2", "--k", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"expected", "--family", "cube", "--model", "gaussian", "--n", "3", "--d", "2", "--k", "0"}).code,
            kExitUsage);
  EXPECT_EQ(run({"expected", "--family", "cube", "--n", "3", "--d", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"expected", "--family", "cube", "--n", "3", "--d", "2", "--k", "0", "--all-k"}).code, kExitUsage);
  EXPECT_EQ(run({"expected", "--family", "prism", "--n", "3", "--d", "2", "--k", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"expected", "--family", "cube", "--n", "x", "--d", "2", "--k", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"expected", "--family", "cube", "--n", "3", "--d", "2", "--k", "0", "--format", "xml"}).code,
            kExitUsage);
  EXPECT_EQ(run({"simulate", "--model", "zonotope", "--n", "20", "--d", "3"}).code, kExitUsage);
  EXPECT_EQ(run({"monotonicity", "--d", "2", "--k", "0", "--n-max", "4"}).code, kExitUsage);
  EXPECT_EQ(run({"poisson", "--d", "2", "--k", "0", "--b", "-1"}).code, kExitUsage);
}

TEST(Cli, FailureExitCode) {
  const CliRun r = run({"expected", "--family", "cube", "--n", "3", "--d", "2", "--k", "0", "--output",
                     "/nonexistent-dir/x.csv"});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_FALSE(r.err.empty());
  const CliRun t = run({"poisson", "--d", "2", "--k", "0", "--t", "5", "--eps", "1e-200", "--samples", "1000"});
  EXPECT_EQ(t.code, kExitFailure);
}

TEST(Cli, Help) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
}

TEST(Cli, SimulateZonotopeIsExact) {
  const CliRun r = run({"simulate", "--model", "zonotope", "--n", "5", "--d", "3", "--reps", "10"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = rows_of(r);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& row : rows) {
    EXPECT_EQ(row.stderr_, 0.0);
    EXPECT_EQ(row.value, row.reference.value());
    EXPECT_EQ(row.z_score.value(), 0.0);
    EXPECT_EQ(row.method, "simulation");
  }
  EXPECT_EQ(rows[0].value, 22.0);
}

TEST(Cli, SimulateGaussianAgreesWithFormula) {
  const CliRun r = run({"simulate", "--model", "gaussian", "--n", "4", "--d", "2", "--reps", "20000", "--samples",
                     "400000"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const auto& row : rows_of(r)) EXPECT_LE(std::abs(row.z_score.value()), 3.0);
}

TEST(Cli, SimulateDumpHasEvenVertexCounts) {
  const auto path = std::filesystem::temp_directory_path() / "polyproj_cli_dump.csv";
  const CliRun r = run({"simulate", "--model", "symmetric", "--n", "3", "--d", "2", "--reps", "3000", "--samples",
                     "10000", "--dump", path.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(path);
  int lines = 0;
  for (std::string line; std::getline(in, line); ++lines) {
    const auto f0 = std::stol(line.substr(line.find(",2,") + 3));
    EXPECT_EQ(f0 % 2, 0) << line;
  }
  EXPECT_EQ(lines, 3000);
  std::filesystem::remove(path);
}

TEST(Cli, MonotonicityCube) {
  std::vector<std::string> args{"monotonicity", "--family", "cube", "--d", "4", "--k", "0", "1", "2", "3",
                                "--n-min", "4", "--n-max", "12"};
  const CliRun r = run(args);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = rows_of(r);
  EXPECT_EQ(rows.size(), 4u * 9u);
  for (const auto& row : rows) {
    EXPECT_EQ(row.method, "exact");
    if (row.n != 4) EXPECT_TRUE(row.strict_increase.value());
  }
  EXPECT_NE(r.err.find("all expected-strict pairs increase: yes"), std::string::npos) << r.err;
}

TEST(Cli, MonotonicityFlatTopRow) {
  const CliRun r = run({"monotonicity", "--family", "simplex", "--d", "2", "--k", "2", "--n-min", "2", "--n-max",
                     "6", "--samples", "1000"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const auto& row : rows_of(r)) {
    EXPECT_EQ(row.value, 1.0);
    if (row.n != 2) EXPECT_FALSE(row.strict_increase.value());
  }
}

TEST(Cli, PoissonColumns) {
  const CliRun r = run({"poisson", "--model", "gaussian", "--d", "2", "--k", "0", "--t", "0.01", "1", "3",
                     "--samples", "20000"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = rows_of(r);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_LT(rows[0].value, 0.011);
  for (const auto& row : rows) {
    EXPECT_EQ(row.b.value(), 0.0);
    EXPECT_EQ(row.t_functional.value(), row.value);
  }
  EXPECT_TRUE(rows[2].strict_increase.value());
  const CliRun z = run({"poisson", "--model", "zonotope", "--d", "2", "--k", "0", "--t", "2"});
  ASSERT_EQ(z.code, kExitOk) << z.err;
  EXPECT_FALSE(rows_of(z)[0].t_functional.has_value());
}

TEST(Cli, ByteIdenticalAcrossWorkers) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "polyproj_cli_w1.csv";
  const auto b = dir / "polyproj_cli_w3.csv";
  for (const auto& [path, workers] : {std::pair{a, "1"}, std::pair{b, "3"}}) {
    const CliRun r = run({"expected", "--family", "crosspolytope", "--n", "5", "--d", "3", "--all-k", "--samples",
                       "30000", "--seed", "77", "--workers", workers, "--output", path.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(r.out.empty());
  }
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, AngleCacheFlag) {
  const auto path = std::filesystem::temp_directory_path() / "polyproj_cli_cache.txt";
  std::filesystem::remove(path);
  const std::vector<std::string> args{"expected", "--family", "simplex", "--n", "5", "--d", "3", "--all-k",
                                      "--samples", "20000", "--angle-cache", path.string()};
  const CliRun first = run(args);
  ASSERT_EQ(first.code, kExitOk) << first.err;
  const std::string cached = slurp(path);
  EXPECT_FALSE(cached.empty());
  const CliRun second = run(args);
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(slurp(path), cached);
  std::filesystem::remove(path);
}
