#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "polyproj/expected.hpp"
#include "polyproj/hull.hpp"

namespace polyproj {

enum class SimModel {
  Gaussian,
  Symmetric,
  Zonotope,
  ProjectedSimplex,
  ProjectedCrosspolytope,
  ProjectedCube
};

std::string_view to_string(SimModel m);
SimModel parse_sim_model(std::string_view name);

/// For the Gaussian models n is the number of points; for the projected
/// models it is the dimension of the regular polytope being projected.
struct SimConfig {
  SimModel model = SimModel::Gaussian;
  int n = 0;
  int d = 2;
  std::uint64_t replications = 100'000;
  std::uint64_t seed = 0x5eed;
  unsigned workers = 0;
};

void validate(const SimConfig& cfg);

struct SimResult {
  ExpectedFVector expected;               // k = 0 .. d-1, mean and standard error
  std::vector<FVectorSample> samples;     // in replication order
  std::uint64_t resampled = 0;            // degenerate draws replaced
};

/// One replication: the f-vector of a fresh realization from the stream
/// addressed by (seed, replication, attempt).
FVectorSample simulate_once(const SimConfig& cfg, std::uint64_t replication, int attempt = 0);

/// Empirical mean and standard error over replications; deterministic in
/// (seed, replications) regardless of the worker count. Aborts with
/// NumericError when more than 0.1% of draws are degenerate.
SimResult simulate_expected_f(const SimConfig& cfg);

/// Formula value matching a simulation model.
ValueEstimate formula_value(const SimConfig& cfg, int k, const MCConfig& angle_cfg);

/// One line per replication: index,model,n,d,f_0,...,f_{d-1}.
void write_raw_dump(std::ostream& out, const SimConfig& cfg, const SimResult& result);

}  // namespace polyproj
