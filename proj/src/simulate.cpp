#include "polyproj/simulate.hpp"

#include <cmath>
#include <ostream>

#include "polyproj/errors.hpp"
#include "polyproj/parallel.hpp"
#include "polyproj/rng.hpp"

namespace polyproj {

namespace {
constexpr int kMaxAttempts = 8;
constexpr std::uint64_t kReplicationTag = 0x7265706cull;  // "repl"
}  // namespace

std::string_view to_string(SimModel m) {
  switch (m) {
    case SimModel::Gaussian: return "gaussian";
    case SimModel::Symmetric: return "symmetric";
    case SimModel::Zonotope: return "zonotope";
    case SimModel::ProjectedSimplex: return "projected_simplex";
    case SimModel::ProjectedCrosspolytope: return "projected_crosspolytope";
    case SimModel::ProjectedCube: return "projected_cube";
  }
  return "?";
}

SimModel parse_sim_model(std::string_view name) {
  for (auto m : {SimModel::Gaussian, SimModel::Symmetric, SimModel::Zonotope, SimModel::ProjectedSimplex,
                 SimModel::ProjectedCrosspolytope, SimModel::ProjectedCube})
    if (name == to_string(m)) return m;
  throw InvalidArgument("unknown simulation model '" + std::string(name) + "'");
}

void validate(const SimConfig& cfg) {
  if (cfg.d < 2 || cfg.d > kMaxHullDimension)
    throw InvalidArgument("simulation dimension d must be in [2, 6], got " + std::to_string(cfg.d));
  if (cfg.replications < 1) throw InvalidArgument("need at least one replication");
  int min_n = 1;
  switch (cfg.model) {
    case SimModel::Gaussian: min_n = cfg.d + 1; break;
    case SimModel::Symmetric:
    case SimModel::ProjectedSimplex:
    case SimModel::ProjectedCrosspolytope:
    case SimModel::ProjectedCube: min_n = cfg.d; break;
    case SimModel::Zonotope: min_n = 1; break;
  }
  if (cfg.n < min_n)
    throw InvalidArgument(std::string(to_string(cfg.model)) + " with d=" + std::to_string(cfg.d) +
                          " needs n >= " + std::to_string(min_n) + ", got " + std::to_string(cfg.n));
  if ((cfg.model == SimModel::Zonotope || cfg.model == SimModel::ProjectedCube) &&
      cfg.n > kMaxZonotopeGenerators)
    throw InvalidArgument("zonotope models are limited to n <= 15");
}

FVectorSample simulate_once(const SimConfig& cfg, std::uint64_t replication, int attempt) {
  GaussianStream stream(cfg.seed, derive_id({kReplicationTag, replication, static_cast<std::uint64_t>(attempt)}));
  switch (cfg.model) {
    case SimModel::Gaussian:
      return hull_f_vector(sample_gaussian(cfg.n, cfg.d, stream));
    case SimModel::Symmetric:
      return hull_f_vector(symmetrize(sample_gaussian(cfg.n, cfg.d, stream)));
    case SimModel::Zonotope:
      return zonotope_f_vector(sample_gaussian(cfg.n, cfg.d, stream).points);
    case SimModel::ProjectedSimplex: {
      const Eigen::MatrixXd frame = random_orthonormal_frame(cfg.n + 1, cfg.d, stream);
      return hull_f_vector(PointCloud{cfg.d, frame.transpose()});
    }
    case SimModel::ProjectedCrosspolytope: {
      const Eigen::MatrixXd frame = random_orthonormal_frame(cfg.n, cfg.d, stream);
      return hull_f_vector(symmetrize(PointCloud{cfg.d, frame.transpose()}));
    }
    case SimModel::ProjectedCube: {
      const Eigen::MatrixXd frame = random_orthonormal_frame(cfg.n, cfg.d, stream);
      return zonotope_f_vector(frame.transpose());
    }
  }
  return {};
}

SimResult simulate_expected_f(const SimConfig& cfg) {
  validate(cfg);
  const bool allow_low_dim = cfg.model == SimModel::Zonotope;
  SimResult result;
  result.samples.resize(cfg.replications);
  std::vector<int> attempts(cfg.replications, 0);

  parallel_for(cfg.replications, cfg.workers, [&](std::size_t r) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      try {
        FVectorSample s = simulate_once(cfg, r, attempt);
        if (s.degenerate && !allow_low_dim) throw DegeneracyError("hull is not full-dimensional");
        result.samples[r] = std::move(s);
        attempts[r] = attempt;
        return;
      } catch (const DegeneracyError&) {
      }
    }
    throw NumericError("replication " + std::to_string(r) + " stayed degenerate after " +
                       std::to_string(kMaxAttempts) + " draws", r);
  });

  for (int a : attempts) result.resampled += static_cast<std::uint64_t>(a);
  if (static_cast<double>(result.resampled) > 1e-3 * static_cast<double>(cfg.replications))
    throw NumericError("degenerate draws in " + std::to_string(result.resampled) + " of " +
                       std::to_string(cfg.replications) + " replications exceed 0.1%");

  result.expected.model = std::string(to_string(cfg.model));
  result.expected.n = cfg.n;
  result.expected.d = cfg.d;
  const auto reps = static_cast<__int128>(cfg.replications);
  for (int k = 0; k < cfg.d; ++k) {
    __int128 sum = 0, sum_sq = 0;
    for (const auto& s : result.samples) {
      sum += s.counts[k];
      sum_sq += static_cast<__int128>(s.counts[k]) * s.counts[k];
    }
    ValueEstimate v;
    v.value = static_cast<double>(sum) / static_cast<double>(reps);
    if (reps > 1) {
      const __int128 scaled_var = reps * sum_sq - sum * sum;  // R^2 (R-1)/R * var
      const double var = static_cast<double>(scaled_var) / static_cast<double>(reps * (reps - 1));
      v.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(reps));
    }
    result.expected.entries[k] = v;
  }
  return result;
}

ValueEstimate formula_value(const SimConfig& cfg, int k, const MCConfig& angle_cfg) {
  switch (cfg.model) {
    case SimModel::Gaussian: return expected_f_gaussian(cfg.n, cfg.d, k, angle_cfg);
    case SimModel::Symmetric: return expected_f_symmetric(cfg.n, cfg.d, k, angle_cfg);
    case SimModel::Zonotope:
    case SimModel::ProjectedCube: return ValueEstimate::from_exact(expected_f_zonotope(cfg.n, cfg.d, k));
    case SimModel::ProjectedSimplex:
      return expected_f_projection(Family::Simplex, cfg.n, cfg.d, k, angle_cfg);
    case SimModel::ProjectedCrosspolytope:
      return expected_f_projection(Family::Crosspolytope, cfg.n, cfg.d, k, angle_cfg);
  }
  return {};
}

void write_raw_dump(std::ostream& out, const SimConfig& cfg, const SimResult& result) {
  for (std::size_t r = 0; r < result.samples.size(); ++r) {
    out << r << ',' << to_string(cfg.model) << ',' << cfg.n << ',' << cfg.d;
    for (long c : result.samples[r].counts) out << ',' << c;
    out << '\n';
  }
}

}  // namespace polyproj
