#pragma once

// Internal and external angles of the regular polytope families. An angle of
// a cone C is P[X in C] for X standard Gaussian on lin(C). Cube angles are
// exact; everything else falls back to Gaussian Monte Carlo.

#include <cstdint>
#include <variant>

#include <Eigen/Dense>

#include "polyproj/polytope.hpp"

namespace polyproj {

class AngleCache;

struct MCConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0x5eed;
  unsigned workers = 0;            // 0: resolve_workers()
  AngleCache* cache = nullptr;     // optional memo shared across calls
};

enum class AngleMethod { Exact, MonteCarlo };

struct AngleEstimate {
  double value = 0.0;
  double std_error = 0.0;
  AngleMethod method = AngleMethod::Exact;
  std::uint64_t samples = 0;

  static AngleEstimate exact(double v) { return {v, 0.0, AngleMethod::Exact, 0}; }
  bool is_exact() const { return method == AngleMethod::Exact; }
};

/// Nor(P, x): u is inside iff <u, v - x> <= 0 for every vertex v of P.
struct NormalConeData {
  Eigen::VectorXd apex;
  VertexMatrix polytope_vertices;
};

/// pos(generators): u is inside iff it is a nonnegative combination.
struct PositiveHullData {
  Eigen::MatrixXd generators;  // ambient coordinates, one column each
};

struct Cone {
  Eigen::MatrixXd frame;  // orthonormal basis of lin(C), ambient x dim
  std::variant<NormalConeData, PositiveHullData> oracle;

  int dimension() const { return static_cast<int>(frame.cols()); }
  /// Membership of an ambient vector assumed to lie in span(frame).
  bool contains(const Eigen::VectorXd& u) const;
};

/// Normal cone of P_n at Q_{g,n}, measured inside the affine hull of P_n.
Cone normal_cone(Family f, int n, int g);

/// pos(Q_{g,n} - x) with x the barycenter of Q_{k,n}. For the crosspolytope
/// g == n denotes P_n itself.
Cone internal_cone(Family f, int n, int k, int g);

/// Hit fraction of standard Gaussian samples in span(frame). Deterministic in
/// (cfg.seed, cfg.samples) for any worker count.
AngleEstimate cone_angle(const Cone& c, const MCConfig& cfg);

/// gamma(Q_{g,n}, P_n).
AngleEstimate external_angle(Family f, int n, int g, const MCConfig& cfg);

/// beta(Q_{k,n}, Q_{g,n}); zero when k > g.
AngleEstimate internal_angle(Family f, int n, int k, int g, const MCConfig& cfg);

}  // namespace polyproj
