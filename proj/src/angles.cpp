#include "polyproj/angles.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "polyproj/angle_cache.hpp"
#include "polyproj/errors.hpp"
#include "polyproj/linalg.hpp"
#include "polyproj/parallel.hpp"
#include "polyproj/rng.hpp"

namespace polyproj {

namespace {

constexpr std::uint64_t kBlockSize = 4096;
constexpr double kNnlsAcceptance = 1e-8;

VertexMatrix face_or_polytope(Family f, int n, int i) {
  if (f == Family::Crosspolytope && i == n) return vertices(f, n);
  return canonical_face(f, n, i).vertices;
}

bool nnls_member(const Eigen::MatrixXd& gens, const Eigen::VectorXd& u, std::uint64_t index) {
  const NnlsResult r = nnls(gens, u);
  if (!r.converged) throw NumericError("NNLS did not converge at sample " + std::to_string(index), index);
  return r.residual_norm <= kNnlsAcceptance * (1.0 + u.norm());
}

// Normal-cone constraints <u, v - x> <= 0 expressed in frame coordinates; rows
// for vertices orthogonal to the frame are dropped since they never bind.
Eigen::MatrixXd normal_constraints(const NormalConeData& d, const Eigen::MatrixXd& frame) {
  Eigen::MatrixXd w = (d.polytope_vertices.colwise() - d.apex).transpose() * frame;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index r = 0; r < w.rows(); ++r)
    if (w.row(r).norm() > 1e-12) keep.push_back(r);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(keep.size()), w.cols());
  for (std::size_t i = 0; i < keep.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = w.row(keep[i]);
  return out;
}

template <class Compute>
AngleEstimate cached(Family f, int n, int k, int g, AngleKind kind, const MCConfig& cfg,
                     Compute&& compute) {
  AngleKey key{f, n, k, g, kind, cfg.samples, cfg.seed};
  if (cfg.cache) {
    if (auto hit = cfg.cache->find(key)) return *hit;
  }
  MCConfig derived = cfg;
  derived.seed = derive_id({cfg.seed, static_cast<std::uint64_t>(kind), static_cast<std::uint64_t>(f),
                            static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k + 1),
                            static_cast<std::uint64_t>(g)});
  AngleEstimate est = compute(derived);
  if (cfg.cache) cfg.cache->insert(key, est);
  return est;
}

}  // namespace

bool Cone::contains(const Eigen::VectorXd& u) const {
  if (const auto* nc = std::get_if<NormalConeData>(&oracle)) {
    const double tol = 1e-12 * (1.0 + u.norm());
    return ((nc->polytope_vertices.colwise() - nc->apex).transpose() * u).maxCoeff() <= tol;
  }
  const auto& ph = std::get<PositiveHullData>(oracle);
  return nnls_member(frame.transpose() * ph.generators, frame.transpose() * u, 0);
}

Cone normal_cone(Family f, int n, int g) {
  if (g < 0 || g > n - 1)
    throw InvalidArgument("normal cone needs 0 <= g <= n-1, got g=" + std::to_string(g) +
                          " n=" + std::to_string(n));
  const VertexMatrix p = vertices(f, n);
  const VertexMatrix face = canonical_face(f, n, g).vertices;
  const Eigen::VectorXd x = barycenter(face);
  const Eigen::MatrixXd face_basis = orthonormalize(face.colwise() - x);
  Cone c;
  c.frame = orthonormalize(p.colwise() - x, face_basis);
  c.oracle = NormalConeData{x, p};
  return c;
}

Cone internal_cone(Family f, int n, int k, int g) {
  if (k < 0 || k > g || g > n)
    throw InvalidArgument("internal cone needs 0 <= k <= g <= n, got k=" + std::to_string(k) +
                          " g=" + std::to_string(g) + " n=" + std::to_string(n));
  const VertexMatrix outer = face_or_polytope(f, n, g);
  const Eigen::VectorXd x = barycenter(face_or_polytope(f, n, k));
  Eigen::MatrixXd gens = outer.colwise() - x;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < gens.cols(); ++j)
    if (gens.col(j).norm() > 1e-12) keep.push_back(j);
  Eigen::MatrixXd kept(gens.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) kept.col(static_cast<Eigen::Index>(j)) = gens.col(keep[j]);
  Cone c;
  c.frame = orthonormalize(kept);
  c.oracle = PositiveHullData{kept};
  return c;
}

AngleEstimate cone_angle(const Cone& c, const MCConfig& cfg) {
  if (cfg.samples < 1) throw InvalidArgument("cone_angle needs at least one sample");
  const Eigen::Index dim = c.frame.cols();
  if (dim == 0) return AngleEstimate::exact(1.0);

  const std::uint64_t blocks = (cfg.samples + kBlockSize - 1) / kBlockSize;
  std::vector<std::uint64_t> hits(blocks, 0);

  const auto* nc = std::get_if<NormalConeData>(&c.oracle);
  const Eigen::MatrixXd constraints = nc ? normal_constraints(*nc, c.frame) : Eigen::MatrixXd();
  const Eigen::MatrixXd gens =
      nc ? Eigen::MatrixXd() : Eigen::MatrixXd(c.frame.transpose() * std::get<PositiveHullData>(c.oracle).generators);

  parallel_for(blocks, cfg.workers, [&](std::size_t b) {
    const std::uint64_t first = b * kBlockSize;
    const std::uint64_t count = std::min(kBlockSize, cfg.samples - first);
    GaussianStream gauss(cfg.seed, b);
    Eigen::MatrixXd z(dim, static_cast<Eigen::Index>(count));
    for (Eigen::Index col = 0; col < z.cols(); ++col)
      for (Eigen::Index r = 0; r < dim; ++r) z(r, col) = gauss();

    std::uint64_t h = 0;
    if (nc) {
      if (constraints.rows() == 0) {
        h = count;
      } else {
        const Eigen::MatrixXd m = constraints * z;
        for (Eigen::Index col = 0; col < m.cols(); ++col)
          if (m.col(col).maxCoeff() <= 1e-12 * (1.0 + z.col(col).norm())) ++h;
      }
    } else {
      for (Eigen::Index col = 0; col < z.cols(); ++col)
        if (nnls_member(gens, z.col(col), first + static_cast<std::uint64_t>(col))) ++h;
    }
    hits[b] = h;
  });

  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  const double p = static_cast<double>(total) / static_cast<double>(cfg.samples);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.samples)), AngleMethod::MonteCarlo,
          cfg.samples};
}

AngleEstimate external_angle(Family f, int n, int g, const MCConfig& cfg) {
  if (n < 1 || g < 0 || g > n)
    throw InvalidArgument("external angle needs 0 <= g <= n, got g=" + std::to_string(g) +
                          " n=" + std::to_string(n));
  if (f == Family::Cube) return AngleEstimate::exact(std::ldexp(1.0, -(n - g)));
  if (g == n) return AngleEstimate::exact(1.0);
  if (g == n - 1) return AngleEstimate::exact(0.5);
  return cached(f, n, -1, g, AngleKind::External, cfg,
                [&](const MCConfig& c) { return cone_angle(normal_cone(f, n, g), c); });
}

AngleEstimate internal_angle(Family f, int n, int k, int g, const MCConfig& cfg) {
  if (n < 1 || k < 0 || g < 0 || k > n || g > n)
    throw InvalidArgument("internal angle needs 0 <= k, g <= n, got k=" + std::to_string(k) +
                          " g=" + std::to_string(g) + " n=" + std::to_string(n));
  if (k > g) return AngleEstimate::exact(0.0);
  if (f == Family::Cube) return AngleEstimate::exact(std::ldexp(1.0, -(g - k)));
  if (k == g) return AngleEstimate::exact(1.0);
  if (g == k + 1) return AngleEstimate::exact(0.5);
  return cached(f, n, k, g, AngleKind::Internal, cfg,
                [&](const MCConfig& c) { return cone_angle(internal_cone(f, n, k, g), c); });
}

}  // namespace polyproj
