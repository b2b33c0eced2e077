#include "polyproj/hull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <unordered_map>

#include "polyproj/errors.hpp"
#include "polyproj/linalg.hpp"

namespace polyproj {

namespace {

constexpr double kRelTol = 1e-9;

struct Facet {
  std::vector<int> verts;  // sorted
  Eigen::VectorXd normal;
  double offset = 0.0;
  bool alive = true;
};

struct RidgeHash {
  std::size_t operator()(const std::vector<int>& r) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int v : r) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ull;
    return h;
  }
};

class HullBuilder {
 public:
  HullBuilder(const PointCloud& cloud, Eigen::VectorXd interior, double tol)
      : cloud_(cloud), interior_(std::move(interior)), tol_(tol) {}

  void add_facet(std::vector<int> verts) {
    std::sort(verts.begin(), verts.end());
    const int d = cloud_.d;
    Facet f;
    f.verts = verts;
    const Eigen::VectorXd p0 = cloud_.points.col(verts[0]);
    if (d == 1) {
      f.normal = Eigen::VectorXd::Ones(1);
    } else {
      Eigen::MatrixXd diff(d, d - 1);
      for (int i = 1; i < d; ++i) diff.col(i - 1) = cloud_.points.col(verts[i]) - p0;
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(diff);
      const Eigen::MatrixXd q = qr.householderQ();
      f.normal = q.col(d - 1);
    }
    f.offset = f.normal.dot(p0);
    const double ref = f.normal.dot(interior_) - f.offset;
    if (std::abs(ref) <= tol_) throw DegeneracyError("facet hyperplane passes through the interior point");
    if (ref > 0) {
      f.normal = -f.normal;
      f.offset = -f.offset;
    }
    const int id = static_cast<int>(facets_.size());
    for (int skip = 0; skip < d; ++skip) {
      auto& slot = ridges_.try_emplace(ridge_of(verts, skip), std::array<int, 2>{-1, -1}).first->second;
      if (slot[0] >= 0 && slot[1] >= 0) throw DegeneracyError("ridge shared by more than two facets");
      (slot[0] < 0 ? slot[0] : slot[1]) = id;
    }
    facets_.push_back(std::move(f));
  }

  void insert(int p) {
    const Eigen::VectorXd x = cloud_.points.col(p);
    std::vector<int> visible;
    std::vector<char> is_visible(facets_.size(), 0);
    for (std::size_t i = 0; i < facets_.size(); ++i) {
      if (!facets_[i].alive) continue;
      const double dist = facets_[i].normal.dot(x) - facets_[i].offset;
      if (std::abs(dist) <= tol_)
        throw DegeneracyError("point " + std::to_string(p) + " lies on a facet hyperplane");
      if (dist > 0) {
        visible.push_back(static_cast<int>(i));
        is_visible[i] = 1;
      }
    }
    if (visible.empty()) return;

    const int d = cloud_.d;
    std::vector<std::vector<int>> horizon;
    for (int f : visible) {
      for (int skip = 0; skip < d; ++skip) {
        std::vector<int> ridge = ridge_of(facets_[f].verts, skip);
        const auto& slot = ridges_.at(ridge);
        const int other = slot[0] == f ? slot[1] : slot[0];
        if (other < 0 || !is_visible[other]) horizon.push_back(std::move(ridge));
      }
    }
    for (int f : visible) {
      facets_[f].alive = false;
      for (int skip = 0; skip < d; ++skip) {
        auto it = ridges_.find(ridge_of(facets_[f].verts, skip));
        auto& slot = it->second;
        if (slot[0] == f) slot[0] = -1;
        if (slot[1] == f) slot[1] = -1;
        if (slot[0] < 0 && slot[1] < 0) ridges_.erase(it);
      }
    }
    for (auto& ridge : horizon) {
      ridge.push_back(p);
      add_facet(std::move(ridge));
    }
  }

  std::vector<std::vector<int>> alive_facets() const {
    std::vector<std::vector<int>> out;
    for (const auto& f : facets_)
      if (f.alive) out.push_back(f.verts);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static std::vector<int> ridge_of(const std::vector<int>& verts, int skip) {
    std::vector<int> r;
    r.reserve(verts.size() - 1);
    for (int i = 0; i < static_cast<int>(verts.size()); ++i)
      if (i != skip) r.push_back(verts[i]);
    return r;
  }

  const PointCloud& cloud_;
  Eigen::VectorXd interior_;
  double tol_;
  std::vector<Facet> facets_;
  std::unordered_map<std::vector<int>, std::array<int, 2>, RidgeHash> ridges_;
};

// Index of -x for every column x, or empty if the cloud is not centrally symmetric.
std::vector<int> antipodes(const Eigen::MatrixXd& pts) {
  std::map<std::vector<double>, int> index;
  for (Eigen::Index j = 0; j < pts.cols(); ++j)
    index.emplace(std::vector<double>(pts.col(j).data(), pts.col(j).data() + pts.rows()),
                  static_cast<int>(j));
  std::vector<int> out(pts.cols());
  for (Eigen::Index j = 0; j < pts.cols(); ++j) {
    Eigen::VectorXd neg = -pts.col(j);
    auto it = index.find(std::vector<double>(neg.data(), neg.data() + neg.size()));
    if (it == index.end() || it->second == j) return {};
    out[j] = it->second;
  }
  return out;
}

}  // namespace

bool euler_relation_holds(const FVectorSample& s) {
  long sum = 0;
  for (std::size_t i = 0; i < s.counts.size(); ++i) sum += (i % 2 == 0 ? 1 : -1) * s.counts[i];
  const long d = static_cast<long>(s.counts.size());
  return sum == 1 - (d % 2 == 0 ? 1 : -1);
}

PointCloud sample_gaussian(int n, int d, GaussianStream& stream) {
  if (n < 0 || d < 1) throw InvalidArgument("sample_gaussian needs n >= 0 and d >= 1");
  PointCloud c{d, Eigen::MatrixXd(d, n)};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < d; ++i) c.points(i, j) = stream();
  return c;
}

PointCloud symmetrize(const PointCloud& cloud) {
  PointCloud out{cloud.d, Eigen::MatrixXd(cloud.points.rows(), 2 * cloud.size())};
  out.points << cloud.points, -cloud.points;
  return out;
}

Eigen::MatrixXd random_orthonormal_frame(int ambient, int d, GaussianStream& stream) {
  if (d < 1 || d > ambient)
    throw InvalidArgument("random frame needs 1 <= d <= N, got d=" + std::to_string(d) +
                          " N=" + std::to_string(ambient));
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::MatrixXd g(ambient, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < ambient; ++i) g(i, j) = stream();
    Eigen::MatrixXd q = orthonormalize(g);
    if (q.cols() == d) return q;
  }
  throw DegeneracyError("could not draw a full-rank Gaussian frame");
}

Hull convex_hull(const PointCloud& cloud) {
  const int d = cloud.d;
  if (d < 2 || d > kMaxHullDimension)
    throw InvalidArgument("hull dimension must be in [2, " + std::to_string(kMaxHullDimension) + "]");
  if (cloud.points.rows() != d) throw InvalidArgument("point cloud rows do not match its dimension");
  if (!cloud.points.allFinite()) throw InvalidArgument("point cloud has non-finite coordinates");
  Hull hull;
  hull.d = d;
  const Eigen::Index m = cloud.size();
  if (m < d + 1) return hull;
  const double scale = std::max(1e-300, cloud.points.cwiseAbs().maxCoeff());
  const double tol = kRelTol * scale;

  const std::vector<int> anti = antipodes(cloud.points);
  std::vector<int> seed;
  std::vector<char> used(m, 0);
  Eigen::MatrixXd basis(d, 0);
  if (!anti.empty()) {
    // d linearly independent points, one per antipodal pair
    for (Eigen::Index j = 0; j < m && static_cast<int>(seed.size()) < d; ++j) {
      if (used[j]) continue;
      Eigen::MatrixXd cand = orthonormalize(cloud.points.col(j), basis, kRelTol);
      if (cand.cols() == 0) continue;
      Eigen::MatrixXd grown(d, basis.cols() + 1);
      grown << basis, cand;
      basis = grown;
      seed.push_back(static_cast<int>(j));
      used[j] = used[anti[j]] = 1;
    }
    if (static_cast<int>(seed.size()) < d) return hull;
    HullBuilder builder(cloud, Eigen::VectorXd::Zero(d), tol);
    for (int mask = 0; mask < (1 << d); ++mask) {
      std::vector<int> verts;
      for (int i = 0; i < d; ++i) verts.push_back((mask >> i) & 1 ? anti[seed[i]] : seed[i]);
      builder.add_facet(verts);
    }
    for (Eigen::Index j = 0; j < m; ++j)
      if (!used[j]) builder.insert(static_cast<int>(j));
    hull.full_dimensional = true;
    hull.facets = builder.alive_facets();
    return hull;
  }

  // d+1 affinely independent points
  seed.push_back(0);
  used[0] = 1;
  for (Eigen::Index j = 1; j < m && static_cast<int>(seed.size()) < d + 1; ++j) {
    Eigen::MatrixXd cand =
        orthonormalize(cloud.points.col(j) - cloud.points.col(seed[0]), basis, kRelTol);
    if (cand.cols() == 0) continue;
    Eigen::MatrixXd grown(d, basis.cols() + 1);
    grown << basis, cand;
    basis = grown;
    seed.push_back(static_cast<int>(j));
    used[j] = 1;
  }
  if (static_cast<int>(seed.size()) < d + 1) return hull;
  Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
  for (int s : seed) centroid += cloud.points.col(s);
  centroid /= static_cast<double>(d + 1);
  HullBuilder builder(cloud, centroid, tol);
  for (int skip = 0; skip <= d; ++skip) {
    std::vector<int> verts;
    for (int i = 0; i <= d; ++i)
      if (i != skip) verts.push_back(seed[i]);
    builder.add_facet(verts);
  }
  for (Eigen::Index j = 0; j < m; ++j)
    if (!used[j]) builder.insert(static_cast<int>(j));
  hull.full_dimensional = true;
  hull.facets = builder.alive_facets();
  return hull;
}

std::vector<std::vector<VertexSet>> face_lattice(const std::vector<VertexSet>& facets, int d) {
  std::vector<std::vector<VertexSet>> faces(d);
  if (d < 1) return faces;
  {
    std::set<VertexSet> top(facets.begin(), facets.end());
    faces[d - 1].assign(top.begin(), top.end());
  }
  for (int level = d - 1; level >= 1; --level) {
    std::set<VertexSet> next;
    for (const VertexSet& g : faces[level]) {
      std::set<VertexSet> cands;
      for (const VertexSet& f : facets) {
        VertexSet meet = g & f;
        if (meet.none() || meet == g) continue;
        cands.insert(std::move(meet));
      }
      for (const VertexSet& c : cands) {
        bool maximal = true;
        for (const VertexSet& o : cands)
          if (o != c && c.is_subset_of(o)) {
            maximal = false;
            break;
          }
        if (maximal) next.insert(c);
      }
    }
    faces[level - 1].assign(next.begin(), next.end());
  }
  return faces;
}

FVectorSample hull_f_vector(const PointCloud& cloud) {
  const Hull hull = convex_hull(cloud);
  FVectorSample out;
  out.counts.assign(cloud.d, 0);
  if (!hull.full_dimensional) {
    out.degenerate = true;
    return out;
  }
  std::vector<VertexSet> sets;
  sets.reserve(hull.facets.size());
  for (const auto& f : hull.facets) {
    VertexSet s(static_cast<std::size_t>(cloud.size()));
    for (int v : f) s.set(static_cast<std::size_t>(v));
    sets.push_back(std::move(s));
  }
  const auto faces = face_lattice(sets, cloud.d);
  for (int k = 0; k < cloud.d; ++k) out.counts[k] = static_cast<long>(faces[k].size());
  return out;
}

}  // namespace polyproj
