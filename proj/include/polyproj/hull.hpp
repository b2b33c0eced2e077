#pragma once

// Exact face counting for random point clouds in dimension <= 6: an
// incremental beneath-beyond hull for simplicial (general-position) inputs,
// face lattice extraction from vertex-facet incidences, and sign-vector
// enumeration for zonotopes.

#include <cstdint>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <Eigen/Dense>

#include "polyproj/rng.hpp"

namespace polyproj {

constexpr int kMaxHullDimension = 6;
constexpr int kMaxZonotopeGenerators = 15;

struct PointCloud {
  int d = 0;
  Eigen::MatrixXd points;  // d x size, one column per point

  Eigen::Index size() const { return points.cols(); }
};

struct FVectorSample {
  std::vector<long> counts;  // f_0 .. f_{d-1}
  bool degenerate = false;   // hull is not full-dimensional
};

/// sum_{i<d} (-1)^i f_i == 1 - (-1)^d.
bool euler_relation_holds(const FVectorSample& s);

PointCloud sample_gaussian(int n, int d, GaussianStream& stream);

/// Appends the antipode of every point.
PointCloud symmetrize(const PointCloud& cloud);

/// N x d matrix with orthonormal columns spanning a uniformly random
/// d-dimensional subspace of R^N.
Eigen::MatrixXd random_orthonormal_frame(int ambient, int d, GaussianStream& stream);

using VertexSet = boost::dynamic_bitset<>;

struct Hull {
  int d = 0;
  bool full_dimensional = false;
  std::vector<std::vector<int>> facets;  // sorted point indices, d per facet
};

/// Facets of conv(cloud). Clouds closed under negation are seeded with a
/// cross-polytope so the origin stays interior throughout. Throws
/// DegeneracyError when a point falls within tolerance of a facet hyperplane.
Hull convex_hull(const PointCloud& cloud);

/// faces[k] lists the vertex sets of the k-faces, given the facets as vertex
/// sets over `universe` points. Facets of a face G are the maximal sets among
/// G intersected with the facets of the polytope.
std::vector<std::vector<VertexSet>> face_lattice(const std::vector<VertexSet>& facets, int d);

FVectorSample hull_f_vector(const PointCloud& cloud);

/// Generators are the columns (d x n). A k-face is a k-subset S plus a sign
/// vector on the rest realized by a functional vanishing on S; realizability
/// is decided by a max-margin LP.
FVectorSample zonotope_f_vector(const Eigen::MatrixXd& generators);

}  // namespace polyproj
