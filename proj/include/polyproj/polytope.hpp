#pragma once

// Regular polytope families: the regular simplex conv(e_1..e_{n+1}) in R^{n+1},
// the crosspolytope conv(+-e_1..+-e_n) in R^n and the unit cube [0,1]^n.

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "polyproj/numbers.hpp"

namespace polyproj {

enum class Family { Simplex, Crosspolytope, Cube };

std::string_view to_string(Family f);
/// Accepts "simplex", "crosspolytope" (or "cross"), "cube".
Family parse_family(std::string_view name);

/// Which polytope a face count refers to. For the crosspolytope the proper
/// faces are simplices, so counts on a proper m-face differ from counts on
/// the m-dimensional crosspolytope itself.
enum class FaceScope { Polytope, ProperFace };

/// Columns are vertices. Coordinates are exact small integers.
using VertexMatrix = Eigen::MatrixXd;

/// Ambient dimension of the representative of P_n (n+1 for the simplex, n otherwise).
int ambient_dimension(Family f, int n);

/// Vertices of the representative P_n; throws InvalidArgument if n < 1.
VertexMatrix vertices(Family f, int n);

/// c_{m,l}: number of l-faces of an m-dimensional face (or, with
/// FaceScope::Polytope, of P_m itself). Returns 1 for l == m and 0 for l > m.
BigInt face_count(Family f, long m, long l, FaceScope scope = FaceScope::ProperFace);

/// The canonical face Q_{i,n} of P_n together with its vertices.
struct CanonicalFace {
  Family family;
  int n;
  int i;
  VertexMatrix vertices;  // ambient coordinates of P_n, one column per vertex
};

/// Q_{i,n}: conv(e_1..e_{i+1}) for simplex and crosspolytope, the coordinate
/// subcube on the first i axes for the cube. The crosspolytope only admits
/// proper faces (i <= n-1); throws InvalidArgument otherwise.
CanonicalFace canonical_face(Family f, int n, int i);

/// i-dimensional volume: sqrt(i+1)/i! for simplices of edge sqrt(2), 1 for unit cubes.
double face_volume(const CanonicalFace& face);

/// Volume of P_n itself.
double polytope_volume(Family f, int n);

/// Barycenter of a set of columns.
Eigen::VectorXd barycenter(const VertexMatrix& v);

}  // namespace polyproj
