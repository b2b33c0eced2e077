#include "polyproj/polytope.hpp"

#include <cmath>

#include "polyproj/errors.hpp"

namespace polyproj {

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Rational pow2(long e) {
  BigInt p = BigInt(1) << static_cast<unsigned>(e < 0 ? -e : e);
  return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Simplex: return "simplex";
    case Family::Crosspolytope: return "crosspolytope";
    case Family::Cube: return "cube";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "simplex") return Family::Simplex;
  if (name == "crosspolytope" || name == "cross") return Family::Crosspolytope;
  if (name == "cube") return Family::Cube;
  throw InvalidArgument("unknown polytope family '" + std::string(name) + "'");
}

int ambient_dimension(Family f, int n) { return f == Family::Simplex ? n + 1 : n; }

VertexMatrix vertices(Family f, int n) {
  if (n < 1) throw InvalidArgument("polytope dimension must be >= 1, got " + std::to_string(n));
  switch (f) {
    case Family::Simplex:
      return VertexMatrix::Identity(n + 1, n + 1);
    case Family::Crosspolytope: {
      VertexMatrix v(n, 2 * n);
      v << VertexMatrix::Identity(n, n), -VertexMatrix::Identity(n, n);
      return v;
    }
    case Family::Cube: {
      if (n > 24) throw InvalidArgument("cube vertex list too large for n = " + std::to_string(n));
      const long count = 1L << n;
      VertexMatrix v = VertexMatrix::Zero(n, count);
      for (long mask = 0; mask < count; ++mask)
        for (int c = 0; c < n; ++c)
          if (mask & (1L << c)) v(c, mask) = 1.0;
      return v;
    }
  }
  return {};
}

BigInt face_count(Family f, long m, long l, FaceScope scope) {
  if (m < 0 || l < 0)
    throw InvalidArgument("face_count needs nonnegative arguments, got m=" + std::to_string(m) +
                          " l=" + std::to_string(l));
  if (l > m) return 0;
  if (l == m) return 1;
  switch (f) {
    case Family::Simplex:
      return binomial(m + 1, l + 1);
    case Family::Cube:
      return (BigInt(1) << static_cast<unsigned>(m - l)) * binomial(m, l);
    case Family::Crosspolytope:
      if (scope == FaceScope::ProperFace) return binomial(m + 1, l + 1);
      return (BigInt(1) << static_cast<unsigned>(l + 1)) * binomial(m, l + 1);
  }
  return 0;
}

CanonicalFace canonical_face(Family f, int n, int i) {
  if (n < 1) throw InvalidArgument("polytope dimension must be >= 1, got " + std::to_string(n));
  const int max_i = f == Family::Crosspolytope ? n - 1 : n;
  if (i < 0 || i > max_i)
    throw InvalidArgument("canonical face dimension " + std::to_string(i) + " out of range [0, " +
                          std::to_string(max_i) + "] for " + std::string(to_string(f)) +
                          " of dimension " + std::to_string(n));
  const int ambient = ambient_dimension(f, n);
  CanonicalFace face{f, n, i, {}};
  if (f == Family::Cube) {
    const long count = 1L << i;
    face.vertices = VertexMatrix::Zero(ambient, count);
    for (long mask = 0; mask < count; ++mask)
      for (int c = 0; c < i; ++c)
        if (mask & (1L << c)) face.vertices(c, mask) = 1.0;
  } else {
    face.vertices = VertexMatrix::Identity(ambient, i + 1);
  }
  return face;
}

double face_volume(const CanonicalFace& face) {
  if (face.family == Family::Cube) return 1.0;
  // regular simplex with edge sqrt(2)
  return std::sqrt(static_cast<double>(face.i + 1)) / std::tgamma(face.i + 1.0);
}

double polytope_volume(Family f, int n) {
  switch (f) {
    case Family::Simplex: return std::sqrt(n + 1.0) / std::tgamma(n + 1.0);
    case Family::Crosspolytope: return std::ldexp(1.0, n) / std::tgamma(n + 1.0);
    case Family::Cube: return 1.0;
  }
  return 0.0;
}

Eigen::VectorXd barycenter(const VertexMatrix& v) { return v.rowwise().mean(); }

}  // namespace polyproj
