#include <algorithm>
#include <string>
#include <vector>

#include "polyproj/errors.hpp"
#include "polyproj/hull.hpp"
#include "polyproj/linalg.hpp"

namespace polyproj {

namespace {

constexpr double kFeasibleMargin = 1e-7;
constexpr double kInfeasibleMargin = 1e-10;
constexpr double kRankTol = 1e-9;

// Largest t such that sign_i <a_i, y> >= t for the first `count` columns,
// with y in [-1, 1]^m and t <= 1.
double max_margin(const Eigen::MatrixXd& a, const std::vector<int>& sign, int count) {
  const Eigen::Index m = a.rows();
  const Eigen::Index vars = 2 * m + 1;
  const Eigen::Index rows = count + 2 * m + 1;
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(rows, vars);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
  for (int i = 0; i < count; ++i) {
    const Eigen::VectorXd s = -sign[i] * a.col(i);
    lhs.block(i, 0, 1, m) = s.transpose();
    lhs.block(i, m, 1, m) = -s.transpose();
    lhs(i, 2 * m) = 1.0;
  }
  for (Eigen::Index j = 0; j < vars; ++j) {
    lhs(count + j, j) = 1.0;
    rhs(count + j) = 1.0;
  }
  Eigen::VectorXd obj = Eigen::VectorXd::Zero(vars);
  obj(2 * m) = 1.0;
  const LpResult r = solve_lp_origin_feasible(lhs, rhs, obj);
  if (r.status != LpStatus::Optimal) throw NumericError("zonotope face LP did not reach an optimum");
  return r.objective;
}

// Number of realizable sign vectors on the columns of `a` with the first sign
// fixed to +1.
long count_sign_vectors(const Eigen::MatrixXd& a, int free_prefix) {
  const int total = static_cast<int>(a.cols());
  std::vector<int> sign(total, 1);
  long leaves = 0;
  // depth-first over prefixes, each node being a realizable prefix
  auto visit = [&](auto&& self, int depth) -> void {
    if (depth == total) {
      ++leaves;
      return;
    }
    for (int s : {1, -1}) {
      sign[depth] = s;
      bool ok = true;
      if (depth + 1 > free_prefix) {
        const double t = max_margin(a, sign, depth + 1);
        if (t > kInfeasibleMargin && t < kFeasibleMargin)
          throw DegeneracyError("zonotope generators are close to a degenerate configuration");
        ok = t >= kFeasibleMargin;
      }
      if (ok) self(self, depth + 1);
    }
  };
  // a single nonzero column is realizable with either sign
  sign[0] = 1;
  visit(visit, 1);
  return leaves;
}

}  // namespace

FVectorSample zonotope_f_vector(const Eigen::MatrixXd& generators) {
  const int d = static_cast<int>(generators.rows());
  const int n = static_cast<int>(generators.cols());
  if (d < 1 || d > kMaxHullDimension)
    throw InvalidArgument("zonotope dimension must be in [1, " + std::to_string(kMaxHullDimension) + "]");
  if (n < 1 || n > kMaxZonotopeGenerators)
    throw InvalidArgument("zonotope generator count must be in [1, " +
                          std::to_string(kMaxZonotopeGenerators) + "], got " + std::to_string(n));
  if (!generators.allFinite()) throw InvalidArgument("zonotope generators must be finite");

  Eigen::MatrixXd g = generators;
  for (int i = 0; i < n; ++i) {
    const double norm = g.col(i).norm();
    if (norm < 1e-300) throw DegeneracyError("zero zonotope generator");
    g.col(i) /= norm;
  }

  FVectorSample out;
  out.counts.assign(d, 0);
  out.degenerate = n < d;
  const int k_max = std::min(n, d - 1);
  for (int k = 0; k <= k_max; ++k) {
    std::vector<int> pick(n, 0);
    std::fill(pick.begin(), pick.begin() + k, 1);
    long faces = 0;
    do {
      std::vector<int> chosen, rest;
      for (int i = 0; i < n; ++i) (pick[i] ? chosen : rest).push_back(i);
      Eigen::MatrixXd span(d, static_cast<Eigen::Index>(chosen.size()));
      for (std::size_t c = 0; c < chosen.size(); ++c) span.col(static_cast<Eigen::Index>(c)) = g.col(chosen[c]);
      const Eigen::MatrixXd span_basis = orthonormalize(span, Eigen::MatrixXd(), kRankTol);
      if (span_basis.cols() < k) throw DegeneracyError("linearly dependent zonotope generators");
      if (rest.empty()) {
        ++faces;
        continue;
      }
      const Eigen::MatrixXd null_basis =
          orthonormalize(Eigen::MatrixXd::Identity(d, d), span_basis, kRankTol);
      Eigen::MatrixXd a(null_basis.cols(), static_cast<Eigen::Index>(rest.size()));
      for (std::size_t r = 0; r < rest.size(); ++r) {
        Eigen::VectorXd v = null_basis.transpose() * g.col(rest[r]);
        const double norm = v.norm();
        if (norm < 1e-9) throw DegeneracyError("zonotope generator lies in the span of others");
        a.col(static_cast<Eigen::Index>(r)) = v / norm;
      }
      // up to dim(null space) columns in general position admit every sign pattern
      const Eigen::Index lead = std::min(a.cols(), a.rows());
      const bool lead_independent =
          orthonormalize(a.leftCols(lead), Eigen::MatrixXd(), kRankTol).cols() == lead;
      faces += 2 * count_sign_vectors(a, lead_independent ? static_cast<int>(lead) : 1);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    out.counts[k] = faces;
  }
  return out;
}

}  // namespace polyproj
