#pragma once

#include <vector>

#include <Eigen/Dense>

namespace polyproj {

/// Modified Gram-Schmidt with one re-orthogonalization pass. Columns of
/// `vectors` are orthogonalized against `against` (already orthonormal) and
/// each other; columns whose residual norm falls below `tol` times their
/// original norm are dropped. Returns the new orthonormal columns only.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& vectors,
                               const Eigen::MatrixXd& against = Eigen::MatrixXd(),
                               double tol = 1e-10);

/// Rank of the affine hull of the columns of `points` (affine dimension).
int affine_rank(const Eigen::MatrixXd& points, double rel_tol = 1e-9);

struct NnlsResult {
  Eigen::VectorXd x;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Lawson-Hanson active set solver for min ||A x - b|| subject to x >= 0.
NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations = 0);

enum class LpStatus { Optimal, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  double objective = 0.0;
  Eigen::VectorXd x;
};

/// max c.x subject to A x <= b, x >= 0, with b >= 0 so the origin is a basic
/// feasible start. Dense tableau simplex with Bland's rule.
LpResult solve_lp_origin_feasible(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                  const Eigen::VectorXd& c);

}  // namespace polyproj
