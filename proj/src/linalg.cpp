#include "polyproj/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyproj/errors.hpp"

namespace polyproj {

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& vectors, const Eigen::MatrixXd& against,
                               double tol) {
  const Eigen::Index dim = vectors.rows();
  Eigen::MatrixXd basis(dim, against.cols() + vectors.cols());
  Eigen::Index count = 0;
  for (Eigen::Index j = 0; j < against.cols(); ++j) basis.col(count++) = against.col(j);
  const Eigen::Index fixed = count;

  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::VectorXd v = vectors.col(j);
    const double original = v.norm();
    if (original == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index q = 0; q < count; ++q) v -= basis.col(q).dot(v) * basis.col(q);
    const double norm = v.norm();
    if (norm <= tol * original) continue;
    basis.col(count++) = v / norm;
  }
  return basis.middleCols(fixed, count - fixed);
}

int affine_rank(const Eigen::MatrixXd& points, double rel_tol) {
  if (points.cols() <= 1) return 0;
  Eigen::MatrixXd diff = points.rightCols(points.cols() - 1).colwise() - points.col(0);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(diff);
  qr.setThreshold(rel_tol);
  return static_cast<int>(qr.rank());
}

NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations) {
  const Eigen::Index m = a.cols();
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * m + 10);
  const double tol = 10.0 * std::numeric_limits<double>::epsilon() * a.cwiseAbs().sum() *
                     static_cast<double>(std::max<Eigen::Index>(a.rows(), m));

  NnlsResult out;
  out.x = Eigen::VectorXd::Zero(m);
  std::vector<bool> passive(m, false);
  Eigen::VectorXd w = a.transpose() * (b - a * out.x);

  auto solve_passive = [&](Eigen::VectorXd& z) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < m; ++j)
      if (passive[j]) idx.push_back(j);
    Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t q = 0; q < idx.size(); ++q) ap.col(static_cast<Eigen::Index>(q)) = a.col(idx[q]);
    Eigen::VectorXd zp = ap.colPivHouseholderQr().solve(b);
    z = Eigen::VectorXd::Zero(m);
    for (std::size_t q = 0; q < idx.size(); ++q) z(idx[q]) = zp(static_cast<Eigen::Index>(q));
  };

  int iter = 0;
  while (true) {
    Eigen::Index best = -1;
    double best_w = tol;
    for (Eigen::Index j = 0; j < m; ++j)
      if (!passive[j] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    if (best < 0) {
      out.converged = true;
      break;
    }
    if (++iter > max_iterations) break;
    passive[best] = true;

    Eigen::VectorXd z;
    while (true) {
      solve_passive(z);
      bool feasible = true;
      for (Eigen::Index j = 0; j < m; ++j)
        if (passive[j] && z(j) <= 0.0) feasible = false;
      if (feasible) break;
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < m; ++j)
        if (passive[j] && z(j) <= 0.0) alpha = std::min(alpha, out.x(j) / (out.x(j) - z(j)));
      out.x += alpha * (z - out.x);
      for (Eigen::Index j = 0; j < m; ++j)
        if (passive[j] && out.x(j) <= tol) {
          passive[j] = false;
          out.x(j) = 0.0;
        }
    }
    out.x = z;
    w = a.transpose() * (b - a * out.x);
  }
  out.iterations = iter;
  out.residual_norm = (a * out.x - b).norm();
  return out;
}

LpResult solve_lp_origin_feasible(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                  const Eigen::VectorXd& c) {
  const Eigen::Index rows = a.rows(), vars = a.cols();
  if ((b.array() < 0.0).any()) throw InvalidArgument("LP right-hand side must be nonnegative");
  // tableau: [A I | b] with objective row [-c 0 | 0]
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(rows + 1, vars + rows + 1);
  t.topLeftCorner(rows, vars) = a;
  t.block(0, vars, rows, rows).setIdentity();
  t.topRightCorner(rows, 1) = b;
  t.bottomLeftCorner(1, vars) = -c.transpose();
  std::vector<Eigen::Index> basis(rows);
  for (Eigen::Index r = 0; r < rows; ++r) basis[r] = vars + r;

  constexpr double eps = 1e-12;
  const Eigen::Index cols = vars + rows;
  const int limit = 50 * static_cast<int>(cols + rows) + 100;
  LpResult out;
  int it = 0;
  for (; it < limit; ++it) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < cols; ++j)
      if (t(rows, j) < -eps) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (t(r, enter) <= eps) continue;
      const double ratio = t(r, cols) / t(r, enter);
      if (ratio < best_ratio - eps || (std::abs(ratio - best_ratio) <= eps && leave >= 0 &&
                                       basis[r] < basis[leave])) {
        best_ratio = ratio;
        leave = r;
      }
    }
    if (leave < 0) {
      out.status = LpStatus::Unbounded;
      return out;
    }
    t.row(leave) /= t(leave, enter);
    for (Eigen::Index r = 0; r <= rows; ++r)
      if (r != leave && t(r, enter) != 0.0) t.row(r) -= t(r, enter) * t.row(leave);
    basis[leave] = enter;
  }
  if (it == limit) out.status = LpStatus::IterationLimit;
  out.x = Eigen::VectorXd::Zero(vars);
  for (Eigen::Index r = 0; r < rows; ++r)
    if (basis[r] < vars) out.x(basis[r]) = t(r, cols);
  out.objective = c.dot(out.x);
  return out;
}

}  // namespace polyproj
