#pragma once

// Expected face numbers of random projections of regular polytopes and of
// the Gaussian models that share their distribution, via
//
//   E f_k(Pi_d P_n) = 2 sum_{s>=0} s_n(d-2s),
//   s_n(j) = c_{n,j-1} c_{j-1,k} beta(Q_{k,n}, Q_{j-1,n}) gamma(Q_{j-1,n}, P_n).

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polyproj/angles.hpp"
#include "polyproj/numbers.hpp"
#include "polyproj/polytope.hpp"

namespace polyproj {

/// Gaussian polytope, symmetric Gaussian polytope, Gaussian zonotope.
enum class Model { Gaussian, Symmetric, Zonotope };

std::string_view to_string(Model m);
Model parse_model(std::string_view name);

/// Either a projected regular polytope family or a Gaussian model.
using Subject = std::variant<Family, Model>;
std::string subject_name(const Subject& s);

/// An expectation with its Monte Carlo standard error. Exact values carry the
/// rational (or integer) value as well.
struct ValueEstimate {
  double value = 0.0;
  double std_error = 0.0;
  bool exact = false;
  std::optional<Rational> exact_value;

  static ValueEstimate from_exact(const Rational& r);
};

struct ExpectedFVector {
  std::string model;
  int n = 0;
  int d = 0;
  std::map<int, ValueEstimate> entries;
};

struct SnTerm {
  int j = 0;
  BigInt faces_outer;  // c_{n,j-1}
  BigInt faces_inner;  // c_{j-1,k}
  AngleEstimate beta;
  AngleEstimate gamma;
  double value = 0.0;
  double std_error = 0.0;
};

/// Terms s_n(j) for j = d, d-2, ... >= 1 (terms with j-1 < k are omitted).
std::vector<SnTerm> sn_terms(Family f, int n, int d, int k, const MCConfig& cfg);

/// E f_k(Pi_d P_n). Deterministic cases (d >= n, k >= d, d == 1) are exact.
ValueEstimate expected_f_projection(Family f, int n, int d, int k, const MCConfig& cfg);

/// All k in [0, min(n, d)].
ExpectedFVector expected_f_vector(Family f, int n, int d, const MCConfig& cfg);

/// 2 sum_{j=d-2s>=1} C(n, j-1) C(j-1, k); requires 1 <= d <= n and 0 <= k < d.
Rational expected_f_cube_closed_form(int n, int d, int k);

/// E f_k of the convex hull of n Gaussian points in R^d.
ValueEstimate expected_f_gaussian(int n, int d, int k, const MCConfig& cfg);
/// E f_k of conv(+-X_1, ..., +-X_n).
ValueEstimate expected_f_symmetric(int n, int d, int k, const MCConfig& cfg);
/// E f_k of the zonotope [0,X_1] + ... + [0,X_n] (deterministic in general position).
Rational expected_f_zonotope(int n, int d, int k);

/// Dispatch on a family (n = polytope dimension) or model (n = point count).
ValueEstimate expected_value(const Subject& s, int n, int d, int k, const MCConfig& cfg);

/// Whether the strict increase from n to n+1 is asserted for this subject.
bool strict_increase_expected(const Subject& s, int n, int d, int k);

/// f_k(P_n) for the family, the trivial upper bound of any projection.
BigInt polytope_face_number(Family f, int n, int k);

/// V_k(P_n) = c_{n,k} gamma(Q_{k,n}, P_n) Vol_k(Q_{k,n}).
ValueEstimate intrinsic_volume(Family f, int n, int k, const MCConfig& cfg);

/// kappa_l = pi^{l/2} / Gamma(1 + l/2).
double unit_ball_volume(int l);

/// (sqrt(k+1)/k!)^b prod_{j=1}^k Gamma((d+b+1-j)/2) / Gamma((d+1-j)/2).
double t_functional_factor(int d, int k, double b);

/// E T^{d,k}_{0,b} of the Gaussian polytope given E f_k.
double t_functional_expected(int n, int d, int k, double b, double ef_k);

struct PoissonResult {
  double value = 0.0;
  double std_error = 0.0;
  long truncation = 0;    // last point count included
  double tail_bound = 0;  // bound on the omitted tail
};

/// Poisson mixtures sum_l P[N(t) = l] E f_k(model with l points). Per-l
/// expectations are memoized across calls.
class PoissonMixture {
 public:
  PoissonMixture(Model model, int d, int k, MCConfig cfg);

  /// Truncates at the first L with tail bound < eps; throws TruncationError
  /// if L would exceed max_truncation().
  PoissonResult evaluate(double t, double eps);
  /// Sum over l <= truncation without any tail control.
  PoissonResult evaluate_to(double t, long truncation);
  /// Upper bound on sum_{l > L} P[N(t) = l] f_k(model with l points).
  double tail_bound(double t, long truncation) const;
  long max_truncation(double t) const;

  const ValueEstimate& term(long l);

 private:
  Model model_;
  int d_;
  int k_;
  MCConfig cfg_;
  std::map<long, ValueEstimate> memo_;
};

PoissonResult poissonized_expected(double t, int d, int k, Model model, double eps,
                                   const MCConfig& cfg);

struct MonotonicityRow {
  int n = 0;
  ValueEstimate value;
  /// Increase from the previous row by the exact or 3-sigma rule; empty on the first row.
  std::optional<bool> strict_increase;
  /// Whether a strict increase from the previous row is expected.
  bool strict_expected = false;
};

std::vector<MonotonicityRow> monotonicity_table(const Subject& s, int d, int k, int n_min,
                                                int n_max, const MCConfig& cfg);

/// Exact comparison when both sides are exact, otherwise the 3-sigma rule.
bool strictly_greater(const ValueEstimate& hi, const ValueEstimate& lo);

}  // namespace polyproj
