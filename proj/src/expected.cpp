#include "polyproj/expected.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "polyproj/errors.hpp"

namespace polyproj {

namespace {

double to_double(const BigInt& v) { return v.convert_to<double>(); }

Rational to_rational(double v) { return Rational(v); }

void check_args(int n, int d, int k) {
  if (n < 1 || d < 1 || k < 0)
    throw InvalidArgument("need n >= 1, d >= 1, k >= 0; got n=" + std::to_string(n) +
                          " d=" + std::to_string(d) + " k=" + std::to_string(k));
}

}  // namespace

std::string_view to_string(Model m) {
  switch (m) {
    case Model::Gaussian: return "gaussian";
    case Model::Symmetric: return "symmetric";
    case Model::Zonotope: return "zonotope";
  }
  return "?";
}

Model parse_model(std::string_view name) {
  if (name == "gaussian") return Model::Gaussian;
  if (name == "symmetric") return Model::Symmetric;
  if (name == "zonotope") return Model::Zonotope;
  throw InvalidArgument("unknown model '" + std::string(name) + "'");
}

std::string subject_name(const Subject& s) {
  return std::visit([](auto v) { return std::string(to_string(v)); }, s);
}

ValueEstimate ValueEstimate::from_exact(const Rational& r) {
  return {r.convert_to<double>(), 0.0, true, r};
}

BigInt polytope_face_number(Family f, int n, int k) {
  return face_count(f, n, k, FaceScope::Polytope);
}

std::vector<SnTerm> sn_terms(Family f, int n, int d, int k, const MCConfig& cfg) {
  check_args(n, d, k);
  std::vector<SnTerm> terms;
  for (int j = d; j >= 1; j -= 2) {
    if (j - 1 < k || j - 1 > n) continue;
    SnTerm t;
    t.j = j;
    t.faces_outer = face_count(f, n, j - 1, FaceScope::Polytope);
    t.faces_inner = face_count(f, j - 1, k, FaceScope::ProperFace);
    t.beta = internal_angle(f, n, k, j - 1, cfg);
    t.gamma = external_angle(f, n, j - 1, cfg);
    const double coeff = to_double(t.faces_outer) * to_double(t.faces_inner);
    t.value = coeff * t.beta.value * t.gamma.value;
    t.std_error = coeff * std::hypot(t.gamma.value * t.beta.std_error, t.beta.value * t.gamma.std_error);
    terms.push_back(std::move(t));
  }
  return terms;
}

ValueEstimate expected_f_projection(Family f, int n, int d, int k, const MCConfig& cfg) {
  check_args(n, d, k);
  // projection is a.s. injective on the affine hull
  if (d >= n) return ValueEstimate::from_exact(Rational(polytope_face_number(f, n, k)));
  if (k > d) return ValueEstimate::from_exact(0);
  if (k == d) return ValueEstimate::from_exact(1);
  if (d == 1) return ValueEstimate::from_exact(2);

  const auto terms = sn_terms(f, n, d, k, cfg);
  ValueEstimate out;
  bool exact = true;
  double var = 0.0;
  Rational exact_sum = 0;
  for (const auto& t : terms) {
    out.value += 2.0 * t.value;
    var += t.std_error * t.std_error;
    if (t.beta.is_exact() && t.gamma.is_exact()) {
      exact_sum += Rational(t.faces_outer * t.faces_inner) * to_rational(t.beta.value) *
                   to_rational(t.gamma.value);
    } else {
      exact = false;
    }
  }
  out.std_error = 2.0 * std::sqrt(var);
  if (exact) {
    out = ValueEstimate::from_exact(2 * exact_sum);
  }
  return out;
}

ExpectedFVector expected_f_vector(Family f, int n, int d, const MCConfig& cfg) {
  ExpectedFVector out{std::string(to_string(f)), n, d, {}};
  for (int k = 0; k <= std::min(n, d); ++k) out.entries[k] = expected_f_projection(f, n, d, k, cfg);
  return out;
}

Rational expected_f_cube_closed_form(int n, int d, int k) {
  if (d < 1 || d > n || k < 0 || k >= d)
    throw InvalidArgument("cube closed form needs 1 <= d <= n and 0 <= k < d; got n=" +
                          std::to_string(n) + " d=" + std::to_string(d) + " k=" + std::to_string(k));
  BigInt sum = 0;
  for (int j = d; j >= 1; j -= 2) sum += binomial(n, j - 1) * binomial(j - 1, k);
  return Rational(2 * sum);
}

ValueEstimate expected_f_gaussian(int n, int d, int k, const MCConfig& cfg) {
  check_args(n, d, k);
  if (n == 1) return ValueEstimate::from_exact(k == 0 ? 1 : 0);
  return expected_f_projection(Family::Simplex, n - 1, d, k, cfg);
}

ValueEstimate expected_f_symmetric(int n, int d, int k, const MCConfig& cfg) {
  return expected_f_projection(Family::Crosspolytope, n, d, k, cfg);
}

Rational expected_f_zonotope(int n, int d, int k) {
  check_args(n, d, k);
  if (d > n) return Rational(polytope_face_number(Family::Cube, n, k));
  if (k == d) return 1;
  if (k > d) return 0;
  return expected_f_cube_closed_form(n, d, k);
}

ValueEstimate expected_value(const Subject& s, int n, int d, int k, const MCConfig& cfg) {
  if (const auto* f = std::get_if<Family>(&s)) return expected_f_projection(*f, n, d, k, cfg);
  switch (std::get<Model>(s)) {
    case Model::Gaussian: return expected_f_gaussian(n, d, k, cfg);
    case Model::Symmetric: return expected_f_symmetric(n, d, k, cfg);
    case Model::Zonotope: return ValueEstimate::from_exact(expected_f_zonotope(n, d, k));
  }
  return {};
}

bool strict_increase_expected(const Subject& s, int n, int d, int k) {
  if (d < 2 || k < 0 || n < 1) return false;
  const bool gaussian = std::holds_alternative<Model>(s) && std::get<Model>(s) == Model::Gaussian;
  return k < std::min(gaussian ? n - 1 : n, d);
}

ValueEstimate intrinsic_volume(Family f, int n, int k, const MCConfig& cfg) {
  if (n < 1 || k < 0 || k > n)
    throw InvalidArgument("intrinsic volume needs 0 <= k <= n; got n=" + std::to_string(n) +
                          " k=" + std::to_string(k));
  if (k == 0) return ValueEstimate::from_exact(1);
  if (f == Family::Cube) return ValueEstimate::from_exact(Rational(binomial(n, k)));
  if (k == n) return {polytope_volume(f, n), 0.0, true, std::nullopt};
  const AngleEstimate gamma = external_angle(f, n, k, cfg);
  const double scale = to_double(face_count(f, n, k, FaceScope::Polytope)) *
                       face_volume(canonical_face(f, n, k));
  return {scale * gamma.value, scale * gamma.std_error, gamma.is_exact(), std::nullopt};
}

double unit_ball_volume(int l) {
  if (l < 0) throw InvalidArgument("unit ball dimension must be >= 0");
  return std::pow(M_PI, 0.5 * l) / std::tgamma(1.0 + 0.5 * l);
}

double t_functional_factor(int d, int k, double b) {
  if (b < 0.0) throw InvalidArgument("T-functional exponent b must be >= 0");
  if (k < 0 || k > d) throw InvalidArgument("T-functional needs 0 <= k <= d");
  double log_factor = b * (0.5 * std::log(k + 1.0) - std::lgamma(k + 1.0));
  for (int j = 1; j <= k; ++j)
    log_factor += std::lgamma(0.5 * (d + b + 1 - j)) - std::lgamma(0.5 * (d + 1 - j));
  return std::exp(log_factor);
}

double t_functional_expected(int n, int d, int k, double b, double ef_k) {
  if (n < 1) throw InvalidArgument("T-functional needs n >= 1");
  return ef_k * t_functional_factor(d, k, b);
}

// ---------------------------------------------------------------------------

PoissonMixture::PoissonMixture(Model model, int d, int k, MCConfig cfg)
    : model_(model), d_(d), k_(k), cfg_(cfg) {
  check_args(1, d, k);
}

const ValueEstimate& PoissonMixture::term(long l) {
  auto it = memo_.find(l);
  if (it != memo_.end()) return it->second;
  ValueEstimate v;
  if (l == 0) {
    // Gaussian models with no points are empty; the zonotope is the origin.
    v = ValueEstimate::from_exact(model_ == Model::Zonotope && k_ == 0 ? 1 : 0);
  } else {
    v = expected_value(model_, static_cast<int>(l), d_, k_, cfg_);
  }
  return memo_.emplace(l, std::move(v)).first->second;
}

double PoissonMixture::tail_bound(double t, long truncation) const {
  // f_k(l) <= sum_i a_i C(l, i) for l > truncation, and
  // sum_{l > L} e^{-t} t^l / l! C(l, i) = t^i / i! P[N(t) >= L + 1 - i].
  std::vector<std::pair<int, double>> coeffs;
  switch (model_) {
    case Model::Gaussian: coeffs = {{k_ + 1, 1.0}}; break;
    case Model::Symmetric: coeffs = {{k_ + 1, std::ldexp(1.0, k_ + 1)}}; break;
    case Model::Zonotope:
      for (int i = k_; i <= d_ - 1; ++i) coeffs.emplace_back(i, 2.0 * binomial(i, k_).convert_to<double>());
      break;
  }
  double bound = 0.0;
  for (auto [i, a] : coeffs) {
    const long m = truncation + 1 - i;
    const double tail = m <= 0 ? 1.0 : boost::math::gamma_p(static_cast<double>(m), t);
    bound += a * std::exp(i * std::log(t) - std::lgamma(i + 1.0)) * tail;
  }
  return bound;
}

long PoissonMixture::max_truncation(double t) const {
  const long start = std::max<long>(d_, k_ + 1);
  return std::max(start + 60, static_cast<long>(std::ceil(t + 12.0 * std::sqrt(t) + 60.0)));
}

PoissonResult PoissonMixture::evaluate_to(double t, long truncation) {
  if (!(t > 0.0)) throw InvalidArgument("Poisson intensity must be > 0");
  PoissonResult r;
  double var = 0.0;
  for (long l = 0; l <= truncation; ++l) {
    const double w = std::exp(-t + l * std::log(t) - std::lgamma(l + 1.0));
    const ValueEstimate& v = term(l);
    r.value += w * v.value;
    var += w * w * v.std_error * v.std_error;
  }
  r.std_error = std::sqrt(var);
  r.truncation = truncation;
  r.tail_bound = tail_bound(t, truncation);
  return r;
}

PoissonResult PoissonMixture::evaluate(double t, double eps) {
  if (!(t > 0.0)) throw InvalidArgument("Poisson intensity must be > 0");
  if (!(eps > 0.0)) throw InvalidArgument("truncation tolerance must be > 0");
  const long cap = max_truncation(t);
  long truncation = std::max<long>(d_, k_ + 1);
  double bound = tail_bound(t, truncation);
  while (!(bound < eps)) {
    if (truncation >= cap)
      throw TruncationError("Poisson truncation did not reach tolerance by l = " + std::to_string(cap),
                            bound);
    bound = tail_bound(t, ++truncation);
  }
  return evaluate_to(t, truncation);
}

PoissonResult poissonized_expected(double t, int d, int k, Model model, double eps,
                                   const MCConfig& cfg) {
  PoissonMixture mix(model, d, k, cfg);
  return mix.evaluate(t, eps);
}

// ---------------------------------------------------------------------------

bool strictly_greater(const ValueEstimate& hi, const ValueEstimate& lo) {
  if (hi.exact_value && lo.exact_value) return *hi.exact_value > *lo.exact_value;
  return hi.value - lo.value > 3.0 * (hi.std_error + lo.std_error);
}

std::vector<MonotonicityRow> monotonicity_table(const Subject& s, int d, int k, int n_min,
                                                int n_max, const MCConfig& cfg) {
  if (d < 2 || k < 0 || k > d)
    throw InvalidArgument("monotonicity table needs d >= 2 and 0 <= k <= d");
  if (n_min < 1 || n_max < n_min) throw InvalidArgument("monotonicity table needs 1 <= n_min <= n_max");
  std::vector<MonotonicityRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    MonotonicityRow row;
    row.n = n;
    row.value = expected_value(s, n, d, k, cfg);
    if (!rows.empty()) {
      row.strict_increase = strictly_greater(row.value, rows.back().value);
      row.strict_expected = strict_increase_expected(s, n - 1, d, k);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace polyproj
