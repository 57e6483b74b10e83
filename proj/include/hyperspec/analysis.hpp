#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hyperspec/error.hpp"
#include "hyperspec/hypergraph.hpp"
#include "hyperspec/matrix_oracle.hpp"
#include "hyperspec/perron.hpp"
#include "hyperspec/spectrum.hpp"
#include "hyperspec/tensor.hpp"

namespace hyperspec {

// ---------------------------------------------------------------------------
// Check results

struct Assertion {
  std::string description;
  std::string expected;
  std::string observed;
  double tolerance = 0.0;
  bool passed = false;
  bool warning_only = false;  // a failure here sets `warning`, not `passed = false`
};

struct TheoremCheckResult {
  std::string theorem_id;
  bool passed = true;
  bool warning = false;
  std::vector<Assertion> assertions;
  std::vector<std::string> notes;

  void add(Assertion a) {
    if (!a.passed) {
      if (a.warning_only) {
        warning = true;
      } else {
        passed = false;
      }
    }
    assertions.push_back(std::move(a));
  }
  void expect(std::string description, bool ok, std::string expected = "true", std::string observed = "",
              bool warning_only = false) {
    if (observed.empty()) observed = ok ? "true" : "false";
    add({std::move(description), std::move(expected), std::move(observed), 0.0, ok, warning_only});
  }
  void expect_near(std::string description, double expected, double observed, double tol, bool warning_only = false) {
    const bool ok = std::abs(expected - observed) <= tol;
    add({std::move(description), format(expected), format(observed), tol, ok, warning_only});
  }
  void expect_set(std::string description, const std::vector<Complex>& expected, const std::vector<Complex>& observed,
                  double tol, bool warning_only = false);
  void expect_exact(std::string description, const Rational& expected, const Rational& observed) {
    add({std::move(description), to_string(expected), to_string(observed), 0.0, expected == observed, false});
  }

  static std::string format(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
  }
  static std::string format(Complex v) {
    std::ostringstream s;
    s.precision(17);
    s << v.real();
    if (v.imag() != 0.0) s << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
    return s.str();
  }
};

struct AnalysisOptions {
  SpectrumOptions spectrum;
  BruteForceLimits limits;
  double set_tolerance = 1e-6;  // distinct-set comparisons, relative to max(1, |lambda|)
  bool oracle_for_graphs = true;
};

// ---------------------------------------------------------------------------
// Distinct spectra and set comparisons

/// Distinct eigenvalues of T: the dense oracle for order 2 when allowed,
/// otherwise the homotopy solver.
inline std::vector<Complex> distinct_spectrum(const HypergraphTensor& t, const AnalysisOptions& opt = {}) {
  std::vector<Complex> out;
  if (t.order() == 2 && opt.oracle_for_graphs) {
    for (const auto& e : matrix_oracle(t)) out.push_back(e.value);
    return out;
  }
  return compute_spectrum(t, opt.spectrum).values();
}

inline bool contains_value(const std::vector<Complex>& set, Complex v, double tol) {
  return std::any_of(set.begin(), set.end(), [&](Complex s) { return eigenvalues_close(s, v, tol); });
}

/// Every member of `a` is within tolerance of some member of `b`.
inline bool is_subset(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  return std::all_of(a.begin(), a.end(), [&](Complex v) { return contains_value(b, v, tol); });
}

inline bool same_distinct_set(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  return is_subset(a, b, tol) && is_subset(b, a, tol);
}

template <class F>
std::vector<Complex> map_values(const std::vector<Complex>& v, F f) {
  std::vector<Complex> out;
  out.reserve(v.size());
  for (auto c : v) out.push_back(f(c));
  return out;
}

inline std::string format_set(const std::vector<Complex>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    std::ostringstream o;
    o.precision(10);
    o << v[i].real();
    if (std::abs(v[i].imag()) > 1e-12) o << (v[i].imag() < 0 ? "-" : "+") << std::abs(v[i].imag()) << "i";
    s += o.str();
  }
  return s + "}";
}

inline void TheoremCheckResult::expect_set(std::string description, const std::vector<Complex>& expected,
                                           const std::vector<Complex>& observed, double tol, bool warning_only) {
  add({std::move(description), format_set(expected), format_set(observed), tol,
       same_distinct_set(expected, observed, tol), warning_only});
}

// ---------------------------------------------------------------------------
// Row sums

/// Exact row sums of A, K, K+, RW, RW+ against deg, 0, 2 deg, 0, 2.
inline TheoremCheckResult check_row_sums(const WeightedHypergraph& g) {
  TheoremCheckResult r;
  r.theorem_id = "rowsums";
  const auto prof = degree_profile(g);
  const bool positive = std::all_of(prof.degrees.begin(), prof.degrees.end(), [](const Rational& d) { return d > 0; });
  const std::pair<TensorKind, int> kinds[] = {
      {TensorKind::A, 1}, {TensorKind::K, 0}, {TensorKind::KPlus, 2}, {TensorKind::RW, -1}, {TensorKind::RWPlus, -2}};
  for (const auto& [kind, rule] : kinds) {
    if (rule < 0 && !positive) {
      r.notes.push_back(to_string(kind) + " skipped: isolated vertex");
      continue;
    }
    const auto t = build(g, kind);
    for (std::size_t i = 0; i < g.num_vertices(); ++i) {
      Rational expected = rule == -1 ? Rational(0) : rule == -2 ? Rational(2) : Rational(rule) * prof.degrees[i];
      r.expect_exact(to_string(kind) + " row " + std::to_string(i + 1), expected, row_sum_exact(t, i));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Eigenvalue count and sum against a supplied characteristic polynomial

/// A characteristic polynomial given as a product of powers of rational
/// factors. Coefficients run from the leading one down to the constant.
struct FactoredPolynomial {
  struct Factor {
    std::vector<Rational> coefficients;
    unsigned exponent = 1;
  };
  std::vector<Factor> factors;

  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& f : factors) d += (f.coefficients.size() - 1) * f.exponent;
    return d;
  }
  Rational root_sum() const {
    Rational s = 0;
    for (const auto& f : factors) {
      if (f.coefficients.size() < 2) continue;
      s += Rational(f.exponent) * (-f.coefficients[1] / f.coefficients[0]);
    }
    return s;
  }
  std::vector<Complex> distinct_roots() const {
    std::vector<Complex> roots;
    for (const auto& f : factors) {
      const auto d = static_cast<Eigen::Index>(f.coefficients.size() - 1);
      if (d < 1) continue;
      Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
      for (Eigen::Index j = 0; j < d; ++j) {
        companion(0, j) = -to_double(f.coefficients[static_cast<std::size_t>(j + 1)] / f.coefficients[0]);
      }
      for (Eigen::Index j = 1; j < d; ++j) companion(j, j - 1) = 1.0;
      Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
      for (Eigen::Index j = 0; j < d; ++j) {
        Complex z = es.eigenvalues()(j);
        if (!contains_value(roots, z, 1e-9)) roots.push_back(z);
      }
    }
    return roots;
  }
};

/// Degree and root sum of the reference polynomial against the counting
/// formula, and the solver's distinct eigenvalues against its roots.
inline TheoremCheckResult check_eigenvalue_count_and_sum(const HypergraphTensor& t, const FactoredPolynomial& reference,
                                                         const std::vector<Complex>& found, double tol = 1e-6) {
  if (reference.factors.empty()) throw Error(ErrorCode::MissingReference, "no reference characteristic polynomial");
  TheoremCheckResult r;
  r.theorem_id = "eigencount";
  const auto n = t.dimension();
  const unsigned k = t.order();
  Integer power = 1;
  for (std::size_t i = 1; i < n; ++i) power *= (k - 1);
  const Integer expected_degree = power * n;
  r.add({"degree", expected_degree.str(), std::to_string(reference.degree()), 0.0,
         expected_degree == Integer(reference.degree()), false});
  bool exact_diagonal = true;
  Rational trace = 0;
  double trace_value = 0.0;
  for (const auto& d : t.diagonal()) {
    trace_value += d.value;
    if (d.exact) {
      trace += *d.exact;
    } else {
      exact_diagonal = false;
    }
  }
  if (exact_diagonal) {
    r.expect_exact("root sum", Rational(power) * trace, reference.root_sum());
  } else {
    r.expect_near("root sum", to_double(Rational(power)) * trace_value, to_double(reference.root_sum()), 1e-9);
  }
  const auto roots = reference.distinct_roots();
  for (auto v : found) {
    r.add({"found value is a root", "root", TheoremCheckResult::format(v), tol, contains_value(roots, v, tol), false});
  }
  for (auto z : roots) {
    r.add({"root is found", TheoremCheckResult::format(z), contains_value(found, z, tol) ? "found" : "missing", tol,
           contains_value(found, z, tol), false});
  }
  return r;
}

// ---------------------------------------------------------------------------
// H-eigenvalue bounds

/// Every H-eigenvalue lies in some Gershgorin disc |lambda - t_ii| <= r_i,
/// and in [0, 2 Delta] (K, K+) or [0, 2] (Laplacians).
inline TheoremCheckResult check_h_bounds(const WeightedHypergraph& g, const HypergraphTensor& t,
                                         const std::vector<HEigenpair>& pairs, double slack = 1e-8) {
  TheoremCheckResult r;
  r.theorem_id = "hbounds";
  const auto kind = t.kind();
  if (kind == TensorKind::A) {
    r.notes.push_back("not applicable to the adjacency tensor");
    return r;
  }
  const auto prof = degree_profile(g);
  const bool kirchhoff = kind == TensorKind::K || kind == TensorKind::KPlus;
  const double hi = kirchhoff ? 2.0 * to_double(prof.delta_max) : 2.0;
  // The [0, 2] bound for L and L+ is inherited through the L <-> RW
  // similarity, which needs a uniform hypergraph.
  const bool interval_is_theorem = kirchhoff || kind == TensorKind::RW || kind == TensorKind::RWPlus || is_uniform(g);
  std::vector<double> radius(t.dimension());
  for (std::size_t i = 0; i < t.dimension(); ++i) radius[i] = t.diagonal()[i].value - dominance_margin(t, i);
  for (const auto& p : pairs) {
    const std::string label = "H-eigenvalue " + TheoremCheckResult::format(p.value);
    r.add({label + " in [0, " + TheoremCheckResult::format(hi) + "]", "inside", TheoremCheckResult::format(p.value),
           slack, p.value >= -slack && p.value <= hi + slack, !interval_is_theorem});
    bool disc = false;
    for (std::size_t i = 0; i < t.dimension(); ++i) {
      disc = disc || std::abs(p.value - t.diagonal()[i].value) <= radius[i] + slack;
    }
    r.expect(label + " in a Gershgorin disc", disc);
  }
  if (!interval_is_theorem) r.notes.push_back("interval bound is warning-only on a non-uniform hypergraph");
  return r;
}

// ---------------------------------------------------------------------------
// Spectral symmetries

/// The distinct set is invariant under rotation by e^{2 pi i / ell}.
inline bool check_spectral_symmetry(const std::vector<Complex>& spectrum, unsigned ell, double tol = 1e-6) {
  if (ell < 2) throw Error(ErrorCode::RangeError, "ell must be at least 2");
  const Complex rot = std::polar(1.0, 2.0 * std::numbers::pi / ell);
  return same_distinct_set(spectrum, map_values(spectrum, [&](Complex z) { return rot * z; }), tol);
}

/// (nabla, ell)-colorability against spectral ell-symmetry of A. The same
/// comparison for K+, L+ and RW+ is recorded as warning-only: their nonzero
/// diagonals keep those tensors from being colorable.
inline TheoremCheckResult check_colorability_symmetry(const WeightedHypergraph& g, unsigned ell,
                                                      const AnalysisOptions& opt = {}) {
  TheoremCheckResult r;
  r.theorem_id = "colorability";
  if (!is_connected(g)) throw Error(ErrorCode::NotConnected, "colorability check needs a connected hypergraph");
  const auto phi = find_coloring(g, ell, opt.limits);
  const std::string colorable = phi ? "colorable" : "not colorable";
  const auto spec_a = distinct_spectrum(build(g, TensorKind::A), opt);
  const bool sym_a = check_spectral_symmetry(spec_a, ell, opt.set_tolerance);
  r.add({"A spectral symmetry matches colorability", colorable, sym_a ? "symmetric" : "not symmetric",
         opt.set_tolerance, sym_a == phi.has_value(), false});
  for (auto kind : {TensorKind::KPlus, TensorKind::LPlus, TensorKind::RWPlus}) {
    const bool sym = check_spectral_symmetry(distinct_spectrum(build(g, kind), opt), ell, opt.set_tolerance);
    r.add({to_string(kind) + " spectral symmetry matches colorability", colorable,
           sym ? "symmetric" : "not symmetric", opt.set_tolerance, sym == phi.has_value(), true});
  }
  return r;
}

/// Searches diagonal sign vectors P != -Id with A = -P^{-(k-1)} A P
/// entrywise. For +-1 signs and k even, p_{i1}^{-(k-1)} = p_{i1}, so every
/// nonzero entry needs the product of signs over its index multiset to be -1.
inline std::optional<std::vector<int>> sign_matrix_search(const WeightedHypergraph& g,
                                                          const BruteForceLimits& limits = {}) {
  const unsigned k = g.order();
  if (k % 2 != 0) throw Error(ErrorCode::NotEvenOrder, "sign matrix search needs an even order");
  const auto n = g.num_vertices();
  require_subset_search(n, limits, "sign_matrix_search");
  for (const auto& edge : g.edges()) {
    if (composition_count(k, static_cast<unsigned>(edge.support.size())) > limits.max_multisets_per_edge) {
      throw Error(ErrorCode::TooLarge, "sign_matrix_search: multiset enumeration exceeds cap");
    }
  }
  const std::uint64_t all = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask + 1 < all; ++mask) {  // the all-minus vector is -Id
    std::vector<int> p(n);
    for (std::size_t v = 0; v < n; ++v) p[v] = (mask >> v) & 1 ? -1 : 1;
    bool ok = true;
    for (const auto& edge : g.edges()) {
      for_each_composition(k, static_cast<unsigned>(edge.support.size()), [&](std::span<const unsigned> a) {
        if (!ok) return;
        int sign = 1;
        for (std::size_t q = 0; q < a.size(); ++q) {
          if (a[q] % 2 == 1) sign *= p[edge.support[q]];
        }
        if (sign != -1) ok = false;
      });
      if (!ok) break;
    }
    if (ok) return p;
  }
  return std::nullopt;
}

/// Spectral consequences of odd-bipartiteness at distinct-eigenvalue level.
/// The converse direction (no odd bipartition, so some symmetry breaks) is
/// warning-only.
inline TheoremCheckResult check_odd_bipartite_spectra(const WeightedHypergraph& g, const AnalysisOptions& opt = {}) {
  TheoremCheckResult r;
  r.theorem_id = "oddbipartite";
  if (!is_connected(g)) throw Error(ErrorCode::NotConnected, "odd-bipartite check needs a connected hypergraph");
  const auto witness = odd_bipartition(g, opt.limits);
  const double tol = opt.set_tolerance;
  const auto a = distinct_spectrum(build(g, TensorKind::A), opt);
  const auto k = distinct_spectrum(build(g, TensorKind::K), opt);
  const auto kp = distinct_spectrum(build(g, TensorKind::KPlus), opt);
  const auto l = distinct_spectrum(build(g, TensorKind::L), opt);
  const bool sym_a = same_distinct_set(a, map_values(a, [](Complex z) { return -z; }), tol);
  const bool sym_k = same_distinct_set(k, kp, tol);
  const bool sym_l = same_distinct_set(l, map_values(l, [](Complex z) { return 2.0 - z; }), tol);
  if (g.order() % 2 == 0) {
    const auto signs = sign_matrix_search(g, opt.limits);
    r.expect("sign matrix exists iff odd-bipartite", signs.has_value() == witness.has_value(),
             witness ? "exists" : "none", signs ? "exists" : "none");
  }
  if (witness) {
    r.expect_set("spec(A) = -spec(A)", a, map_values(a, [](Complex z) { return -z; }), tol);
    r.expect_set("spec(K) = spec(K+)", k, kp, tol);
    r.expect_set("spec(L) = 2 - spec(L)", l, map_values(l, [](Complex z) { return 2.0 - z; }), tol);
    std::vector<Complex> real_a;
    for (auto z : a) {
      if (std::abs(z.imag()) <= 1e-10 * std::max(1.0, std::abs(z))) real_a.push_back(z);
    }
    r.expect_set("real eigenvalues of A symmetric under negation", real_a,
                 map_values(real_a, [](Complex z) { return -z; }), tol, true);
  } else {
    r.expect("some symmetry fails without an odd bipartition", !(sym_a && sym_k && sym_l), "true", "", true);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Duplicate vertices

struct NullVector {
  TensorKind kind;
  Rational value;                // 0 for A, 1 for the Laplacian kinds
  std::vector<Rational> vector;  // +1 and -1 on two class members
  double residual = 0.0;         // exact zero reported as 0 for rational kinds
};

/// For each duplicate class {u_1, ..., u_n} the n - 1 vectors e_{u_n} - e_{u_j}
/// as eigenvectors of A (value 0) and L, L+, RW, RW+ (value 1). Each one is
/// verified: exactly for A, RW, RW+, in floating point for L, L+.
inline std::vector<NullVector> duplicate_null_vectors(const WeightedHypergraph& g, const BruteForceLimits& limits = {}) {
  if (g.order() % 2 != 0) throw Error(ErrorCode::OddOrder, "duplicate null vectors need an even order");
  const auto classes = duplicate_classes(g, limits);
  if (classes.empty()) throw Error(ErrorCode::NoDuplicates, "no duplicate vertices");
  const auto n = g.num_vertices();
  const std::pair<TensorKind, int> kinds[] = {{TensorKind::A, 0},     {TensorKind::L, 1},  {TensorKind::LPlus, 1},
                                              {TensorKind::RW, 1},    {TensorKind::RWPlus, 1}};
  std::vector<NullVector> out;
  for (const auto& [kind, value] : kinds) {
    const auto t = build(g, kind);
    for (const auto& cls : classes) {
      for (std::size_t j = 0; j + 1 < cls.size(); ++j) {
        NullVector nv{kind, Rational(value), std::vector<Rational>(n, Rational(0)), 0.0};
        nv.vector[cls.back()] = 1;
        nv.vector[cls[j]] = -1;
        if (t.has_exact()) {
          for (const auto& c : residual_exact(t, nv.value, nv.vector)) nv.residual = std::max(nv.residual, to_double(abs(c)));
        } else {
          std::vector<Complex> x;
          for (const auto& c : nv.vector) x.emplace_back(to_double(c), 0.0);
          nv.residual = residual(t, Complex(value, 0.0), x);
        }
        out.push_back(std::move(nv));
      }
    }
  }
  return out;
}

/// For every reported eigenpair away from the exempt value (0 for A, 1 for
/// the Laplacian kinds), duplicate coordinates satisfy x_i^{k-1} = x_j^{k-1}.
inline TheoremCheckResult check_duplicate_constraint(const WeightedHypergraph& g, TensorKind kind,
                                                     const SpectrumReport& report, double tol = 1e-6,
                                                     const BruteForceLimits& limits = {}) {
  TheoremCheckResult r;
  r.theorem_id = "duplicate";
  if (kind == TensorKind::K || kind == TensorKind::KPlus) {
    r.notes.push_back("not applicable to Kirchhoff kinds");
    return r;
  }
  const auto classes = duplicate_classes(g, limits);
  if (classes.empty()) {
    r.notes.push_back("no duplicate vertices");
    return r;
  }
  const double exempt = kind == TensorKind::A ? 0.0 : 1.0;
  const unsigned p = g.order() - 1;
  for (const auto& e : report.eigenvalues) {
    if (std::abs(e.value - exempt) <= 1e-6 * std::max(1.0, std::abs(e.value))) continue;
    for (const auto& cls : classes) {
      for (std::size_t a = 0; a < cls.size(); ++a) {
        for (std::size_t b = a + 1; b < cls.size(); ++b) {
          const Complex xi = detail::ipow(e.eigenvector[cls[a]], p);
          const Complex xj = detail::ipow(e.eigenvector[cls[b]], p);
          const double err = std::abs(xi - xj) / std::max({1.0, std::abs(xi), std::abs(xj)});
          r.add({"lambda=" + TheoremCheckResult::format(e.value) + " x_" + std::to_string(cls[a] + 1) + "^" +
                     std::to_string(p) + " = x_" + std::to_string(cls[b] + 1) + "^" + std::to_string(p),
                 TheoremCheckResult::format(xi), TheoremCheckResult::format(xj), tol, err <= tol, false});
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Hyperflower prediction

struct FlowerPrediction {
  unsigned nabla = 0;
  unsigned petals = 0;                       // M
  std::vector<Complex> distinct_eigenvalues;  // adjacency tensor, sorted by (re, im)
  std::size_t zero_hspan = 0;                // N
  bool conditional_roots_of_unity = false;   // M = n (nabla - 1) + 1 with n >= 1
  std::vector<std::pair<Complex, std::vector<Complex>>> eigenpairs;  // constructed eigenvectors
};

/// Closed-form adjacency eigenvalues of hyperflower(nabla, M) with the
/// eigenvectors of the constructive argument: central coordinates
/// beta M^{1/nabla}, peripheral beta^nabla, beta^{nabla-1} = omega; and when
/// M = n (nabla - 1) + 1 a second family with eigenvalues omega.
inline FlowerPrediction flower_prediction(unsigned nabla, unsigned petals) {
  if (nabla < 3 || petals < 1) throw Error(ErrorCode::RangeError, "flower prediction needs nabla >= 3 and M >= 1");
  FlowerPrediction f;
  f.nabla = nabla;
  f.petals = petals;
  const std::size_t n = nabla - 1 + petals;
  f.zero_hspan = n;
  const double k = nabla;
  const double m = petals;
  const double pi = std::numbers::pi;

  std::vector<Complex> e1(n, Complex(0));
  e1[0] = 1.0;
  f.eigenpairs.push_back({Complex(0), e1});
  for (unsigned j = 0; j < nabla; ++j) {
    const Complex beta = std::polar(1.0, 2.0 * pi * j / (k * (k - 1)));
    std::vector<Complex> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = i + 1 < nabla ? beta * std::pow(m, 1.0 / k) : std::pow(beta, k);
    f.eigenpairs.push_back({std::polar(std::pow(m, (k - 1) / k), 2.0 * pi * j / k), x});
  }
  f.conditional_roots_of_unity = petals >= nabla && (petals - 1) % (nabla - 1) == 0;
  if (f.conditional_roots_of_unity) {
    const unsigned reps = (petals - 1) / (nabla - 1);
    for (unsigned j = 0; j < nabla; ++j) {
      // alpha^{nabla-1} = omega; pick the branch whose z = alpha^nabla is not 1.
      for (unsigned b = 0; b + 1 < nabla; ++b) {
        const Complex alpha = std::polar(1.0, 2.0 * pi * (j / k + b) / (k - 1));
        const Complex z = std::pow(alpha, static_cast<int>(nabla));
        if (std::abs(z - 1.0) < 0.5) continue;
        std::vector<Complex> x(n);
        for (std::size_t i = 0; i + 1 < nabla; ++i) x[i] = alpha;
        std::size_t pos = nabla - 1;
        for (unsigned power = 1; power < nabla; ++power) {
          const unsigned count = power == 1 ? reps + 1 : reps;
          for (unsigned c = 0; c < count; ++c) x[pos++] = std::pow(z, static_cast<int>(power));
        }
        f.eigenpairs.push_back({std::polar(1.0, 2.0 * pi * j / k), x});
        break;
      }
    }
  }
  for (const auto& [value, vec] : f.eigenpairs) {
    if (!contains_value(f.distinct_eigenvalues, value, 1e-12)) f.distinct_eigenvalues.push_back(value);
  }
  std::sort(f.distinct_eigenvalues.begin(), f.distinct_eigenvalues.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return f;
}

/// Predicted eigenpairs verified by residual, predicted values present in the
/// solver's distinct spectrum, |lambda| <= M for every nonzero value, and
/// (warning-only) no solver value outside the prediction.
inline TheoremCheckResult check_flower(const FlowerPrediction& f, const std::vector<Complex>& found,
                                       double tol = 1e-6) {
  TheoremCheckResult r;
  r.theorem_id = "flower";
  const auto g = hyperflower(f.nabla, f.petals);
  const auto a = build(g, TensorKind::A);
  for (const auto& [value, x] : f.eigenpairs) {
    const double res = residual(a, value, x);
    r.add({"constructed eigenpair for " + TheoremCheckResult::format(value), "< 1e-10", TheoremCheckResult::format(res),
           1e-10, res < 1e-10, false});
  }
  for (auto v : f.distinct_eigenvalues) {
    r.add({"predicted value found", TheoremCheckResult::format(v), contains_value(found, v, tol) ? "found" : "missing",
           tol, contains_value(found, v, tol), false});
  }
  for (auto v : found) {
    if (std::abs(v) > tol) {
      r.add({"|lambda| <= M", std::to_string(f.petals), TheoremCheckResult::format(std::abs(v)), tol,
             std::abs(v) <= f.petals + tol, false});
    }
    r.add({"found value predicted", "predicted", TheoremCheckResult::format(v), tol,
           contains_value(f.distinct_eigenvalues, v, tol), true});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Disjoint unions

inline TheoremCheckResult disjoint_union_spectrum_check(const WeightedHypergraph& g1, const WeightedHypergraph& g2,
                                                        TensorKind kind, const AnalysisOptions& opt = {}) {
  if (g1.order() != g2.order()) throw Error(ErrorCode::OrderMismatch, "parts have different maximum edge sizes");
  TheoremCheckResult r;
  r.theorem_id = "disjointunion";
  const auto s1 = distinct_spectrum(build(g1, kind), opt);
  const auto s2 = distinct_spectrum(build(g2, kind), opt);
  const auto su = distinct_spectrum(build(disjoint_union(g1, g2), kind), opt);
  auto parts = s1;
  for (auto z : s2) {
    if (!contains_value(parts, z, opt.set_tolerance)) parts.push_back(z);
  }
  r.expect_set("spec(G1 + G2) = spec(G1) u spec(G2)", parts, su, opt.set_tolerance);
  return r;
}

// ---------------------------------------------------------------------------
// Laplacian relations

/// L against RW: equal distinct spectra, and y_j = x_j / deg_j^{1/nabla}
/// mapping each L eigenpair to an RW eigenpair. The relation rests on every
/// entry scaling with the index multiset, which only holds on uniform
/// hypergraphs; elsewhere the assertions are warning-only.
inline TheoremCheckResult check_isospectral(const WeightedHypergraph& g, const AnalysisOptions& opt = {}) {
  TheoremCheckResult r;
  r.theorem_id = "isospectral";
  const bool uniform = is_uniform(g);
  if (!uniform) r.notes.push_back("non-uniform hypergraph: the L <-> RW similarity does not apply");
  const auto l = build(g, TensorKind::L);
  const auto rw = build(g, TensorKind::RW);
  const auto report = compute_spectrum(l, opt.spectrum);
  const auto spec_rw = distinct_spectrum(rw, opt);
  r.expect_set("spec(L) = spec(RW)", report.values(), spec_rw, opt.set_tolerance, !uniform);
  const auto prof = degree_profile(g);
  for (const auto& e : report.eigenvalues) {
    std::vector<Complex> y(e.eigenvector.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
      y[j] = e.eigenvector[j] / std::pow(to_double(prof.degrees[j]), 1.0 / g.order());
    }
    const double res = residual(rw, e.value, y);
    r.add({"transformed eigenvector for " + TheoremCheckResult::format(e.value), "< 1e-8",
           TheoremCheckResult::format(res), 1e-8, res < 1e-8, !uniform});
  }
  return r;
}

/// lambda in spec(L) iff 2 - lambda in spec(L+), and likewise RW, RW+.
inline TheoremCheckResult check_reflection(const WeightedHypergraph& g, const AnalysisOptions& opt = {}) {
  TheoremCheckResult r;
  r.theorem_id = "reflection";
  const std::pair<TensorKind, TensorKind> pairs[] = {{TensorKind::L, TensorKind::LPlus},
                                                     {TensorKind::RW, TensorKind::RWPlus}};
  for (const auto& [minus, plus] : pairs) {
    const auto a = distinct_spectrum(build(g, minus), opt);
    const auto b = distinct_spectrum(build(g, plus), opt);
    const auto reflected = map_values(a, [](Complex z) { return 2.0 - z; });
    r.expect_set("spec(" + to_string(plus) + ") = 2 - spec(" + to_string(minus) + ")", reflected, b, opt.set_tolerance);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Spectral radius, irreducibility

/// rho(RW+) = rho(L+) = 2 with the all-ones vector for RW+, delta <= rho(A)
/// <= Delta, 2 delta <= rho(K+) <= 2 Delta, and equality when G is regular
/// and uniform. rho(L+) = 2 goes through the L+ <-> RW+ similarity, so it is
/// warning-only on non-uniform hypergraphs.
inline TheoremCheckResult check_radius(const WeightedHypergraph& g, double tol = 1e-10) {
  TheoremCheckResult r;
  r.theorem_id = "radius";
  const auto prof = degree_profile(g);
  const bool uniform = is_uniform(g);
  const double lo = to_double(prof.delta_min);
  const double hi = to_double(prof.delta_max);
  const auto rwp = spectral_radius_nonneg(build(g, TensorKind::RWPlus));
  r.expect_near("rho(RW+)", 2.0, rwp.rho, tol);
  double ones_err = 0.0;
  for (double v : rwp.eigenvector) ones_err = std::max(ones_err, std::abs(v - 1.0));
  r.expect_near("RW+ Perron vector is all-ones", 0.0, ones_err, 1e-8);
  r.expect_near("rho(L+)", 2.0, spectral_radius_nonneg(build(g, TensorKind::LPlus)).rho, tol, !uniform);
  const double rho_a = spectral_radius_nonneg(build(g, TensorKind::A)).rho;
  r.expect("delta <= rho(A) <= Delta", rho_a >= lo - tol && rho_a <= hi + tol,
           "[" + TheoremCheckResult::format(lo) + ", " + TheoremCheckResult::format(hi) + "]",
           TheoremCheckResult::format(rho_a));
  const double rho_kp = spectral_radius_nonneg(build(g, TensorKind::KPlus)).rho;
  r.expect("2 delta <= rho(K+) <= 2 Delta", rho_kp >= 2 * lo - tol && rho_kp <= 2 * hi + tol,
           "[" + TheoremCheckResult::format(2 * lo) + ", " + TheoremCheckResult::format(2 * hi) + "]",
           TheoremCheckResult::format(rho_kp));
  if (uniform && prof.delta_min == prof.delta_max) {
    r.expect_near("rho(A) = Delta on a regular uniform hypergraph", hi, rho_a, tol);
    r.expect_near("rho(K+) = 2 Delta on a regular uniform hypergraph", 2 * hi, rho_kp, tol);
  }
  return r;
}

/// Weak irreducibility against connectivity and irreducibility against the
/// combinatorial reducibility, for all seven kinds.
inline TheoremCheckResult check_irreducibility(const WeightedHypergraph& g, const BruteForceLimits& limits = {}) {
  TheoremCheckResult r;
  r.theorem_id = "irreducibility";
  const bool connected = is_connected(g);
  const bool reducible = is_reducible(g, limits).has_value();
  const auto prof = degree_profile(g);
  const bool positive = std::all_of(prof.degrees.begin(), prof.degrees.end(), [](const Rational& d) { return d > 0; });
  for (auto kind : kAllKinds) {
    if (is_normalized_kind(kind) && !positive) continue;
    const auto t = build(g, kind);
    r.expect(to_string(kind) + " weakly irreducible iff connected", is_weakly_irreducible(t, limits) == connected,
             connected ? "true" : "false", is_weakly_irreducible(t, limits) ? "true" : "false");
    r.expect(to_string(kind) + " irreducible iff hypergraph irreducible", is_irreducible(t, limits) == !reducible,
             reducible ? "false" : "true", is_irreducible(t, limits) ? "true" : "false");
  }
  return r;
}

/// K, K+, RW, RW+ are diagonally dominated.
inline TheoremCheckResult check_dominance(const WeightedHypergraph& g) {
  TheoremCheckResult r;
  r.theorem_id = "dominance";
  const auto prof = degree_profile(g);
  const bool positive = std::all_of(prof.degrees.begin(), prof.degrees.end(), [](const Rational& d) { return d > 0; });
  for (auto kind : {TensorKind::K, TensorKind::KPlus, TensorKind::RW, TensorKind::RWPlus}) {
    if (is_normalized_kind(kind) && !positive) continue;
    r.expect(to_string(kind) + " diagonally dominated", is_diagonally_dominated(build(g, kind)));
  }
  return r;
}

}  // namespace hyperspec
