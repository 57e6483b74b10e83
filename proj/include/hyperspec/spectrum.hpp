#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hyperspec/eigen_system.hpp"
#include "hyperspec/error.hpp"
#include "hyperspec/homotopy.hpp"
#include "hyperspec/tensor.hpp"

namespace hyperspec {

struct SolveOptions {
  TrackerOptions tracker;
  std::uint64_t path_budget = 1'000'000;
  double residual_tolerance = 1e-8;
};

struct SolveStats {
  std::uint64_t seed = 0;
  std::uint64_t paths_tracked = 0;
  std::uint64_t finite = 0;
  std::uint64_t at_infinity = 0;
  std::uint64_t failures = 0;  // tracking failures plus finite endpoints above tolerance
  std::uint64_t singular = 0;
};

struct SolveOutput {
  std::vector<PathResult> paths;  // endpoints are (x_1..x_n, lambda)
  SolveStats stats;
};

namespace detail {

/// Independent seeded stream per purpose, so adding draws for one purpose
/// never shifts another.
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(purpose), static_cast<std::uint32_t>(purpose >> 32)};
  return std::mt19937_64(seq);
}

inline Complex gaussian_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

}  // namespace detail

/// Square system actually tracked: the eigen equations (or n - j random
/// combinations of them when j homogeneous slices are present) followed by
/// the slices.
inline std::vector<Polynomial> square_target(const EigenSystem& sys) {
  const std::size_t j = sys.num_homogeneous_slices();
  if (j >= sys.n) throw Error(ErrorCode::RangeError, "too many homogeneous slices for the dimension");
  std::vector<Polynomial> out;
  if (j == 0) {
    out = sys.polynomials;
  } else {
    auto rng = detail::stream(sys.seed, 1);
    for (std::size_t r = 0; r < sys.n - j; ++r) {
      std::vector<Complex> w(sys.n);
      for (auto& v : w) v = detail::gaussian_complex(rng);
      out.push_back(linear_combination(sys.polynomials, w));
    }
  }
  out.insert(out.end(), sys.slices.begin(), sys.slices.end());
  return out;
}

inline std::uint64_t bezout_count(const EigenSystem& sys) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i + sys.num_homogeneous_slices() < sys.n; ++i) {
    if (c > std::numeric_limits<std::uint64_t>::max() / sys.k) return std::numeric_limits<std::uint64_t>::max();
    c *= sys.k;
  }
  return c;
}

/// Tracks all total-degree start paths and verifies every finite endpoint
/// against the full eigen system.
inline SolveOutput solve(const EigenSystem& sys, const SolveOptions& opt = {}) {
  const std::uint64_t count = bezout_count(sys);
  if (count > opt.path_budget) {
    throw Error(ErrorCode::PathBudgetExceeded,
                std::to_string(count) + " paths exceed the budget of " + std::to_string(opt.path_budget));
  }
  auto rng = detail::stream(sys.seed, 2);
  const Complex gamma = std::polar(1.0, std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng));
  CVec patch(static_cast<Eigen::Index>(sys.num_vars() + 1));
  for (auto& v : patch) v = detail::gaussian_complex(rng);
  Homotopy hom(square_target(sys), gamma, patch);

  SolveOutput out;
  out.paths = track_all(hom, opt.tracker);
  out.stats.seed = sys.seed;
  out.stats.paths_tracked = out.paths.size();
  for (auto& p : out.paths) {
    switch (p.status) {
      case PathStatus::AtInfinity: ++out.stats.at_infinity; break;
      case PathStatus::Failed: ++out.stats.failures; break;
      case PathStatus::Finite:
        ++out.stats.finite;
        p.residual = sys.eigen_residual(p.endpoint);
        p.converged = p.residual < opt.residual_tolerance;
        if (!p.converged) ++out.stats.failures;
        if (p.singular) ++out.stats.singular;
        break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

struct ClassifyOptions {
  double dedup_tolerance = 1e-8;  // relative to max(1, |lambda|)
  double real_threshold = 1e-10;  // relative to max(1, |lambda|)
  double incomplete_fraction = 0.01;
};

struct EigenvalueRecord {
  Complex value;
  bool is_real = false;
  bool from_singular_endpoint = false;
  std::vector<Complex> eigenvector;  // unit max-norm, largest coordinate equal to 1
  std::optional<unsigned> geometric_multiplicity;
  double residual = 0.0;
  std::size_t endpoint_count = 0;
};

struct SpectrumReport {
  std::vector<EigenvalueRecord> eigenvalues;  // sorted by (re, im)
  SolveStats stats;
  bool possibly_incomplete = false;

  std::vector<Complex> values() const {
    std::vector<Complex> v;
    for (const auto& e : eigenvalues) v.push_back(e.value);
    return v;
  }
  std::vector<double> real_values() const {
    std::vector<double> v;
    for (const auto& e : eigenvalues) {
      if (e.is_real) v.push_back(e.value.real());
    }
    return v;
  }
};

inline bool eigenvalues_close(Complex a, Complex b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Scales v so that its largest-modulus coordinate (first on ties) is 1.
inline std::vector<Complex> normalize_eigenvector(std::vector<Complex> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best]) * (1.0 + 1e-12)) best = i;
  }
  if (v.empty() || v[best] == Complex(0)) return v;
  const Complex s = v[best];
  for (auto& c : v) c /= s;
  v[best] = Complex(1.0, 0.0);
  return v;
}

/// Groups verified endpoints by eigenvalue (single linkage within the dedup
/// tolerance) and keeps the best endpoint of each group.
inline SpectrumReport classify(const std::vector<PathResult>& paths, const SolveStats& stats,
                               const ClassifyOptions& opt = {}) {
  SpectrumReport report;
  report.stats = stats;
  std::vector<const PathResult*> good;
  for (const auto& p : paths) {
    if (p.status == PathStatus::Finite && p.converged) good.push_back(&p);
  }
  const std::size_t m = good.size();
  auto lambda = [&](std::size_t i) { return good[i]->endpoint.back(); };
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (eigenvalues_close(lambda(i), lambda(j), opt.dedup_tolerance)) {
        auto a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<std::vector<std::size_t>> groups(m);
  for (std::size_t i = 0; i < m; ++i) groups[find(i)].push_back(i);
  for (const auto& g : groups) {
    if (g.empty()) continue;
    std::size_t best = g[0];
    bool any_singular = false;
    for (auto i : g) {
      any_singular = any_singular || good[i]->singular;
      const auto* a = good[i];
      const auto* b = good[best];
      if (a->singular != b->singular ? !a->singular : a->residual < b->residual) best = i;
    }
    EigenvalueRecord rec;
    rec.value = lambda(best);
    rec.is_real = std::abs(rec.value.imag()) < opt.real_threshold * std::max(1.0, std::abs(rec.value));
    if (rec.is_real) rec.value.imag(0.0);
    rec.from_singular_endpoint = any_singular;
    rec.eigenvector = normalize_eigenvector({good[best]->endpoint.begin(), good[best]->endpoint.end() - 1});
    rec.residual = good[best]->residual;
    rec.endpoint_count = g.size();
    report.eigenvalues.push_back(std::move(rec));
  }
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), [](const auto& a, const auto& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  report.possibly_incomplete =
      stats.paths_tracked > 0 && static_cast<double>(stats.failures) > opt.incomplete_fraction * stats.paths_tracked;
  return report;
}

// ---------------------------------------------------------------------------

struct SpectrumOptions {
  std::uint64_t seed = 1;
  SolveOptions solve;
  ClassifyOptions classify;
};

/// Full pipeline: eigen system with one affine slice, all paths, dedup.
inline SpectrumReport compute_spectrum(const HypergraphTensor& t, const SpectrumOptions& opt = {}) {
  auto sys = assemble(t, 0, opt.seed);
  auto out = solve(sys, opt.solve);
  return classify(out.paths, out.stats, opt.classify);
}

/// Verified residual of a reported eigenpair under the tensor contraction.
inline double eigenpair_residual(const HypergraphTensor& t, const EigenvalueRecord& e) {
  return residual(t, e.value, e.eigenvector);
}

// ---------------------------------------------------------------------------

struct GmStep {
  std::size_t slices = 0;
  std::uint64_t seed = 0;
  bool found = false;
  std::uint64_t paths = 0;
};

struct GmTrace {
  std::optional<unsigned> gm;  // empty when two seeds disagreed
  std::vector<GmStep> steps;
};

/// Adds j = 1, 2, ... generic homogeneous slices; lambda* persisting with j
/// slices means gm >= j + 1, and the first j without it gives gm = j. Each
/// j is solved under two seeds that must agree.
inline GmTrace geometric_multiplicity_trace(const HypergraphTensor& t, Complex target, const SpectrumOptions& opt = {}) {
  GmTrace trace;
  const std::size_t n = t.dimension();
  for (std::size_t j = 1; j < n; ++j) {
    bool found[2] = {false, false};
    for (int rep = 0; rep < 2; ++rep) {
      auto seed_rng = detail::stream(opt.seed, 100 + 2 * j + static_cast<std::uint64_t>(rep));
      const std::uint64_t seed = seed_rng();
      auto sys = assemble(t, j, seed);
      auto out = solve(sys, opt.solve);
      for (const auto& p : out.paths) {
        if (p.status == PathStatus::Finite && p.converged &&
            eigenvalues_close(p.endpoint.back(), target, opt.classify.dedup_tolerance)) {
          found[rep] = true;
          break;
        }
      }
      trace.steps.push_back(GmStep{j, seed, found[rep], out.stats.paths_tracked});
    }
    if (found[0] != found[1]) return trace;
    if (!found[0]) {
      trace.gm = static_cast<unsigned>(j);
      return trace;
    }
  }
  trace.gm = static_cast<unsigned>(n);
  return trace;
}

inline unsigned geometric_multiplicity(const HypergraphTensor& t, Complex target, const SpectrumOptions& opt = {}) {
  auto trace = geometric_multiplicity_trace(t, target, opt);
  if (!trace.gm) throw Error(ErrorCode::Inconclusive, "slice runs under two seeds disagree");
  return *trace.gm;
}

// ---------------------------------------------------------------------------

struct HEigenpair {
  double value = 0.0;
  std::vector<double> eigenvector;  // largest coordinate equal to 1
  double residual = 0.0;
};

/// Real eigenpairs found with real-coefficient slices, deduplicated by
/// eigenvalue and normalized eigenvector, sorted by value.
inline std::vector<HEigenpair> h_eigen_search(const HypergraphTensor& t, const SpectrumOptions& opt = {},
                                              double reality_tolerance = 1e-8) {
  auto sys = assemble(t, 0, opt.seed, SliceField::Real);
  auto out = solve(sys, opt.solve);
  std::vector<HEigenpair> found;
  for (const auto& p : out.paths) {
    if (p.status != PathStatus::Finite || !p.converged) continue;
    const Complex lam = p.endpoint.back();
    if (std::abs(lam.imag()) > reality_tolerance * std::max(1.0, std::abs(lam))) continue;
    auto x = normalize_eigenvector({p.endpoint.begin(), p.endpoint.end() - 1});
    bool real = true;
    for (const auto& c : x) real = real && std::abs(c.imag()) <= reality_tolerance;
    if (!real) continue;
    HEigenpair h;
    h.value = lam.real();
    for (const auto& c : x) h.eigenvector.push_back(c.real());
    std::vector<Complex> xr(h.eigenvector.begin(), h.eigenvector.end());
    h.residual = residual(t, Complex(h.value, 0.0), xr);
    auto same = std::find_if(found.begin(), found.end(), [&](const HEigenpair& o) {
      if (!eigenvalues_close(o.value, h.value, opt.classify.dedup_tolerance)) return false;
      for (std::size_t i = 0; i < o.eigenvector.size(); ++i) {
        if (std::abs(o.eigenvector[i] - h.eigenvector[i]) > 1e-6) return false;
      }
      return true;
    });
    if (same == found.end()) {
      found.push_back(std::move(h));
    } else if (h.residual < same->residual) {
      *same = std::move(h);
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return found;
}

}  // namespace hyperspec
