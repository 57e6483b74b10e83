// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../fixtures.hpp"
#include "hyperspec/hyperspec.hpp"

using namespace hyperspec;

namespace {

const std::string kData = HYPERSPEC_DATA_DIR;
const Complex kOmega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

struct Outcome {
  bool passed = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      details.push_back("FAILED " + what);
    }
  }
  void note(const std::string& what) { details.push_back(what); }
  void merge(const TheoremCheckResult& r, const std::string& label) {
    for (const auto& a : r.assertions) {
      if (!a.passed && !a.warning_only) {
        require(false, label + ": " + a.description + " expected " + a.expected + " observed " + a.observed);
      }
    }
    if (!r.passed && r.assertions.empty()) require(false, label);
  }
};

using Poly = FactoredPolynomial;
using R = Rational;

Poly poly(std::vector<std::pair<std::vector<R>, unsigned>> factors) {
  Poly p;
  for (auto& [c, e] : factors) p.factors.push_back({std::move(c), e});
  return p;
}

std::vector<Complex> solve_values(const WeightedHypergraph& g, TensorKind kind, std::uint64_t seed = 1) {
  SpectrumOptions opt;
  opt.seed = seed;
  return compute_spectrum(build(g, kind), opt).values();
}

std::string fmt(double v) { return TheoremCheckResult::format(v); }

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const auto g = read_hypergraph_file(kData + "/ex123.json");
  const auto a = build(g, TensorKind::A);
  const auto k = build(g, TensorKind::K);
  const auto rw = build(g, TensorKind::RW);
  using T = std::vector<std::size_t>;
  o.require(entry_exact(a, T{0, 1, 1}) == R(1, 3), "A_{122} = 1/3");
  o.require(entry_exact(a, T{0, 0, 1}) == R(1, 3), "A_{112} = 1/3");
  o.require(entry_exact(a, T{0, 1, 2}) == R(1), "A_{123} = 1");
  o.require(entry_exact(a, T{2, 0, 1}) == R(1), "A_{312} = 1");
  o.require(entry_exact(k, T{0, 0, 0}) == R(3) && entry_exact(k, T{1, 1, 1}) == R(3) &&
                entry_exact(k, T{2, 2, 2}) == R(2),
            "K diagonal (3, 3, 2)");
  o.require(entry_exact(k, T{0, 1, 2}) == R(-1), "K_{123} = -1");
  o.require(entry_exact(rw, T{2, 0, 1}) == R(-1, 2), "random-walk Laplacian row-3 coefficient -1/2");
  return o;
}

Outcome check_golden(const WeightedHypergraph& g, TensorKind kind, const Poly& ref,
                     const std::vector<Complex>& expected_distinct, const std::string& label) {
  Outcome o;
  const auto t = build(g, kind);
  const auto found = solve_values(g, kind);
  o.require(same_distinct_set(expected_distinct, found, 1e-6),
            label + " distinct spectrum " + format_set(found) + " vs " + format_set(expected_distinct));
  o.merge(check_eigenvalue_count_and_sum(t, ref, found, 1e-6), label + " reference polynomial");
  o.note(label + ": " + std::to_string(found.size()) + " distinct values");
  return o;
}

void absorb(Outcome& into, const Outcome& part) {
  into.passed = into.passed && part.passed;
  into.details.insert(into.details.end(), part.details.begin(), part.details.end());
}

Outcome criterion2() {
  Outcome o;
  const auto g = read_hypergraph_file(kData + "/flower_3_2.json");
  const double c4 = std::cbrt(4.0);
  absorb(o, check_golden(g, TensorKind::A, poly({{{1, 0, 0, -4}, 3}, {{1, 0}, 23}}),
                         {0.0, c4, c4 * kOmega, c4 * kOmega * kOmega}, "A"));
  const double s7 = std::sqrt(7.0) / 2.0;
  absorb(o, check_golden(g, TensorKind::K, poly({{{1, -5, 8}, 3}, {{1, -1}, 13}, {{1, -2}, 10}, {{1, 0}, 3}}),
                         {0.0, 1.0, 2.0, {2.5, s7}, {2.5, -s7}}, "K"));
  absorb(o, check_golden(g, TensorKind::RW, poly({{{1, -3, 3}, 3}, {{1, -1}, 23}, {{1, 0}, 3}}),
                         {0.0, 1.0, 2.0 + kOmega, 2.0 + kOmega * kOmega}, "RW"));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto g = read_hypergraph_file(kData + "/flower_3_3.json");
  const double c9 = std::cbrt(9.0);
  absorb(o, check_golden(g, TensorKind::A,
                         poly({{{1, 0, 0, -9}, 3}, {{1, 1, 1}, 9}, {{1, -1}, 9}, {{1, 0}, 44}}),
                         {0.0, 1.0, kOmega, kOmega * kOmega, c9, c9 * kOmega, c9 * kOmega * kOmega}, "A"));
  const double s11 = std::sqrt(11.0) / 2.0;
  const Complex kc(3.1027847152002956, 0.6654569511528129);
  absorb(o, check_golden(g, TensorKind::K,
                         poly({{{1, -7, 15, -8}, 9}, {{1, -7, 15}, 3}, {{1, -1}, 36}, {{1, -3}, 8}, {{1, 0}, 3}}),
                         {0.0, 0.7944305695994095, 1.0, 3.0, kc, std::conj(kc), {3.5, s11}, {3.5, -s11}}, "K"));
  const Complex lc(1.240374928384567, 0.4163415888278001);
  absorb(o, check_golden(g, TensorKind::RW,
                         poly({{{9, -27, 27, -8}, 9}, {{1, -3, 3}, 3}, {{1, -1}, 44}, {{1, 0}, 3}}),
                         {0.0, 0.519250143230864, 1.0, lc, std::conj(lc), 2.0 + kOmega, 2.0 + kOmega * kOmega},
                         "RW"));
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto g = read_hypergraph_file(kData + "/protein.json");
  const auto a = build(g, TensorKind::A);
  const std::vector<double> table = {-1.1503540417366391, -1.0589738102553747, -1.0, -0.9233845418913038,
                                     -0.5474615312663447, -0.1532944068758618, -0.1484156441177043,
                                     -0.14163743538075982, -0.25425744432182457, 0.0, 0.9382912060665167,
                                     0.9858713918602654, 1.0, 1.071873232613355, 1.0858832885825462,
                                     1.2267760851792766, 1.4284010786135974, 1.73405913985699};
  std::vector<Complex> expected_real(table.begin(), table.end());
  bool matched = false;
  for (std::uint64_t seed = 1; seed <= 3 && !matched; ++seed) {
    SpectrumOptions opt;
    opt.seed = seed;
    const auto report = compute_spectrum(a, opt);
    std::vector<Complex> real;
    for (double v : report.real_values()) real.emplace_back(v, 0.0);
    const bool count_ok = report.eigenvalues.size() == 64;
    const bool real_ok = real.size() == 18 && same_distinct_set(real, expected_real, 1e-6);
    o.note("seed " + std::to_string(seed) + ": " + std::to_string(report.eigenvalues.size()) + " distinct, " +
           std::to_string(real.size()) + " real, " + std::to_string(report.stats.singular) + " singular endpoints");
    matched = count_ok && real_ok;
  }
  o.require(matched, "64 distinct with the 18 tabulated real values within 3 seeds");
  const auto trace = geometric_multiplicity_trace(a, 0.0);
  std::string steps;
  for (const auto& s : trace.steps) steps += " j=" + std::to_string(s.slices) + (s.found ? ":found" : ":none");
  o.note("gm(0) slicing:" + steps);
  o.require(trace.gm.has_value() && *trace.gm == 2, "gm(0) = 2 with concordant seeds");
  return o;
}

Outcome criterion5() {
  Outcome o;
  fixtures::RandomHypergraphOptions gopt;
  gopt.min_vertices = 3;
  gopt.max_vertices = 8;
  gopt.max_order = 2;
  gopt.max_edges = 10;
  std::size_t compared = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = fixtures::random_hypergraph(5000 + seed, gopt);
    const auto kind = kAllKinds[seed % 7];
    const auto t = build(g, kind);
    std::vector<Complex> oracle;
    for (const auto& e : matrix_oracle(t)) oracle.push_back(e.value);
    const auto found = compute_spectrum(t).values();
    o.require(same_distinct_set(found, oracle, 1e-8),
              "graph seed " + std::to_string(seed) + " kind " + to_string(kind) + ": " + format_set(found) +
                  " vs oracle " + format_set(oracle));
    ++compared;
  }
  o.note(std::to_string(compared) + " graphs compared");
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto g = fixtures::random_hypergraph(seed);
    o.merge(check_row_sums(g), "rowsums seed " + std::to_string(seed));
    o.merge(check_dominance(g), "dominance seed " + std::to_string(seed));
  }
  std::mt19937_64 rng(77);
  std::normal_distribution<double> gauss;
  double worst = 0.0;
  for (int v = 0; v < 100; ++v) {
    const auto g = fixtures::random_hypergraph(1000 + static_cast<std::uint64_t>(v) / 10);
    const auto t = build(g, kAllKinds[static_cast<std::size_t>(v) % 7]);
    ComplexVector x(t.dimension());
    for (auto& c : x) c = Complex(gauss(rng), gauss(rng));
    const auto fast = contract(t, x);
    const auto slow = contract_brute_force(t, x);
    double scale = 1.0, err = 0.0;
    for (std::size_t i = 0; i < fast.size(); ++i) {
      scale = std::max(scale, std::abs(slow[i]));
      err = std::max(err, std::abs(fast[i] - slow[i]));
    }
    worst = std::max(worst, err / scale);
  }
  o.require(worst < 1e-10, "contraction relative error " + fmt(worst));
  o.note("contraction max relative error " + fmt(worst));
  std::size_t disconnected = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto g = fixtures::random_hypergraph(2000 + seed);
    if (!is_connected(g)) ++disconnected;
    o.merge(check_irreducibility(g), "irreducibility seed " + std::to_string(seed));
  }
  o.note(std::to_string(disconnected) + " of 30 irreducibility instances disconnected");
  return o;
}

WeightedHypergraph complete_uniform(std::size_t n, unsigned k) {
  std::vector<std::pair<std::vector<long long>, Rational>> edges;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    if (static_cast<unsigned>(std::popcount(mask)) != k) continue;
    std::vector<long long> e;
    for (std::size_t v = 0; v < n; ++v) {
      if (mask >> v & 1) e.push_back(static_cast<long long>(v));
    }
    edges.push_back({e, 1});
  }
  return make_hypergraph(n, edges);
}

WeightedHypergraph cycle(std::size_t n) {
  std::vector<std::pair<std::vector<long long>, Rational>> edges;
  for (std::size_t v = 0; v < n; ++v) {
    edges.push_back({{static_cast<long long>(v), static_cast<long long>((v + 1) % n)}, 1});
  }
  return make_hypergraph(n, edges);
}

/// G' from G by dropping an edge when that keeps G' connected with the same
/// order and no isolated vertex, otherwise by halving one weight.
WeightedHypergraph weaker(const WeightedHypergraph& g, std::uint64_t seed) {
  std::vector<std::pair<std::vector<long long>, Rational>> all;
  for (const auto& e : g.edges()) all.push_back({std::vector<long long>(e.support.begin(), e.support.end()), e.weight});
  const std::size_t start = seed % all.size();
  for (std::size_t d = 0; d < all.size(); ++d) {
    auto edges = all;
    edges.erase(edges.begin() + static_cast<long>((start + d) % all.size()));
    if (edges.empty()) continue;
    try {
      const auto h = make_hypergraph(g.num_vertices(), edges);
      const auto prof = degree_profile(h);
      if (h.order() == g.order() && is_connected(h) && prof.delta_min > 0) return h;
    } catch (const Error&) {
    }
  }
  all[start].second /= 2;
  return make_hypergraph(g.num_vertices(), all);
}

Outcome criterion7() {
  Outcome o;
  fixtures::RandomHypergraphOptions copt;
  copt.force_connected = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = fixtures::random_hypergraph(3000 + seed, copt);
    const auto r = spectral_radius_nonneg(build(g, TensorKind::RWPlus));
    double ones = 0.0;
    for (double v : r.eigenvector) ones = std::max(ones, std::abs(v - 1.0));
    o.require(std::abs(r.rho - 2.0) <= 1e-10 && ones <= 1e-8,
              "rho(RW+) seed " + std::to_string(seed) + " = " + fmt(r.rho) + ", all-ones error " + fmt(ones));
  }
  const std::vector<std::pair<std::string, WeightedHypergraph>> regular = {
      {"C5", cycle(5)},
      {"K3", fixtures::triangle_graph()},
      {"single 3-edge", fixtures::single_edge(3)},
      {"complete 3-uniform on 4", complete_uniform(4, 3)},
      {"complete 3-uniform on 5", complete_uniform(5, 3)}};
  for (const auto& [name, g] : regular) {
    const double delta = to_double(degree_profile(g).delta_max);
    const double rho = spectral_radius_nonneg(build(g, TensorKind::A)).rho;
    o.require(std::abs(rho - delta) <= 1e-10, "rho(A) = Delta on " + name + ": " + fmt(rho) + " vs " + fmt(delta));
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = fixtures::random_hypergraph(4000 + seed, copt);
    const auto h = weaker(g, seed);
    const auto pg = degree_profile(g);
    const auto ph = degree_profile(h);
    const double rg = spectral_radius_nonneg(build(g, TensorKind::A)).rho;
    const double rh = spectral_radius_nonneg(build(h, TensorKind::A)).rho;
    const std::string s = std::to_string(seed);
    o.require(rg >= to_double(pg.delta_min) - 1e-10 && rg <= to_double(pg.delta_max) + 1e-10,
              "delta <= rho(A) <= Delta on G, pair " + s);
    o.require(rh >= to_double(ph.delta_min) - 1e-10 && rh <= to_double(ph.delta_max) + 1e-10,
              "delta <= rho(A) <= Delta on G', pair " + s);
    o.require(rh <= rg + 1e-10, "rho(A(G')) <= rho(A(G)), pair " + s + ": " + fmt(rh) + " vs " + fmt(rg));
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const std::vector<std::pair<std::string, WeightedHypergraph>> uniform = {
      {"hyperflower(3,2)", hyperflower(3, 2)},
      {"hyperflower(3,3)", hyperflower(3, 3)},
      {"C4", fixtures::cycle4()},
      {"complete 3-uniform on 4", complete_uniform(4, 3)}};
  for (const auto& [name, g] : uniform) {
    o.merge(check_isospectral(g), "isospectral on " + name);
    o.merge(check_reflection(g), "reflection on " + name);
  }
  o.merge(check_reflection(fixtures::ex123()), "reflection on ex123");
  const auto ex = check_isospectral(fixtures::ex123());
  if (ex.warning) o.note("L and RW spectra differ on the non-uniform ex123 (expected: similarity needs uniformity)");

  o.require(check_spectral_symmetry(solve_values(hyperflower(3, 2), TensorKind::A), 3),
            "hyperflower(3,2) adjacency spectrum invariant under rotation by omega");

  const auto edge4 = fixtures::single_edge(4);
  o.require(odd_bipartition(edge4).has_value() && sign_matrix_search(edge4).has_value(),
            "single 4-edge is odd-bipartite with a sign matrix");
  o.merge(check_odd_bipartite_spectra(edge4), "single 4-edge");
  const auto c4 = fixtures::cycle4();
  o.require(odd_bipartition(c4).has_value(), "C4 odd-bipartite");
  o.merge(check_odd_bipartite_spectra(c4), "C4");
  const auto k3 = fixtures::triangle_graph();
  o.require(!odd_bipartition(k3).has_value(), "K3 not odd-bipartite");
  AnalysisOptions opt;
  const auto spec_k3 = distinct_spectrum(build(k3, TensorKind::A), opt);
  o.require(!same_distinct_set(spec_k3, map_values(spec_k3, [](Complex z) { return -z; }), 1e-6),
            "spec(A(K3)) not symmetric under negation");
  o.merge(check_odd_bipartite_spectra(k3), "K3");
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (unsigned m : {2u, 3u}) {
    const auto g = hyperflower(4, m);
    const auto t_a = build(g, TensorKind::A);
    std::size_t count = 0;
    for (const auto& nv : duplicate_null_vectors(g)) {
      const auto t = build(g, nv.kind);
      if (!t.has_exact()) continue;
      bool zero = true;
      for (const auto& c : residual_exact(t, nv.value, nv.vector)) zero = zero && c == 0;
      o.require(zero, "exact null vector residual for " + to_string(nv.kind) + " on hyperflower(4," +
                          std::to_string(m) + ")");
      ++count;
    }
    o.note("hyperflower(4," + std::to_string(m) + "): " + std::to_string(count) + " exact null vectors checked");
  }
  const auto g = hyperflower(3, 2);
  const auto report = compute_spectrum(build(g, TensorKind::A));
  const auto r = check_duplicate_constraint(g, TensorKind::A, report, 1e-6);
  o.require(!r.assertions.empty(), "duplicate constraint exercised on hyperflower(3,2)");
  o.merge(r, "duplicate constraint");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "ex123 exact coefficients", 1, criterion1},
      {2, "hyperflower(3,2) spectra of A, K, RW", 30, criterion2},
      {3, "hyperflower(3,3) spectra of A, K, RW", 60, criterion3},
      {4, "protein hypergraph spectrum and gm(0)", 300, criterion4},
      {5, "matrix oracle equivalence on 20 graphs", 600, criterion5},
      {6, "property suite", 120, criterion6},
      {7, "spectral radius suite", 600, criterion7},
      {8, "symmetry suite", 600, criterion8},
      {9, "duplicate-vertex suite", 600, criterion9},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < c.budget_seconds, "runtime " + fmt(secs) + " s over budget " + fmt(c.budget_seconds) + " s");
    all = all && o.passed;
    std::printf("criterion %d: %s  %s (%.2f s)\n", c.id, o.passed ? "PASS" : "FAIL", c.title, secs);
    for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
