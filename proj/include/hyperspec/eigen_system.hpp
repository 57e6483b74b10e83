#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "hyperspec/polynomial.hpp"
#include "hyperspec/stirling.hpp"
#include "hyperspec/tensor.hpp"

namespace hyperspec {

enum class SliceField { Complex, Real };

/// The eigenpair equations (T x^{k-1})_i - lambda x_i^{k-1} = 0 over the
/// variables (x_1, ..., x_n, lambda), plus linear slices in x only.
struct EigenSystem {
  std::size_t n = 0;
  unsigned k = 0;
  std::vector<Polynomial> polynomials;  // n equations
  std::vector<Polynomial> slices;       // slices[0] affine, the rest homogeneous
  std::uint64_t seed = 0;

  std::size_t num_vars() const { return n + 1; }
  std::size_t lambda_index() const { return n; }
  std::size_t num_homogeneous_slices() const { return slices.empty() ? 0 : slices.size() - 1; }

  /// max_i |p_i(x / |x|_inf, lambda)|, equal to the tensor residual.
  double eigen_residual(std::span<const Complex> z) const {
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(z[i]));
    if (scale == 0.0) return std::numeric_limits<double>::infinity();
    std::vector<Complex> w(z.begin(), z.end());
    for (std::size_t i = 0; i < n; ++i) w[i] /= scale;
    double r = 0.0;
    for (const auto& p : polynomials) r = std::max(r, std::abs(p.evaluate(w)));
    return r;
  }
};

namespace detail {

/// Adds c * (sum over ordered (k-1)-tuples from S covering S \ {i} of the
/// tuple product) to p, expanded into monomials with multinomial weights.
inline void add_support_monomials(Polynomial& p, const VertexSet& support, std::size_t i, unsigned k,
                                  const Coefficient& c) {
  std::vector<std::size_t> others;
  for (auto u : support) {
    if (u != i) others.push_back(u);
  }
  const auto r1 = static_cast<unsigned>(others.size());
  const Integer fk1 = factorial(k - 1);
  for (unsigned own = 0; own + r1 <= k - 1; ++own) {
    for_each_composition(k - 1 - own, r1, [&](std::span<const unsigned> a) {
      std::vector<unsigned> exps(p.num_vars(), 0);
      Integer denom = factorial(own);
      exps[i] = own;
      for (std::size_t q = 0; q < a.size(); ++q) {
        exps[others[q]] = a[q];
        denom *= factorial(a[q]);
      }
      const Rational multinomial(fk1, denom);
      std::optional<Rational> exact;
      if (c.exact) exact = *c.exact * multinomial;
      p.add(exps, Complex(c.value * to_double(multinomial), 0.0), exact);
    });
  }
}

inline Complex draw(std::mt19937_64& rng, SliceField field) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  const double im = g(rng);
  return field == SliceField::Complex ? Complex(re, im) : Complex(re, 0.0);
}

}  // namespace detail

/// Expands the tensor's eigen equations and appends one affine slice and
/// `num_homogeneous_slices` homogeneous linear slices with seeded Gaussian
/// coefficients.
inline EigenSystem assemble(const HypergraphTensor& t, std::size_t num_homogeneous_slices, std::uint64_t seed,
                            SliceField field = SliceField::Complex) {
  EigenSystem sys;
  sys.n = t.dimension();
  sys.k = t.order();
  sys.seed = seed;
  const std::size_t nv = sys.num_vars();
  for (std::size_t i = 0; i < sys.n; ++i) {
    Polynomial p(nv);
    std::vector<unsigned> diag(nv, 0);
    diag[i] = sys.k - 1;
    const auto& d = t.diagonal()[i];
    if (d.value != 0.0) p.add(diag, Complex(d.value, 0.0), d.exact);
    for (const auto& term : t.row(i)) detail::add_support_monomials(p, term.support, i, sys.k, term.coefficient);
    auto lam = diag;
    lam[sys.n] = 1;
    p.add(lam, Complex(-1.0, 0.0), Rational(-1));
    p.prune();
    sys.polynomials.push_back(std::move(p));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s <= num_homogeneous_slices; ++s) {
    Polynomial slice(nv);
    for (std::size_t v = 0; v < sys.n; ++v) {
      std::vector<unsigned> e(nv, 0);
      e[v] = 1;
      slice.add(e, detail::draw(rng, field));
    }
    if (s == 0) slice.add(std::vector<unsigned>(nv, 0), detail::draw(rng, field));
    sys.slices.push_back(std::move(slice));
  }
  return sys;
}

}  // namespace hyperspec
