#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hyperspec/error.hpp"
#include "hyperspec/rational.hpp"

namespace hyperspec {

using Complex = std::complex<double>;

/// One monomial with dense exponents over all variables.
struct Term {
  Complex coefficient;
  std::optional<Rational> exact;  // present when the coefficient is rational
  std::vector<unsigned> exponents;

  unsigned degree() const {
    unsigned d = 0;
    for (auto e : exponents) d += e;
    return d;
  }
};

/// Sparse multivariate polynomial with complex coefficients.
class Polynomial {
 public:
  explicit Polynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Adds a term, merging with an existing monomial of equal exponents.
  void add(const std::vector<unsigned>& exponents, Complex coefficient, std::optional<Rational> exact = std::nullopt) {
    if (exponents.size() != num_vars_) throw Error(ErrorCode::DimensionMismatch, "exponent vector length");
    for (auto& t : terms_) {
      if (t.exponents == exponents) {
        t.coefficient += coefficient;
        if (t.exact && exact) {
          *t.exact += *exact;
        } else {
          t.exact.reset();
        }
        return;
      }
    }
    terms_.push_back(Term{coefficient, std::move(exact), exponents});
  }

  /// Drops terms whose coefficient is exactly zero.
  void prune() {
    std::erase_if(terms_, [](const Term& t) { return t.exact ? *t.exact == 0 : t.coefficient == Complex(0); });
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.degree());
    return d;
  }

  Complex evaluate(std::span<const Complex> z) const {
    Complex s(0);
    for (const auto& t : terms_) {
      Complex p = t.coefficient;
      for (std::size_t v = 0; v < num_vars_; ++v) {
        for (unsigned e = 0; e < t.exponents[v]; ++e) p *= z[v];
      }
      s += p;
    }
    return s;
  }

  /// Terms sorted by exponent vector, for stable comparison and output.
  std::vector<Term> sorted_terms() const {
    auto out = terms_;
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.exponents > b.exponents; });
    return out;
  }

 private:
  std::size_t num_vars_;
  std::vector<Term> terms_;
};

/// Linear combination sum_i weights[i] * polys[i].
inline Polynomial linear_combination(std::span<const Polynomial> polys, std::span<const Complex> weights) {
  if (polys.empty()) return Polynomial();
  Polynomial out(polys[0].num_vars());
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (const auto& t : polys[i].terms()) out.add(t.exponents, weights[i] * t.coefficient);
  }
  out.prune();
  return out;
}

/// Polynomial homogenized with an extra leading variable z0 and compiled for
/// fast evaluation of the value and gradient in projective coordinates
/// Z = (z0, z1, ..., zm).
class HomogeneousPolynomial {
 public:
  HomogeneousPolynomial() = default;
  HomogeneousPolynomial(const Polynomial& p, unsigned degree) : degree_(degree) {
    for (const auto& t : p.terms()) {
      CompiledTerm c;
      c.coefficient = t.coefficient;
      const unsigned d = t.degree();
      if (d > degree) throw Error(ErrorCode::RangeError, "term degree exceeds homogenization degree");
      if (d < degree) c.powers.push_back({0, degree - d});
      for (std::size_t v = 0; v < t.exponents.size(); ++v) {
        if (t.exponents[v] > 0) c.powers.push_back({static_cast<unsigned>(v + 1), t.exponents[v]});
      }
      terms_.push_back(std::move(c));
    }
  }

  unsigned degree() const { return degree_; }

  /// Value at Z; adds the gradient into `grad` (length m+1) scaled by `scale`.
  Complex evaluate(std::span<const Complex> z, std::span<Complex> grad, Complex scale) const {
    Complex value(0);
    for (const auto& t : terms_) {
      const std::size_t m = t.powers.size();
      // prefix[j] = product of the first j factors, suffix likewise.
      Complex prefix[16], suffix[16], factor[16], dfactor[16];
      if (m > 15) throw Error(ErrorCode::RangeError, "monomial has too many variables");
      for (std::size_t j = 0; j < m; ++j) {
        const auto [v, e] = t.powers[j];
        Complex pw(1);
        for (unsigned q = 1; q < e; ++q) pw *= z[v];
        dfactor[j] = static_cast<double>(e) * pw;
        factor[j] = pw * z[v];
      }
      prefix[0] = Complex(1);
      for (std::size_t j = 0; j < m; ++j) prefix[j + 1] = prefix[j] * factor[j];
      suffix[m] = Complex(1);
      for (std::size_t j = m; j > 0; --j) suffix[j - 1] = suffix[j] * factor[j - 1];
      value += t.coefficient * prefix[m];
      const Complex cs = t.coefficient * scale;
      for (std::size_t j = 0; j < m; ++j) grad[t.powers[j].first] += cs * prefix[j] * dfactor[j] * suffix[j + 1];
    }
    return value;
  }

 private:
  struct CompiledTerm {
    Complex coefficient;
    std::vector<std::pair<unsigned, unsigned>> powers;  // (variable in Z, exponent)
  };
  std::vector<CompiledTerm> terms_;
  unsigned degree_ = 0;
};

}  // namespace hyperspec
