#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperspec/error.hpp"
#include "hyperspec/hypergraph.hpp"
#include "hyperspec/rational.hpp"
#include "hyperspec/stirling.hpp"

namespace hyperspec {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// RW and RW+ are the row-normalized (random-walk) Laplacians.
enum class TensorKind { A, K, KPlus, L, LPlus, RW, RWPlus };

inline constexpr TensorKind kAllKinds[] = {TensorKind::A,  TensorKind::K,  TensorKind::KPlus, TensorKind::L,
                                           TensorKind::LPlus, TensorKind::RW, TensorKind::RWPlus};

inline std::string to_string(TensorKind kind) {
  switch (kind) {
    case TensorKind::A: return "A";
    case TensorKind::K: return "K";
    case TensorKind::KPlus: return "K+";
    case TensorKind::L: return "L";
    case TensorKind::LPlus: return "L+";
    case TensorKind::RW: return "RW";
    case TensorKind::RWPlus: return "RW+";
  }
  return "?";
}

inline TensorKind parse_tensor_kind(std::string_view s) {
  for (auto kind : kAllKinds) {
    if (to_string(kind) == s) return kind;
  }
  throw Error(ErrorCode::ParseError, "unknown tensor kind '" + std::string(s) + "'");
}

inline bool is_symmetric_kind(TensorKind kind) { return kind != TensorKind::RW && kind != TensorKind::RWPlus; }

inline bool is_normalized_kind(TensorKind kind) {
  return kind == TensorKind::L || kind == TensorKind::LPlus || kind == TensorKind::RW || kind == TensorKind::RWPlus;
}

inline bool is_nonnegative_kind(TensorKind kind) {
  return kind == TensorKind::A || kind == TensorKind::KPlus || kind == TensorKind::LPlus || kind == TensorKind::RWPlus;
}

/// A tensor coefficient. `exact` is present whenever the value is rational.
struct Coefficient {
  double value = 0.0;
  std::optional<Rational> exact;

  static Coefficient from_exact(const Rational& r) { return {to_double(r), r}; }
  static Coefficient from_double(double v) { return {v, std::nullopt}; }
};

/// One nonzero off-diagonal pattern in row i: every index tuple (i, i2, ..., ik)
/// whose index set equals `support` has entry `coefficient`.
struct RowTerm {
  VertexSet support;
  Coefficient coefficient;
};

class HypergraphTensor {
 public:
  HypergraphTensor(TensorKind kind, unsigned order, std::vector<Coefficient> diagonal,
                   std::vector<std::vector<RowTerm>> rows)
      : kind_(kind), order_(order), diagonal_(std::move(diagonal)), rows_(std::move(rows)) {
    if (order_ < 2) throw Error(ErrorCode::RangeError, "tensor order must be at least 2");
    if (rows_.size() != diagonal_.size()) {
      throw Error(ErrorCode::DimensionMismatch, "diagonal and row lists differ in length");
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (const auto& term : rows_[i]) {
        if (term.support.size() < 2 || term.support.size() > order_ ||
            !std::binary_search(term.support.begin(), term.support.end(), i) ||
            term.support.back() >= rows_.size()) {
          throw Error(ErrorCode::RangeError, "row term support is inconsistent with row " + std::to_string(i + 1));
        }
      }
    }
  }

  TensorKind kind() const { return kind_; }
  unsigned order() const { return order_; }
  std::size_t dimension() const { return diagonal_.size(); }
  const std::vector<Coefficient>& diagonal() const { return diagonal_; }
  const std::vector<RowTerm>& row(std::size_t i) const { return rows_[i]; }
  const std::vector<std::vector<RowTerm>>& rows() const { return rows_; }

  bool has_exact() const {
    auto exact = [](const Coefficient& c) { return c.exact.has_value(); };
    if (!std::all_of(diagonal_.begin(), diagonal_.end(), exact)) return false;
    for (const auto& r : rows_) {
      for (const auto& t : r) {
        if (!t.coefficient.exact) return false;
      }
    }
    return true;
  }

  const RowTerm* find_term(std::size_t i, const VertexSet& support) const {
    for (const auto& t : rows_[i]) {
      if (t.support == support) return &t;
    }
    return nullptr;
  }

 private:
  TensorKind kind_;
  unsigned order_;
  std::vector<Coefficient> diagonal_;
  std::vector<std::vector<RowTerm>> rows_;
};

inline HypergraphTensor build(const WeightedHypergraph& g, TensorKind kind) {
  const auto n = g.num_vertices();
  const unsigned k = g.order();
  const auto profile = degree_profile(g);
  if (is_normalized_kind(kind)) {
    for (std::size_t v = 0; v < n; ++v) {
      if (profile.degrees[v] == 0) {
        throw Error(ErrorCode::ZeroDegreeVertex, "vertex " + std::to_string(v + 1) + " has degree 0");
      }
    }
  }

  std::vector<Coefficient> diagonal(n);
  for (std::size_t v = 0; v < n; ++v) {
    switch (kind) {
      case TensorKind::A: diagonal[v] = Coefficient::from_exact(0); break;
      case TensorKind::K:
      case TensorKind::KPlus: diagonal[v] = Coefficient::from_exact(profile.degrees[v]); break;
      default: diagonal[v] = Coefficient::from_exact(1); break;
    }
  }

  // deg^{-1/k} in long double, used only by L and L+.
  std::vector<long double> inv_root(n, 1.0L);
  if (kind == TensorKind::L || kind == TensorKind::LPlus) {
    for (std::size_t v = 0; v < n; ++v) {
      inv_root[v] = std::pow(static_cast<long double>(to_double(profile.degrees[v])), -1.0L / k);
    }
  }

  const bool minus = kind == TensorKind::K || kind == TensorKind::L || kind == TensorKind::RW;
  std::vector<std::vector<RowTerm>> rows(n);
  for (const auto& edge : g.edges()) {
    const auto r = static_cast<unsigned>(edge.support.size());
    Rational base = edge.weight / Rational(row_count_N(r, k));
    if (minus) base = -base;
    long double root_product = 1.0L;
    for (auto v : edge.support) root_product *= inv_root[v];
    for (auto i : edge.support) {
      Coefficient c;
      switch (kind) {
        case TensorKind::L:
        case TensorKind::LPlus:
          c = Coefficient::from_double(static_cast<double>(static_cast<long double>(to_double(base)) * root_product));
          break;
        case TensorKind::RW:
        case TensorKind::RWPlus: c = Coefficient::from_exact(base / profile.degrees[i]); break;
        default: c = Coefficient::from_exact(base); break;
      }
      rows[i].push_back(RowTerm{edge.support, std::move(c)});
    }
  }
  return HypergraphTensor(kind, k, std::move(diagonal), std::move(rows));
}

// ---------------------------------------------------------------------------
// Entries

namespace detail {
inline VertexSet support_of(std::span<const std::size_t> tuple) {
  VertexSet s(tuple.begin(), tuple.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline void check_tuple(const HypergraphTensor& t, std::span<const std::size_t> tuple) {
  if (tuple.size() != t.order()) throw Error(ErrorCode::DimensionMismatch, "index tuple length differs from order");
  for (auto i : tuple) {
    if (i >= t.dimension()) throw Error(ErrorCode::IndexOutOfRange, "tensor index out of range");
  }
}
}  // namespace detail

inline double entry(const HypergraphTensor& t, std::span<const std::size_t> tuple) {
  detail::check_tuple(t, tuple);
  auto s = detail::support_of(tuple);
  if (s.size() == 1) return t.diagonal()[s[0]].value;
  const auto* term = t.find_term(tuple[0], s);
  return term ? term->coefficient.value : 0.0;
}

inline Rational entry_exact(const HypergraphTensor& t, std::span<const std::size_t> tuple) {
  detail::check_tuple(t, tuple);
  auto s = detail::support_of(tuple);
  const Coefficient* c = nullptr;
  if (s.size() == 1) {
    c = &t.diagonal()[s[0]];
  } else if (const auto* term = t.find_term(tuple[0], s)) {
    c = &term->coefficient;
  }
  if (!c) return 0;
  if (!c->exact) throw Error(ErrorCode::MissingExactCoefficients, "tensor kind " + to_string(t.kind()) + " has no exact entries");
  return *c->exact;
}

// ---------------------------------------------------------------------------
// Contraction

namespace detail {

template <class Scalar>
Scalar ipow(Scalar base, unsigned e) {
  Scalar result(1);
  while (e > 0) {
    if (e & 1U) result *= base;
    base *= base;
    e >>= 1U;
  }
  return result;
}

/// Sum over ordered (k-1)-tuples drawn from S that cover S \ {i} of the
/// product of x over the tuple, by inclusion-exclusion over the uncovered set.
template <class Scalar>
Scalar covering_tuple_sum(const VertexSet& support, std::size_t i, unsigned k, std::span<const Scalar> x) {
  std::vector<std::size_t> others;
  for (auto u : support) {
    if (u != i) others.push_back(u);
  }
  const std::size_t m = others.size();
  Scalar total(0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Scalar s = x[i];
    for (std::size_t p = 0; p < m; ++p) {
      if (!((mask >> p) & 1U)) s += x[others[p]];
    }
    Scalar term = ipow(s, k - 1);
    if (std::popcount(mask) % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

template <class Scalar, class Coef>
std::vector<Scalar> contract_with(const HypergraphTensor& t, std::span<const Scalar> x, Coef coef) {
  if (x.size() != t.dimension()) throw Error(ErrorCode::DimensionMismatch, "vector length differs from tensor dimension");
  const unsigned k = t.order();
  std::vector<Scalar> y(t.dimension(), Scalar(0));
  for (std::size_t i = 0; i < t.dimension(); ++i) {
    Scalar acc = coef(t.diagonal()[i]) * ipow(x[i], k - 1);
    for (const auto& term : t.row(i)) {
      acc += coef(term.coefficient) * covering_tuple_sum<Scalar>(term.support, i, k, x);
    }
    y[i] = acc;
  }
  return y;
}

}  // namespace detail

/// (T x^{k-1})_i for complex x.
inline ComplexVector contract(const HypergraphTensor& t, std::span<const Complex> x) {
  return detail::contract_with<Complex>(t, x, [](const Coefficient& c) { return Complex(c.value, 0.0); });
}

inline std::vector<Rational> contract_exact(const HypergraphTensor& t, std::span<const Rational> x) {
  return detail::contract_with<Rational>(t, x, [&](const Coefficient& c) -> Rational {
    if (!c.exact) throw Error(ErrorCode::MissingExactCoefficients, "tensor kind " + to_string(t.kind()) + " has no exact entries");
    return *c.exact;
  });
}

/// Reference contraction by enumerating all N^{k-1} tails. Only for tests
/// and small instances.
inline ComplexVector contract_brute_force(const HypergraphTensor& t, std::span<const Complex> x) {
  const auto n = t.dimension();
  const unsigned k = t.order();
  ComplexVector y(n, Complex(0));
  std::vector<std::size_t> tuple(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    tuple.assign(k, 0);
    tuple[0] = i;
    while (true) {
      double e = entry(t, tuple);
      if (e != 0.0) {
        Complex p(e, 0.0);
        for (unsigned q = 1; q < k; ++q) p *= x[tuple[q]];
        y[i] += p;
      }
      unsigned pos = 1;
      while (pos < k && ++tuple[pos] == n) tuple[pos++] = 0;
      if (pos == k) break;
    }
  }
  return y;
}

// ---------------------------------------------------------------------------
// Row sums and dominance

/// Sum of all entries in row i. Each support S contributes N(|S|, k) tuples.
inline double row_sum(const HypergraphTensor& t, std::size_t i) {
  double s = t.diagonal()[i].value;
  for (const auto& term : t.row(i)) {
    s += term.coefficient.value * to_double(Rational(row_count_N(static_cast<unsigned>(term.support.size()), t.order())));
  }
  return s;
}

inline Rational row_sum_exact(const HypergraphTensor& t, std::size_t i) {
  auto need = [&](const Coefficient& c) -> const Rational& {
    if (!c.exact) throw Error(ErrorCode::MissingExactCoefficients, "tensor kind " + to_string(t.kind()) + " has no exact entries");
    return *c.exact;
  };
  Rational s = need(t.diagonal()[i]);
  for (const auto& term : t.row(i)) {
    s += need(term.coefficient) * Rational(row_count_N(static_cast<unsigned>(term.support.size()), t.order()));
  }
  return s;
}

/// Per-row slack T_{i..i} - sum of |off-diagonal entries| in row i.
inline double dominance_margin(const HypergraphTensor& t, std::size_t i) {
  double off = 0.0;
  for (const auto& term : t.row(i)) {
    off += std::abs(term.coefficient.value) *
           to_double(Rational(row_count_N(static_cast<unsigned>(term.support.size()), t.order())));
  }
  return t.diagonal()[i].value - off;
}

/// Diagonal dominance row by row; decided exactly when all coefficients
/// are rational, otherwise with a relative slack of 1e-12.
inline bool is_diagonally_dominated(const HypergraphTensor& t) {
  if (t.has_exact()) {
    for (std::size_t i = 0; i < t.dimension(); ++i) {
      Rational off = 0;
      for (const auto& term : t.row(i)) {
        off += abs(*term.coefficient.exact) *
               Rational(row_count_N(static_cast<unsigned>(term.support.size()), t.order()));
      }
      if (*t.diagonal()[i].exact < off) return false;
    }
    return true;
  }
  for (std::size_t i = 0; i < t.dimension(); ++i) {
    const double d = t.diagonal()[i].value;
    if (dominance_margin(t, i) < -1e-12 * std::max(1.0, std::abs(d))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Irreducibility

/// No nonempty proper J such that every entry starting in J stays inside J.
inline bool is_weakly_irreducible(const HypergraphTensor& t, const BruteForceLimits& limits = {}) {
  const auto n = t.dimension();
  require_subset_search(n, limits, "is_weakly_irreducible");
  // escape[i]: union of the supports of nonzero terms in row i
  std::vector<std::uint64_t> escape(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& term : t.row(i)) {
      if (term.coefficient.value == 0.0) continue;
      for (auto u : term.support) escape[i] |= std::uint64_t{1} << u;
    }
  }
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t j = 1; j < full; ++j) {
    bool leaves = false;
    for (std::size_t i = 0; i < n && !leaves; ++i) {
      if (((j >> i) & 1U) && (escape[i] & ~j)) leaves = true;
    }
    if (!leaves) return false;
  }
  return true;
}

/// Reducible when some nonempty proper J has T_{i1..ik} = 0 for all i1 in J
/// and i2..ik outside J; for structured rows this means every nonzero term
/// of a row in J meets J in at least two indices.
inline bool is_irreducible(const HypergraphTensor& t, const BruteForceLimits& limits = {}) {
  const auto n = t.dimension();
  require_subset_search(n, limits, "is_irreducible");
  std::vector<std::vector<std::uint64_t>> masks(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& term : t.row(i)) {
      if (term.coefficient.value == 0.0) continue;
      std::uint64_t m = 0;
      for (auto u : term.support) m |= std::uint64_t{1} << u;
      masks[i].push_back(m);
    }
  }
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t j = 1; j < full; ++j) {
    bool reducing = true;
    for (std::size_t i = 0; i < n && reducing; ++i) {
      if (!((j >> i) & 1U)) continue;
      for (auto m : masks[i]) {
        if (std::popcount(m & j) == 1) {
          reducing = false;
          break;
        }
      }
    }
    if (reducing) return false;
  }
  return true;
}

inline bool is_nonnegative(const HypergraphTensor& t) {
  for (std::size_t i = 0; i < t.dimension(); ++i) {
    if (t.diagonal()[i].value < 0) return false;
    for (const auto& term : t.row(i)) {
      if (term.coefficient.value < 0) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Residuals

/// max_i |(T x^{k-1})_i - lambda x_i^{k-1}| with x scaled to unit max-norm.
inline double residual(const HypergraphTensor& t, Complex lambda, std::span<const Complex> x) {
  if (x.size() != t.dimension()) throw Error(ErrorCode::DimensionMismatch, "vector length differs from tensor dimension");
  double scale = 0.0;
  for (const auto& v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw Error(ErrorCode::ZeroVector, "eigenvector candidate is zero");
  ComplexVector y(x.begin(), x.end());
  for (auto& v : y) v /= scale;
  auto tx = contract(t, y);
  double r = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    r = std::max(r, std::abs(tx[i] - lambda * detail::ipow(y[i], t.order() - 1)));
  }
  return r;
}

/// Exact residual vector T x^{k-1} - lambda x^{[k-1]} (no normalization;
/// zero-ness is scale invariant).
inline std::vector<Rational> residual_exact(const HypergraphTensor& t, const Rational& lambda,
                                            std::span<const Rational> x) {
  if (std::all_of(x.begin(), x.end(), [](const Rational& v) { return v == 0; })) {
    throw Error(ErrorCode::ZeroVector, "eigenvector candidate is zero");
  }
  auto tx = contract_exact(t, x);
  for (std::size_t i = 0; i < x.size(); ++i) tx[i] -= lambda * detail::ipow(x[i], t.order() - 1);
  return tx;
}

}  // namespace hyperspec
