#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "hyperspec/error.hpp"
#include "hyperspec/tensor.hpp"

namespace hyperspec {

struct PerronOptions {
  double tolerance = 1e-12;  // on the gap max ratio - min ratio
  std::size_t max_iterations = 100000;
};

struct PerronResult {
  double rho = 0.0;
  std::vector<double> eigenvector;  // positive, unit max-norm
  double lower = 0.0;               // final min-max bracket
  double upper = 0.0;
  std::size_t iterations = 0;
};

/// Spectral radius of a nonnegative weakly irreducible tensor by the shifted
/// power iteration x <- ((T + I) x^{k-1})^{[1/(k-1)]} from the all-ones
/// vector. The shift makes the iterated tensor primitive, so the min-max
/// ratio bracket closes; rho is read off the unshifted ratios.
inline PerronResult spectral_radius_nonneg(const HypergraphTensor& t, const PerronOptions& opt = {}) {
  if (!is_nonnegative(t)) throw Error(ErrorCode::NotNonnegative, "tensor has a negative entry");
  if (!is_weakly_irreducible(t)) throw Error(ErrorCode::NotConnected, "tensor is not weakly irreducible");
  const std::size_t n = t.dimension();
  const double p = static_cast<double>(t.order() - 1);
  std::vector<double> x(n, 1.0);
  PerronResult out;
  for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
    std::vector<Complex> xc(x.begin(), x.end());
    const auto y = contract(t, xc);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double xp = std::pow(x[i], p);
      const double ratio = y[i].real() / xp;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      next[i] = std::pow(y[i].real() + xp, 1.0 / p);
    }
    out.lower = lo;
    out.upper = hi;
    out.iterations = it;
    if (hi - lo <= opt.tolerance * std::max(1.0, hi)) {
      out.rho = 0.5 * (lo + hi);
      out.eigenvector = x;
      return out;
    }
    const double scale = *std::max_element(next.begin(), next.end());
    for (std::size_t i = 0; i < n; ++i) x[i] = next[i] / scale;
  }
  throw Error(ErrorCode::NoConvergence, "min-max bracket did not close");
}

}  // namespace hyperspec
