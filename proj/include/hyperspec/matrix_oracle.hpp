#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "hyperspec/error.hpp"
#include "hyperspec/tensor.hpp"

namespace hyperspec {

struct OracleEigenvalue {
  Complex value;
  std::size_t multiplicity = 1;
};

/// Dense N x N matrix of an order-2 tensor.
inline Eigen::MatrixXd to_matrix(const HypergraphTensor& t) {
  if (t.order() != 2) throw Error(ErrorCode::RangeError, "matrix view needs an order-2 tensor");
  const auto n = static_cast<Eigen::Index>(t.dimension());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = t.diagonal()[static_cast<std::size_t>(i)].value;
    for (const auto& term : t.row(static_cast<std::size_t>(i))) {
      for (auto j : term.support) {
        if (static_cast<Eigen::Index>(j) != i) m(i, static_cast<Eigen::Index>(j)) = term.coefficient.value;
      }
    }
  }
  return m;
}

/// Full spectrum of a graph tensor by dense eigendecomposition, with equal
/// eigenvalues (within `cluster_tolerance` relative) merged into
/// multiplicities. Sorted by (re, im).
inline std::vector<OracleEigenvalue> matrix_oracle(const HypergraphTensor& t, double cluster_tolerance = 1e-7) {
  const Eigen::MatrixXd m = to_matrix(t);
  std::vector<Complex> raw;
  if (is_symmetric_kind(t.kind())) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < m.rows(); ++i) raw.emplace_back(es.eigenvalues()(i), 0.0);
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    for (Eigen::Index i = 0; i < m.rows(); ++i) raw.push_back(es.eigenvalues()(i));
  }
  std::sort(raw.begin(), raw.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<OracleEigenvalue> out;
  for (const auto& v : raw) {
    auto hit = std::find_if(out.begin(), out.end(), [&](const OracleEigenvalue& o) {
      return std::abs(o.value - v) <= cluster_tolerance * std::max({1.0, std::abs(o.value), std::abs(v)});
    });
    if (hit == out.end()) {
      out.push_back({v, 1});
    } else {
      ++hit->multiplicity;
    }
  }
  for (auto& o : out) {
    if (std::abs(o.value.imag()) < 1e-12 * std::max(1.0, std::abs(o.value))) o.value.imag(0.0);
  }
  return out;
}

}  // namespace hyperspec
