#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "hyperspec/matrix_oracle.hpp"
#include "hyperspec/perron.hpp"

using namespace hyperspec;

TEST(Perron, RandomWalkPlusHasRadiusTwo) {
  fixtures::RandomHypergraphOptions opt;
  opt.force_connected = true;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto g = fixtures::random_hypergraph(seed, opt);
    const auto r = spectral_radius_nonneg(build(g, TensorKind::RWPlus));
    EXPECT_NEAR(r.rho, 2.0, 1e-10) << "seed " << seed;
    for (double v : r.eigenvector) EXPECT_NEAR(v, 1.0, 1e-8);
    EXPECT_LE(r.lower, r.rho);
    EXPECT_GE(r.upper, r.rho);
  }
}

TEST(Perron, RegularUniformAdjacency) {
  EXPECT_NEAR(spectral_radius_nonneg(build(fixtures::cycle4(), TensorKind::A)).rho, 2.0, 1e-10);
  EXPECT_NEAR(spectral_radius_nonneg(build(fixtures::single_edge(4), TensorKind::A)).rho, 1.0, 1e-10);
}

TEST(Perron, HyperflowerAdjacencyRadius) {
  // rho(A) = M^{(k-1)/k} for hyperflower(k, M).
  EXPECT_NEAR(spectral_radius_nonneg(build(hyperflower(3, 2), TensorKind::A)).rho, std::cbrt(4.0), 1e-10);
}

TEST(Perron, RejectsNegativeAndDisconnected) {
  try {
    spectral_radius_nonneg(build(fixtures::k2(), TensorKind::K));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotNonnegative);
  }
  try {
    spectral_radius_nonneg(build(fixtures::two_disjoint_edges(), TensorKind::A));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotConnected);
  }
}

TEST(Oracle, PathGraphAdjacency) {
  const auto ev = matrix_oracle(build(fixtures::path3(), TensorKind::A));
  ASSERT_EQ(ev.size(), 3u);
  EXPECT_NEAR(ev[0].value.real(), -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(ev[1].value.real(), 0.0, 1e-12);
  EXPECT_NEAR(ev[2].value.real(), std::sqrt(2.0), 1e-12);
}

TEST(Oracle, ClustersMultiplicities) {
  // Triangle: eigenvalues 2 and -1 (twice).
  const auto ev = matrix_oracle(build(fixtures::triangle_graph(), TensorKind::A));
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0].value.real(), -1.0, 1e-12);
  EXPECT_EQ(ev[0].multiplicity, 2u);
  EXPECT_EQ(ev[1].multiplicity, 1u);
}

TEST(Oracle, RandomWalkMatrixIsNonsymmetric) {
  const auto ev = matrix_oracle(build(fixtures::star(3), TensorKind::RW));
  // Star K_{1,3}: random-walk Laplacian spectrum {0, 1, 2}.
  ASSERT_EQ(ev.size(), 3u);
  EXPECT_NEAR(ev[0].value.real(), 0.0, 1e-12);
  EXPECT_NEAR(ev[1].value.real(), 1.0, 1e-12);
  EXPECT_EQ(ev[1].multiplicity, 2u);
  EXPECT_NEAR(ev[2].value.real(), 2.0, 1e-12);
}

TEST(Oracle, RejectsHigherOrder) {
  EXPECT_THROW(to_matrix(build(fixtures::ex123(), TensorKind::A)), Error);
}
