#include <gtest/gtest.h>

#include <random>

#include "inewton/krylov/gmres.hpp"
#include "inewton/linalg/ilu0.hpp"

using namespace inewton;

namespace {

KrylovConfig no_precond() {
  KrylovConfig k;
  k.preconditioner = Preconditioner::none;
  return k;
}

CsrMatrix random_nonsymmetric(std::size_t n, std::mt19937_64& rng, double shift) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> d(n * n);
  for (double& v : d) v = u(rng);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] += shift;
  return CsrMatrix::from_dense(n, n, d);
}

DenseVector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseVector v(n);
  for (double& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST(Gmres, IdentityOneIteration) {
  const DenseVector b{1.0, -2.0, 0.5};
  const KrylovResult r = gmres_solve(CsrMatrix::identity(3), b, 1e-10, nullptr, no_precond());
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_LE(norm2(r.solution - b), 1e-14);
}

TEST(Gmres, DiagonalTwoIterations) {
  const CsrMatrix a = CsrMatrix::from_dense(2, 2, {1.0, 0.0, 0.0, 2.0});
  const KrylovResult r = gmres_solve(a, DenseVector{1.0, 2.0}, 1e-12, nullptr, no_precond());
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 2);
  EXPECT_LE(norm2(r.solution - DenseVector{1.0, 1.0}), 1e-12);
}

TEST(Gmres, ZeroRhsReturnsZero) {
  const KrylovResult r = gmres_solve(CsrMatrix::identity(4), DenseVector(4), 1e-6, nullptr, no_precond());
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(norm2(r.solution), 0.0);
}

TEST(Gmres, StoppingRuleHolds) {
  std::mt19937_64 rng(5);
  const CsrMatrix a = random_nonsymmetric(30, rng, 8.0);
  const DenseVector b = random_vector(30, rng);
  for (double eta : {0.5, 1e-2, 1e-6, 1e-10}) {
    const KrylovResult r = gmres_solve(a, b, eta, nullptr, no_precond());
    ASSERT_TRUE(r.converged);
    EXPECT_LE(norm2(b - spmv(a, r.solution)), eta * norm2(b) * (1.0 + 1e-8));
    EXPECT_NEAR(r.residual_norm, norm2(b - spmv(a, r.solution)), 1e-12 * norm2(b));
    EXPECT_EQ(r.relative_residual_history.size(), static_cast<std::size_t>(r.iterations));
  }
}

TEST(Gmres, AtMostNIterationsWithoutRestart) {
  std::mt19937_64 rng(17);
  for (std::size_t n : {5u, 20u, 50u}) {
    const CsrMatrix a = random_nonsymmetric(n, rng, 1.0);
    const DenseVector b = random_vector(n, rng);
    KrylovConfig k = no_precond();
    k.restart = static_cast<int>(n);
    k.max_iters = static_cast<int>(n);
    const KrylovResult r = gmres_solve(a, b, 1e-10, nullptr, k);
    EXPECT_TRUE(r.converged) << "n=" << n;
    EXPECT_LE(r.iterations, static_cast<int>(n));
  }
}

TEST(Gmres, CostMonotoneInTolerance) {
  std::mt19937_64 rng(23);
  const CsrMatrix a = random_nonsymmetric(40, rng, 4.0);
  const DenseVector b = random_vector(40, rng);
  int prev = 0;
  for (double eta : {0.5, 1e-1, 1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
    const KrylovResult r = gmres_solve(a, b, eta, nullptr, no_precond());
    EXPECT_GE(r.iterations, prev) << "eta=" << eta;
    prev = r.iterations;
  }
}

TEST(Gmres, RestartedStillConverges) {
  std::mt19937_64 rng(29);
  const CsrMatrix a = random_nonsymmetric(60, rng, 10.0);
  const DenseVector b = random_vector(60, rng);
  KrylovConfig k = no_precond();
  k.restart = 5;
  const KrylovResult r = gmres_solve(a, b, 1e-10, nullptr, k);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(norm2(b - spmv(a, r.solution)), 1e-10 * norm2(b) * (1.0 + 1e-8));
}

TEST(Gmres, IterationCapReportsNotConverged) {
  std::mt19937_64 rng(31);
  const CsrMatrix a = random_nonsymmetric(40, rng, 0.5);
  const DenseVector b = random_vector(40, rng);
  KrylovConfig k = no_precond();
  k.max_iters = 3;
  k.restart = 3;
  const KrylovResult r = gmres_solve(a, b, 1e-12, nullptr, k);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3);
}

TEST(Gmres, Ilu0PreconditionerExactOnTridiagonal) {
  std::vector<Triplet> t;
  const std::size_t n = 50;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, 3.0});
    if (i > 0) t.push_back({i, i - 1, -1.0});
    if (i + 1 < n) t.push_back({i, i + 1, -1.2});
  }
  const CsrMatrix a = CsrMatrix::from_triplets(n, n, t);
  const Ilu0Factors f = ilu0_factorize(a);
  const DenseVector b(n, 1.0);
  const KrylovResult r = gmres_solve(a, b, 1e-12, &f, KrylovConfig{});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 1);
}

TEST(Gmres, ObserverSeesEveryIterate) {
  std::mt19937_64 rng(37);
  const CsrMatrix a = random_nonsymmetric(15, rng, 5.0);
  const DenseVector b = random_vector(15, rng);
  int calls = 0;
  DenseVector last;
  const KrylovResult r = gmres_solve(a, b, 1e-8, nullptr, no_precond(), [&](int j, const DenseVector& x) {
    ++calls;
    EXPECT_EQ(j, calls);
    last = x;
  });
  EXPECT_EQ(calls, r.iterations);
  EXPECT_LE(norm2(last - r.solution), 1e-12 * norm2(r.solution));
}

TEST(Gmres, RejectsBadInput) {
  const CsrMatrix a = CsrMatrix::identity(3);
  EXPECT_THROW((void)gmres_solve(a, DenseVector(2), 0.1, nullptr, KrylovConfig{}), DimensionMismatch);
  KrylovConfig bad;
  bad.restart = 0;
  EXPECT_THROW((void)gmres_solve(a, DenseVector(3, 1.0), 0.1, nullptr, bad), ConfigError);
  EXPECT_EQ(parse_preconditioner("ilu0"), Preconditioner::ilu0);
  EXPECT_THROW((void)parse_preconditioner("amg"), ConfigError);
}
