#include "irsvm/spectral.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace irsvm {
namespace {

double orthonormality_error(const Matrix& Q) {
  return (Q.transpose() * Q - Matrix::Identity(Q.cols(), Q.cols())).cwiseAbs().maxCoeff();
}

void expect_valid_svd(const Matrix& A, const SvdFactors& f) {
  const Index l = std::min(A.rows(), A.cols());
  ASSERT_EQ(f.sigma.size(), l);
  ASSERT_EQ(f.U.rows(), A.rows());
  ASSERT_EQ(f.U.cols(), l);
  ASSERT_EQ(f.V.rows(), A.cols());
  ASSERT_EQ(f.V.cols(), l);
  for (Index i = 0; i < l; ++i) {
    EXPECT_GE(f.sigma[i], 0.0);
    if (i > 0) {
      EXPECT_LE(f.sigma[i], f.sigma[i - 1]);
    }
  }
  EXPECT_LE(orthonormality_error(f.U), 1e-10);
  EXPECT_LE(orthonormality_error(f.V), 1e-10);
  EXPECT_LE((f.reconstruct() - A).norm(), 1e-8 * std::max(1.0, A.norm()));
}

TEST(ThinSvd, DiagonalMatrix) {
  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = 3.0;
  A(1, 1) = 1.0;
  const SvdFactors f = thin_svd(A);
  EXPECT_NEAR(f.sigma[0], 3.0, 1e-14);
  EXPECT_NEAR(f.sigma[1], 1.0, 1e-14);
  EXPECT_NEAR(std::abs(f.U(0, 0)), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(f.V(1, 1)), 1.0, 1e-14);
  expect_valid_svd(A, f);
}

TEST(ThinSvd, ZeroMatrix) {
  const Matrix A = Matrix::Zero(3, 2);
  const SvdFactors f = thin_svd(A);
  EXPECT_EQ(f.sigma[0], 0.0);
  EXPECT_EQ(f.sigma[1], 0.0);
  expect_valid_svd(A, f);
}

TEST(ThinSvd, RandomShapesSatisfyInvariants) {
  std::mt19937_64 rng(11);
  for (const auto& [m, n] : {std::pair{5, 4}, {4, 5}, {1, 6}, {7, 1}, {30, 20}, {20, 30}}) {
    const Matrix A = oracle::gaussian(m, n, rng);
    expect_valid_svd(A, thin_svd(A));
  }
}

TEST(ThinSvd, NonFiniteInputIsDecompositionFailure) {
  Matrix A = Matrix::Ones(2, 2);
  A(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(thin_svd(A), DecompositionFailure);
  A(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(thin_svd(A), DecompositionFailure);
}

TEST(WeightedSvProx, ZeroRegularizerReturnsB) {
  std::mt19937_64 rng(3);
  const Matrix B = oracle::gaussian(4, 3, rng);
  const ProxResult r = weighted_sv_prox(B, Matrix::Zero(4, 3), 1.0, Vector::Zero(3));
  EXPECT_LE((r.X - B).norm(), 1e-12);
}

TEST(WeightedSvProx, DiagonalShrinkage) {
  Matrix B = Matrix::Zero(2, 2);
  B(0, 0) = 3.0;
  B(1, 1) = 1.0;
  const ProxResult r = weighted_sv_prox(B, Matrix::Zero(2, 2), 1.0, Vector::Ones(2));
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 2.0;
  EXPECT_LE((r.X - expected).norm(), 1e-14);
  EXPECT_DOUBLE_EQ(r.x[0], 2.0);
  EXPECT_DOUBLE_EQ(r.x[1], 0.0);
}

TEST(WeightedSvProx, OutputIsAlignedWithZFactorsNotSorted) {
  Matrix B = Matrix::Zero(2, 2);
  B(0, 0) = 3.0;
  B(1, 1) = 2.5;
  Vector s(2);
  s << 2.0, 0.0;  // decreasing weights flip the order
  const ProxResult r = weighted_sv_prox(B, Matrix::Zero(2, 2), 1.0, s);
  EXPECT_DOUBLE_EQ(r.x[0], 1.0);
  EXPECT_DOUBLE_EQ(r.x[1], 2.5);
  const Vector sv = singular_values(r.X);
  EXPECT_NEAR(sv[0], 2.5, 1e-14);
  EXPECT_NEAR(sv[1], 1.0, 1e-14);
}

TEST(WeightedSvProx, Errors) {
  const Matrix B = Matrix::Ones(3, 2);
  EXPECT_THROW(weighted_sv_prox(B, Matrix::Ones(2, 3), 1.0, Vector::Zero(2)), ShapeMismatch);
  EXPECT_THROW(weighted_sv_prox(B, B, 0.0, Vector::Zero(2)), DomainError);
  EXPECT_THROW(weighted_sv_prox(B, B, -1.0, Vector::Zero(2)), DomainError);
  Vector s(2);
  s << 0.1, -0.1;
  EXPECT_THROW(weighted_sv_prox(B, B, 1.0, s), NegativeWeight);
  EXPECT_THROW(weighted_sv_prox(B, B, 1.0, Vector::Zero(3)), ShapeMismatch);
}

TEST(WeightedSvProx, ScalingConsistencyIsExact) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix B = oracle::gaussian(5, 4, rng);
    const Matrix C = oracle::gaussian(5, 4, rng);
    const double L = 0.5 + trial * 0.3;
    const Vector s = oracle::gaussian(4, 1, rng).cwiseAbs();
    const ProxResult a = weighted_sv_prox(B, C, L, s);
    const ProxResult b = weighted_sv_prox(B - C / L, Matrix::Zero(5, 4), L, s);
    EXPECT_EQ(a.X, b.X);
    EXPECT_EQ(a.x, b.x);
  }
}

TEST(WeightedSvProx, UniformWeightsSoftThresholdSpectrum) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix B = oracle::gaussian(6, 4, rng);
    const Matrix C = oracle::gaussian(6, 4, rng);
    const double L = 1.5;
    const double t = 0.7;
    const ProxResult r = weighted_sv_prox(B, C, L, Vector::Constant(4, t));
    const Vector d = oracle::jacobi_singular_values(B - C / L);
    const Vector expected = (d.array() - t / L).cwiseMax(0.0);
    const Vector got = oracle::jacobi_singular_values(r.X);
    EXPECT_LE((got - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(WeightedSvProx, IdempotentWithZeroWeights) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix B = oracle::gaussian(5, 5, rng);
    const Vector s = oracle::gaussian(5, 1, rng).cwiseAbs();
    const ProxResult first = weighted_sv_prox(B, Matrix::Zero(5, 5), 2.0, s);
    const ProxResult again = weighted_sv_prox(first.X, Matrix::Zero(5, 5), 2.0, Vector::Zero(5));
    EXPECT_LE((again.X - first.X).cwiseAbs().maxCoeff(), 1e-10);
  }
}

// Stochastic optimality against an independent objective evaluation.
TEST(WeightedSvProx, BeatsRandomAndPerturbedCandidates) {
  std::mt19937_64 rng(1234);
  const Matrix B = oracle::gaussian(3, 3, rng);
  const Matrix C = oracle::gaussian(3, 3, rng);
  const double L = 2.0;
  Vector s(3);
  s << 0.5, 0.3, 0.1;
  const ProxResult r = weighted_sv_prox(B, C, L, s);
  const double best = oracle::prox_objective(r.X, B, C, L, s);
  EXPECT_NEAR(best, prox_objective(r.X, B, C, L, s), 1e-12);

  std::uniform_real_distribution<double> scale(1e-6, 1.0);
  for (int i = 0; i < 10000; ++i) {
    Matrix Y = (i % 2 == 0) ? Matrix(r.X + scale(rng) * oracle::gaussian(3, 3, rng))
                            : Matrix(oracle::gaussian(3, 3, rng, 2.0));
    EXPECT_LE(best, oracle::prox_objective(Y, B, C, L, s) + 1e-8) << "candidate " << i;
  }
}

// Closed-form optimality needs nondecreasing weights. With s = (2, 0) the formula keeps
// the order of Z's factors, yet leaving B untouched is strictly better.
TEST(WeightedSvProx, DecreasingWeightsCanBeSuboptimal) {
  Matrix B = Matrix::Zero(2, 2);
  B(0, 0) = 3.0;
  B(1, 1) = 2.5;
  Vector s(2);
  s << 2.0, 0.0;
  const Matrix C = Matrix::Zero(2, 2);
  const ProxResult r = weighted_sv_prox(B, C, 1.0, s);
  EXPECT_NEAR(oracle::prox_objective(r.X, B, C, 1.0, s), 7.0, 1e-12);
  EXPECT_NEAR(oracle::prox_objective(B, B, C, 1.0, s), 6.0, 1e-12);
}

TEST(WeightedSvProx, NondecreasingWeightsBeatCandidatesOnSmallShapes) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int inst = 0; inst < 10; ++inst) {
    const Index m = dim(rng);
    const Index n = dim(rng);
    const Index l = std::min(m, n);
    const Matrix B = oracle::gaussian(m, n, rng);
    const Matrix C = oracle::gaussian(m, n, rng);
    const double L = 0.5 + 2.0 * unit(rng);
    Vector s = oracle::gaussian(l, 1, rng).cwiseAbs();
    std::sort(s.data(), s.data() + l);
    const ProxResult r = weighted_sv_prox(B, C, L, s);
    const double best = oracle::prox_objective(r.X, B, C, L, s);
    for (int i = 0; i < 1000; ++i) {
      const Matrix Y = (i % 2 == 0) ? Matrix(r.X + 0.1 * unit(rng) * oracle::gaussian(m, n, rng))
                                    : Matrix(oracle::gaussian(m, n, rng, 2.0));
      EXPECT_LE(best, oracle::prox_objective(Y, B, C, L, s) + 1e-8);
    }
  }
}

TEST(ProxObjective, HandValues) {
  std::mt19937_64 rng(2);
  const Matrix B = oracle::gaussian(3, 2, rng);
  EXPECT_DOUBLE_EQ(prox_objective(B, B, Matrix::Zero(3, 2), 1.0, Vector::Zero(2)), 0.0);
  EXPECT_DOUBLE_EQ(prox_objective(Matrix::Zero(3, 2), Matrix::Zero(3, 2), Matrix::Zero(3, 2), 1.0,
                                  Vector::Constant(2, 5.0)),
                   0.0);

  Matrix X = Matrix::Zero(2, 2);
  X(0, 0) = 2.0;
  Matrix Bd = Matrix::Zero(2, 2);
  Bd(0, 0) = 3.0;
  Bd(1, 1) = 1.0;
  // 1/2 (1 + 1) + 1 * 2 + 1 * 0
  EXPECT_NEAR(prox_objective(X, Bd, Matrix::Zero(2, 2), 1.0, Vector::Ones(2)), 3.0, 1e-14);
}

TEST(ProxObjective, PairsWeightsWithDescendingSingularValues) {
  Matrix X = Matrix::Zero(2, 2);
  X(0, 0) = 1.0;
  X(1, 1) = 4.0;
  Vector s(2);
  s << 1.0, 10.0;
  // sigma = (4, 1): 1*4 + 10*1
  EXPECT_NEAR(prox_objective(X, X, Matrix::Zero(2, 2), 1.0, s), 14.0, 1e-13);
}

TEST(ProxObjective, ShapeMismatch) {
  EXPECT_THROW(prox_objective(Matrix::Zero(2, 2), Matrix::Zero(2, 3), Matrix::Zero(2, 3), 1.0,
                              Vector::Zero(2)),
               ShapeMismatch);
}

TEST(NumericalRank, RelativeThreshold) {
  Vector s(4);
  s << 100.0, 1.0, 5e-7, 1e-7;
  EXPECT_DOUBLE_EQ(zero_threshold(s), 1e-6);
  EXPECT_EQ(numerical_rank(s), 2);
  Vector small(2);
  small << 0.5, 5e-9;
  EXPECT_EQ(numerical_rank(small), 1);
  EXPECT_EQ(numerical_rank(Vector::Zero(3)), 0);
}

}  // namespace
}  // namespace irsvm
