#include <cmath>

#include <gtest/gtest.h>

#include "opineq/majorization.hpp"
#include "support.hpp"

using namespace opineq;

namespace {

HermitianMatrix herm(const Matrix& m) { return HermitianMatrix(m); }

CubeFunction fn(std::size_t n, Interval iv, std::function<double(std::span<const double>)> g, FunctionFlags flags) {
  return CubeFunction("f", Cube::uniform(n, iv), std::move(g), flags);
}

CubeFunction square() { return fn(1, {}, [](std::span<const double> s) { return s[0] * s[0]; }, {true, false, false}); }

CubeFunction square_increasing() {
  return fn(1, {0, 1e300}, [](std::span<const double> s) { return s[0] * s[0]; }, {true, false, true});
}

CubeFunction max2() {
  return fn(2, {}, [](std::span<const double> s) { return std::max(s[0], s[1]); }, {true, false, true});
}

CubeFunction sum_exp2() {
  return fn(2, {}, [](std::span<const double> s) { return std::exp(s[0]) + std::exp(s[1]); }, {true, false, true});
}

// Prefix sums of the Eigen spectrum.
std::vector<double> oracle_sums(const Matrix& a) {
  std::vector<double> ev = oracle::eigenvalues_desc(a);
  for (std::size_t k = 1; k < ev.size(); ++k) ev[k] += ev[k - 1];
  return ev;
}

bool oracle_weak(const Matrix& a, const Matrix& b, double tol) {
  const auto sa = oracle_sums(a), sb = oracle_sums(b);
  for (std::size_t k = 0; k < sa.size(); ++k)
    if (sa[k] > sb[k] + tol) return false;
  return true;
}

Matrix frame(oracle::Random& rnd, Eigen::Index dim, Eigen::Index k) {
  Eigen::HouseholderQR<Matrix> qr(rnd.gaussian(dim, k));
  return qr.householderQ() * Matrix::Identity(dim, k);
}

AbelianTuple tuple_in(oracle::Random& rnd, const Matrix& u, std::size_t n, double lo, double hi) {
  std::vector<HermitianMatrix> m;
  for (std::size_t i = 0; i < n; ++i) m.push_back(herm(rnd.with_spectrum(u, lo, hi)));
  return AbelianTuple(m);
}

}  // namespace

TEST(PartialSums, ExamplesAndTrace) {
  const PartialSums p = partial_sums(HermitianMatrix::diagonal({1, 3, -2}));
  EXPECT_EQ(p.sums, (std::vector<double>{3, 4, 2}));
  EXPECT_EQ(p.abs_sums, (std::vector<double>{3, 4, 6}));
  oracle::Random rnd(71);
  for (int trial = 0; trial < 200; ++trial) {
    const HermitianMatrix a(rnd.hermitian(rnd.integer(1, 8)));
    const PartialSums s = partial_sums(a);
    EXPECT_NEAR(s.sums.back(), a.trace(), 1e-10);
    const auto want = oracle_sums(a.matrix());
    for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(s.sums[k], want[k], 1e-11);
    // increments are non-increasing
    for (std::size_t k = 2; k < s.sums.size(); ++k)
      EXPECT_LE(s.sums[k] - s.sums[k - 1], s.sums[k - 1] - s.sums[k - 2] + 1e-12);
  }
}

TEST(WeakMajorize, Examples) {
  EXPECT_TRUE(weak_majorize(HermitianMatrix::diagonal({2, 2}), HermitianMatrix::diagonal({3, 1})));
  oracle::Random rnd(72);
  const HermitianMatrix a(rnd.hermitian(4));
  EXPECT_TRUE(weak_majorize(a, a));
  EXPECT_FALSE(weak_majorize(HermitianMatrix::diagonal({3, 1}), HermitianMatrix::diagonal({2, 2})));
  EXPECT_THROW(weak_majorize(HermitianMatrix::identity(2), HermitianMatrix::identity(3)), DimensionError);
}

TEST(WeakMajorize, VerdictRecordsBindingIndex) {
  const Verdict v = weak_majorize_verdict(HermitianMatrix::diagonal({3, 1}), HermitianMatrix::diagonal({2, 2}));
  EXPECT_TRUE(v.failed());
  EXPECT_DOUBLE_EQ(v.lhs, 3.0);
  EXPECT_DOUBLE_EQ(v.rhs, 2.0);
  EXPECT_DOUBLE_EQ(v.gap, -1.0);
}

TEST(WeakMajorize, MatchesSortedSpectrumOracle) {
  oracle::Random rnd(73);
  int positives = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index dim = rnd.integer(1, 5);
    const Matrix a = rnd.hermitian(dim);
    const Matrix b = rnd.hermitian(dim) + Matrix::Identity(dim, dim) * rnd.uniform(0, 2);
    const bool want = oracle_weak(a, b, 0.0);
    // skip near-ties so the tolerance cannot flip the answer
    if (want != oracle_weak(a, b, 1e-6) || want != oracle_weak(a, b, -1e-6)) continue;
    EXPECT_EQ(weak_majorize(herm(a), herm(b)), want);
    positives += want;
  }
  EXPECT_GT(positives, 50);
}

TEST(WeakMajorize, ReflexiveAndTransitive) {
  oracle::Random rnd(74);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index dim = rnd.integer(1, 6);
    const HermitianMatrix a(rnd.hermitian(dim));
    EXPECT_TRUE(weak_majorize(a, a));
    const HermitianMatrix b = a + HermitianMatrix(rnd.positive_definite(dim, 0, 0.5));
    const HermitianMatrix c = b + HermitianMatrix(rnd.positive_definite(dim, 0, 0.5));
    ASSERT_TRUE(weak_majorize(a, b));
    ASSERT_TRUE(weak_majorize(b, c));
    EXPECT_TRUE(weak_majorize(a, c));
  }
}

TEST(KyFan, Examples) {
  const HermitianMatrix a = HermitianMatrix::diagonal({3, 2, 1});
  Matrix u = Matrix::Zero(3, 2);
  u(1, 0) = 1;
  u(2, 1) = 1;
  const Verdict v = kyfan_check(a, u);
  EXPECT_TRUE(v.passed());
  EXPECT_NEAR(v.lhs, 3.0, 1e-15);
  EXPECT_NEAR(v.rhs, 5.0, 1e-15);

  oracle::Random rnd(75);
  const Matrix h = rnd.hermitian(5);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Matrix top = es.eigenvectors().rightCols(2);
  const Verdict eq = kyfan_check(herm(h), top);
  EXPECT_TRUE(eq.passed());
  EXPECT_NEAR(eq.gap, 0.0, 1e-12);
}

TEST(KyFan, NonOrthonormalFrameIsInvalid) {
  Matrix u = Matrix::Zero(3, 2);
  u(0, 0) = 1;
  u(0, 1) = 1;
  EXPECT_TRUE(kyfan_check(HermitianMatrix::identity(3), u).invalid());
  EXPECT_TRUE(kyfan_check(HermitianMatrix::identity(3), Matrix::Identity(2, 2)).invalid());
}

TEST(KyFan, RandomFramesNeverExceedPartialSums) {
  oracle::Random rnd(76);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index dim = rnd.integer(1, 8);
    const Eigen::Index k = rnd.integer(1, int(dim));
    const HermitianMatrix a(rnd.hermitian(dim));
    const Verdict v = kyfan_check(a, frame(rnd, dim, k));
    EXPECT_TRUE(v.passed());
    EXPECT_NEAR(v.rhs, oracle_sums(a.matrix())[static_cast<std::size_t>(k - 1)], 1e-10);
  }
}

TEST(KyFan, MaximumApproachedNearTopEigenspace) {
  oracle::Random rnd(77);
  const Matrix h = rnd.hermitian(6);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Matrix top = es.eigenvectors().rightCols(3);
  const double bound = oracle_sums(h)[2];
  double best = -1e300;
  for (int trial = 0; trial < 200; ++trial) {
    const double eps = std::pow(10.0, -rnd.uniform(1, 6));
    Eigen::HouseholderQR<Matrix> qr(top + eps * rnd.gaussian(6, 3));
    const Matrix u = qr.householderQ() * Matrix::Identity(6, 3);
    const Verdict v = kyfan_check(herm(h), u);
    EXPECT_LE(v.lhs, bound + 1e-10);
    best = std::max(best, v.lhs);
  }
  EXPECT_NEAR(best, bound, 1e-8);
}

TEST(Thm5, SingleUnitaryAtomIsTight) {
  oracle::Random rnd(78);
  const Matrix u = rnd.unitary(4);
  const AbelianTuple t = tuple_in(rnd, rnd.unitary(4), 2, -1, 1);
  const Verdict v = check_thm5(max2(), ColumnField({{1.0, u}}), {t});
  EXPECT_TRUE(v.passed());
  EXPECT_LE(std::abs(v.gap), 1e-10);
}

TEST(Thm5, OneVariableAnyField) {
  oracle::Random rnd(79);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index dim = rnd.integer(1, 5);
    const std::size_t atoms = static_cast<std::size_t>(rnd.integer(1, 4));
    std::vector<double> w;
    std::vector<Matrix> bs;
    TupleField tf;
    for (std::size_t t = 0; t < atoms; ++t) {
      w.push_back(rnd.uniform(0.2, 1));
      bs.push_back(rnd.gaussian(dim, dim));
      tf.emplace_back(std::vector<HermitianMatrix>{herm(rnd.hermitian(dim))});
    }
    EXPECT_TRUE(check_thm5(square(), ColumnField::normalized(w, bs), tf).passed());
  }
}

TEST(Thm5, RemarkWithCommonBasis) {
  oracle::Random rnd(80);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index dim = rnd.integer(1, 5);
    const Matrix u = rnd.unitary(dim);
    std::vector<FieldAtom> atoms;
    TupleField tf;
    const int count = rnd.integer(1, 4);
    for (int t = 0; t < count; ++t) {
      atoms.push_back({1.0 / count, Matrix::Identity(dim, dim)});
      tf.push_back(tuple_in(rnd, u, 2, -1, 1));
    }
    const Verdict v = check_thm5(sum_exp2(), ColumnField(atoms), tf);
    EXPECT_TRUE(v.passed());
  }
}

TEST(Thm5, NonAbelianCompressionIsInvalid) {
  oracle::Random rnd(81);
  std::vector<Matrix> bs{rnd.gaussian(3, 3), rnd.gaussian(3, 3)};
  const ColumnField f = ColumnField::normalized({0.5, 0.5}, bs);
  const TupleField tf{tuple_in(rnd, rnd.unitary(3), 2, -1, 1), tuple_in(rnd, rnd.unitary(3), 2, -1, 1)};
  EXPECT_TRUE(check_thm5(max2(), f, tf).invalid());
}

TEST(Corollary, EndpointsAreTight) {
  oracle::Random rnd(82);
  const Matrix u = rnd.unitary(3);
  const AbelianTuple x = tuple_in(rnd, u, 2, -1, 1), y = tuple_in(rnd, u, 2, -1, 1);
  for (double lambda : {0.0, 1.0}) {
    const Verdict v = check_corollary(max2(), x, y, lambda);
    EXPECT_TRUE(v.passed());
    EXPECT_LE(std::abs(v.gap), 1e-12);
  }
}

TEST(Corollary, OneVariableNonCommuting) {
  oracle::Random rnd(83);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index dim = rnd.integer(1, 5);
    const AbelianTuple x({herm(rnd.hermitian(dim))}), y({herm(rnd.hermitian(dim))});
    EXPECT_TRUE(check_corollary(square(), x, y, rnd.uniform(0, 1)).passed());
  }
}

TEST(Corollary, DiagonalTuplesMatchScalarOracle) {
  oracle::Random rnd(84);
  const CubeFunction f = max2();
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = rnd.integer(1, 5);
    std::vector<double> x1(dim), x2(dim), y1(dim), y2(dim);
    for (int k = 0; k < dim; ++k) x1[k] = rnd.uniform(-1, 1), x2[k] = rnd.uniform(-1, 1), y1[k] = rnd.uniform(-1, 1),
                                  y2[k] = rnd.uniform(-1, 1);
    const double lambda = rnd.uniform(0, 1);
    const Verdict v = check_corollary(
        f, AbelianTuple({HermitianMatrix::diagonal(x1), HermitianMatrix::diagonal(x2)}),
        AbelianTuple({HermitianMatrix::diagonal(y1), HermitianMatrix::diagonal(y2)}), lambda);
    std::vector<double> lhs(dim), rhs(dim);
    for (int k = 0; k < dim; ++k) {
      lhs[k] = f({lambda * x1[k] + (1 - lambda) * y1[k], lambda * x2[k] + (1 - lambda) * y2[k]});
      rhs[k] = lambda * f({x1[k], x2[k]}) + (1 - lambda) * f({y1[k], y2[k]});
    }
    const bool want = oracle_weak(HermitianMatrix::diagonal(lhs).matrix(), HermitianMatrix::diagonal(rhs).matrix(),
                                  1e-9);
    EXPECT_TRUE(want);
    EXPECT_EQ(v.passed(), want);
  }
}

TEST(Corollary, IncompatiblePairIsInvalid) {
  const AbelianTuple x({HermitianMatrix::diagonal({1, 0}), HermitianMatrix::diagonal({0, 1})});
  const AbelianTuple y({HermitianMatrix::from_rows({{0, 1}, {1, 0}}), HermitianMatrix::diagonal({1, 1})});
  ASSERT_FALSE(check_compatible(x, y));
  EXPECT_TRUE(check_corollary(max2(), x, y, 0.5).invalid());
  EXPECT_TRUE(check_corollary(max2(), x, x, 1.5).invalid());
}

TEST(Thm6, Examples) {
  oracle::Random rnd(85);
  const AbelianTuple x = tuple_in(rnd, rnd.unitary(4), 2, -1, 1);
  const Verdict same = check_thm6(max2(), x, x);
  EXPECT_TRUE(same.passed());
  EXPECT_LE(std::abs(same.gap), 1e-12);

  const Matrix u = rnd.unitary(2);
  const Matrix p = u * HermitianMatrix::diagonal({1, 0}).matrix() * u.adjoint();
  const Verdict v = check_thm6(square_increasing(), AbelianTuple({herm(p)}),
                               AbelianTuple({herm(p + Matrix::Identity(2, 2))}));
  EXPECT_TRUE(v.passed());
}

TEST(Thm6, MaxOnRandomOrderedPairs) {
  oracle::Random rnd(86);
  for (int trial = 0; trial < 2000; ++trial) {
    const Eigen::Index dim = rnd.integer(1, 6);
    // x_i <= 0 <= y_i in unrelated bases
    const AbelianTuple x = tuple_in(rnd, rnd.unitary(dim), 2, -2, 0);
    const AbelianTuple y = tuple_in(rnd, rnd.unitary(dim), 2, 0, 2);
    ASSERT_TRUE(check_thm6(max2(), x, y).passed()) << "trial " << trial;
  }
}

TEST(Thm6, DiagonalOneVariableMatchesScalarCheck) {
  oracle::Random rnd(87);
  for (int trial = 0; trial < 300; ++trial) {
    const int dim = rnd.integer(1, 6);
    std::vector<double> a(dim), b(dim), fa(dim), fb(dim);
    for (int k = 0; k < dim; ++k) {
      a[k] = rnd.uniform(0, 2);
      b[k] = a[k] + rnd.uniform(0, 1);
      fa[k] = a[k] * a[k];
      fb[k] = b[k] * b[k];
    }
    const Verdict v = check_thm6(square_increasing(), AbelianTuple({HermitianMatrix::diagonal(a)}),
                                 AbelianTuple({HermitianMatrix::diagonal(b)}));
    EXPECT_EQ(v.passed(), oracle_weak(HermitianMatrix::diagonal(fa).matrix(), HermitianMatrix::diagonal(fb).matrix(),
                                      1e-9));
    EXPECT_TRUE(v.passed());
  }
}

TEST(Thm6, Preconditions) {
  const AbelianTuple x({HermitianMatrix::diagonal({2, 0})});
  const AbelianTuple y({HermitianMatrix::diagonal({1, 1})});
  EXPECT_TRUE(check_thm6(square_increasing(), x, y).invalid());
  EXPECT_TRUE(check_thm6(square(), y, y).invalid());
}
