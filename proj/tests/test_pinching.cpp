#include <cmath>

#include <gtest/gtest.h>

#include "opineq/pinching.hpp"
#include "support.hpp"

using namespace opineq;

namespace {

HermitianMatrix herm(const Matrix& m) { return HermitianMatrix(m); }

CubeFunction fn(std::size_t n, Interval iv, std::function<double(std::span<const double>)> g, FunctionFlags flags) {
  return CubeFunction("f", Cube::uniform(n, iv), std::move(g), flags);
}

const FunctionFlags kConvex{true, false, false};
const FunctionFlags kConcave{false, true, false};
const FunctionFlags kAffine{true, true, false};

CubeFunction square_of_sum() {
  return fn(2, {}, [](std::span<const double> s) { return (s[0] + s[1]) * (s[0] + s[1]); }, kConvex);
}

CubeFunction affine2() {
  return fn(2, {}, [](std::span<const double> s) { return 2.0 * s[0] - 0.5 * s[1] + 1.0; }, kAffine);
}

CubeFunction max2() {
  return fn(2, {}, [](std::span<const double> s) { return std::max(s[0], s[1]); }, kConvex);
}

Vector unit(oracle::Random& rnd, Eigen::Index dim) {
  Vector v = rnd.gaussian(dim, 1).col(0);
  return v / v.norm();
}

Vector basis_vector(Eigen::Index dim, Eigen::Index k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

ColumnField random_field(oracle::Random& rnd, Eigen::Index dim, std::size_t atoms) {
  std::vector<double> w;
  std::vector<Matrix> bs;
  for (std::size_t t = 0; t < atoms; ++t) {
    w.push_back(rnd.uniform(0.2, 1.0));
    bs.push_back(rnd.gaussian(dim, dim));
  }
  return ColumnField::normalized(w, bs);
}

TupleField random_tuples(oracle::Random& rnd, Eigen::Index dim, std::size_t atoms, std::size_t n, double lo,
                         double hi) {
  TupleField tf;
  for (std::size_t t = 0; t < atoms; ++t) {
    const Matrix u = rnd.unitary(dim);
    std::vector<HermitianMatrix> members;
    for (std::size_t i = 0; i < n; ++i) members.push_back(herm(rnd.with_spectrum(u, lo, hi)));
    tf.emplace_back(members);
  }
  return tf;
}

double quad_form(const Matrix& a, const Vector& v) { return (v.adjoint() * a * v)(0, 0).real(); }

}  // namespace

TEST(Pinch, Examples) {
  const DiagonalState rho = DiagonalState::uniform(3);
  const DiagonalFunction z = pinch(rho, HermitianMatrix::diagonal({1.5, -2, 7}));
  EXPECT_EQ(z.values, (std::vector<double>{1.5, -2, 7}));
  EXPECT_TRUE(z.undefined.empty());

  const Matrix x = HermitianMatrix::from_rows({{1, 1}, {1, 1}}).matrix();
  const DiagonalFunction p = pinch(DiagonalState::uniform(2), herm(x * x));
  EXPECT_NEAR(p.values[0], 2.0, 1e-15);
  EXPECT_NEAR(p.values[1], 2.0, 1e-15);
}

TEST(Pinch, ZeroWeightIndicesAreUndefined) {
  const DiagonalFunction p = pinch(DiagonalState({1, 0, 2}), HermitianMatrix::diagonal({4, 5, 6}));
  EXPECT_EQ(p.undefined, (std::vector<std::size_t>{1}));
  EXPECT_EQ(p.values[1], 0.0);
  EXPECT_FALSE(p.defined_at(1));
  EXPECT_TRUE(p.defined_at(2));
  EXPECT_EQ(p.values[2], 6.0);
}

TEST(Pinch, DualityIdentity) {
  oracle::Random rnd(51);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index dim = rnd.integer(1, 6);
    std::vector<double> w(static_cast<std::size_t>(dim)), z(w.size());
    for (std::size_t s = 0; s < w.size(); ++s) {
      w[s] = rnd.uniform(0.05, 3);
      z[s] = rnd.uniform(-2, 2);
    }
    const DiagonalState rho(w);
    const HermitianMatrix a(rnd.hermitian(dim));
    const DiagonalFunction p = pinch(rho, a);
    const Matrix za = HermitianMatrix::diagonal(z).matrix() * a.matrix();
    double rhs = 0;
    for (std::size_t s = 0; s < w.size(); ++s) rhs += z[s] * p.values[s] * w[s];
    EXPECT_NEAR(state_trace(rho, za), rhs, 1e-10);
  }
}

TEST(ColumnField, NormalizedIsUnital) {
  oracle::Random rnd(52);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t atoms = static_cast<std::size_t>(rnd.integer(1, 5));
    const ColumnField f = random_field(rnd, rnd.integer(1, 6), atoms);
    EXPECT_LE(f.unitality_defect(), 1e-12 * double(atoms));
    Matrix sum = Matrix::Zero(f.dim(), f.dim());
    for (const auto& at : f.atoms()) sum += at.weight * at.a.adjoint() * at.a;
    EXPECT_LT((sum - Matrix::Identity(f.dim(), f.dim())).norm(), 1e-12 * double(atoms));
  }
}

TEST(ColumnField, Validation) {
  EXPECT_THROW(ColumnField({{1.0, Matrix::Identity(2, 2) * 2.0}}), DomainError);
  EXPECT_THROW(ColumnField({{-1.0, Matrix::Identity(2, 2)}}), DomainError);
  EXPECT_THROW(ColumnField({{0.5, Matrix::Identity(2, 2)}, {0.5, Matrix::Identity(3, 3)}}), DimensionError);
  EXPECT_NO_THROW(ColumnField({{0.25, Matrix::Identity(2, 2)}, {0.75, Matrix::Identity(2, 2)}}));
  EXPECT_EQ(ColumnField::trivial(3).unitality_defect(), 0.0);
}

TEST(Compress, Examples) {
  oracle::Random rnd(53);
  const AbelianTuple x({HermitianMatrix(rnd.hermitian(3))});
  const Compression c1 = compress(ColumnField::trivial(3), {x});
  EXPECT_LT((c1.members[0].matrix() - x[0].matrix()).norm(), 1e-15);

  Matrix a1 = Matrix::Zero(2, 2), a2 = Matrix::Zero(2, 2);
  a1(0, 0) = 1;
  a2(1, 1) = 1;
  const ColumnField split({{1.0, a1}, {1.0, a2}});
  const TupleField scalars{AbelianTuple({HermitianMatrix::identity(2) * 3.0}),
                           AbelianTuple({HermitianMatrix::identity(2) * -1.0})};
  const Compression c2 = compress(split, scalars);
  EXPECT_LT((c2.members[0].matrix() - HermitianMatrix::diagonal({3, -1}).matrix()).norm(), 1e-15);

  const Matrix u = rnd.unitary(3);
  const Matrix v = rnd.unitary(3);
  const AbelianTuple pair({herm(rnd.with_spectrum(v, -1, 1)), herm(rnd.with_spectrum(v, 0, 2))});
  const Compression c3 = compress(ColumnField({{1.0, u}}), {pair});
  EXPECT_TRUE(c3.abelian);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_LT((c3.members[i].matrix() - u.adjoint() * pair[i].matrix() * u).norm(), 1e-13);
  }
}

TEST(Compress, GeneralFieldsNeedNotBeAbelian) {
  oracle::Random rnd(54);
  const ColumnField f = random_field(rnd, 3, 2);
  const TupleField tf = random_tuples(rnd, 3, 2, 2, -1, 1);
  EXPECT_FALSE(compress(f, tf).abelian);
}

TEST(Compress, Misaligned) {
  const TupleField one{AbelianTuple({HermitianMatrix::identity(2)})};
  Matrix a = Matrix::Identity(2, 2) / std::sqrt(2.0);
  EXPECT_THROW(compress(ColumnField({{1.0, a}, {1.0, a}}), one), DimensionError);
  EXPECT_THROW(compress(ColumnField::trivial(3), one), DimensionError);
}

TEST(MuXi, Examples) {
  const AbelianTuple d({HermitianMatrix::diagonal({1, 2, 3}), HermitianMatrix::diagonal({-1, 0, 5})});
  const SpectralMeasure m = build_mu_xi(ColumnField::trivial(3), {d}, basis_vector(3, 0));
  double mass_at_point = 0;
  for (std::size_t k = 0; k < m.support.size(); ++k)
    if (std::abs(m.support[k][0] - 1) < 1e-12 && std::abs(m.support[k][1] + 1) < 1e-12) mass_at_point += m.masses[k];
  EXPECT_NEAR(mass_at_point, 1.0, 1e-14);
  EXPECT_NEAR(m.total_mass(), 1.0, 1e-14);

  oracle::Random rnd(55);
  const Matrix u = rnd.unitary(4);
  const AbelianTuple t({herm(rnd.with_spectrum(u, 0, 1)), herm(rnd.with_spectrum(u, 2, 3))});
  const Vector xi = u.col(2);
  const SpectralMeasure dirac = build_mu_xi(ColumnField::trivial(4), {t}, xi);
  EXPECT_NEAR(dirac.moment(0), quad_form(t[0].matrix(), xi), 1e-12);
  EXPECT_NEAR(dirac.integrate([](std::span<const double> s) { return s[0] * s[0]; }),
              std::pow(quad_form(t[0].matrix(), xi), 2), 1e-12);
}

TEST(MuXi, RejectsNonUnitVector) {
  const AbelianTuple d({HermitianMatrix::identity(2)});
  EXPECT_THROW(build_mu_xi(ColumnField::trivial(2), {d}, Vector::Ones(2)), DomainError);
}

TEST(MuXi, ProbabilityAndRepresentation) {
  oracle::Random rnd(56);
  const auto g = [](std::span<const double> s) { return std::sin(s[0]) * std::exp(s[1]); };
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index dim = rnd.integer(1, 5);
    const std::size_t atoms = static_cast<std::size_t>(rnd.integer(1, 4));
    const ColumnField f = random_field(rnd, dim, atoms);
    const TupleField tf = random_tuples(rnd, dim, atoms, 2, -1, 2);
    const Vector xi = unit(rnd, dim);
    const SpectralMeasure m = build_mu_xi(f, tf, xi);
    EXPECT_NEAR(m.total_mass(), 1.0, 1e-10);
    for (double mass : m.masses) EXPECT_GE(mass, 0.0);

    // int s_i dmu = <y_i xi, xi>
    const Compression y = compress(f, tf);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(m.moment(i), quad_form(y.members[i].matrix(), xi), 1e-9);

    // int g dmu = sum_t w_t <g(x_t) a_t xi, a_t xi>, g(x_t) from Eigen on x_1t with x_2t read off the basis
    double rhs = 0;
    for (std::size_t t = 0; t < atoms; ++t) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(tf[t][0].matrix() + 0.37 * tf[t][1].matrix());
      const Matrix q = es.eigenvectors();
      Eigen::VectorXd gd(dim);
      for (Eigen::Index j = 0; j < dim; ++j) {
        const double p0 = (q.col(j).adjoint() * tf[t][0].matrix() * q.col(j))(0, 0).real();
        const double p1 = (q.col(j).adjoint() * tf[t][1].matrix() * q.col(j))(0, 0).real();
        const double pt[2] = {p0, p1};
        gd(j) = g(pt);
      }
      const Matrix gx = q * gd.cast<Complex>().asDiagonal() * q.adjoint();
      rhs += f[t].weight * quad_form(gx, f[t].a * xi);
    }
    EXPECT_NEAR(m.integrate(g), rhs, 1e-9);
  }
}

TEST(JensenExpectation, AffineIsTight) {
  oracle::Random rnd(57);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index dim = rnd.integer(1, 5);
    const std::size_t atoms = static_cast<std::size_t>(rnd.integer(1, 4));
    const Verdict v = check_jensen_expectation(affine2(), random_field(rnd, dim, atoms),
                                               random_tuples(rnd, dim, atoms, 2, -1, 1), unit(rnd, dim));
    EXPECT_TRUE(v.passed());
    EXPECT_LE(std::abs(v.gap), 1e-9);
  }
}

TEST(JensenExpectation, DiracMeasureGivesEquality) {
  oracle::Random rnd(58);
  const Matrix u = rnd.unitary(3);
  const TupleField tf{AbelianTuple({herm(rnd.with_spectrum(u, -1, 1)), herm(rnd.with_spectrum(u, -1, 1))})};
  const Verdict v = check_jensen_expectation(square_of_sum(), ColumnField::trivial(3), tf, u.col(1));
  EXPECT_TRUE(v.passed());
  EXPECT_LE(std::abs(v.gap), 1e-12);
}

TEST(JensenExpectation, SquareOfSumOnRandomFields) {
  oracle::Random rnd(59);
  for (int trial = 0; trial < 1000; ++trial) {
    const Verdict v = check_jensen_expectation(square_of_sum(), random_field(rnd, 4, 3),
                                               random_tuples(rnd, 4, 3, 2, -2, 2), unit(rnd, 4));
    ASSERT_TRUE(v.passed()) << "trial " << trial << " gap " << v.gap;
    // the middle quantity int f dmu sits between the two sides
    ASSERT_TRUE(v.audit.count("mu_integral"));
    EXPECT_LE(v.lhs, v.audit.at("mu_integral") + 1e-9);
    EXPECT_NEAR(v.audit.at("mu_integral"), v.rhs, 1e-9 * (1 + std::abs(v.rhs)));
  }
}

TEST(JensenExpectation, NonConvexIsInvalid) {
  const CubeFunction sq_root = fn(1, {0, 10}, [](std::span<const double> s) { return std::sqrt(s[0]); }, kConcave);
  const TupleField tf{AbelianTuple({HermitianMatrix::identity(2)})};
  EXPECT_TRUE(check_jensen_expectation(sq_root, ColumnField::trivial(2), tf, basis_vector(2, 0)).invalid());
}

TEST(MondPecaric, Examples) {
  const CubeFunction sq = fn(1, {}, [](std::span<const double> s) { return s[0] * s[0]; }, kConvex);
  const Verdict diag = check_mond_pecaric(sq, AbelianTuple({HermitianMatrix::diagonal({3, -2})}), basis_vector(2, 0));
  EXPECT_TRUE(diag.passed());
  EXPECT_LE(std::abs(diag.gap), 1e-14);

  const Verdict swap =
      check_mond_pecaric(sq, AbelianTuple({HermitianMatrix::from_rows({{0, 1}, {1, 0}})}), basis_vector(2, 0));
  EXPECT_TRUE(swap.passed());
  EXPECT_NEAR(swap.lhs, 0.0, 1e-15);
  EXPECT_NEAR(swap.rhs, 1.0, 1e-14);

  // diagonal pair with uniform xi is scalar Jensen for the weights 1/m
  const std::vector<double> a{0.5, -1, 2}, b{1, 1, -3};
  const AbelianTuple t({HermitianMatrix::diagonal(a), HermitianMatrix::diagonal(b)});
  const Vector xi = Vector::Ones(3) / std::sqrt(3.0);
  const CubeFunction f = square_of_sum();
  const Verdict v = check_mond_pecaric(f, t, xi);
  double mean_a = 0, mean_b = 0, mean_f = 0;
  for (int k = 0; k < 3; ++k) {
    mean_a += a[k] / 3;
    mean_b += b[k] / 3;
    mean_f += f({a[k], b[k]}) / 3;
  }
  EXPECT_NEAR(v.lhs, f({mean_a, mean_b}), 1e-13);
  EXPECT_NEAR(v.rhs, mean_f, 1e-13);
}

TEST(MondPecaric, AgreesWithTrivialField) {
  oracle::Random rnd(60);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index dim = rnd.integer(1, 5);
    const TupleField tf = random_tuples(rnd, dim, 1, 2, -1, 1);
    const Vector xi = unit(rnd, dim);
    const Verdict direct = check_mond_pecaric(max2(), tf[0], xi);
    const Verdict field = check_jensen_expectation(max2(), ColumnField::trivial(dim), tf, xi);
    EXPECT_NEAR(direct.lhs, field.lhs, 1e-12);
    EXPECT_NEAR(direct.rhs, field.rhs, 1e-12);
    EXPECT_EQ(direct.outcome, field.outcome);
  }
}

TEST(PhiConcaveJensen, Examples) {
  const CubeFunction geo = fn(2, {0, 1e300}, [](std::span<const double> s) { return std::sqrt(s[0] * s[1]); },
                              {false, true, true});
  const AbelianTuple d({HermitianMatrix::diagonal({1, 4}), HermitianMatrix::diagonal({9, 1})});
  const Verdict eq = check_phi_concave_jensen(geo, d, DiagonalState::uniform(2));
  EXPECT_TRUE(eq.passed());
  EXPECT_LE(std::abs(eq.gap), 1e-14);

  // sqrt(x) for x = [[2,1],[1,2]] is (sqrt3 + 1)/2 on the diagonal, against sqrt 2
  const CubeFunction sq_root = fn(1, {0, 1e300}, [](std::span<const double> s) { return std::sqrt(s[0]); },
                                  {false, true, true});
  const Verdict v = check_phi_concave_jensen(sq_root, AbelianTuple({HermitianMatrix::from_rows({{2, 1}, {1, 2}})}),
                                             DiagonalState::uniform(2));
  EXPECT_TRUE(v.passed());
  EXPECT_NEAR(v.lhs, (std::sqrt(3.0) + 1) / 2, 1e-13);
  EXPECT_NEAR(v.rhs, std::sqrt(2.0), 1e-13);
  EXPECT_GT(v.gap, 0.04);
}

TEST(PhiConcaveJensen, GeometricMeanFunctionOnRandomPairs) {
  oracle::Random rnd(61);
  const CubeFunction geo = fn(2, {0, 1e300}, [](std::span<const double> s) { return std::sqrt(s[0] * s[1]); },
                              {false, true, true});
  for (int trial = 0; trial < 500; ++trial) {
    const Eigen::Index dim = rnd.integer(1, 5);
    const TupleField tf = random_tuples(rnd, dim, 1, 2, 0, 2);
    std::vector<double> w(static_cast<std::size_t>(dim));
    for (auto& v : w) v = rnd.uniform(0.1, 1);
    EXPECT_TRUE(check_phi_concave_jensen(geo, tf[0], DiagonalState(w)).passed());
  }
}

TEST(PhiMonotoneChain, Examples) {
  const CubeFunction sq_root = fn(1, {0, 1e300}, [](std::span<const double> s) { return std::sqrt(s[0]); },
                                  {false, true, true});
  const AbelianTuple d({HermitianMatrix::diagonal({1, 2})});
  const Verdict eq = check_phi_monotone_chain(sq_root, d, d, DiagonalState::uniform(2));
  EXPECT_TRUE(eq.passed());
  EXPECT_LE(std::abs(eq.gap), 1e-14);

  const AbelianTuple x({HermitianMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}})});
  const AbelianTuple y({HermitianMatrix::diagonal({1.3, 4.42})});
  EXPECT_TRUE(check_phi_monotone_chain(sq_root, x, y, DiagonalState::uniform(2)).passed());
}

TEST(PhiMonotoneChain, Preconditions) {
  const CubeFunction sq_root = fn(1, {0, 1e300}, [](std::span<const double> s) { return std::sqrt(s[0]); },
                                  {false, true, true});
  const AbelianTuple x({HermitianMatrix::from_rows({{1, 1}, {1, 1}})});
  const AbelianTuple offdiag({HermitianMatrix::from_rows({{3, 0.1}, {0.1, 3}})});
  EXPECT_TRUE(check_phi_monotone_chain(sq_root, x, offdiag, DiagonalState::uniform(2)).invalid());
  const AbelianTuple small({HermitianMatrix::diagonal({0.1, 0.1})});
  EXPECT_TRUE(check_phi_monotone_chain(sq_root, x, small, DiagonalState::uniform(2)).invalid());
}

TEST(PhiJensenField, TrivialFieldAffineEquality) {
  oracle::Random rnd(62);
  const TupleField tf = random_tuples(rnd, 4, 1, 2, -1, 1);
  const Verdict v = check_phi_jensen_field(affine2(), ColumnField::trivial(4), tf, DiagonalState::uniform(4));
  EXPECT_TRUE(v.passed());
  EXPECT_LE(std::abs(v.gap), 1e-9);
}

TEST(PhiJensenField, MaxOnRandomFields) {
  oracle::Random rnd(63);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index dim = rnd.integer(1, 5);
    const std::size_t atoms = static_cast<std::size_t>(rnd.integer(1, 3));
    std::vector<double> w(static_cast<std::size_t>(dim));
    for (auto& v : w) v = rnd.uniform(0.1, 1);
    const Verdict v = check_phi_jensen_field(max2(), random_field(rnd, dim, atoms),
                                             random_tuples(rnd, dim, atoms, 2, -1, 1), DiagonalState(w));
    ASSERT_TRUE(v.passed()) << "trial " << trial;
  }
}

TEST(PhiJensenField, RankOneStateRecoversVectorJensen) {
  oracle::Random rnd(64);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index dim = rnd.integer(2, 5);
    const Eigen::Index s = rnd.integer(0, int(dim) - 1);
    std::vector<double> w(static_cast<std::size_t>(dim), 0.0);
    w[static_cast<std::size_t>(s)] = 1.0;
    const ColumnField f = random_field(rnd, dim, 3);
    const TupleField tf = random_tuples(rnd, dim, 3, 2, -1, 1);
    const Verdict field = check_phi_jensen_field(square_of_sum(), f, tf, DiagonalState(w));
    const Verdict vec = check_jensen_expectation(square_of_sum(), f, tf, basis_vector(dim, s));
    EXPECT_NEAR(field.lhs, vec.lhs, 1e-12);
    EXPECT_NEAR(field.rhs, vec.rhs, 1e-12);
    EXPECT_TRUE(field.passed());
  }
}

TEST(Example1, DefaultTriple) {
  const ExampleReport r = reproduce_example1(1.0, 1.3, 3.4);
  EXPECT_TRUE(r.strict_order);
  EXPECT_TRUE(r.pinching_claim_applies);
  EXPECT_TRUE(r.pinching_fails);
  EXPECT_TRUE(r.trace_identity);
  EXPECT_TRUE(r.trace_strict);
  EXPECT_TRUE(r.middle_chain);
  EXPECT_TRUE(r.all_hold());
  // 2x2 closed form: lambda_min of [[0.3, -1], [-1, 3.42]]
  const double tr = 0.3 + 3.42, det = 0.3 * 3.42 - 1.0;
  EXPECT_NEAR(r.order_margin, tr / 2 - std::sqrt(tr * tr / 4 - det), 1e-13);
  EXPECT_NEAR(r.phi_x_squared(0, 0).real(), 2.0, 1e-15);
  EXPECT_NEAR(r.phi_x_squared(1, 1).real(), 2.0, 1e-15);
  EXPECT_NEAR(r.trace_y2, 1.69 * (1 + 3.4 * 3.4), 1e-12);
}

TEST(Example1, OutsidePinchingRange) {
  const ExampleReport r = reproduce_example1(1.0, 1.5, 10.0);
  EXPECT_FALSE(r.pinching_claim_applies);
  EXPECT_TRUE(r.strict_order);
  EXPECT_TRUE(r.trace_identity);
  EXPECT_TRUE(r.trace_strict);
  EXPECT_TRUE(r.all_hold());
}

TEST(Example1, TraceIdentityForAnyScale) {
  for (double c : {1e-3, 0.2, 1.0, 7.5, 300.0}) {
    const ExampleReport r = reproduce_example1(c, 1.2 * c, 6.0);
    EXPECT_TRUE(r.trace_identity) << c;
    EXPECT_NEAR(r.trace_x2, 4 * c * c, 1e-12 * 4 * c * c);
  }
}

TEST(Example1, ParameterConstraints) {
  EXPECT_THROW(reproduce_example1(0.0, 1.0, 5.0), DomainError);
  EXPECT_THROW(reproduce_example1(1.0, 0.9, 5.0), DomainError);
  EXPECT_THROW(reproduce_example1(1.0, 1.3, 3.3), DomainError);
}
