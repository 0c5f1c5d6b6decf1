#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "opineq/functions.hpp"

using namespace opineq;

TEST(FunctionLibrary, FlagsPassAudit) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& f : function_library(n)) {
      EXPECT_EQ(f.arity(), n);
      const FlagAudit a = verify_flags(f);
      EXPECT_TRUE(a.ok) << f.name() << " at arity " << n << ": " << a.witness;
    }
  }
}

TEST(FunctionLibrary, ControlsAreRejected) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto controls = control_library(n);
    EXPECT_FALSE(controls.empty());
    for (const auto& f : controls) {
      const FlagAudit a = verify_flags(f);
      EXPECT_FALSE(a.ok) << f.name() << " at arity " << n;
      EXPECT_FALSE(a.witness.empty());
    }
  }
}

TEST(FunctionLibrary, NamesAreUnique) {
  std::set<std::string> names;
  for (const auto& f : function_library(3)) EXPECT_TRUE(names.insert(f.name()).second) << f.name();
  for (const auto& f : control_library(3)) EXPECT_TRUE(names.insert(f.name()).second) << f.name();
}

TEST(FunctionLibrary, SquareDeclaredConcaveHasWitness) {
  const CubeFunction sq("square_as_concave", Cube::uniform(1, {-2, 2}),
                        [](std::span<const double> s) { return s[0] * s[0]; }, {false, true, false});
  const FlagAudit a = verify_flags(sq);
  EXPECT_FALSE(a.ok);
  EXPECT_NE(a.witness.find("concav"), std::string::npos) << a.witness;
}

TEST(FunctionLibrary, GeometricMeanIncreasingOnPositiveBox) {
  const CubeFunction g("root_product", Cube::uniform(2, {0.1, 2}),
                       [](std::span<const double> s) { return std::sqrt(s[0] * s[1]); }, {false, true, true});
  EXPECT_TRUE(verify_flags(g).ok);
}

TEST(FunctionLibrary, DecreasingDeclaredIncreasingIsCaught) {
  const CubeFunction g("neg", Cube::uniform(2, {0, 1}), [](std::span<const double> s) { return -s[0] - s[1]; },
                       {true, true, true});
  EXPECT_FALSE(verify_flags(g).ok);
}

TEST(FunctionLibrary, AuditIsDeterministic) {
  const auto lib = control_library(2);
  for (const auto& f : lib) EXPECT_EQ(verify_flags(f, 500, 9).witness, verify_flags(f, 500, 9).witness);
}

TEST(FunctionLibrary, ValuesAtKnownPoints) {
  EXPECT_DOUBLE_EQ(find_function("sum_squares", 2)({1, -2}), 5.0);
  EXPECT_DOUBLE_EQ(find_function("max", 3)({1, -2, 0.5}), 1.0);
  EXPECT_DOUBLE_EQ(find_function("min", 3)({1, -2, 0.5}), -2.0);
  EXPECT_DOUBLE_EQ(find_function("square_of_sum", 2)({1, 0.5}), 2.25);
  EXPECT_NEAR(find_function("geometric_mean", 2)({1, 4}), 2.0, 1e-15);
  EXPECT_NEAR(find_function("geometric_mean", 3)({1, 2, 4}), 2.0, 1e-15);
  EXPECT_NEAR(find_function("neg_log_product", 2)({1, std::exp(-1.0) * 2}), 1.0 - std::log(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(find_function("affine", 2)({1, 2}), 0.25 + 1.0 + 1.0);
}

TEST(FunctionLibrary, ControlsResolveByName) {
  EXPECT_NO_THROW(find_function("sum_squares_declared_concave", 2));
  EXPECT_THROW(find_function("no_such_function", 2), ConfigError);
}

TEST(CubeFunction, EvaluationRequiresMatchingArity) {
  const CubeFunction f = find_function("sum_squares", 2);
  EXPECT_THROW(f({1.0}), DimensionError);
}

TEST(CubeFunction, AffineMeansBothFlags) {
  EXPECT_TRUE(find_function("affine", 2).is_affine());
  EXPECT_FALSE(find_function("sum_squares", 2).is_affine());
}
