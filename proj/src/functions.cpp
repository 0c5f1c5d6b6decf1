#include "opineq/functions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace opineq {

namespace {

using Point = std::span<const double>;

constexpr FunctionFlags kConvex{true, false, false};
constexpr FunctionFlags kConvexIncreasing{true, false, true};
constexpr FunctionFlags kConcaveIncreasing{false, true, true};
constexpr FunctionFlags kAffineIncreasing{true, true, true};
constexpr FunctionFlags kIncreasing{false, false, true};

Cube box(std::size_t n, double lo, double hi) { return Cube::uniform(n, Interval{lo, hi}); }

double sum_of(Point s, double (*g)(double)) {
  double acc = 0.0;
  for (double v : s) acc += g(v);
  return acc;
}

std::string describe(Point p) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ")";
  return os.str();
}

}  // namespace

std::vector<CubeFunction> function_library(std::size_t n) {
  std::vector<CubeFunction> lib;
  lib.emplace_back(
      "affine", box(n, -2, 2),
      [](Point s) {
        double acc = 0.25;
        for (std::size_t i = 0; i < s.size(); ++i) acc += s[i] / static_cast<double>(i + 1);
        return acc;
      },
      kAffineIncreasing);
  lib.emplace_back("sum_squares", box(n, -2, 2), [](Point s) { return sum_of(s, [](double v) { return v * v; }); },
                   kConvex);
  lib.emplace_back("max", box(n, -2, 2), [](Point s) { return *std::max_element(s.begin(), s.end()); },
                   kConvexIncreasing);
  lib.emplace_back(
      "square_of_sum", box(n, 0, 2),
      [](Point s) {
        const double t = sum_of(s, [](double v) { return v; });
        return t * t;
      },
      kConvexIncreasing);
  lib.emplace_back("sum_exp", box(n, -2, 2), [](Point s) { return sum_of(s, [](double v) { return std::exp(v); }); },
                   kConvexIncreasing);
  lib.emplace_back("sum_cubes", box(n, 0, 2), [](Point s) { return sum_of(s, [](double v) { return v * v * v; }); },
                   kConvexIncreasing);
  lib.emplace_back(
      "geometric_mean", box(n, 0, 2),
      [](Point s) {
        double prod = 1.0;
        for (double v : s) prod *= v;
        return std::pow(prod, 1.0 / static_cast<double>(s.size()));
      },
      kConcaveIncreasing);
  lib.emplace_back("sum_sqrt", box(n, 0, 2), [](Point s) { return sum_of(s, [](double v) { return std::sqrt(v); }); },
                   kConcaveIncreasing);
  lib.emplace_back("min", box(n, -2, 2), [](Point s) { return *std::min_element(s.begin(), s.end()); },
                   kConcaveIncreasing);
  lib.emplace_back("neg_log_product", box(n, 0.05, 2),
                   [](Point s) { return -sum_of(s, [](double v) { return std::log(v); }); }, kConvex);
  lib.emplace_back(
      "monomial", box(n, 0, 2),
      [](Point s) {
        double prod = 1.0;
        for (std::size_t i = 0; i < s.size(); ++i) prod *= std::pow(s[i], static_cast<double>(i) + 0.5);
        return prod;
      },
      kIncreasing);
  return lib;
}

std::vector<CubeFunction> control_library(std::size_t n) {
  std::vector<CubeFunction> lib;
  lib.emplace_back("sum_squares_declared_concave", box(n, -2, 2),
                   [](Point s) { return sum_of(s, [](double v) { return v * v; }); }, FunctionFlags{false, true, false});
  if (n >= 2) {  // max of one variable is affine, so the label would be true
    lib.emplace_back("max_declared_concave", box(n, -2, 2),
                     [](Point s) { return *std::max_element(s.begin(), s.end()); }, FunctionFlags{false, true, true});
  }
  lib.emplace_back("neg_log_declared_increasing", box(n, 0.05, 2),
                   [](Point s) { return -sum_of(s, [](double v) { return std::log(v); }); },
                   FunctionFlags{true, false, true});
  return lib;
}

CubeFunction find_function(const std::string& name, std::size_t arity) {
  for (auto& f : function_library(arity))
    if (f.name() == name) return f;
  for (auto& f : control_library(arity))
    if (f.name() == name) return f;
  throw ConfigError("unknown function '" + name + "'");
}

FlagAudit verify_flags(const CubeFunction& f, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t n = f.arity();
  std::vector<std::uniform_real_distribution<double>> coord;
  for (const auto& iv : f.domain().intervals()) {
    const double lo = std::isfinite(iv.lo) ? iv.lo : -10.0;
    const double hi = std::isfinite(iv.hi) ? iv.hi : 10.0;
    coord.emplace_back(lo, hi);
  }
  auto draw = [&]() {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = coord[i](rng);
    return p;
  };

  const auto& flags = f.flags();
  for (int k = 0; k < samples; ++k) {
    if (flags.convex || flags.concave) {
      const auto a = draw();
      const auto b = draw();
      std::vector<double> m(n);
      for (std::size_t i = 0; i < n; ++i) m[i] = 0.5 * (a[i] + b[i]);
      const double fm = f(m);
      const double avg = 0.5 * (f(a) + f(b));
      if (flags.convex && fm > avg + 1e-9) {
        return {false, f.name() + " not convex: a=" + describe(a) + " b=" + describe(b)};
      }
      if (flags.concave && fm < avg - 1e-9) {
        return {false, f.name() + " not concave: a=" + describe(a) + " b=" + describe(b)};
      }
    }
    if (flags.separately_increasing) {
      auto p = draw();
      const std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
      double s = coord[i](rng);
      double t = coord[i](rng);
      if (s > t) std::swap(s, t);
      p[i] = s;
      const double low = f(p);
      p[i] = t;
      const double high = f(p);
      if (low > high + 1e-9) {
        return {false, f.name() + " not increasing in coordinate " + std::to_string(i) + " at " + describe(p)};
      }
    }
  }
  return {};
}

}  // namespace opineq
