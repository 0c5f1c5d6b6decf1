#pragma once

#include <limits>
#include <map>
#include <string>

namespace opineq {

enum class Outcome { pass, fail, invalid };

const char* to_string(Outcome o);

/// Result of checking one inequality instance.
///
/// `lhs`, `rhs` and `gap = rhs - lhs` describe the binding comparison (the
/// one with the smallest margin gap + slack); `slack` is the negative
/// tolerance that comparison was allowed.  Invalid verdicts carry the
/// violated precondition in `note` and no meaningful numbers.
struct Verdict {
  Outcome outcome = Outcome::pass;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = std::numeric_limits<double>::infinity();
  double slack = 0.0;
  bool near_equality = false;
  std::string note;
  std::map<std::string, double> audit;

  bool passed() const { return outcome == Outcome::pass; }
  bool failed() const { return outcome == Outcome::fail; }
  bool invalid() const { return outcome == Outcome::invalid; }

  static Verdict make_invalid(std::string reason);
};

// Accumulates comparisons "lhs <= rhs" with slack rtol * scale; the verdict
// fails as soon as one comparison misses by more than its slack.
class VerdictBuilder {
 public:
  explicit VerdictBuilder(double rtol) : rtol_(rtol) {}

  // lhs <= rhs + rtol * scale
  void leq(double lhs, double rhs, double scale);
  // lhs <= rhs with the default scale 1 + |lhs| + |rhs|.
  void leq(double lhs, double rhs);
  // |lhs - rhs| <= abs_tol, recorded with gap rhs - lhs.
  void equal(double lhs, double rhs, double abs_tol);
  // Forces failure with a reason (e.g. a broken internal invariant).
  void fail(std::string reason);
  void audit(const std::string& key, double value) { verdict_.audit[key] = value; }

  Verdict finish() const;

 private:
  void consider(double lhs, double rhs, double slack, bool ok);

  double rtol_;
  bool any_ = false;
  double best_margin_ = std::numeric_limits<double>::infinity();
  Verdict verdict_;
};

}  // namespace opineq
