#include "opineq/verdict.hpp"

#include <cmath>

namespace opineq {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::invalid: return "invalid";
  }
  return "unknown";
}

Verdict Verdict::make_invalid(std::string reason) {
  Verdict v;
  v.outcome = Outcome::invalid;
  v.gap = 0.0;
  v.note = std::move(reason);
  return v;
}

void VerdictBuilder::consider(double lhs, double rhs, double slack, bool ok) {
  const double gap = rhs - lhs;
  const double margin = gap + slack;
  // NaN margins count as failures and always bind.
  if (!any_ || !(margin >= best_margin_)) {
    any_ = true;
    best_margin_ = std::isnan(margin) ? -std::numeric_limits<double>::infinity() : margin;
    verdict_.lhs = lhs;
    verdict_.rhs = rhs;
    verdict_.gap = gap;
    verdict_.slack = slack;
    verdict_.near_equality = std::abs(gap) <= 10.0 * slack;
  }
  if (!ok && verdict_.outcome == Outcome::pass) verdict_.outcome = Outcome::fail;
}

void VerdictBuilder::leq(double lhs, double rhs, double scale) {
  const double slack = rtol_ * scale;
  consider(lhs, rhs, slack, lhs <= rhs + slack);
}

void VerdictBuilder::leq(double lhs, double rhs) { leq(lhs, rhs, 1.0 + std::abs(lhs) + std::abs(rhs)); }

void VerdictBuilder::equal(double lhs, double rhs, double abs_tol) {
  const bool ok = std::abs(rhs - lhs) <= abs_tol;
  // Equality links bind by their distance from the tolerance boundary.
  const double gap = rhs - lhs;
  const double margin = abs_tol - std::abs(gap);
  if (!any_ || !(margin >= best_margin_)) {
    any_ = true;
    best_margin_ = std::isnan(margin) ? -std::numeric_limits<double>::infinity() : margin;
    verdict_.lhs = lhs;
    verdict_.rhs = rhs;
    verdict_.gap = gap;
    verdict_.slack = abs_tol;
    verdict_.near_equality = true;
  }
  if (!ok && verdict_.outcome == Outcome::pass) verdict_.outcome = Outcome::fail;
}

void VerdictBuilder::fail(std::string reason) {
  verdict_.outcome = Outcome::fail;
  if (!verdict_.note.empty()) verdict_.note += "; ";
  verdict_.note += reason;
}

Verdict VerdictBuilder::finish() const { return verdict_; }

}  // namespace opineq
