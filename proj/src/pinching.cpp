#include "opineq/pinching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace opineq {

namespace {

// Shape checks shared by every field-based operation; returns an empty
// string when the fields line up.
std::string field_mismatch(const ColumnField& field, const TupleField& tf) {
  if (tf.size() != field.size()) return "tuple field and column field have different lengths";
  for (const auto& t : tf) {
    if (t.arity() != tf.front().arity()) return "tuple field atoms have different arities";
    if (t.dim() != field.dim()) return "tuple field atom dimension differs from the column field";
  }
  return {};
}

std::string domain_violation(const CubeFunction& f, const AbelianTuple& t, const Tolerance& tol) {
  if (t.arity() != f.arity()) return "arity of f does not match the tuple";
  if (!spectrum_in_cube(t, f.domain(), tol)) return "tuple spectrum outside the domain of " + f.name();
  return {};
}

bool is_unit(const Vector& xi, const Tolerance& tol) { return std::abs(xi.norm() - 1.0) <= std::max(tol.rtol, 1e-12); }

std::vector<double> diagonal_point(std::span<const HermitianMatrix> members, Eigen::Index s) {
  std::vector<double> p;
  p.reserve(members.size());
  for (const auto& m : members) p.push_back(m(s, s).real());
  return p;
}

}  // namespace

bool DiagonalFunction::defined_at(std::size_t s) const {
  return std::find(undefined.begin(), undefined.end(), s) == undefined.end();
}

DiagonalFunction pinch(const DiagonalState& rho, const HermitianMatrix& a) {
  if (a.dim() != rho.dim()) throw DimensionError("pinch: dimension mismatch");
  DiagonalFunction out;
  out.values.resize(static_cast<std::size_t>(a.dim()));
  for (Eigen::Index s = 0; s < a.dim(); ++s) {
    const auto idx = static_cast<std::size_t>(s);
    if (rho.weight(idx) > 0.0) {
      out.values[idx] = a(s, s).real();
    } else {
      out.values[idx] = 0.0;
      out.undefined.push_back(idx);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Column fields

ColumnField::ColumnField(std::vector<FieldAtom> atoms, const Tolerance& tol) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw DimensionError("column field needs at least one atom");
  const Eigen::Index m = atoms_.front().a.rows();
  for (const auto& atom : atoms_) {
    if (atom.a.rows() != m || atom.a.cols() != m) throw DimensionError("column field atoms must be square of one size");
    if (!(atom.weight > 0.0) || !std::isfinite(atom.weight)) throw DomainError("column field weights must be positive");
  }
  const double defect = unitality_defect();
  if (!(defect <= tol.rtol * static_cast<double>(atoms_.size()))) {
    throw DomainError("column field is not unital (defect " + std::to_string(defect) + ")");
  }
}

ColumnField ColumnField::normalized(std::vector<double> weights, std::vector<Matrix> bs) {
  if (weights.size() != bs.size() || bs.empty()) throw DimensionError("normalized: weights and atoms misaligned");
  const Eigen::Index m = bs.front().rows();
  Matrix s = Matrix::Zero(m, m);
  for (std::size_t t = 0; t < bs.size(); ++t) {
    if (bs[t].rows() != m || bs[t].cols() != m) throw DimensionError("normalized: atoms must be square of one size");
    s += weights[t] * bs[t].adjoint() * bs[t];
  }
  const HermitianMatrix inv_root = hermitian_function(
      HermitianMatrix(s),
      [](double v) { return v > 0.0 ? 1.0 / std::sqrt(v) : std::numeric_limits<double>::infinity(); },
      Interval{0.0, std::numeric_limits<double>::infinity()}, Tolerance{0.0});
  std::vector<FieldAtom> atoms;
  atoms.reserve(bs.size());
  for (std::size_t t = 0; t < bs.size(); ++t) atoms.push_back({weights[t], Matrix(bs[t] * inv_root.matrix())});
  return ColumnField(std::move(atoms));
}

ColumnField ColumnField::trivial(Eigen::Index dim) { return ColumnField({FieldAtom{1.0, Matrix::Identity(dim, dim)}}); }

double ColumnField::unitality_defect() const {
  const Eigen::Index m = dim();
  Matrix s = -Matrix::Identity(m, m);
  for (const auto& atom : atoms_) s += atom.weight * atom.a.adjoint() * atom.a;
  return s.norm();
}

HermitianMatrix ColumnField::compress(std::span<const HermitianMatrix> per_atom) const {
  if (per_atom.size() != atoms_.size()) throw DimensionError("compress: one matrix per atom required");
  Matrix sum = Matrix::Zero(dim(), dim());
  for (std::size_t t = 0; t < atoms_.size(); ++t) {
    if (per_atom[t].dim() != dim()) throw DimensionError("compress: dimension mismatch");
    sum += atoms_[t].weight * atoms_[t].a.adjoint() * per_atom[t].matrix() * atoms_[t].a;
  }
  return HermitianMatrix(sum);
}

Compression compress(const ColumnField& field, const TupleField& tf, const Tolerance& tol) {
  if (const auto why = field_mismatch(field, tf); !why.empty()) throw DimensionError("compress: " + why);
  Compression out;
  const std::size_t n = tf.front().arity();
  std::vector<HermitianMatrix> column(tf.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < tf.size(); ++t) column[t] = tf[t][i];
    out.members.push_back(field.compress(column));
  }
  out.abelian = check_commuting(out.members, tol);
  return out;
}

HermitianMatrix compress_function(const CubeFunction& f, const ColumnField& field, const TupleField& tf,
                                  const Tolerance& tol) {
  if (const auto why = field_mismatch(field, tf); !why.empty()) throw DimensionError("compress_function: " + why);
  std::vector<HermitianMatrix> values;
  values.reserve(tf.size());
  for (const auto& t : tf) values.push_back(apply_cube_function(f, t, tol));
  return field.compress(values);
}

// ---------------------------------------------------------------------------
// mu_xi

double SpectralMeasure::total_mass() const {
  double s = 0.0;
  for (double m : masses) s += m;
  return s;
}

double SpectralMeasure::integrate(const std::function<double(std::span<const double>)>& g) const {
  double s = 0.0;
  for (std::size_t k = 0; k < support.size(); ++k) s += masses[k] * g(support[k]);
  return s;
}

double SpectralMeasure::moment(std::size_t i) const {
  double s = 0.0;
  for (std::size_t k = 0; k < support.size(); ++k) s += masses[k] * support[k][i];
  return s;
}

SpectralMeasure build_mu_xi(const ColumnField& field, const TupleField& tf, const Vector& xi, const Tolerance& tol) {
  if (const auto why = field_mismatch(field, tf); !why.empty()) throw DimensionError("build_mu_xi: " + why);
  if (xi.size() != field.dim()) throw DimensionError("build_mu_xi: xi has the wrong length");
  if (!is_unit(xi, tol)) throw DomainError("build_mu_xi: xi is not a unit vector");
  SpectralMeasure mu;
  for (std::size_t t = 0; t < tf.size(); ++t) {
    const JointSpectrum js = joint_diagonalize(tf[t], tol);
    const Vector coeffs = js.basis.adjoint() * (field[t].a * xi);
    for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
      mu.support.push_back(js.points[static_cast<std::size_t>(j)]);
      mu.masses.push_back(field[t].weight * std::norm(coeffs(j)));
    }
  }
  return mu;
}

// ---------------------------------------------------------------------------
// Jensen-type checks

Verdict check_jensen_expectation(const CubeFunction& f, const ColumnField& field, const TupleField& tf,
                                 const Vector& xi, const Tolerance& tol) {
  if (!f.flags().convex) return Verdict::make_invalid(f.name() + " is not flagged convex");
  if (const auto why = field_mismatch(field, tf); !why.empty()) return Verdict::make_invalid(why);
  if (xi.size() != field.dim() || !is_unit(xi, tol)) return Verdict::make_invalid("xi is not a unit vector of the right length");
  for (const auto& t : tf) {
    if (const auto why = domain_violation(f, t, tol); !why.empty()) return Verdict::make_invalid(why);
  }

  const Compression y = compress(field, tf, tol);
  std::vector<double> point;
  for (const auto& yi : y.members) point.push_back(yi.expectation(xi));
  const double lhs = f(f.domain().clamp(point));
  const double rhs = compress_function(f, field, tf, tol).expectation(xi);

  const SpectralMeasure mu = build_mu_xi(field, tf, xi, tol);
  const double middle = mu.integrate([&f](std::span<const double> s) { return f(f.domain().clamp(s)); });
  double moment_defect = 0.0;
  for (std::size_t i = 0; i < point.size(); ++i) moment_defect = std::max(moment_defect, std::abs(mu.moment(i) - point[i]));

  VerdictBuilder vb(tol.rtol);
  vb.leq(lhs, rhs);
  vb.audit("mu_mass", mu.total_mass());
  vb.audit("mu_integral", middle);
  vb.audit("moment_defect", moment_defect);
  vb.audit("representation_defect", std::abs(middle - rhs));
  return vb.finish();
}

Verdict check_mond_pecaric(const CubeFunction& f, const AbelianTuple& t, const Vector& xi, const Tolerance& tol) {
  if (!f.flags().convex) return Verdict::make_invalid(f.name() + " is not flagged convex");
  if (xi.size() != t.dim() || !is_unit(xi, tol)) return Verdict::make_invalid("xi is not a unit vector of the right length");
  if (const auto why = domain_violation(f, t, tol); !why.empty()) return Verdict::make_invalid(why);
  std::vector<double> point;
  for (const auto& x : t.members()) point.push_back(x.expectation(xi));
  const double lhs = f(f.domain().clamp(point));
  const double rhs = apply_cube_function(f, t, tol).expectation(xi);
  VerdictBuilder vb(tol.rtol);
  vb.leq(lhs, rhs);
  return vb.finish();
}

Verdict check_phi_concave_jensen(const CubeFunction& f, const AbelianTuple& t, const DiagonalState& rho,
                                 const Tolerance& tol) {
  if (!f.flags().concave) return Verdict::make_invalid(f.name() + " is not flagged concave");
  if (t.dim() != rho.dim()) return Verdict::make_invalid("dimension mismatch");
  if (const auto why = domain_violation(f, t, tol); !why.empty()) return Verdict::make_invalid(why);

  const DiagonalFunction lhs = pinch(rho, apply_cube_function(f, t, tol));
  VerdictBuilder vb(tol.rtol);
  for (Eigen::Index s = 0; s < t.dim(); ++s) {
    const auto idx = static_cast<std::size_t>(s);
    if (!lhs.defined_at(idx)) continue;
    const double rhs = f(f.domain().clamp(diagonal_point(t.members(), s)));
    vb.leq(lhs.values[idx], rhs);
  }
  return vb.finish();
}

Verdict check_phi_monotone_chain(const CubeFunction& f, const AbelianTuple& x, const AbelianTuple& y,
                                 const DiagonalState& rho, const Tolerance& tol) {
  if (!f.flags().concave || !f.flags().separately_increasing) {
    return Verdict::make_invalid(f.name() + " is not flagged concave and separately increasing");
  }
  if (x.arity() != y.arity()) return Verdict::make_invalid("arity mismatch");
  if (x.dim() != y.dim() || x.dim() != rho.dim()) return Verdict::make_invalid("dimension mismatch");
  for (std::size_t i = 0; i < y.arity(); ++i) {
    if (y[i].off_diagonal_norm() > tol.rtol * (1.0 + op_norm(y[i]))) {
      return Verdict::make_invalid("y member " + std::to_string(i) + " is not diagonal");
    }
    if (!loewner_leq(x[i], y[i], tol)) return Verdict::make_invalid("x <= y fails at member " + std::to_string(i));
  }
  if (const auto why = domain_violation(f, x, tol); !why.empty()) return Verdict::make_invalid(why);
  if (const auto why = domain_violation(f, y, tol); !why.empty()) return Verdict::make_invalid(why);

  const HermitianMatrix fx = apply_cube_function(f, x, tol);
  const HermitianMatrix fy = apply_cube_function(f, y, tol);
  const DiagonalFunction phi_fx = pinch(rho, fx);
  VerdictBuilder vb(tol.rtol);
  for (Eigen::Index s = 0; s < x.dim(); ++s) {
    const auto idx = static_cast<std::size_t>(s);
    if (!phi_fx.defined_at(idx)) continue;
    const double f_phi_x = f(f.domain().clamp(diagonal_point(x.members(), s)));
    const double f_phi_y = f(f.domain().clamp(diagonal_point(y.members(), s)));
    const double fy_s = fy(s, s).real();
    vb.leq(phi_fx.values[idx], f_phi_x);
    vb.leq(f_phi_x, f_phi_y);
    vb.equal(f_phi_y, fy_s, tol.rtol * (1.0 + std::abs(f_phi_y) + std::abs(fy_s)));
  }
  vb.leq(state_trace(rho, fx), state_trace(rho, fy));
  return vb.finish();
}

Verdict check_phi_jensen_field(const CubeFunction& f, const ColumnField& field, const TupleField& tf,
                               const DiagonalState& rho, const Tolerance& tol) {
  if (!f.flags().convex) return Verdict::make_invalid(f.name() + " is not flagged convex");
  if (const auto why = field_mismatch(field, tf); !why.empty()) return Verdict::make_invalid(why);
  if (rho.dim() != field.dim()) return Verdict::make_invalid("dimension mismatch");
  for (const auto& t : tf) {
    if (const auto why = domain_violation(f, t, tol); !why.empty()) return Verdict::make_invalid(why);
  }
  const Compression y = compress(field, tf, tol);
  const DiagonalFunction rhs = pinch(rho, compress_function(f, field, tf, tol));
  VerdictBuilder vb(tol.rtol);
  for (Eigen::Index s = 0; s < field.dim(); ++s) {
    const auto idx = static_cast<std::size_t>(s);
    if (!rhs.defined_at(idx)) continue;
    const double lhs = f(f.domain().clamp(diagonal_point(y.members, s)));
    vb.leq(lhs, rhs.values[idx]);
  }
  return vb.finish();
}

// ---------------------------------------------------------------------------
// The 2x2 counterexample

bool ExampleReport::all_hold() const {
  return strict_order && (!pinching_claim_applies || pinching_fails) && trace_identity && trace_strict;
}

ExampleReport reproduce_example1(double c, double t, double lambda, const Tolerance& tol) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("example: c must be positive");
  if (!(t > c) || !std::isfinite(t)) throw DomainError("example: t must exceed c");
  if (!(lambda > c / (t - c)) || !std::isfinite(lambda)) throw DomainError("example: lambda must exceed c/(t-c)");

  ExampleReport r;
  r.c = c;
  r.t = t;
  r.lambda = lambda;
  r.x = HermitianMatrix::from_rows({{c, c}, {c, c}});
  r.y = HermitianMatrix::diagonal({t, lambda * t});
  r.x_squared = HermitianMatrix(Matrix(r.x.matrix() * r.x.matrix()));
  r.y_squared = HermitianMatrix(Matrix(r.y.matrix() * r.y.matrix()));
  r.phi_x_squared = HermitianMatrix::diagonal(pinch(DiagonalState::uniform(2), r.x_squared).values);

  const HermitianMatrix diff = r.y - r.x;
  r.order_margin = lambda_min(diff);
  r.strict_order = r.order_margin > tol.rtol * (1.0 + op_norm(diff));

  r.pinching_claim_applies = t < c * std::sqrt(2.0);
  r.pinching_fails = !loewner_leq(r.phi_x_squared, r.y_squared, tol);

  r.trace_x2 = r.x_squared.trace();
  r.trace_y2 = r.y_squared.trace();
  r.trace_identity = std::abs(r.trace_x2 - 4.0 * c * c) <= 1e-12 * std::max(1.0, 4.0 * c * c);
  r.trace_strict = r.trace_x2 < r.trace_y2;
  r.middle_bound = t * t * (1.0 + c * c / ((t - c) * (t - c)));
  r.middle_chain = r.trace_x2 < r.middle_bound && r.middle_bound <= r.trace_y2 * (1.0 + tol.rtol);
  return r;
}

}  // namespace opineq
