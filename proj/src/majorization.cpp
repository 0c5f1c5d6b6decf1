#include "opineq/majorization.hpp"

#include <cmath>
#include <string>

namespace opineq {

PartialSums partial_sums(const HermitianMatrix& a) {
  const auto ev = eigenvalues(a);
  PartialSums ps;
  double s = 0.0, abs_s = 0.0;
  for (double lam : ev) {
    s += lam;
    abs_s += std::abs(lam);
    ps.sums.push_back(s);
    ps.abs_sums.push_back(abs_s);
  }
  return ps;
}

Verdict weak_majorize_verdict(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol) {
  if (a.dim() != b.dim()) throw DimensionError("weak_majorize: dimension mismatch");
  const PartialSums pa = partial_sums(a);
  const PartialSums pb = partial_sums(b);
  VerdictBuilder vb(tol.rtol);
  for (std::size_t k = 0; k < pa.sums.size(); ++k) {
    vb.leq(pa.sums[k], pb.sums[k], 1.0 + pa.abs_sums[k] + pb.abs_sums[k]);
  }
  return vb.finish();
}

bool weak_majorize(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol) {
  return weak_majorize_verdict(a, b, tol).passed();
}

Verdict kyfan_check(const HermitianMatrix& a, const Matrix& frame, const Tolerance& tol) {
  const Eigen::Index k = frame.cols();
  if (frame.rows() != a.dim() || k < 1 || k > a.dim()) return Verdict::make_invalid("frame has the wrong shape");
  const double defect = (frame.adjoint() * frame - Matrix::Identity(k, k)).norm();
  if (defect > std::max(tol.rtol, 1e-12) * static_cast<double>(k)) {
    return Verdict::make_invalid("frame is not orthonormal");
  }
  const double lhs = (frame.adjoint() * a.matrix() * frame).trace().real();
  const PartialSums ps = partial_sums(a);
  const auto idx = static_cast<std::size_t>(k - 1);
  VerdictBuilder vb(tol.rtol);
  vb.leq(lhs, ps.sums[idx], 1.0 + ps.abs_sums[idx] + std::abs(lhs));
  vb.audit("k", static_cast<double>(k));
  return vb.finish();
}

Verdict check_thm5(const CubeFunction& f, const ColumnField& field, const TupleField& tf, const Tolerance& tol) {
  if (!f.flags().convex) return Verdict::make_invalid(f.name() + " is not flagged convex");
  if (tf.size() != field.size()) return Verdict::make_invalid("tuple field and column field are misaligned");
  for (const auto& t : tf) {
    if (t.arity() != f.arity() || t.dim() != field.dim()) return Verdict::make_invalid("tuple field shape mismatch");
    if (!spectrum_in_cube(t, f.domain(), tol)) return Verdict::make_invalid("tuple spectrum outside the domain");
  }
  const Compression y = compress(field, tf, tol);
  if (f.arity() > 1 && !y.abelian) return Verdict::make_invalid("compressed tuple is not abelian");
  const AbelianTuple yt(y.members, tol);
  if (!spectrum_in_cube(yt, f.domain(), tol)) return Verdict::make_invalid("compressed tuple outside the domain");
  return weak_majorize_verdict(apply_cube_function(f, yt, tol), compress_function(f, field, tf, tol), tol);
}

Verdict check_corollary(const CubeFunction& f, const AbelianTuple& x, const AbelianTuple& y, double lambda,
                        const Tolerance& tol) {
  if (!f.flags().convex) return Verdict::make_invalid(f.name() + " is not flagged convex");
  if (!(lambda >= 0.0 && lambda <= 1.0)) return Verdict::make_invalid("lambda outside [0, 1]");
  if (x.arity() != y.arity() || x.arity() != f.arity()) return Verdict::make_invalid("arity mismatch");
  if (x.dim() != y.dim()) return Verdict::make_invalid("dimension mismatch");
  if (!check_compatible(x, y, tol)) return Verdict::make_invalid("tuples are not compatible");
  if (!spectrum_in_cube(x, f.domain(), tol) || !spectrum_in_cube(y, f.domain(), tol)) {
    return Verdict::make_invalid("tuple spectrum outside the domain");
  }
  std::vector<HermitianMatrix> mix;
  for (std::size_t i = 0; i < x.arity(); ++i) mix.push_back(x[i] * lambda + y[i] * (1.0 - lambda));
  if (!check_commuting(mix, tol)) return Verdict::make_invalid("convex combination is not abelian at tolerance");
  const AbelianTuple mt(std::move(mix), tol);
  const HermitianMatrix lhs = apply_cube_function(f, mt, tol);
  const HermitianMatrix rhs = apply_cube_function(f, x, tol) * lambda + apply_cube_function(f, y, tol) * (1.0 - lambda);
  Verdict v = weak_majorize_verdict(lhs, rhs, tol);
  v.audit["lambda"] = lambda;
  return v;
}

Verdict check_thm6(const CubeFunction& f, const AbelianTuple& x, const AbelianTuple& y, const Tolerance& tol) {
  if (!f.flags().convex || !f.flags().separately_increasing) {
    return Verdict::make_invalid(f.name() + " is not flagged convex and separately increasing");
  }
  if (x.arity() != y.arity() || x.arity() != f.arity()) return Verdict::make_invalid("arity mismatch");
  if (x.dim() != y.dim()) return Verdict::make_invalid("dimension mismatch");
  for (std::size_t i = 0; i < x.arity(); ++i) {
    if (!loewner_leq(x[i], y[i], tol)) return Verdict::make_invalid("x <= y fails at member " + std::to_string(i));
  }
  if (!spectrum_in_cube(x, f.domain(), tol) || !spectrum_in_cube(y, f.domain(), tol)) {
    return Verdict::make_invalid("tuple spectrum outside the domain");
  }
  return weak_majorize_verdict(apply_cube_function(f, x, tol), apply_cube_function(f, y, tol), tol);
}

}  // namespace opineq
