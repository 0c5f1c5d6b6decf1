#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "opineq/harness.hpp"
#include "opineq/majorization.hpp"
#include "opineq/means.hpp"
#include "opineq/pinching.hpp"
#include "opineq/serialize.hpp"

namespace py = pybind11;
using namespace opineq;

namespace {

Tolerance tol_of(double rtol) {
  Tolerance t;
  t.rtol = rtol;
  t.validate();
  return t;
}

AbelianTuple tuple_of(const std::vector<Matrix>& members, const Tolerance& tol) {
  std::vector<HermitianMatrix> h;
  for (const auto& m : members) h.emplace_back(m);
  return AbelianTuple(std::move(h), tol);
}

py::dict verdict_dict(const Verdict& v) {
  py::dict d;
  d["outcome"] = to_string(v.outcome);
  d["lhs"] = v.lhs;
  d["rhs"] = v.rhs;
  d["gap"] = v.gap;
  d["slack"] = v.slack;
  d["near_equality"] = v.near_equality;
  d["note"] = v.note;
  d["audit"] = v.audit;
  return d;
}

}  // namespace

PYBIND11_MODULE(_opineq, m) {
  m.doc() = "Operator inequality checks for commuting Hermitian tuples";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def(
      "eigh",
      [](const Matrix& a) {
        const EigenSystem es = eig_hermitian(HermitianMatrix(a));
        return py::make_tuple(es.eigenvalues, es.basis);
      },
      py::arg("a"), "Eigenvalues (descending) and eigenvectors of the Hermitian part of a.");

  m.def(
      "is_psd", [](const Matrix& a, double rtol) { return is_psd(HermitianMatrix(a), tol_of(rtol)); }, py::arg("a"),
      py::arg("rtol") = 1e-9);

  m.def(
      "loewner_leq",
      [](const Matrix& x, const Matrix& y, double rtol) {
        return loewner_leq(HermitianMatrix(x), HermitianMatrix(y), tol_of(rtol));
      },
      py::arg("x"), py::arg("y"), py::arg("rtol") = 1e-9);

  m.def(
      "matrix_power",
      [](const Matrix& a, double p, double rtol) { return matrix_power(HermitianMatrix(a), p, tol_of(rtol)).matrix(); },
      py::arg("a"), py::arg("p"), py::arg("rtol") = 1e-9);

  m.def(
      "geometric_mean",
      [](const Matrix& x, const Matrix& y, double rtol) {
        return geometric_mean(HermitianMatrix(x), HermitianMatrix(y), tol_of(rtol)).matrix();
      },
      py::arg("x"), py::arg("y"), py::arg("rtol") = 1e-9);

  m.def(
      "geometric_mean_quadrature",
      [](const Matrix& x, const Matrix& y, int nodes) {
        Tolerance t;
        t.quadrature_nodes = nodes;
        return geometric_mean_quadrature(HermitianMatrix(x), HermitianMatrix(y), t).matrix();
      },
      py::arg("x"), py::arg("y"), py::arg("nodes") = 128);

  m.def(
      "partial_sums", [](const Matrix& a) { return partial_sums(HermitianMatrix(a)).sums; }, py::arg("a"));

  m.def(
      "weak_majorize",
      [](const Matrix& a, const Matrix& b, double rtol) {
        return weak_majorize(HermitianMatrix(a), HermitianMatrix(b), tol_of(rtol));
      },
      py::arg("a"), py::arg("b"), py::arg("rtol") = 1e-9);

  m.def(
      "kyfan_check",
      [](const Matrix& a, const Matrix& frame, double rtol) {
        return verdict_dict(kyfan_check(HermitianMatrix(a), frame, tol_of(rtol)));
      },
      py::arg("a"), py::arg("frame"), py::arg("rtol") = 1e-9);

  m.def(
      "pinch",
      [](const std::vector<double>& rho, const Matrix& a) {
        const DiagonalFunction d = pinch(DiagonalState(rho), HermitianMatrix(a));
        return py::make_tuple(d.values, d.undefined);
      },
      py::arg("rho"), py::arg("a"));

  m.def(
      "check_trace_power_monotone",
      [](const std::vector<Matrix>& x, const std::vector<Matrix>& y, const std::vector<double>& exponents,
         const std::vector<double>& rho, double rtol) {
        const Tolerance t = tol_of(rtol);
        return verdict_dict(
            check_trace_power_monotone(tuple_of(x, t), tuple_of(y, t), exponents, DiagonalState(rho), t));
      },
      py::arg("x"), py::arg("y"), py::arg("exponents"), py::arg("rho"), py::arg("rtol") = 1e-9);

  m.def(
      "apply_function",
      [](const std::string& name, const std::vector<Matrix>& x, double rtol) {
        const Tolerance t = tol_of(rtol);
        const AbelianTuple tuple = tuple_of(x, t);
        return apply_cube_function(find_function(name, tuple.arity()), tuple, t).matrix();
      },
      py::arg("name"), py::arg("x"), py::arg("rtol") = 1e-9, "f(x1, ..., xn) for a library function and commuting tuple.");

  m.def(
      "reproduce_example1",
      [](double c, double t, double lambda) {
        const ExampleReport r = reproduce_example1(c, t, lambda);
        py::dict d;
        d["x"] = r.x.matrix();
        d["y"] = r.y.matrix();
        d["phi_x_squared"] = r.phi_x_squared.matrix();
        d["y_squared"] = r.y_squared.matrix();
        d["order_margin"] = r.order_margin;
        d["strict_order"] = r.strict_order;
        d["pinching_fails"] = r.pinching_fails;
        d["trace_x2"] = r.trace_x2;
        d["trace_y2"] = r.trace_y2;
        d["trace_identity"] = r.trace_identity;
        d["trace_strict"] = r.trace_strict;
        d["middle_bound"] = r.middle_bound;
        d["all_hold"] = r.all_hold();
        return d;
      },
      py::arg("c") = 1.0, py::arg("t") = 1.3, py::arg("lambda_") = 3.4);

  m.def("function_names", [] {
    std::vector<std::string> names;
    for (const auto& f : function_library(1)) names.push_back(f.name());
    return names;
  });

  m.def(
      "run_campaign_json",
      [](const std::string& theorem, std::optional<std::size_t> count, std::uint64_t seed,
         std::optional<std::string> dim, std::optional<std::string> arity, bool include_timing) {
        CampaignConfig cfg = default_config(parse_theorem(theorem));
        if (count) cfg.count = *count;
        cfg.seed = seed;
        if (dim) cfg.dim = parse_range(*dim);
        if (arity) cfg.arity = parse_range(*arity);
        CampaignReport report;
        {
          py::gil_scoped_release release;
          report = run_campaign(cfg);
        }
        return dump_report(report, include_timing);
      },
      py::arg("theorem"), py::arg("count") = py::none(), py::arg("seed") = kDefaultSeed, py::arg("dim") = py::none(),
      py::arg("arity") = py::none(), py::arg("include_timing") = true);

  m.attr("DEFAULT_SEED") = kDefaultSeed;
}
