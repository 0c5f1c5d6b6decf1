#include "opineq/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <charconv>
#include <cmath>
#include <numeric>
#include <thread>

#include "opineq/majorization.hpp"
#include "opineq/means.hpp"
#include "opineq/pinching.hpp"

namespace opineq {

namespace {

struct TheoremInfo {
  TheoremId id;
  const char* name;
};

constexpr std::array<TheoremInfo, 14> kTheorems{{
    {TheoremId::T1, "T1"},
    {TheoremId::T2, "T2"},
    {TheoremId::T3, "T3"},
    {TheoremId::T4, "T4"},
    {TheoremId::T5, "T5"},
    {TheoremId::T6, "T6"},
    {TheoremId::COR, "COR"},
    {TheoremId::LH, "LH"},
    {TheoremId::KF, "KF"},
    {TheoremId::EX1, "EX1"},
    {TheoremId::CHAIN, "CHAIN"},
    {TheoremId::MONO, "MONO"},
    {TheoremId::MP, "MP"},
    {TheoremId::TM1, "TM1"},
}};

constexpr std::array<double, 5> kHeinzExponents{0.0, 0.25, 0.5, 0.75, 1.0};

// Which declared flags a theorem needs from its function; nullopt when the
// theorem takes no function.
struct FunctionNeed {
  bool convex = false;
  bool concave = false;
  bool increasing = false;
};

std::optional<FunctionNeed> function_need(TheoremId id) {
  switch (id) {
    case TheoremId::T1: return FunctionNeed{false, true, false};
    case TheoremId::MONO: return FunctionNeed{false, true, true};
    case TheoremId::T3:
    case TheoremId::T4:
    case TheoremId::T5:
    case TheoremId::COR:
    case TheoremId::MP: return FunctionNeed{true, false, false};
    case TheoremId::T6: return FunctionNeed{true, false, true};
    case TheoremId::TM1: return FunctionNeed{false, false, true};
    default: return std::nullopt;
  }
}

bool satisfies(const FunctionFlags& flags, const FunctionNeed& need) {
  return (!need.convex || flags.convex) && (!need.concave || flags.concave) &&
         (!need.increasing || flags.separately_increasing);
}

std::vector<std::string> eligible_functions(const CampaignConfig& cfg) {
  if (!cfg.functions.empty()) return cfg.functions;
  std::vector<std::string> names;
  const auto need = function_need(cfg.theorem);
  if (!need) return names;
  for (const auto& f : function_library(1))
    if (satisfies(f.flags(), *need)) names.push_back(f.name());
  return names;
}

Eigen::Index draw_dim(Rng& rng, const Range& r) {
  return static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::size_t>(r.lo), static_cast<std::size_t>(r.hi)));
}

std::size_t draw_arity(Rng& rng, const Range& r) {
  return uniform_index(rng, static_cast<std::size_t>(r.lo), static_cast<std::size_t>(r.hi));
}

std::vector<Matrix> to_list(const AbelianTuple& t) {
  std::vector<Matrix> out;
  for (const auto& m : t.members()) out.push_back(m.matrix());
  return out;
}

void store_field(Instance& inst, const ColumnField& field) {
  auto& a = inst.matrices["a"];
  auto& w = inst.reals["w"];
  for (const auto& atom : field.atoms()) {
    a.push_back(atom.a);
    w.push_back(atom.weight);
  }
}

void store_tuple_field(Instance& inst, const std::vector<AbelianTuple>& tf) {
  for (std::size_t t = 0; t < tf.size(); ++t) inst.matrices["tf" + std::to_string(t)] = to_list(tf[t]);
}

std::vector<double> spectrum(Rng& rng, Eigen::Index dim, const Interval& iv) {
  std::vector<double> ev(static_cast<std::size_t>(dim));
  for (auto& v : ev) v = uniform(rng, iv.lo, iv.hi);
  return ev;
}

Domination alternate(std::uint64_t index) { return index % 2 == 0 ? Domination::separated : Domination::touching; }

// --- instance reconstruction -------------------------------------------------

const std::vector<Matrix>& need_matrices(const Instance& inst, const std::string& key) {
  const auto it = inst.matrices.find(key);
  if (it == inst.matrices.end() || it->second.empty()) throw DomainError("instance lacks '" + key + "'");
  return it->second;
}

const std::vector<double>& need_reals(const Instance& inst, const std::string& key) {
  const auto it = inst.reals.find(key);
  if (it == inst.reals.end() || it->second.empty()) throw DomainError("instance lacks '" + key + "'");
  return it->second;
}

AbelianTuple tuple_of(const Instance& inst, const std::string& key, const Tolerance& tol) {
  std::vector<HermitianMatrix> members;
  for (const auto& m : need_matrices(inst, key)) members.emplace_back(m);
  return AbelianTuple(std::move(members), tol);
}

HermitianMatrix hermitian_of(const Instance& inst, const std::string& key) {
  return HermitianMatrix(need_matrices(inst, key).front());
}

ColumnField field_of(const Instance& inst, const Tolerance& tol) {
  const auto& a = need_matrices(inst, "a");
  const auto& w = need_reals(inst, "w");
  if (a.size() != w.size()) throw DimensionError("field weights and atoms disagree");
  std::vector<FieldAtom> atoms;
  for (std::size_t t = 0; t < a.size(); ++t) atoms.push_back(FieldAtom{w[t], a[t]});
  return ColumnField(std::move(atoms), tol);
}

TupleField tuple_field_of(const Instance& inst, std::size_t atoms, const Tolerance& tol) {
  TupleField tf;
  for (std::size_t t = 0; t < atoms; ++t) tf.push_back(tuple_of(inst, "tf" + std::to_string(t), tol));
  return tf;
}

Vector xi_of(const Instance& inst) { return need_matrices(inst, "xi").front().col(0); }

double scalar_of(const Instance& inst, const std::string& key) { return need_reals(inst, key).front(); }

// Turns a passing verdict into a failure when a campaign-level side
// condition does not hold.
void require(Verdict& v, bool ok, const std::string& note) {
  if (ok || !v.passed()) return;
  v.outcome = Outcome::fail;
  v.note = note;
}

Verdict example_verdict(const ExampleReport& r) {
  VerdictBuilder vb(0.0);
  vb.leq(r.trace_x2, r.trace_y2, 1.0);
  if (!r.strict_order) vb.fail("x < y does not hold");
  if (!r.pinching_fails) vb.fail("Phi(x^2) <= y^2 unexpectedly holds");
  if (!r.trace_identity) vb.fail("tr x^2 differs from 4c^2");
  if (!r.trace_strict) vb.fail("tr x^2 < tr y^2 does not hold");
  if (!r.middle_chain) vb.fail("middle bound out of order");
  vb.audit("c", r.c);
  vb.audit("t", r.t);
  vb.audit("lambda", r.lambda);
  vb.audit("order_margin", r.order_margin);
  vb.audit("trace_x2", r.trace_x2);
  vb.audit("trace_y2", r.trace_y2);
  vb.audit("middle_bound", r.middle_bound);
  vb.audit("pinching_margin", lambda_min(r.y_squared - r.phi_x_squared));
  return vb.finish();
}

// --- generation --------------------------------------------------------------

void generate_body(Instance& inst, const CampaignConfig& cfg, Rng& rng) {
  const auto names = eligible_functions(cfg);
  const std::uint64_t i = inst.index;
  auto pick = [&](std::size_t arity) {
    inst.function = names[i % names.size()];
    return find_function(inst.function, arity);
  };

  switch (inst.theorem) {
    case TheoremId::T1: {
      const Eigen::Index dim = draw_dim(rng, cfg.dim);
      const CubeFunction f = pick(draw_arity(rng, cfg.arity));
      inst.matrices["x"] = to_list(gen_abelian_tuple(dim, f.arity(), f.domain(), rng));
      inst.reals["rho"] = random_state(rng, dim, 0.3).weights();
      break;
    }
    case TheoremId::MONO: {
      const Eigen::Index dim = draw_dim(rng, cfg.dim);
      const CubeFunction f = pick(draw_arity(rng, cfg.arity));
      const Matrix identity = Matrix::Identity(dim, dim);
      const DominatedPair p = gen_dominated_pair_in_basis(dim, f.arity(), f.domain(), identity, rng, alternate(i));
      inst.matrices["x"] = to_list(p.x);
      inst.matrices["y"] = to_list(p.y);
      inst.reals["rho"] = random_state(rng, dim, 0.3).weights();
      break;
    }
    case TheoremId::T2: {
      const Eigen::Index dim = draw_dim(rng, cfg.dim);
      const std::size_t n = draw_arity(rng, cfg.arity);
      const auto blocks = random_partition(rng, dim);
      const CentralizerInstance c = gen_centralizer_pair(dim, n, blocks, rng, alternate(i));
      inst.matrices["x"] = to_list(c.x);
      inst.matrices["y"] = to_list(c.y);
      inst.reals["rho"] = c.rho.weights();
      auto& p = inst.reals["exponents"];
      for (std::size_t k = 0; k < n; ++k) p.push_back(uniform(rng, 0.0, 3.0));
      break;
    }
    case TheoremId::TM1: {
      const Eigen::Index dim = draw_dim(rng, cfg.dim);
      pick(1);
      const CentralizerInstance c = gen_centralizer_pair(dim, 1, random_partition(rng, dim), rng, alternate(i));
      inst.matrices["x"] = to_list(c.x);
      inst.matrices["y"] = to_list(c.y);
      inst.reals["rho"] = c.rho.weights();
      break;
    }
    case TheoremId::T3:
    case TheoremId::T4: {
      const Eigen::Index dim = draw_dim(rng, cfg.dim);
      const CubeFunction f = pick(draw_arity(rng, cfg.arity));
      const std::size_t atoms = uniform_index(rng, 1, 4);
      store_field(inst, random_column_field(rng, dim, atoms));
      std::vector<AbelianTuple> tf;
      for (std::size_t t = 0; t < atoms; ++t) tf.push_back(gen_abelian_tuple(dim, f.arity(), f.domain(), rng));
      store_tuple_field(inst, tf);
      if (inst.theorem == TheoremId::T3) {
        inst.matrices["xi"] = {Matrix(random_unit_vector(rng, dim))};
      } else {
        inst.reals["rho"] = random_state(rng, dim, 0.3).weights();
      }
      break;
    }
    case TheoremId::MP: {
      const Eigen::Index dim = draw_dim(rng, cfg.dim);
      const CubeFunction f = pick(draw_arity(rng, cfg.arity));
      inst.matrices["x"] = to_list(gen_abelian_tuple(dim, f.arity(), f.domain(), rng));
      inst.matrices["xi"] = {Matrix(random_unit_vector(rng, dim))};
      break;
    }
    case TheoremId::T5: {
      const Eigen::Index dim = draw_dim(rng, cfg.dim);
      const std::size_t family = i % 4;
      const CubeFunction f = pick(family == 0 ? 1 : draw_arity(rng, cfg.arity));
      const std::size_t n = f.arity();
      std::vector<AbelianTuple> tf;
      if (family == 0) {
        // one variable, general field
        const std::size_t atoms = uniform_index(rng, 1, 4);
        store_field(inst, random_column_field(rng, dim, atoms));
        for (std::size_t t = 0; t < atoms; ++t) tf.push_back(gen_abelian_tuple(dim, 1, f.domain(), rng));
      } else if (family == 1) {
        // unitary atoms u_t with x_t = u_t (v d_t v^*) u_t^*
        const std::size_t atoms = uniform_index(rng, 1, 4);
        const Matrix v = random_unitary(rng, dim);
        std::vector<double> p(atoms);
        for (auto& w : p) w = uniform(rng, 0.2, 1.0);
        const double total = std::accumulate(p.begin(), p.end(), 0.0);
        std::vector<FieldAtom> field;
        for (std::size_t t = 0; t < atoms; ++t) {
          const Matrix u = random_unitary(rng, dim);
          field.push_back(FieldAtom{p[t] / total, u});
          std::vector<std::vector<double>> ev;
          for (std::size_t k = 0; k < n; ++k) ev.push_back(spectrum(rng, dim, f.domain()[k]));
          tf.push_back(abelian_in_basis(Matrix(u * v), ev));
        }
        store_field(inst, ColumnField(std::move(field), cfg.tol));
      } else if (family == 2) {
        // rank-one projections onto an orthonormal basis
        const Matrix w = random_unitary(rng, dim);
        std::vector<FieldAtom> field;
        for (Eigen::Index t = 0; t < dim; ++t) {
          field.push_back(FieldAtom{1.0, Matrix(w.col(t) * w.col(t).adjoint())});
          tf.push_back(gen_abelian_tuple(dim, n, f.domain(), rng));
        }
        store_field(inst, ColumnField(std::move(field), cfg.tol));
      } else {
        // identity atoms with probability weights, commuting family
        const std::size_t atoms = uniform_index(rng, 1, 4);
        const Matrix w = random_unitary(rng, dim);
        std::vector<double> p(atoms);
        for (auto& q : p) q = uniform(rng, 0.2, 1.0);
        const double total = std::accumulate(p.begin(), p.end(), 0.0);
        std::vector<FieldAtom> field;
        for (std::size_t t = 0; t < atoms; ++t) {
          field.push_back(FieldAtom{p[t] / total, Matrix::Identity(dim, dim)});
          std::vector<std::vector<double>> ev;
          for (std::size_t k = 0; k < n; ++k) ev.push_back(spectrum(rng, dim, f.domain()[k]));
          tf.push_back(abelian_in_basis(w, ev));
        }
        store_field(inst, ColumnField(std::move(field), cfg.tol));
      }
      store_tuple_field(inst, tf);
      inst.reals["family"] = {static_cast<double>(family)};
      break;
    }
    case TheoremId::COR: {
      const std::size_t family = i % 3;
      const CubeFunction probe = find_function(names[i % names.size()], 1);
      const bool wide = std::all_of(probe.domain().intervals().begin(), probe.domain().intervals().end(),
                                    [](const Interval& iv) { return iv.lo <= -2.0 && iv.hi >= 2.0; });
      double lambda = uniform(rng, 0.0, 1.0);
      if (i % 20 == 5) lambda = 0.0;
      if (i % 20 == 15) lambda = 1.0;
      inst.reals["lambda"] = {lambda};
      if (family == 2 && wide) {
        pick(2);
        const CompatiblePair p = gen_compatible_pair_rejection(rng, 2, 10000, cfg.tol);
        inst.matrices["x"] = to_list(p.x);
        inst.matrices["y"] = to_list(p.y);
        inst.reals["attempts"] = {static_cast<double>(p.attempts)};
      } else if (family == 0) {
        const Eigen::Index dim = draw_dim(rng, cfg.dim);
        const CubeFunction f = pick(1);
        inst.matrices["x"] = to_list(gen_abelian_tuple(dim, 1, f.domain(), rng));
        inst.matrices["y"] = to_list(gen_abelian_tuple(dim, 1, f.domain(), rng));
      } else {
        const Eigen::Index dim = draw_dim(rng, cfg.dim);
        const CubeFunction f = pick(draw_arity(rng, cfg.arity));
        const Matrix w = random_unitary(rng, dim);
        std::vector<std::vector<double>> xe, ye;
        for (std::size_t k = 0; k < f.arity(); ++k) {
          xe.push_back(spectrum(rng, dim, f.domain()[k]));
          ye.push_back(spectrum(rng, dim, f.domain()[k]));
        }
        inst.matrices["x"] = to_list(abelian_in_basis(w, xe));
        inst.matrices["y"] = to_list(abelian_in_basis(w, ye));
      }
      break;
    }
    case TheoremId::T6: {
      const Eigen::Index dim = draw_dim(rng, cfg.dim);
      const CubeFunction f = pick(draw_arity(rng, cfg.arity));
      const DominatedPair p = gen_dominated_pair(dim, f.arity(), f.domain(), rng, alternate(i));
      inst.matrices["x"] = to_list(p.x);
      inst.matrices["y"] = to_list(p.y);
      break;
    }
    case TheoremId::LH: {
      const Eigen::Index dim = draw_dim(rng, cfg.dim);
      const Cube cube = Cube::uniform(1, Interval{0.0, 2.0});
      const double shrink = i % 50 == 0 ? 0.0 : uniform(rng, 0.0, 1.0);
      const DominatedPair p = gen_dominated_pair(dim, 1, cube, rng, alternate(i / 5), shrink);
      inst.matrices["x"] = to_list(p.x);
      inst.matrices["y"] = to_list(p.y);
      inst.reals["alpha"] = {kHeinzExponents[i % kHeinzExponents.size()]};
      break;
    }
    case TheoremId::KF: {
      const Eigen::Index dim = draw_dim(rng, cfg.dim);
      const auto k = static_cast<Eigen::Index>(uniform_index(rng, 1, static_cast<std::size_t>(dim)));
      inst.matrices["a"] = {random_hermitian(rng, dim).matrix()};
      inst.matrices["frame"] = {random_frame(rng, dim, k)};
      break;
    }
    case TheoremId::CHAIN: {
      const Eigen::Index dim = draw_dim(rng, cfg.dim);
      const std::size_t n = draw_arity(rng, cfg.arity);
      const Cube cube = Cube::uniform(n, Interval{0.1, 2.0});
      const DominatedPair p = gen_dominated_pair(dim, n, cube, rng, alternate(i));
      inst.matrices["x"] = to_list(p.x);
      inst.matrices["y"] = to_list(p.y);
      break;
    }
    case TheoremId::EX1: {
      const ExampleParams e = example_params(i, cfg.count);
      inst.reals["params"] = {e.c, e.t, e.lambda};
      break;
    }
  }
}

// --- evaluation --------------------------------------------------------------

Verdict evaluate_body(const Instance& inst, const Tolerance& tol) {
  const auto fn = [&](std::size_t arity) { return find_function(inst.function, arity); };
  switch (inst.theorem) {
    case TheoremId::T1: {
      const AbelianTuple x = tuple_of(inst, "x", tol);
      return check_phi_concave_jensen(fn(x.arity()), x, DiagonalState(need_reals(inst, "rho")), tol);
    }
    case TheoremId::MONO: {
      const AbelianTuple x = tuple_of(inst, "x", tol);
      const AbelianTuple y = tuple_of(inst, "y", tol);
      return check_phi_monotone_chain(fn(x.arity()), x, y, DiagonalState(need_reals(inst, "rho")), tol);
    }
    case TheoremId::T2: {
      const AbelianTuple x = tuple_of(inst, "x", tol);
      const AbelianTuple y = tuple_of(inst, "y", tol);
      return check_trace_power_monotone(x, y, need_reals(inst, "exponents"), DiagonalState(need_reals(inst, "rho")),
                                        tol);
    }
    case TheoremId::TM1: {
      return check_trace_monotone_single(hermitian_of(inst, "x"), hermitian_of(inst, "y"), fn(1),
                                         DiagonalState(need_reals(inst, "rho")), tol);
    }
    case TheoremId::T3: {
      const ColumnField field = field_of(inst, tol);
      const TupleField tf = tuple_field_of(inst, field.size(), tol);
      const CubeFunction f = fn(tf.front().arity());
      Verdict v = check_jensen_expectation(f, field, tf, xi_of(inst), tol);
      if (v.invalid()) return v;
      require(v, std::abs(v.audit["mu_mass"] - 1.0) <= 1e-10, "mu_xi mass differs from 1");
      if (f.is_affine()) require(v, std::abs(v.gap) <= 1e-9, "affine function without equality");
      return v;
    }
    case TheoremId::T4: {
      const ColumnField field = field_of(inst, tol);
      const TupleField tf = tuple_field_of(inst, field.size(), tol);
      const CubeFunction f = fn(tf.front().arity());
      const DiagonalState rho(need_reals(inst, "rho"));
      Verdict v = check_phi_jensen_field(f, field, tf, rho, tol);
      if (v.invalid()) return v;
      double worst = 0.0;
      for (Eigen::Index s = 0; s < field.dim(); ++s) {
        const Vector e = Vector::Unit(field.dim(), s);
        worst = std::max(worst, std::abs(build_mu_xi(field, tf, e, tol).total_mass() - 1.0));
      }
      v.audit["mu_mass_defect"] = worst;
      require(v, worst <= 1e-10, "mu_xi mass differs from 1");
      if (f.is_affine()) require(v, std::abs(v.gap) <= 1e-9, "affine function without equality");
      return v;
    }
    case TheoremId::MP: {
      const AbelianTuple x = tuple_of(inst, "x", tol);
      const CubeFunction f = fn(x.arity());
      const Vector xi = xi_of(inst);
      Verdict v = check_mond_pecaric(f, x, xi, tol);
      if (v.invalid()) return v;
      const Verdict via_field = check_jensen_expectation(f, ColumnField::trivial(x.dim()), TupleField{x}, xi, tol);
      const double lhs_dev = std::abs(v.lhs - via_field.lhs);
      const double rhs_dev = std::abs(v.rhs - via_field.rhs);
      const double scale = 1.0 + std::abs(v.lhs) + std::abs(v.rhs);
      v.audit["route_deviation"] = std::max(lhs_dev, rhs_dev);
      v.audit["mu_mass"] = via_field.audit.count("mu_mass") ? via_field.audit.at("mu_mass") : 0.0;
      require(v, std::max(lhs_dev, rhs_dev) <= 1e-12 * scale, "direct and trivial-field routes disagree");
      require(v, std::abs(v.audit["mu_mass"] - 1.0) <= 1e-10, "mu_xi mass differs from 1");
      if (f.is_affine()) require(v, std::abs(v.gap) <= 1e-9, "affine function without equality");
      return v;
    }
    case TheoremId::T5: {
      const ColumnField field = field_of(inst, tol);
      const TupleField tf = tuple_field_of(inst, field.size(), tol);
      return check_thm5(fn(tf.front().arity()), field, tf, tol);
    }
    case TheoremId::COR: {
      const AbelianTuple x = tuple_of(inst, "x", tol);
      const AbelianTuple y = tuple_of(inst, "y", tol);
      return check_corollary(fn(x.arity()), x, y, scalar_of(inst, "lambda"), tol);
    }
    case TheoremId::T6: {
      const AbelianTuple x = tuple_of(inst, "x", tol);
      const AbelianTuple y = tuple_of(inst, "y", tol);
      return check_thm6(fn(x.arity()), x, y, tol);
    }
    case TheoremId::LH:
      return check_lowner_heinz(hermitian_of(inst, "x"), hermitian_of(inst, "y"), scalar_of(inst, "alpha"), tol);
    case TheoremId::KF: {
      const HermitianMatrix a = hermitian_of(inst, "a");
      const Matrix& frame = need_matrices(inst, "frame").front();
      Verdict v = kyfan_check(a, frame, tol);
      if (v.invalid()) return v;
      const EigenSystem es = eig_hermitian(a);
      const Verdict top = kyfan_check(a, es.basis.leftCols(frame.cols()), tol);
      v.audit["top_frame_deviation"] = std::abs(top.rhs - top.lhs);
      require(v, top.passed() && std::abs(top.rhs - top.lhs) <= 1e-9, "top eigenspace frame misses equality");
      return v;
    }
    case TheoremId::CHAIN: {
      const AbelianTuple x = tuple_of(inst, "x", tol);
      const AbelianTuple y = tuple_of(inst, "y", tol);
      if (x.arity() != y.arity() || x.dim() != y.dim()) return Verdict::make_invalid("shape mismatch");
      for (std::size_t k = 0; k < x.arity(); ++k) {
        if (!is_psd(x[k], tol)) return Verdict::make_invalid("x member " + std::to_string(k) + " is not PSD");
        if (!loewner_leq(x[k], y[k], tol))
          return Verdict::make_invalid("x <= y fails at member " + std::to_string(k));
      }
      return order_verdict(root_product_chain(x, tol), root_product_chain(y, tol), tol);
    }
    case TheoremId::EX1: {
      const auto& p = need_reals(inst, "params");
      if (p.size() != 3) throw DomainError("instance needs three example parameters");
      return example_verdict(reproduce_example1(p[0], p[1], p[2], tol));
    }
  }
  return Verdict::make_invalid("unhandled theorem");
}

std::pair<Eigen::Index, std::size_t> shape_of(const Instance& inst) {
  for (const char* key : {"x", "tf0", "a"}) {
    const auto it = inst.matrices.find(key);
    if (it != inst.matrices.end() && !it->second.empty()) {
      const std::size_t arity = std::string(key) == "a" ? 1 : it->second.size();
      return {it->second.front().rows(), arity};
    }
  }
  return {2, 1};
}

}  // namespace

const char* to_string(TheoremId id) {
  for (const auto& t : kTheorems)
    if (t.id == id) return t.name;
  return "?";
}

TheoremId parse_theorem(const std::string& name) {
  for (const auto& t : kTheorems)
    if (name == t.name) return t.id;
  throw ConfigError("unknown theorem '" + name + "'");
}

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> out;
    for (const auto& t : kTheorems) out.push_back(t.id);
    return out;
  }();
  return ids;
}

Range parse_range(const std::string& text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw ConfigError("malformed range '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  Range r;
  if (dots == std::string::npos) {
    r.lo = r.hi = parse_int(text);
  } else {
    const std::string_view all(text);
    r.lo = parse_int(all.substr(0, dots));
    r.hi = parse_int(all.substr(dots + 2));
  }
  if (r.lo > r.hi) throw ConfigError("empty range '" + text + "'");
  return r;
}

void CampaignConfig::validate() const {
  if (count < 1) throw ConfigError("instance count must be at least 1");
  if (dim.lo < 1 || dim.lo > dim.hi) throw ConfigError("dimension range must be non-empty and start at 1 or above");
  if (arity.lo < 1 || arity.lo > arity.hi) throw ConfigError("arity range must be non-empty and start at 1 or above");
  if (dim.hi > 64) throw ConfigError("dimension above 64 is not supported");
  if (arity.hi > 8) throw ConfigError("arity above 8 is not supported");
  if (threads < 1) throw ConfigError("thread count must be at least 1");
  tol.validate();
  if (!(tol.rtol > 0.0)) throw ConfigError("rtol must be positive");
  const auto need = function_need(theorem);
  if (!need) {
    if (!functions.empty()) throw ConfigError(std::string("theorem ") + to_string(theorem) + " takes no function");
    return;
  }
  for (const auto& name : functions) {
    const CubeFunction f = find_function(name, 1);
    if (!satisfies(f.flags(), *need))
      throw ConfigError("function '" + name + "' lacks the flags " + to_string(theorem) + " needs");
  }
}

CampaignConfig default_config(TheoremId id) {
  CampaignConfig cfg;
  cfg.theorem = id;
  switch (id) {
    case TheoremId::T1:
    case TheoremId::MONO:
      cfg.count = 1000;
      cfg.arity = {1, 3};
      break;
    case TheoremId::T2:
      cfg.count = 2000;
      break;
    case TheoremId::T3:
    case TheoremId::T4:
    case TheoremId::MP:
      cfg.count = 2000;
      cfg.dim = {1, 5};
      cfg.arity = {1, 3};
      break;
    case TheoremId::T5:
    case TheoremId::T6:
    case TheoremId::COR:
      cfg.count = 2000;
      cfg.arity = {1, 3};
      break;
    case TheoremId::LH:
    case TheoremId::TM1:
      cfg.count = 1000;
      cfg.arity = {1, 1};
      break;
    case TheoremId::KF:
      cfg.count = 1000;
      cfg.dim = {1, 8};
      cfg.arity = {1, 1};
      break;
    case TheoremId::CHAIN:
      cfg.count = 1000;
      break;
    case TheoremId::EX1:
      cfg.count = 51;
      cfg.dim = {2, 2};
      cfg.arity = {1, 1};
      break;
  }
  return cfg;
}

ExampleParams example_params(std::uint64_t index, std::size_t count) {
  if (index == 0) return {};
  const double steps = static_cast<double>(std::max<std::size_t>(count, 2) - 1);
  const double frac = (static_cast<double>(index) - 0.5) / steps;
  ExampleParams p;
  p.c = 1.0;
  p.t = 1.0 + (std::sqrt(2.0) - 1.0) * frac;
  p.lambda = 1.01 * p.c / (p.t - p.c);
  return p;
}

Instance generate_instance(const CampaignConfig& cfg, std::uint64_t index) {
  Instance inst;
  inst.theorem = cfg.theorem;
  inst.index = index;
  Rng rng = instance_rng(cfg.seed, index);
  generate_body(inst, cfg, rng);
  return inst;
}

Verdict evaluate_instance(const Instance& inst, const Tolerance& tol) {
  try {
    return evaluate_body(inst, tol);
  } catch (const DomainError& e) {
    return Verdict::make_invalid(std::string("domain: ") + e.what());
  } catch (const DimensionError& e) {
    return Verdict::make_invalid(std::string("dimension: ") + e.what());
  } catch (const ConfigError& e) {
    return Verdict::make_invalid(std::string("config: ") + e.what());
  } catch (const std::exception& e) {
    Verdict v;
    v.outcome = Outcome::fail;
    v.note = std::string("error: ") + e.what();
    return v;
  }
}

CampaignReport run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  CampaignReport report;
  report.config = cfg;
  report.records.resize(cfg.count);

  auto run_one = [&](std::size_t index) {
    InstanceRecord rec;
    rec.index = index;
    try {
      Instance inst = generate_instance(cfg, index);
      rec.verdict = evaluate_instance(inst, cfg.tol);
      rec.function = inst.function;
      std::tie(rec.dim, rec.arity) = shape_of(inst);
      if (cfg.keep_instances || !rec.verdict.passed()) rec.instance = std::move(inst);
    } catch (const GenerationError& e) {
      rec.verdict = Verdict::make_invalid(std::string("generation: ") + e.what());
    }
    report.records[index] = std::move(rec);
  };

  const std::size_t workers = std::min(cfg.threads, cfg.count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < cfg.count; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cfg.count; i = next++) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  const std::size_t lo = static_cast<std::size_t>(cfg.arity.lo);
  const std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(cfg.arity.hi), 4);
  for (std::size_t n = lo; n <= hi; ++n) {
    for (const auto& f : function_library(n)) {
      const FlagAudit a = verify_flags(f, 1000, cfg.seed);
      report.flag_audit.push_back({f.name(), n, false, a.ok, a.witness});
      report.summary.flags_ok = report.summary.flags_ok && a.ok;
    }
    for (const auto& f : control_library(n)) {
      const FlagAudit a = verify_flags(f, 1000, cfg.seed);
      report.flag_audit.push_back({f.name(), n, true, a.ok, a.witness});
      report.summary.controls_ok = report.summary.controls_ok && !a.ok;
    }
  }

  auto& s = report.summary;
  s.total = cfg.count;
  for (const auto& rec : report.records) {
    const Verdict& v = rec.verdict;
    if (v.passed()) ++s.passed;
    if (v.failed()) ++s.failed;
    if (v.invalid()) {
      ++s.invalid;
      continue;
    }
    if (v.near_equality) ++s.near_equality;
    if (std::isfinite(v.gap) && (!s.min_gap || v.gap < *s.min_gap)) {
      s.min_gap = v.gap;
      s.min_gap_index = rec.index;
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace opineq
