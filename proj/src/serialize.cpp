#include "opineq/serialize.hpp"

#include <cmath>
#include <cstring>
#include <limits>

namespace opineq {

using nlohmann::json;

namespace {

// Non-finite numbers are written as the strings "inf", "-inf" and "nan".
json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double read_num(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ParseError("expected a number, got " + j.dump(), 0, 0);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 0, 0);
  return j.at(key);
}

bool same_number(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0 || (std::isnan(a) && std::isnan(b));
}

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what(), 0, 0);
  }
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      re.push_back(num(m(i, k).real()));
      im.push_back(num(m(i, k).imag()));
    }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

Matrix matrix_from_json(const json& j) {
  return guarded([&] {
    const auto rows = field(j, "rows").get<Eigen::Index>();
    const auto cols = field(j, "cols").get<Eigen::Index>();
    const json& re = field(j, "re");
    const json& im = field(j, "im");
    if (rows < 1 || cols < 1 || !re.is_array() || !im.is_array() ||
        re.size() != static_cast<std::size_t>(rows * cols) || im.size() != re.size()) {
      throw ParseError("matrix entry count does not match its shape", 0, 0);
    }
    Matrix m(rows, cols);
    std::size_t p = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index k = 0; k < cols; ++k, ++p) m(i, k) = Complex(read_num(re[p]), read_num(im[p]));
    return m;
  });
}

json verdict_to_json(const Verdict& v) {
  json audit = json::object();
  for (const auto& [k, x] : v.audit) audit[k] = num(x);
  return json{{"outcome", to_string(v.outcome)},
              {"lhs", num(v.lhs)},
              {"rhs", num(v.rhs)},
              {"gap", num(v.gap)},
              {"slack", num(v.slack)},
              {"near_equality", v.near_equality},
              {"note", v.note},
              {"audit", audit}};
}

Verdict verdict_from_json(const json& j) {
  return guarded([&] {
    Verdict v;
    const auto outcome = field(j, "outcome").get<std::string>();
    if (outcome == "pass") {
      v.outcome = Outcome::pass;
    } else if (outcome == "fail") {
      v.outcome = Outcome::fail;
    } else if (outcome == "invalid") {
      v.outcome = Outcome::invalid;
    } else {
      throw ParseError("unknown outcome '" + outcome + "'", 0, 0);
    }
    v.lhs = read_num(field(j, "lhs"));
    v.rhs = read_num(field(j, "rhs"));
    v.gap = read_num(field(j, "gap"));
    v.slack = read_num(field(j, "slack"));
    v.near_equality = field(j, "near_equality").get<bool>();
    v.note = field(j, "note").get<std::string>();
    for (const auto& [k, x] : field(j, "audit").items()) v.audit[k] = read_num(x);
    return v;
  });
}

json instance_to_json(const Instance& inst) {
  json matrices = json::object();
  for (const auto& [key, list] : inst.matrices) {
    json arr = json::array();
    for (const auto& m : list) arr.push_back(matrix_to_json(m));
    matrices[key] = arr;
  }
  json reals = json::object();
  for (const auto& [key, list] : inst.reals) {
    json arr = json::array();
    for (double x : list) arr.push_back(num(x));
    reals[key] = arr;
  }
  return json{{"theorem", to_string(inst.theorem)},
              {"index", inst.index},
              {"function", inst.function},
              {"matrices", matrices},
              {"reals", reals}};
}

Instance instance_from_json(const json& j) {
  return guarded([&] {
    Instance inst;
    inst.theorem = parse_theorem(field(j, "theorem").get<std::string>());
    inst.index = field(j, "index").get<std::uint64_t>();
    inst.function = field(j, "function").get<std::string>();
    for (const auto& [key, arr] : field(j, "matrices").items()) {
      auto& list = inst.matrices[key];
      for (const auto& m : arr) list.push_back(matrix_from_json(m));
    }
    for (const auto& [key, arr] : field(j, "reals").items()) {
      auto& list = inst.reals[key];
      for (const auto& x : arr) list.push_back(read_num(x));
    }
    return inst;
  });
}

json config_to_json(const CampaignConfig& cfg) {
  return json{{"theorem", to_string(cfg.theorem)},
              {"count", cfg.count},
              {"dim", {cfg.dim.lo, cfg.dim.hi}},
              {"arity", {cfg.arity.lo, cfg.arity.hi}},
              {"seed", cfg.seed},
              {"rtol", cfg.tol.rtol},
              {"quadrature_nodes", cfg.tol.quadrature_nodes},
              {"functions", cfg.functions},
              {"keep_instances", cfg.keep_instances}};
}

CampaignConfig config_from_json(const json& j) {
  return guarded([&] {
    CampaignConfig cfg;
    cfg.theorem = parse_theorem(field(j, "theorem").get<std::string>());
    cfg.count = field(j, "count").get<std::size_t>();
    const json& dim = field(j, "dim");
    const json& arity = field(j, "arity");
    cfg.dim = {dim.at(0).get<std::int64_t>(), dim.at(1).get<std::int64_t>()};
    cfg.arity = {arity.at(0).get<std::int64_t>(), arity.at(1).get<std::int64_t>()};
    cfg.seed = field(j, "seed").get<std::uint64_t>();
    cfg.tol.rtol = field(j, "rtol").get<double>();
    cfg.tol.quadrature_nodes = field(j, "quadrature_nodes").get<int>();
    cfg.functions = field(j, "functions").get<std::vector<std::string>>();
    cfg.keep_instances = field(j, "keep_instances").get<bool>();
    return cfg;
  });
}

json report_to_json(const CampaignReport& report, bool include_timing) {
  const auto& s = report.summary;
  json summary{{"total", s.total},
               {"passed", s.passed},
               {"failed", s.failed},
               {"invalid", s.invalid},
               {"near_equality", s.near_equality},
               {"min_gap", s.min_gap ? num(*s.min_gap) : json(nullptr)},
               {"min_gap_index", s.min_gap_index ? json(*s.min_gap_index) : json(nullptr)},
               {"generator_sound", s.invalid == 0},
               {"flags_ok", s.flags_ok},
               {"controls_caught", s.controls_ok}};

  json audit = json::array();
  for (const auto& a : report.flag_audit) {
    audit.push_back(json{{"function", a.function},
                         {"arity", a.arity},
                         {"control", a.control},
                         {"ok", a.ok},
                         {"witness", a.witness}});
  }

  json instances = json::array();
  for (const auto& rec : report.records) {
    json r{{"index", rec.index},
           {"function", rec.function},
           {"dim", rec.dim},
           {"arity", rec.arity},
           {"verdict", verdict_to_json(rec.verdict)}};
    if (rec.instance) r["instance"] = instance_to_json(*rec.instance);
    instances.push_back(std::move(r));
  }

  json out{{"schema_version", kReportSchemaVersion},
           {"tool", "opineq"},
           {"config", config_to_json(report.config)},
           {"summary", summary},
           {"flag_audit", audit},
           {"instances", instances}};
  if (include_timing) out["wall_seconds"] = report.wall_seconds;
  return out;
}

std::string dump_report(const CampaignReport& report, bool include_timing) {
  return report_to_json(report, include_timing).dump(2) + "\n";
}

bool same_verdict(const Verdict& a, const Verdict& b) {
  if (a.outcome != b.outcome || a.near_equality != b.near_equality || a.note != b.note) return false;
  if (!same_number(a.lhs, b.lhs) || !same_number(a.rhs, b.rhs) || !same_number(a.gap, b.gap) ||
      !same_number(a.slack, b.slack)) {
    return false;
  }
  if (a.audit.size() != b.audit.size()) return false;
  for (const auto& [k, x] : a.audit) {
    const auto it = b.audit.find(k);
    if (it == b.audit.end() || !same_number(x, it->second)) return false;
  }
  return true;
}

std::vector<ReplayEntry> replay_report(const json& report) {
  return guarded([&] {
    const int version = field(report, "schema_version").get<int>();
    if (version != kReportSchemaVersion) {
      throw ParseError("unsupported schema version " + std::to_string(version), 0, 0);
    }
    const CampaignConfig cfg = config_from_json(field(report, "config"));
    std::vector<ReplayEntry> out;
    for (const auto& rec : field(report, "instances")) {
      if (!rec.contains("instance")) continue;
      ReplayEntry e;
      e.index = field(rec, "index").get<std::uint64_t>();
      e.recorded = verdict_from_json(field(rec, "verdict"));
      e.replayed = evaluate_instance(instance_from_json(rec.at("instance")), cfg.tol);
      e.identical = same_verdict(e.recorded, e.replayed);
      out.push_back(std::move(e));
    }
    return out;
  });
}

}  // namespace opineq
