// opineq: randomized campaigns and one-off checks of operator inequalities.
//
// Exit status: 0 pass, 1 mathematical failure, 2 usage or input error.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "opineq/harness.hpp"
#include "opineq/majorization.hpp"
#include "opineq/matrix_file.hpp"
#include "opineq/means.hpp"
#include "opineq/pinching.hpp"
#include "opineq/serialize.hpp"

namespace {

using namespace opineq;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_for(const Verdict& v) {
  if (v.passed()) return kExitPass;
  return v.failed() ? kExitFail : kExitUsage;
}

void print_verdict(const Verdict& v) {
  std::cout << std::setprecision(12) << to_string(v.outcome);
  if (!v.invalid()) std::cout << "  lhs=" << v.lhs << "  rhs=" << v.rhs << "  gap=" << v.gap << "  slack=" << v.slack;
  if (v.near_equality) std::cout << "  (near equality)";
  if (!v.note.empty()) std::cout << "  note: " << v.note;
  std::cout << '\n';
  for (const auto& [k, x] : v.audit) std::cout << "  " << k << " = " << x << '\n';
}

std::vector<MatrixRecord> load_all(const std::vector<std::string>& paths) {
  std::vector<MatrixRecord> out;
  for (const auto& p : paths) {
    try {
      for (auto& r : read_matrix_file(p)) out.push_back(std::move(r));
    } catch (const ParseError& e) {
      throw UsageError(p + ":" + e.what());
    }
  }
  return out;
}

std::vector<HermitianMatrix> load_hermitian(const std::vector<std::string>& paths, std::size_t expected) {
  const auto records = load_all(paths);
  if (expected && records.size() != expected) {
    throw UsageError("expected " + std::to_string(expected) + " matrices, found " + std::to_string(records.size()));
  }
  std::vector<HermitianMatrix> out;
  for (const auto& r : records) out.push_back(r.hermitian());
  return out;
}

void print_matrix(const std::string& label, const HermitianMatrix& m) {
  std::cout << format_matrix(m.matrix(), label);
}

// ---------------------------------------------------------------------------

struct CampaignArgs {
  std::string theorem;
  std::optional<std::size_t> count;
  std::string dim;
  std::string arity;
  std::uint64_t seed = kDefaultSeed;
  double rtol = Tolerance{}.rtol;
  std::string out;
  std::vector<std::string> functions;
  bool sweep = false;
  std::size_t threads = 1;
  bool keep_instances = false;
  bool no_timing = false;
};

int run_campaign_cmd(const CampaignArgs& a) {
  CampaignConfig cfg = default_config(parse_theorem(a.theorem));
  if (a.count) cfg.count = *a.count;
  if (!a.dim.empty()) cfg.dim = parse_range(a.dim);
  if (!a.arity.empty()) cfg.arity = parse_range(a.arity);
  cfg.seed = a.seed;
  cfg.tol.rtol = a.rtol;
  cfg.functions = a.functions;
  cfg.threads = a.threads;
  cfg.keep_instances = a.keep_instances;
  if (a.sweep && cfg.theorem != TheoremId::EX1) throw ConfigError("--sweep applies to EX1 only");
  cfg.validate();

  std::ofstream file;
  if (!a.out.empty() && a.out != "-") {
    file.open(a.out);
    if (!file) throw UsageError("cannot write '" + a.out + "'");
  }

  const CampaignReport report = run_campaign(cfg);
  const std::string text = dump_report(report, !a.no_timing);
  if (a.out == "-") {
    std::cout << text;
  } else if (file.is_open()) {
    file << text;
    file.close();
    if (!file) throw UsageError("cannot write '" + a.out + "'");
  }

  // the report owns stdout when written there
  std::ostream& log = a.out == "-" ? std::cerr : std::cout;
  if (a.sweep) {
    log << std::setw(8) << "c" << std::setw(12) << "t" << std::setw(14) << "lambda" << std::setw(8) << "x<y"
              << std::setw(10) << "Phi>y^2" << std::setw(10) << "tr=4c^2" << std::setw(10) << "tr<tr"
              << "  verdict\n";
    for (const auto& rec : report.records) {
      const ExampleParams p = example_params(rec.index, cfg.count);
      const ExampleReport r = reproduce_example1(p.c, p.t, p.lambda, cfg.tol);
      log << std::setprecision(6) << std::setw(8) << p.c << std::setw(12) << p.t << std::setw(14) << p.lambda
                << std::setw(8) << (r.strict_order ? "yes" : "no") << std::setw(10)
                << (r.pinching_fails ? "yes" : "no") << std::setw(10) << (r.trace_identity ? "yes" : "no")
                << std::setw(10) << (r.trace_strict ? "yes" : "no") << "  " << to_string(rec.verdict.outcome)
                << '\n';
    }
  }

  const auto& s = report.summary;
  log << to_string(cfg.theorem) << ": " << s.total << " instances, " << s.passed << " passed, " << s.failed
            << " failed, " << s.invalid << " invalid, " << s.near_equality << " near equality";
  if (s.min_gap) log << ", min gap " << std::setprecision(6) << *s.min_gap;
  log << '\n';
  if (!s.flags_ok) log << "flag audit: a library function failed its declared flags\n";
  if (!s.controls_ok) log << "flag audit: a mislabeled control went undetected\n";
  for (const auto& rec : report.records) {
    if (rec.verdict.failed()) {
      log << "  fail #" << rec.index << " (" << rec.function << "): gap " << rec.verdict.gap;
      if (!rec.verdict.note.empty()) log << ", " << rec.verdict.note;
      log << '\n';
    }
  }
  return (s.failed == 0 && s.flags_ok && s.controls_ok) ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------

int run_replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  const auto entries = replay_report(doc);
  bool all_identical = true;
  bool any_fail = false;
  for (const auto& e : entries) {
    std::cout << "#" << e.index << ": recorded " << to_string(e.recorded.outcome) << ", replayed "
              << to_string(e.replayed.outcome) << std::setprecision(17) << ", gap " << e.replayed.gap
              << (e.identical ? "  identical" : "  DIFFERS") << '\n';
    all_identical = all_identical && e.identical;
    any_fail = any_fail || e.replayed.failed();
  }
  std::cout << entries.size() << " instances replayed\n";
  if (!all_identical) {
    std::cout << "replay does not reproduce the recorded verdicts\n";
    return kExitUsage;
  }
  return any_fail ? kExitFail : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized verification of operator inequalities for abelian tuples"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "opineq 0.1.0");

  CampaignArgs ca;
  auto* campaign = app.add_subcommand("campaign", "Run a seeded randomized campaign for one theorem");
  campaign->add_option("--theorem", ca.theorem, "T1 T2 T3 T4 T5 T6 COR LH KF EX1 CHAIN MONO MP TM1")->required();
  campaign->add_option("--count", ca.count, "Number of instances (default depends on the theorem)");
  campaign->add_option("--dim", ca.dim, "Dimension range, e.g. 2..6");
  campaign->add_option("--arity", ca.arity, "Arity range, e.g. 2..4");
  campaign->add_option("--seed", ca.seed, "Campaign seed")->capture_default_str();
  campaign->add_option("--rtol", ca.rtol, "Relative tolerance")->capture_default_str();
  campaign->add_option("--out", ca.out, "Write the JSON report here ('-' for stdout)");
  campaign->add_option("--functions", ca.functions, "Function names to sweep")->delimiter(',');
  campaign->add_flag("--sweep", ca.sweep, "EX1 only: print the parameter table");
  campaign->add_option("--threads", ca.threads, "Worker threads")->capture_default_str();
  campaign->add_flag("--keep-instances", ca.keep_instances, "Serialize every instance, not only failures");
  campaign->add_flag("--no-timing", ca.no_timing, "Omit the wall-time field from the report");

  auto* check = app.add_subcommand("check", "Check one inequality on matrices read from files");
  check->require_subcommand(1);

  std::vector<std::string> files;
  auto* loewner = check->add_subcommand("loewner", "x <= y in the Loewner order");
  loewner->add_option("files", files, "Matrix files holding x and y")->required();
  auto* wmaj = check->add_subcommand("wmaj", "a weakly majorized by b");
  wmaj->add_option("files", files, "Matrix files holding a and b")->required();

  bool oracle = false;
  auto* gmean = check->add_subcommand("gmean", "Geometric mean x # y");
  gmean->add_option("files", files, "Matrix files holding x and y")->required();
  gmean->add_flag("--oracle", oracle, "Compare the closed form with the quadrature oracle");

  std::string function_name;
  std::string xi_path;
  auto* jensen = check->add_subcommand("jensen", "f(<x xi, xi>) <= <f(x) xi, xi> for a commuting tuple x");
  jensen->add_option("files", files, "Matrix files holding the tuple members")->required();
  jensen->add_option("--function", function_name, "Library function name")->required();
  jensen->add_option("--xi", xi_path, "File holding the unit vector (m x 1); default normalized ones");

  Eigen::Index k = 1;
  std::string frame_path;
  auto* kyfan = check->add_subcommand("kyfan", "Ky Fan bound for a k-frame");
  kyfan->add_option("files", files, "Matrix file holding a")->required();
  kyfan->add_option("--k", k, "Frame size")->required();
  kyfan->add_option("--frame", frame_path, "File holding an m x k frame; default e_1..e_k");

  double c = 1.0, t = 1.3, lambda = 3.4;
  auto* example = app.add_subcommand("example1", "Reproduce the 2x2 counterexample to pinching monotonicity");
  example->add_option("--c", c)->capture_default_str();
  example->add_option("--t", t)->capture_default_str();
  example->add_option("--lambda", lambda)->capture_default_str();

  std::string report_path;
  auto* replay = app.add_subcommand("replay", "Re-evaluate the serialized instances of a report");
  replay->add_option("report", report_path, "Report JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const Tolerance tol;
  try {
    if (*campaign) return run_campaign_cmd(ca);
    if (*replay) return run_replay(report_path);

    if (*example) {
      const ExampleReport r = reproduce_example1(c, t, lambda, tol);
      print_matrix("x", r.x);
      print_matrix("y", r.y);
      print_matrix("Phi(x^2)", r.phi_x_squared);
      print_matrix("y^2", r.y_squared);
      std::cout << std::setprecision(12) << "x < y:              " << (r.strict_order ? "yes" : "no")
                << "  (lambda_min(y - x) = " << r.order_margin << ")\n"
                << "Phi(x^2) <= y^2 fails: " << (r.pinching_fails ? "yes" : "no")
                << (r.pinching_claim_applies ? "" : "  (t >= c sqrt 2: not expected to fail)") << '\n'
                << "tr x^2 = 4c^2:      " << (r.trace_identity ? "yes" : "no") << "  (" << r.trace_x2 << ")\n"
                << "tr x^2 < tr y^2:    " << (r.trace_strict ? "yes" : "no") << "  (" << r.trace_y2 << ")\n"
                << "middle bound:       " << r.middle_bound << (r.middle_chain ? "  in order" : "  OUT OF ORDER")
                << '\n';
      const bool expected = r.strict_order && r.trace_identity && r.trace_strict && r.middle_chain &&
                            (r.pinching_fails == r.pinching_claim_applies);
      return expected ? kExitPass : kExitFail;
    }

    if (*loewner) {
      const auto m = load_hermitian(files, 2);
      const Verdict v = order_verdict(m[0], m[1], tol);
      print_verdict(v);
      return exit_for(v);
    }
    if (*wmaj) {
      const auto m = load_hermitian(files, 2);
      const Verdict v = weak_majorize_verdict(m[0], m[1], tol);
      print_verdict(v);
      return exit_for(v);
    }
    if (*gmean) {
      const auto m = load_hermitian(files, 2);
      const HermitianMatrix g = geometric_mean(m[0], m[1], tol);
      print_matrix("x#y", g);
      if (!oracle) return kExitPass;
      const HermitianMatrix q = geometric_mean_quadrature(m[0], m[1], tol);
      const double dev = (g.matrix() - q.matrix()).norm() / std::max(1.0, q.matrix().norm());
      std::cout << std::setprecision(6) << "relative deviation from quadrature (" << tol.quadrature_nodes
                << " nodes): " << dev << (dev <= 1e-6 ? "  pass" : "  FAIL") << '\n';
      return dev <= 1e-6 ? kExitPass : kExitFail;
    }
    if (*jensen) {
      const auto members = load_hermitian(files, 0);
      const AbelianTuple x(members, tol);
      const CubeFunction f = find_function(function_name, x.arity());
      if (!f.flags().convex) throw UsageError("function '" + function_name + "' is not flagged convex");
      Vector xi;
      if (xi_path.empty()) {
        xi = Vector::Ones(x.dim()) / std::sqrt(static_cast<double>(x.dim()));
      } else {
        const auto r = load_all({xi_path});
        if (r.size() != 1 || r[0].entries.cols() != 1 || r[0].entries.rows() != x.dim())
          throw UsageError("--xi must hold one " + std::to_string(x.dim()) + " x 1 matrix");
        xi = r[0].entries.col(0);
      }
      const Verdict v = check_mond_pecaric(f, x, xi, tol);
      print_verdict(v);
      return exit_for(v);
    }
    if (*kyfan) {
      const auto a = load_hermitian(files, 1);
      Matrix frame;
      if (frame_path.empty()) {
        if (k < 1 || k > a[0].dim()) throw UsageError("--k must lie in 1.." + std::to_string(a[0].dim()));
        frame = Matrix::Identity(a[0].dim(), k);
      } else {
        const auto r = load_all({frame_path});
        if (r.size() != 1 || r[0].entries.cols() != k) throw UsageError("--frame must hold one m x k matrix");
        frame = r[0].entries;
      }
      const Verdict v = kyfan_check(a[0], frame, tol);
      print_verdict(v);
      return exit_for(v);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
