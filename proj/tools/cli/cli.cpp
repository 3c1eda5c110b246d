#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "bek/criteria.hpp"
#include "bek/states.hpp"
#include "bek/tensor.hpp"
#include "bek/witness.hpp"

namespace bek::cli {

using nlohmann::json;

// ---- formatting ------------------------------------------------------------

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json RunManifest::to_json() const {
  json params = json::object();
  for (const auto& [k, v] : parameters) params[k] = v;
  return {{"command", command},
          {"parameters", params},
          {"rng_seed", rng_seed},
          {"tool_version", tool_version},
          {"timestamp", timestamp}};
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::string s = "b,lambda,min_value,best_start,iterations,converged\n";
  for (const auto& r : records) {
    s += format_number(r.b) + ',' + format_number(r.lambda) + ',' + format_number(r.min_value) + ',' +
         std::to_string(r.best_start) + ',' + std::to_string(r.iterations) + ',' + (r.converged ? "true" : "false") +
         '\n';
  }
  return s;
}

json certificate_json(const Ket& psi, double value, int n, double lambda) {
  json layout = json::array();
  for (const auto& f : psi.layout().factors())
    layout.push_back({{"dim", f.dim}, {"party", std::string(1, to_char(f.party))}});
  json amps = json::array();
  for (Eigen::Index k = 0; k < psi.amplitudes().size(); ++k) {
    amps.push_back(psi.amplitudes()[k].real());
    amps.push_back(psi.amplitudes()[k].imag());
  }
  return {{"layout", layout},
          {"index_order", "row-major, first factor slowest"},
          {"amplitudes", amps},
          {"value", value},
          {"n", n},
          {"lambda", lambda}};
}

namespace {

// ---- shared state ----------------------------------------------------------

struct GlobalOptions {
  bool json = false;
};

int threads_from_env() {
  if (const char* v = std::getenv("BEK_THREADS")) {
    try {
      const int n = std::stoi(v);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return 0;
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(std::uint64_t seed, bool entropy) {
  if (!entropy) return seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) | rd();
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string fault;
};

int cmd_verify(const GlobalOptions& g, const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  VerifyOptions opts = default_verify_options();
  if (a.fault == "pentagon-height") {
    opts = faulty_height_options();
  } else if (!a.fault.empty()) {
    throw UsageError("unknown fault '" + a.fault + "'");
  }
  const auto checks = run_verification(opts);
  std::vector<std::string> failed;
  for (const auto& c : checks)
    if (!c.passed) failed.push_back(c.name);

  RunManifest manifest{"verify", {{"inject_fault", a.fault}}, 0, kToolVersion, utc_timestamp()};
  if (g.json) {
    json arr = json::array();
    for (const auto& c : checks) {
      arr.push_back({{"name", c.name},
                     {"passed", c.passed},
                     {"residual", std::isfinite(c.residual) ? json(c.residual) : json(nullptr)},
                     {"tolerance", c.tolerance},
                     {"detail", c.detail}});
    }
    out << json{{"checks", arr}, {"passed", failed.empty()}, {"failed", failed}, {"manifest", manifest.to_json()}}.dump(2)
        << '\n';
  } else {
    for (const auto& c : checks) {
      out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  residual=" << format_number(c.residual)
          << " tol=" << format_number(c.tolerance);
      if (!c.detail.empty()) out << "  (" << c.detail << ')';
      out << '\n';
    }
    out << checks.size() - failed.size() << '/' << checks.size() << " checks passed\n";
  }
  if (!failed.empty()) {
    err << "verify failed:";
    for (const auto& f : failed) err << " [" << f << ']';
    err << '\n';
    return kCheckFailed;
  }
  return kOk;
}

// ---- criteria --------------------------------------------------------------

struct CriteriaArgs {
  std::string state;
  std::optional<double> lambda;
};

int cmd_criteria(const GlobalOptions& g, const CriteriaArgs& a, std::ostream& out) {
  const bool needs_lambda = a.state != "pent";
  if (needs_lambda && !a.lambda) throw UsageError("criteria " + a.state + " requires --lambda");
  const auto werner_checked = [&] {
    try {
      return werner(*a.lambda);
    } catch (const std::domain_error& e) {
      throw UsageError(e.what());
    }
  };

  std::optional<Operator> rho;
  std::string description;
  if (a.state == "werner") {
    rho = werner_checked();
    description = "rho_W(lambda)";
  } else if (a.state == "pent") {
    rho = rho_pent();
    description = "rho_Pent";
  } else if (a.state == "product") {
    rho = tensor(werner_checked(), rho_pent());
    description = "rho_W(lambda) x rho_Pent, cut A1A2|B1B2";
  } else if (a.state == "flagged") {
    rho = flagged_mixture(rho_pent(), werner_checked());
    description = "rho_Pent x |0><0|_A / 2 + rho_W(lambda) x |1><1|_A / 2";
  } else {
    throw UsageError("unknown state '" + a.state + "' (expected werner, pent, product or flagged)");
  }

  const CriteriaReport r = evaluate_criteria(*rho);
  std::map<std::string, json> params{{"state", a.state}};
  if (a.lambda) params["lambda"] = *a.lambda;
  RunManifest manifest{"criteria", params, 0, kToolVersion, utc_timestamp()};
  if (g.json) {
    out << json{{"state", a.state},
                {"description", description},
                {"layout", rho->layout().to_string()},
                {"npt", r.npt},
                {"min_pt_eigenvalue", r.min_pt_eigenvalue},
                {"reduction_ok", r.reduction_ok},
                {"min_reduction_eigenvalues", {r.min_reduction_eigenvalue_a, r.min_reduction_eigenvalue_b}},
                {"ppt_invariant", r.ppt_invariant},
                {"ppt_deviation", r.ppt_deviation},
                {"manifest", manifest.to_json()}}
               .dump(2)
        << '\n';
  } else {
    out << "state: " << description << "  layout " << rho->layout().to_string() << '\n'
        << "npt=" << (r.npt ? "true" : "false") << " min_pt_eig=" << format_number(r.min_pt_eigenvalue) << '\n'
        << "reduction_ok=" << (r.reduction_ok ? "true" : "false")
        << " min_reduction_eig_A=" << format_number(r.min_reduction_eigenvalue_a)
        << " min_reduction_eig_B=" << format_number(r.min_reduction_eigenvalue_b) << '\n'
        << "ppt_invariant=" << (r.ppt_invariant ? "true" : "false")
        << " ppt_deviation=" << format_number(r.ppt_deviation) << '\n';
  }
  return kOk;
}

// ---- witness ---------------------------------------------------------------

struct WitnessArgs {
  double lambda = 0.0;
  bool raw = false;
  bool normalized = false;
};

int cmd_witness(const GlobalOptions& g, const WitnessArgs& a, std::ostream& out) {
  if (a.raw && a.normalized) throw UsageError("--raw and --normalized are mutually exclusive");
  const Convention conv = a.normalized ? Convention::Normalized : Convention::Raw;
  if (!(a.lambda > 0.125)) throw UsageError("witness requires lambda > 1/8");
  if (conv == Convention::Normalized && a.lambda < 0.5)
    throw UsageError("the normalized convention needs a valid state, lambda >= 1/2");
  const double value = witness_value(a.lambda, conv);
  const double threshold = threshold_lambda();
  const std::string verdict = value < -kVerdictTolerance ? "distillable" : "not detected";

  RunManifest manifest{"witness", {{"lambda", a.lambda}, {"convention", to_string(conv)}}, 0, kToolVersion,
                       utc_timestamp()};
  if (g.json) {
    out << json{{"lambda", a.lambda},
                {"convention", to_string(conv)},
                {"value", value},
                {"threshold_lambda", threshold},
                {"verdict", verdict},
                {"manifest", manifest.to_json()}}
               .dump(2)
        << '\n';
  } else {
    out << "lambda=" << format_number(a.lambda) << " convention=" << to_string(conv) << '\n'
        << "value=" << format_number(value) << '\n'
        << "threshold_lambda=" << format_number(threshold) << '\n'
        << "verdict: " << verdict << '\n';
  }
  return kOk;
}

// ---- sweep -----------------------------------------------------------------

struct SweepArgs {
  double b_min = 0.0;
  double b_max = 0.0;
  int steps = 0;
  int starts = 32;
  std::uint64_t seed = kDefaultSeed;
  bool entropy = false;
  std::string out_path;
};

int cmd_sweep(const GlobalOptions& g, const SweepArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.b_min > 1.0 / 6.0)) throw UsageError("b_min must exceed 1/6 (separable boundary)");
  if (!(a.b_min < a.b_max)) throw UsageError("b_min must be smaller than b_max");
  if (!(a.b_max <= 0.2)) throw UsageError("b_max must not exceed 1/5");
  if (a.steps < 2) throw UsageError("steps must be >= 2");
  if (a.starts < 1) throw UsageError("starts must be >= 1");

  std::vector<double> grid(static_cast<std::size_t>(a.steps));
  for (int k = 0; k < a.steps; ++k)
    grid[static_cast<std::size_t>(k)] =
        k == a.steps - 1 ? a.b_max : a.b_min + (a.b_max - a.b_min) * k / static_cast<double>(a.steps - 1);

  SeeSawConfig cfg;
  cfg.num_starts = a.starts;
  cfg.rng_seed = resolve_seed(a.seed, a.entropy);
  cfg.num_threads = threads_from_env();
  const auto records = sweep_b(grid, cfg);
  const std::string csv = sweep_csv(records);

  RunManifest manifest{"sweep",
                       {{"b_min", a.b_min},
                        {"b_max", a.b_max},
                        {"steps", a.steps},
                        {"starts", a.starts},
                        {"max_iters", cfg.max_iters},
                        {"rel_tol", cfg.rel_tol},
                        {"out", a.out_path}},
                       cfg.rng_seed,
                       kToolVersion,
                       utc_timestamp()};
  {
    std::ofstream f(a.out_path, std::ios::binary | std::ios::trunc);
    if (!f) {
      err << "sweep: cannot write " << a.out_path << '\n';
      return kCheckFailed;
    }
    f << csv;
    std::ofstream m(a.out_path + ".manifest.json", std::ios::binary | std::ios::trunc);
    if (!m) {
      err << "sweep: cannot write " << a.out_path << ".manifest.json\n";
      return kCheckFailed;
    }
    m << manifest.to_json().dump(2) << '\n';
  }

  if (g.json) {
    json rows = json::array();
    for (const auto& r : records)
      rows.push_back({{"b", r.b},
                      {"lambda", r.lambda},
                      {"min_value", r.min_value},
                      {"best_start", r.best_start},
                      {"iterations", r.iterations},
                      {"converged", r.converged}});
    out << json{{"records", rows}, {"out", a.out_path}, {"manifest", manifest.to_json()}}.dump(2) << '\n';
  } else {
    out << csv;
    out << "wrote " << records.size() << " rows to " << a.out_path << '\n';
  }
  return kOk;
}

// ---- search ----------------------------------------------------------------

struct SearchArgs {
  int n = 0;
  double lambda = 0.0;
  int starts = 64;
  std::uint64_t seed = kDefaultSeed;
  bool entropy = false;
  std::string certificate;
};

int cmd_search(const GlobalOptions& g, const SearchArgs& a, std::ostream& out, std::ostream& err) {
  if (a.n < 1 || a.n > 3) throw UsageError("n must be 1, 2 or 3");
  if (!(a.lambda >= 0.5)) throw UsageError("lambda must be >= 1/2");
  if (a.starts < 1) throw UsageError("starts must be >= 1");
  SeeSawConfig cfg;
  cfg.num_starts = a.starts;
  cfg.rng_seed = resolve_seed(a.seed, a.entropy);
  cfg.num_threads = threads_from_env();
  const auto r = conjecture_evidence(a.n, a.lambda, cfg);
  const bool negative = r.value < -kVerdictTolerance;
  const std::string verdict = negative ? "negativity found" : "no negativity found";

  RunManifest manifest{"search",
                       {{"n", a.n}, {"lambda", a.lambda}, {"starts", a.starts}, {"max_iters", cfg.max_iters}},
                       cfg.rng_seed,
                       kToolVersion,
                       utc_timestamp()};
  if (!a.certificate.empty()) {
    std::ofstream f(a.certificate, std::ios::binary | std::ios::trunc);
    if (!f) {
      err << "search: cannot write " << a.certificate << '\n';
      return kCheckFailed;
    }
    json cert = certificate_json(r.vector, r.value, a.n, a.lambda);
    cert["manifest"] = manifest.to_json();
    f << cert.dump(2) << '\n';
  }
  if (g.json) {
    out << json{{"n", a.n},
                {"lambda", a.lambda},
                {"min_value", r.value},
                {"best_start", r.best_start},
                {"iterations", r.iterations},
                {"converged", r.converged},
                {"verdict", verdict},
                {"manifest", manifest.to_json()}}
               .dump(2)
        << '\n';
  } else {
    out << "n=" << a.n << " lambda=" << format_number(a.lambda) << " starts=" << a.starts << '\n'
        << "min_value=" << format_number(r.value) << " best_start=" << r.best_start
        << " iterations=" << r.iterations << " converged=" << (r.converged ? "true" : "false") << '\n'
        << "verdict: " << verdict << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bek: bound-entanglement activation toolkit", "bek"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_flag("--json", g.json, "Machine-readable output");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run the analytic verification suite");
  verify->add_option("--inject-fault", va.fault, "Test mode: corrupt an input (pentagon-height)")->group("");

  CriteriaArgs ca;
  auto* criteria = app.add_subcommand("criteria", "Entanglement criteria for a named state");
  criteria->add_option("state", ca.state, "werner | pent | product | flagged")->required();
  criteria->add_option("--lambda", ca.lambda, "Werner parameter");

  WitnessArgs wa;
  auto* witness = app.add_subcommand("witness", "Evaluate the analytic rank-2 witness");
  witness->add_option("--lambda", wa.lambda, "Werner parameter")->required();
  witness->add_flag("--raw", wa.raw, "Unnormalized convention (default)");
  witness->add_flag("--normalized", wa.normalized, "Normalized states and witness vector");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Optimized activation minimum versus b");
  sweep->add_option("--b-min", sa.b_min)->required();
  sweep->add_option("--b-max", sa.b_max)->required();
  sweep->add_option("--steps", sa.steps)->required();
  sweep->add_option("--starts", sa.starts);
  sweep->add_option("--seed", sa.seed);
  sweep->add_flag("--entropy", sa.entropy, "Draw the seed from std::random_device");
  sweep->add_option("--out", sa.out_path, "CSV output path")->required();

  SearchArgs sea;
  auto* search = app.add_subcommand("search", "Rank-2 search over n copies of rho_W(lambda)");
  search->add_option("--n", sea.n)->required();
  search->add_option("--lambda", sea.lambda)->required();
  search->add_option("--starts", sea.starts);
  search->add_option("--seed", sea.seed);
  search->add_flag("--entropy", sea.entropy, "Draw the seed from std::random_device");
  search->add_option("--certificate", sea.certificate, "Write the best vector as JSON");

  for (auto* sub : {verify, criteria, witness, sweep, search})
    sub->add_flag("--json", g.json, "Machine-readable output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify(g, va, out, err);
    if (*criteria) return cmd_criteria(g, ca, out);
    if (*witness) return cmd_witness(g, wa, out);
    if (*sweep) return cmd_sweep(g, sa, out, err);
    if (*search) return cmd_search(g, sea, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace bek::cli
