#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace bek;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "bek_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("verify") {
  const Outcome ok = invoke({"verify"});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.out.find("[FAIL]") == std::string::npos);
  CHECK(ok.out.find("checks passed") != std::string::npos);

  const Outcome bad = invoke({"verify", "--inject-fault", "pentagon-height"});
  CHECK(bad.code == cli::kCheckFailed);
  CHECK(bad.err.find("pentagon orthogonality") != std::string::npos);

  const Outcome j = invoke({"verify", "--json"});
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["passed"].get<bool>());
  CHECK(doc["checks"].size() >= 11);
  CHECK(doc["manifest"]["tool_version"] == cli::kToolVersion);

  CHECK(invoke({"verify", "--inject-fault", "nonsense"}).code == cli::kUsage);
}

TEST_CASE("verification checks run standalone") {
  for (const auto& c : cli::run_verification(cli::default_verify_options())) {
    INFO(c.name);
    CHECK(c.passed);
  }
  bool orthogonality_failed = false;
  for (const auto& c : cli::run_verification(cli::faulty_height_options()))
    if (c.name == "pentagon orthogonality") orthogonality_failed = !c.passed;
  CHECK(orthogonality_failed);
}

TEST_CASE("criteria") {
  const Outcome w = invoke({"criteria", "werner", "--lambda", "2"});
  CHECK(w.code == 0);
  CHECK(w.out.find("npt=true") != std::string::npos);

  const auto doc = nlohmann::json::parse(invoke({"--json", "criteria", "werner", "--lambda", "2"}).out);
  CHECK(std::abs(doc["min_pt_eigenvalue"].get<double>() + 1.0 / 15.0) < 1e-14);
  CHECK(doc["reduction_ok"].get<bool>());

  const auto p = nlohmann::json::parse(invoke({"criteria", "pent", "--json"}).out);
  CHECK_FALSE(p["npt"].get<bool>());
  CHECK(p["ppt_invariant"].get<bool>());

  const auto prod = nlohmann::json::parse(invoke({"criteria", "product", "--lambda", "2", "--json"}).out);
  CHECK(prod["reduction_ok"].get<bool>());
  CHECK(prod["npt"].get<bool>());
  CHECK(prod["layout"] == "[(3,A),(3,B),(3,A),(3,B)]");

  const auto fl = nlohmann::json::parse(invoke({"criteria", "flagged", "--lambda", "2", "--json"}).out);
  CHECK(fl["layout"] == "[(3,A),(3,B),(2,A)]");

  CHECK(invoke({"criteria", "werner"}).code == cli::kUsage);
  CHECK(invoke({"criteria", "werner", "--lambda", "0.3"}).code == cli::kUsage);
  CHECK(invoke({"criteria", "bogus", "--lambda", "2"}).code == cli::kUsage);
}

TEST_CASE("witness") {
  const Outcome raw = invoke({"witness", "--lambda", "2", "--raw"});
  CHECK(raw.code == 0);
  CHECK(raw.out.find("verdict: distillable") != std::string::npos);
  CHECK(raw.out.find("convention=raw") != std::string::npos);

  const auto doc = nlohmann::json::parse(invoke({"witness", "--lambda", "2", "--json"}).out);
  CHECK(std::abs(doc["value"].get<double>() - (2.0 * std::sqrt(5.0) - 4.5)) < 1e-12);
  CHECK(doc["convention"] == "raw");

  const auto above = nlohmann::json::parse(invoke({"witness", "--lambda", "2.34", "--json"}).out);
  CHECK(above["value"].get<double>() > 0.0);
  CHECK(above["verdict"] == "not detected");

  const auto norm = nlohmann::json::parse(invoke({"witness", "--lambda", "2", "--normalized", "--json"}).out);
  CHECK(norm["convention"] == "normalized");
  CHECK(norm["value"].get<double>() == doctest::Approx(-1.5828e-4).epsilon(1e-3));

  CHECK(invoke({"witness", "--lambda", "2", "--raw", "--normalized"}).code == cli::kUsage);
  CHECK(invoke({"witness"}).code == cli::kUsage);
  CHECK(invoke({"witness", "--lambda", "0.1"}).code == cli::kUsage);
}

TEST_CASE("sweep") {
  const fs::path a = scratch("a.csv"), b = scratch("b.csv");
  const std::vector<std::string> args{"sweep", "--b-min", "0.18", "--b-max", "0.2", "--steps", "3", "--starts", "3", "--seed", "9"};
  auto with_out = [&](const fs::path& p) {
    auto v = args;
    v.insert(v.end(), {"--out", p.string()});
    return v;
  };
  REQUIRE(invoke(with_out(a)).code == 0);
  REQUIRE(invoke(with_out(b)).code == 0);
  const std::string csv = slurp(a);
  CHECK(csv == slurp(b));
  CHECK(csv.rfind("b,lambda,min_value,best_start,iterations,converged\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("\n0.20000000000000001,2,") != std::string::npos);

  const auto manifest = nlohmann::json::parse(slurp(a.string() + ".manifest.json"));
  CHECK(manifest["command"] == "sweep");
  CHECK(manifest["rng_seed"] == 9);
  CHECK(manifest["parameters"]["steps"] == 3);
  CHECK(manifest.contains("timestamp"));

  SUBCASE("usage errors") {
    auto bad = [&](std::vector<std::string> v) {
      v.insert(v.end(), {"--out", scratch("bad.csv").string()});
      return invoke(v).code;
    };
    CHECK(bad({"sweep", "--b-min", "0.16", "--b-max", "0.2", "--steps", "3"}) == cli::kUsage);
    CHECK(bad({"sweep", "--b-min", "0.18", "--b-max", "0.21", "--steps", "3"}) == cli::kUsage);
    CHECK(bad({"sweep", "--b-min", "0.19", "--b-max", "0.18", "--steps", "3"}) == cli::kUsage);
    CHECK(bad({"sweep", "--b-min", "0.18", "--b-max", "0.2", "--steps", "1"}) == cli::kUsage);
  }
}

TEST_CASE("search") {
  const fs::path cert = scratch("cert.json");
  const Outcome o = invoke({"search", "--n", "1", "--lambda", "1", "--starts", "4", "--certificate", cert.string()});
  CHECK(o.code == 0);
  CHECK(o.out.find("verdict: negativity found") != std::string::npos);
  const auto doc = nlohmann::json::parse(slurp(cert));
  CHECK(doc["amplitudes"].size() == 18);
  CHECK(doc["layout"].size() == 2);
  CHECK(doc["value"].get<double>() < 0.0);

  const auto j1 = nlohmann::json::parse(invoke({"search", "--n", "2", "--lambda", "2", "--starts", "2", "--json"}).out);
  const auto j2 = nlohmann::json::parse(invoke({"search", "--n", "2", "--lambda", "2", "--starts", "2", "--json"}).out);
  CHECK(j1["min_value"] == j2["min_value"]);
  CHECK(j1["verdict"] == "no negativity found");

  CHECK(invoke({"search", "--n", "4", "--lambda", "2"}).code == cli::kUsage);
  CHECK(invoke({"search", "--n", "1", "--lambda", "0.2"}).code == cli::kUsage);
}

TEST_CASE("general usage") {
  CHECK(invoke({}).code == cli::kUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kUsage);
  CHECK(invoke({"--help"}).code == cli::kOk);
  CHECK(cli::format_number(0.1) == "0.10000000000000001");
  CHECK(cli::format_number(2.0) == "2");
}
