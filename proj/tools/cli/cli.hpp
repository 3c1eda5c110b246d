// cli.hpp
// The `bek` command-line surface, callable in-process for tests.

#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bek/optimizer.hpp"

namespace bek::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 20011;
/// Witness values must be below -kVerdictTolerance to be called "distillable".
inline constexpr double kVerdictTolerance = 1e-9;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct RunManifest {
  std::string command;
  std::map<std::string, nlohmann::json> parameters;
  std::uint64_t rng_seed = kDefaultSeed;
  std::string tool_version = kToolVersion;
  std::string timestamp;  // ISO-8601 UTC

  nlohmann::json to_json() const;
};

std::string utc_timestamp();

/// "%.17g" in the C locale.
std::string format_number(double x);

/// Header line plus one line per record, '\n' terminated.
std::string sweep_csv(const std::vector<SweepRecord>& records);

// ---- verification suite ----------------------------------------------------

struct VerifyOptions {
  /// Apex height of the pentagon vectors. Anything but pent_height() is a
  /// deliberately injected fault.
  double pent_height;
};

VerifyOptions default_verify_options();
/// The canonical height with the inner sign flipped: sqrt(sqrt5 - 1) / 2.
VerifyOptions faulty_height_options();

struct CheckResult {
  std::string name;
  bool passed;
  double residual;
  double tolerance;
  std::string detail;
};

std::vector<CheckResult> run_verification(const VerifyOptions& opts);

/// Minimal JSON document for a search certificate: layout plus interleaved
/// (re, im) amplitude pairs.
nlohmann::json certificate_json(const Ket& psi, double value, int n, double lambda);

}  // namespace bek::cli
