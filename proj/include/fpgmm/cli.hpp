#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fpgmm/costmodel.hpp"
#include "fpgmm/privacy.hpp"
#include "fpgmm/serialize.hpp"
#include "fpgmm/simulator.hpp"

namespace fpgmm::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kProtocolFailure = 2,
  kPrivacyFailure = 3,
};

struct CommonOptions {
  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;
  bool timings = false;
  std::optional<std::size_t> stragglers;  // run: fixed straggler count
  std::optional<std::string> csv_path;    // sweep: CSV summary
  bool zero_noise = false;                // privacy negative control
};

// Config parsing. Unknown keys and wrong types throw ConfigError.
InstanceConfig parse_run_config(const Json& j);

struct SweepJob {
  SweepConfig config;
  std::vector<SweepPoint> grid;
  std::size_t trials = 1;
};
SweepJob parse_sweep_config(const Json& j);

struct TradeoffJob {
  std::int64_t s_size = 5;
  std::int64_t T = 1;
  std::vector<std::int64_t> worker_caps;
  std::vector<double> ncc_bounds;
  SearchLimits limits;
};
TradeoffJob parse_tradeoff_config(const Json& j);

/// `points` log-spaced values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

struct PrivacyJob {
  SchemeParams params;
  DesiredSet s1, s2;
  std::vector<std::size_t> colluders;  // 0-based
  PrivacyCheckOptions options;
};
PrivacyJob parse_privacy_config(const Json& j);

Json load_json_file(const std::string& path);

std::vector<TradeoffPoint> run_tradeoff(const TradeoffJob& job);

// Each command writes its primary output to `out` unless opts.out_path is
// set, and diagnostics to `err`.
int cmd_run(const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_tradeoff(const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_privacy(const CommonOptions& opts, std::ostream& out, std::ostream& err);

/// Full command line entry point.
int main_entry(int argc, char** argv);

}  // namespace fpgmm::cli
