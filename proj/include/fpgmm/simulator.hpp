#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpgmm/costmodel.hpp"
#include "fpgmm/encoder.hpp"
#include "fpgmm/instance.hpp"

namespace fpgmm {

struct StragglerModel {
  enum class Mode { none, fixed_count, probability };
  Mode mode = Mode::none;
  std::size_t count = 0;     // fixed_count: exactly this many stragglers
  double probability = 0.0;  // probability: each worker independently
};

struct InstanceConfig {
  SchemeParams params;
  std::vector<ProductIndex> desired;  // 0-based
  std::uint64_t seed = 0;
  GroupingPolicy grouping = GroupingPolicy::round_robin;
  PointPolicy points = PointPolicy::random;
  StragglerModel stragglers;
  bool audit = true;  // compare against direct products
};

struct RunOptions {
  std::size_t threads = 1;
  bool timings = false;
};

struct PhaseTimings {
  double encode_ms = 0, compute_ms = 0, decode_ms = 0, audit_ms = 0;
};

struct RunReport {
  bool success = false;
  std::string failure_reason;
  SchemeParams params;
  std::size_t s_size = 0;
  std::uint64_t seed = 0;

  std::vector<std::size_t> stragglers;  // 0-based
  std::vector<std::size_t> responders;
  std::vector<std::size_t> used_workers;

  std::size_t R = 0;  // theoretical recovery threshold
  Ratio D{0}, C{0};   // theoretical NDC / NCC constant
  Ratio realized_ndc{0};
  Ratio realized_ncc{0};
  std::uint64_t max_mul_count = 0;

  bool audited = false;
  bool audit_passed = false;
  std::optional<PhaseTimings> timings;
};

/// Encode, query, respond (minus stragglers), decode and audit. Invalid
/// configurations throw ValidationError; protocol failures are reported.
RunReport run(const InstanceConfig& config, const RunOptions& opts = {});

struct SweepPoint {
  std::size_t m = 1, n = 1, r = 1, T = 1, s_size = 1;
};

struct SweepConfig {
  std::size_t alpha = 4;
  std::size_t lib_a = 2;
  std::size_t lib_b = 2;
  Modulus q{Modulus::kDefault};
  std::uint64_t seed = 0;
  std::size_t extra_workers = 0;  // N = R + extra_workers
  GroupingPolicy grouping = GroupingPolicy::round_robin;
  PointPolicy points = PointPolicy::random;
  StragglerModel stragglers;
  bool audit = true;
};

struct SweepRecord {
  SweepPoint point;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::optional<RunReport> report;
  std::string error;  // set when the point failed validation
};

/// One record per (point, trial); validation failures are recorded, not thrown.
std::vector<SweepRecord> sweep(const SweepConfig& config,
                               const std::vector<SweepPoint>& grid,
                               std::size_t trials, const RunOptions& opts = {});

/// Deterministic choice of `count` distinct pairs from [L_A] x [L_B].
std::vector<ProductIndex> choose_desired(std::size_t lib_a, std::size_t lib_b,
                                         std::size_t count, Rng& rng);

}  // namespace fpgmm
