#include <cmath>
#include <fstream>
#include <set>
#include <type_traits>

#include "fpgmm/cli.hpp"

namespace fpgmm::cli {

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  if constexpr (std::is_unsigned_v<T>) {
    if (j.at(key).is_number_integer() && j.at(key).get<std::int64_t>() < 0) {
      throw ConfigError(std::string("key '") + key + "' must be non-negative");
    }
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("key '") + key + "' has the wrong type");
  }
}

template <typename T>
T require(const Json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing required key '") + key + "'");
  return get_or<T>(j, key, T{});
}

std::size_t count(const Json& j, const char* key, std::size_t fallback) {
  return get_or<std::size_t>(j, key, fallback);
}

Modulus modulus(const Json& j) {
  const u64 q = get_or<u64>(j, "q", Modulus::kDefault);
  try {
    return Modulus(q);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

std::vector<ProductIndex> pairs(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw ConfigError(std::string("key '") + key + "' must be a list of [i, j] pairs");
  }
  std::vector<ProductIndex> out;
  for (const auto& p : j.at(key)) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
        !p[1].is_number_integer() || p[0].get<std::int64_t>() < 1 ||
        p[1].get<std::int64_t>() < 1) {
      throw ConfigError(std::string("entries of '") + key +
                        "' must be [i, j] with 1-based indices");
    }
    out.push_back({p[0].get<std::size_t>() - 1, p[1].get<std::size_t>() - 1});
  }
  return out;
}

StragglerModel stragglers(const Json& j) {
  StragglerModel model;
  if (!j.contains("stragglers")) return model;
  const Json& s = j.at("stragglers");
  reject_unknown(s, {"mode", "count", "probability"}, "stragglers");
  const auto mode = get_or<std::string>(s, "mode", "none");
  if (mode == "none") {
    model.mode = StragglerModel::Mode::none;
  } else if (mode == "fixed") {
    model.mode = StragglerModel::Mode::fixed_count;
    model.count = count(s, "count", 0);
  } else if (mode == "probability") {
    model.mode = StragglerModel::Mode::probability;
    model.probability = get_or<double>(s, "probability", 0.0);
    if (!(model.probability >= 0.0 && model.probability <= 1.0)) {
      throw ConfigError("straggler probability must lie in [0, 1]");
    }
  } else {
    throw ConfigError("unknown straggler mode '" + mode + "'");
  }
  return model;
}

GroupingPolicy grouping(const Json& j) {
  try {
    return parse_grouping_policy(get_or<std::string>(j, "grouping_policy", "round_robin"));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

PointPolicy points(const Json& j) {
  try {
    return parse_point_policy(get_or<std::string>(j, "point_policy", "random"));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

InstanceConfig parse_run_config(const Json& j) {
  reject_unknown(j,
                 {"q", "alpha", "L_A", "L_B", "m", "n", "r", "T", "N", "S", "seed",
                  "grouping_policy", "point_policy", "stragglers", "audit"},
                 "run config");
  InstanceConfig c;
  c.params.q = modulus(j);
  c.params.alpha = require<std::size_t>(j, "alpha");
  c.params.lib_a = require<std::size_t>(j, "L_A");
  c.params.lib_b = require<std::size_t>(j, "L_B");
  c.params.m = count(j, "m", 1);
  c.params.n = count(j, "n", 1);
  c.params.r = count(j, "r", 1);
  c.params.T = count(j, "T", 1);
  c.params.N = require<std::size_t>(j, "N");
  c.desired = pairs(j, "S");
  c.seed = get_or<std::uint64_t>(j, "seed", 0);
  c.grouping = grouping(j);
  c.points = points(j);
  c.stragglers = stragglers(j);
  c.audit = get_or<bool>(j, "audit", true);
  return c;
}

SweepJob parse_sweep_config(const Json& j) {
  reject_unknown(j,
                 {"q", "alpha", "L_A", "L_B", "seed", "trials", "extra_workers", "grid",
                  "grouping_policy", "point_policy", "stragglers", "audit"},
                 "sweep config");
  SweepJob job;
  job.config.q = modulus(j);
  job.config.alpha = require<std::size_t>(j, "alpha");
  job.config.lib_a = require<std::size_t>(j, "L_A");
  job.config.lib_b = require<std::size_t>(j, "L_B");
  job.config.seed = get_or<std::uint64_t>(j, "seed", 0);
  job.config.extra_workers = count(j, "extra_workers", 0);
  job.config.grouping = grouping(j);
  job.config.points = points(j);
  job.config.stragglers = stragglers(j);
  job.config.audit = get_or<bool>(j, "audit", true);
  job.trials = count(j, "trials", 1);
  if (!j.contains("grid") || !j.at("grid").is_array()) {
    throw ConfigError("sweep config needs a 'grid' list");
  }
  for (const auto& pt : j.at("grid")) {
    reject_unknown(pt, {"m", "n", "r", "T", "S_size"}, "grid point");
    job.grid.push_back({count(pt, "m", 1), count(pt, "n", 1), count(pt, "r", 1),
                        count(pt, "T", 1), count(pt, "S_size", 1)});
  }
  return job;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (points == 0) return {};
  if (!(lo > 0) || !(hi >= lo)) throw ConfigError("ncc grid needs 0 < min <= max");
  if (points == 1) return {lo};
  std::vector<double> out;
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    out.push_back(i + 1 == points ? hi : lo * std::exp(step * static_cast<double>(i)));
  }
  return out;
}

TradeoffJob parse_tradeoff_config(const Json& j) {
  reject_unknown(j, {"S_size", "T", "worker_caps", "ncc_bounds", "ncc_grid",
                     "search_limits", "seed"},
                 "tradeoff config");
  TradeoffJob job;
  job.s_size = get_or<std::int64_t>(j, "S_size", 5);
  job.T = get_or<std::int64_t>(j, "T", 1);
  job.worker_caps = get_or<std::vector<std::int64_t>>(j, "worker_caps", {500, 1000});
  if (job.s_size <= 0 || job.T <= 0) throw ConfigError("S_size and T must be positive");
  for (auto cap : job.worker_caps) {
    if (cap <= 0) throw ConfigError("worker caps must be positive");
  }
  if (j.contains("ncc_bounds") && j.contains("ncc_grid")) {
    throw ConfigError("give either 'ncc_bounds' or 'ncc_grid', not both");
  }
  if (j.contains("ncc_bounds")) {
    job.ncc_bounds = get_or<std::vector<double>>(j, "ncc_bounds", {});
    for (double b : job.ncc_bounds) {
      if (!(b > 0)) throw ConfigError("ncc bounds must be positive");
    }
  } else if (j.contains("ncc_grid")) {
    const Json& g = j.at("ncc_grid");
    reject_unknown(g, {"min", "max", "points"}, "ncc_grid");
    job.ncc_bounds = log_grid(require<double>(g, "min"), require<double>(g, "max"),
                              count(g, "points", 0));
  }
  if (j.contains("search_limits")) {
    const Json& s = j.at("search_limits");
    reject_unknown(s, {"max_m", "max_n", "max_p"}, "search_limits");
    job.limits.max_m = get_or<std::int64_t>(s, "max_m", job.limits.max_m);
    job.limits.max_n = get_or<std::int64_t>(s, "max_n", job.limits.max_n);
    job.limits.max_p = get_or<std::int64_t>(s, "max_p", job.limits.max_p);
  }
  return job;
}

PrivacyJob parse_privacy_config(const Json& j) {
  reject_unknown(j,
                 {"q", "alpha", "L_A", "L_B", "m", "n", "r", "T", "N", "s1", "s2",
                  "colluders", "seed", "budget", "grouping_policy", "point_policy"},
                 "privacy config");
  PrivacyJob job;
  job.params.q = modulus(j);
  job.params.lib_a = require<std::size_t>(j, "L_A");
  job.params.lib_b = require<std::size_t>(j, "L_B");
  job.params.m = count(j, "m", 1);
  job.params.n = count(j, "n", 1);
  job.params.r = count(j, "r", 1);
  job.params.T = count(j, "T", 1);
  job.params.N = require<std::size_t>(j, "N");
  // Matrices never materialise here; alpha only has to be divisible by m, n.
  job.params.alpha = count(j, "alpha", job.params.m * job.params.n);
  job.s1 = DesiredSet(pairs(j, "s1"));
  job.s2 = DesiredSet(pairs(j, "s2"));
  for (std::size_t g : get_or<std::vector<std::size_t>>(j, "colluders", {1})) {
    if (g == 0) throw ConfigError("colluder ids are 1-based");
    job.colluders.push_back(g - 1);
  }
  job.options.seed = get_or<std::uint64_t>(j, "seed", 0);
  job.options.enumeration.budget = get_or<std::uint64_t>(j, "budget", 10'000'000);
  job.options.grouping = grouping(j);
  job.options.points = points(j);
  return job;
}

}  // namespace fpgmm::cli
