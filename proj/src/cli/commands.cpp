#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>

#include "fpgmm/cli.hpp"

namespace fpgmm::cli {

namespace {

// Runs `body` against the --out file when given, else against `fallback`.
void emit(const std::optional<std::string>& path, std::ostream& fallback,
          const std::function<void(std::ostream&)>& body) {
  if (!path) {
    body(fallback);
    return;
  }
  std::ofstream file(*path);
  if (!file) throw ConfigError("cannot open output file '" + *path + "'");
  body(file);
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ValidationError& e) {
    err << "invalid instance: " << e.what() << '\n';
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace

std::vector<TradeoffPoint> run_tradeoff(const TradeoffJob& job) {
  std::vector<TradeoffPoint> out;
  for (std::int64_t cap : job.worker_caps) {
    for (Scheme scheme : {Scheme::fpgmm, Scheme::mrfpmm}) {
      for (double bound : job.ncc_bounds) {
        out.push_back(optimize_tradeoff(scheme, bound, cap, job.T, job.s_size, job.limits));
      }
    }
  }
  return out;
}

int cmd_run(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    InstanceConfig config = parse_run_config(load_json_file(opts.config_path));
    if (opts.seed) config.seed = *opts.seed;
    if (opts.stragglers) {
      config.stragglers.mode = StragglerModel::Mode::fixed_count;
      config.stragglers.count = *opts.stragglers;
    }
    const RunReport rep = run(config, {opts.threads, opts.timings});
    emit(opts.out_path, out, [&](std::ostream& os) {
      os << run_report_to_json(rep).dump(2) << '\n';
    });
    if (!rep.success) {
      err << "protocol failure: " << rep.failure_reason << '\n';
      return int{kProtocolFailure};
    }
    return int{kOk};
  });
}

int cmd_sweep(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SweepJob job = parse_sweep_config(load_json_file(opts.config_path));
    if (opts.seed) job.config.seed = *opts.seed;
    const auto records = sweep(job.config, job.grid, job.trials, {opts.threads, opts.timings});
    emit(opts.out_path, out, [&](std::ostream& os) {
      for (const auto& rec : records) os << sweep_record_to_json(rec).dump() << '\n';
    });
    if (opts.csv_path) {
      emit(opts.csv_path, out, [&](std::ostream& os) {
        os << kRunCsvHeader << '\n';
        for (const auto& rec : records) {
          if (rec.report) os << run_csv_row(*rec.report) << '\n';
        }
      });
    }
    for (const auto& rec : records) {
      if (!rec.error.empty()) {
        err << "grid point (m=" << rec.point.m << ", n=" << rec.point.n << ", r=" << rec.point.r
            << ", T=" << rec.point.T << ", |S|=" << rec.point.s_size << "): " << rec.error
            << '\n';
      }
    }
    return int{kOk};
  });
}

int cmd_tradeoff(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const TradeoffJob job = parse_tradeoff_config(load_json_file(opts.config_path));
    const auto points = run_tradeoff(job);
    emit(opts.out_path, out, [&](std::ostream& os) {
      os << kTradeoffCsvHeader << '\n';
      for (const auto& p : points) os << tradeoff_csv_row(p) << '\n';
    });
    err << "note: mrfpmm rows are a cost comparator only; that baseline reveals |S|\n";
    return int{kOk};
  });
}

int cmd_privacy(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    PrivacyJob job = parse_privacy_config(load_json_file(opts.config_path));
    if (opts.seed) job.options.seed = *opts.seed;
    job.options.enumeration.threads = opts.threads;
    job.options.enumeration.zero_noise = opts.zero_noise;
    const PrivacyVerdict v = privacy_check(job.params, job.s1, job.s2, job.colluders, job.options);
    emit(opts.out_path, out, [&](std::ostream& os) {
      os << privacy_verdict_to_json(v).dump(2) << '\n';
    });
    if (!v.within_contract) {
      err << "note: " << v.colluders.size() << " colluders exceed T=" << job.params.T
          << "; comparison reported without a verdict\n";
      return int{kOk};
    }
    return v.pass ? int{kOk} : int{kPrivacyFailure};
  });
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Private grouped matrix multiplication workbench"};
  app.require_subcommand(1);
  app.footer(
      "Every config key is documented in docs/config.md.\n"
      "Exit codes: 0 ok, 1 config or validation error, 2 protocol failure, 3 privacy FAIL.");

  CommonOptions opts;
  std::string out_path, csv_path;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "JSON config file")->required();
    sub->add_option("--out", out_path, "Write the primary output here instead of stdout");
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_option("--threads", opts.threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* run_cmd = app.add_subcommand("run", "Run one protocol instance and print its report");
  add_common(run_cmd);
  run_cmd->add_flag("--timings", opts.timings, "Include wall-clock phase timings");
  std::size_t stragglers = 0;
  run_cmd->add_option("--stragglers", stragglers, "Drop exactly this many random workers");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter grid; JSON lines output");
  add_common(sweep_cmd);
  sweep_cmd->add_flag("--timings", opts.timings, "Include wall-clock phase timings");
  sweep_cmd->add_option("--csv", csv_path, "Also write a CSV summary");

  auto* tradeoff_cmd =
      app.add_subcommand("tradeoff", "Minimise NDC under NCC bounds for both schemes; CSV output");
  add_common(tradeoff_cmd);

  auto* privacy_cmd =
      app.add_subcommand("privacy", "Exhaustively compare colluder views of two desired sets");
  add_common(privacy_cmd);
  privacy_cmd->add_flag("--unsafe-zero-noise", opts.zero_noise,
                        "Testing only: zero all noise (must FAIL)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  auto given = [](CLI::App* sub, const char* name) { return sub->count(name) > 0; };
  CLI::App* active = app.get_subcommands().front();
  if (given(active, "--out")) opts.out_path = out_path;
  if (given(active, "--seed")) opts.seed = seed;
  if (active == run_cmd && given(run_cmd, "--stragglers")) opts.stragglers = stragglers;
  if (active == sweep_cmd && given(sweep_cmd, "--csv")) opts.csv_path = csv_path;

  if (active == run_cmd) return cmd_run(opts, std::cout, std::cerr);
  if (active == sweep_cmd) return cmd_sweep(opts, std::cout, std::cerr);
  if (active == tradeoff_cmd) return cmd_tradeoff(opts, std::cout, std::cerr);
  return cmd_privacy(opts, std::cout, std::cerr);
}

}  // namespace fpgmm::cli
