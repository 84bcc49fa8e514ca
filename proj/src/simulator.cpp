#include "fpgmm/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include "fpgmm/decoder.hpp"
#include "fpgmm/worker.hpp"

namespace fpgmm {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::vector<std::size_t> pick_stragglers(const StragglerModel& model, std::size_t N,
                                         Rng& rng) {
  std::vector<std::size_t> out;
  switch (model.mode) {
    case StragglerModel::Mode::none:
      break;
    case StragglerModel::Mode::fixed_count: {
      if (model.count > N) {
        throw ValidationError(ValidationIssue::non_positive_parameter,
                              "straggler count exceeds N");
      }
      std::vector<std::size_t> ids(N);
      for (std::size_t g = 0; g < N; ++g) ids[g] = g;
      for (std::size_t i = 0; i < model.count; ++i) {
        std::swap(ids[i], ids[i + uniform_residue(N - i, rng)]);
      }
      out.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(model.count));
      break;
    }
    case StragglerModel::Mode::probability: {
      if (!(model.probability >= 0.0 && model.probability <= 1.0)) {
        throw ValidationError(ValidationIssue::non_positive_parameter,
                              "straggler probability outside [0, 1]");
      }
      // 53-bit uniform in [0, 1).
      for (std::size_t g = 0; g < N; ++g) {
        const double u = static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53;
        if (u < model.probability) out.push_back(g);
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WorkerOutput> run_workers(const std::vector<BlockMatrix>& lib_a,
                                      const std::vector<BlockMatrix>& lib_b,
                                      const std::vector<Query>& queries,
                                      const std::vector<std::size_t>& responders,
                                      std::size_t threads) {
  std::vector<std::optional<WorkerOutput>> slots(responders.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < responders.size(); i += stride) {
      slots[i] = respond(lib_a, lib_b, queries[responders[i]]);
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, responders.size()));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }
  std::vector<WorkerOutput> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace

RunReport run(const InstanceConfig& config, const RunOptions& opts) {
  const SchemeParams& p = config.params;
  const DesiredSet desired(config.desired);
  const Rng root(config.seed);
  Rng rng_group = root.split(1);
  Rng rng_plan = root.split(2);
  Rng rng_noise = root.split(3);
  Rng rng_data = root.split(4);
  Rng rng_straggle = root.split(5);

  const ProtocolInstance inst = make_instance(p, desired, config.grouping, rng_group);

  RunReport rep;
  rep.params = p;
  rep.s_size = desired.size();
  rep.seed = config.seed;
  const auto cost = fpgmm_metrics(p.m, p.n, p.r, p.T, desired.size());
  rep.R = inst.threshold();
  rep.D = cost.D;
  rep.C = cost.C;
  PhaseTimings timings;

  std::vector<BlockMatrix> lib_a, lib_b;
  for (std::size_t i = 0; i < p.lib_a; ++i) lib_a.push_back(BlockMatrix::random(p.q, p.alpha, p.alpha, rng_data));
  for (std::size_t j = 0; j < p.lib_b; ++j) lib_b.push_back(BlockMatrix::random(p.q, p.alpha, p.alpha, rng_data));

  auto t0 = Clock::now();
  const EvaluationPlan plan = assign_points(p, inst.expanded, config.points, rng_plan);
  const NoiseTensor noise = NoiseTensor::sample(p, rng_noise);
  const std::vector<Query> queries = build_queries(p, inst.grouping, plan, noise);
  timings.encode_ms = elapsed_ms(t0);

  rep.stragglers = pick_stragglers(config.stragglers, p.N, rng_straggle);
  for (std::size_t g = 0; g < p.N; ++g) {
    if (!std::binary_search(rep.stragglers.begin(), rep.stragglers.end(), g)) {
      rep.responders.push_back(g);
    }
  }

  t0 = Clock::now();
  const std::vector<WorkerOutput> outputs =
      run_workers(lib_a, lib_b, queries, rep.responders, opts.threads);
  timings.compute_ms = elapsed_ms(t0);
  for (const auto& o : outputs) rep.max_mul_count = std::max(rep.max_mul_count, o.mul_count);

  const auto s = static_cast<std::int64_t>(desired.size());
  const auto alpha = static_cast<std::int64_t>(p.alpha);
  rep.realized_ncc = Ratio(static_cast<std::int64_t>(rep.max_mul_count), s * alpha * alpha * alpha);

  if (outputs.size() < rep.R) {
    rep.failure_reason = "insufficient responses: need " + std::to_string(rep.R) +
                         ", got " + std::to_string(outputs.size());
    if (opts.timings) rep.timings = timings;
    return rep;
  }

  t0 = Clock::now();
  const RecoveredProducts recovered =
      solve_and_extract(outputs, make_basis_spec(inst, plan), plan, inst.grouping);
  const auto products = assemble(recovered, inst.expanded);
  timings.decode_ms = elapsed_ms(t0);

  rep.used_workers = recovered.used_workers;
  const auto block_symbols = static_cast<std::int64_t>((p.alpha / p.m) * (p.alpha / p.n));
  rep.realized_ndc = Ratio(static_cast<std::int64_t>(rep.used_workers.size()) * block_symbols,
                           s * alpha * alpha);

  rep.success = true;
  if (config.audit) {
    t0 = Clock::now();
    rep.audited = true;
    rep.audit_passed = products.size() == desired.size();
    for (const auto& [pair, product] : products) {
      if (!(product == matmul(lib_a[pair.left], lib_b[pair.right]))) {
        rep.audit_passed = false;
        break;
      }
    }
    timings.audit_ms = elapsed_ms(t0);
    if (!rep.audit_passed) {
      rep.success = false;
      rep.failure_reason = "decoded products differ from direct multiplication";
    }
  }
  if (opts.timings) rep.timings = timings;
  return rep;
}

std::vector<ProductIndex> choose_desired(std::size_t lib_a, std::size_t lib_b,
                                         std::size_t count, Rng& rng) {
  const std::size_t total = lib_a * lib_b;
  if (count > total) {
    throw ValidationError(ValidationIssue::index_out_of_range,
                          "|S|=" + std::to_string(count) + " exceeds L_A*L_B=" +
                              std::to_string(total));
  }
  std::vector<std::size_t> ids(total);
  for (std::size_t t = 0; t < total; ++t) ids[t] = t;
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(ids[i], ids[i + uniform_residue(total - i, rng)]);
  }
  std::vector<ProductIndex> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({ids[i] / lib_b, ids[i] % lib_b});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SweepRecord> sweep(const SweepConfig& config,
                               const std::vector<SweepPoint>& grid,
                               std::size_t trials, const RunOptions& opts) {
  std::vector<SweepRecord> out;
  const Rng root(config.seed);
  for (std::size_t pi = 0; pi < grid.size(); ++pi) {
    const SweepPoint& pt = grid[pi];
    for (std::size_t trial = 0; trial < trials; ++trial) {
      SweepRecord rec{pt, trial, root.split((pi << 20) | trial).seed(), std::nullopt, {}};
      try {
        Rng pick(rec.seed);
        InstanceConfig ic;
        ic.params = {config.alpha, config.lib_a, config.lib_b, pt.m, pt.n, pt.r, pt.T, 0,
                     config.q};
        if (pt.r == 0 || (pt.m * pt.n) % pt.r != 0) {
          throw ValidationError(ValidationIssue::groups_do_not_divide_blocks,
                                "r=" + std::to_string(pt.r) + " does not divide mn=" +
                                    std::to_string(pt.m * pt.n));
        }
        ic.params.N = recovery_threshold(ic.params, pt.s_size) + config.extra_workers;
        ic.desired = choose_desired(config.lib_a, config.lib_b, pt.s_size, pick);
        ic.seed = rec.seed;
        ic.grouping = config.grouping;
        ic.points = config.points;
        ic.stragglers = config.stragglers;
        ic.audit = config.audit;
        rec.report = run(ic, opts);
      } catch (const Error& e) {
        rec.error = e.what();
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace fpgmm
