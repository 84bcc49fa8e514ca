#include "fpgmm/serialize.hpp"

#include <cstdio>
#include <sstream>

namespace fpgmm {

namespace {

Json pairs_to_json(const std::vector<ProductIndex>& pairs) {
  Json out = Json::array();
  for (const auto& p : pairs) out.push_back({p.left + 1, p.right + 1});
  return out;
}

Json ids_to_json(const std::vector<std::size_t>& ids) {
  Json out = Json::array();
  for (std::size_t g : ids) out.push_back(g + 1);
  return out;
}

Json evals_to_json(const std::vector<u64>& flat, std::size_t rows, std::size_t r) {
  Json out = Json::array();
  for (std::size_t i = 0; i < rows; ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < r; ++k) row.push_back(flat[i * r + k]);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<u64> evals_from_json(const Json& j, std::size_t r, std::size_t& rows) {
  rows = j.size();
  std::vector<u64> flat;
  for (const auto& row : j) {
    if (row.size() != r) throw Error("evaluation row has " + std::to_string(row.size()) +
                                     " entries, expected r=" + std::to_string(r));
    for (const auto& v : row) flat.push_back(v.get<u64>());
  }
  return flat;
}

}  // namespace

Json matrix_to_json(const BlockMatrix& m) {
  return {{"rows", m.rows()},
          {"cols", m.cols()},
          {"q", m.modulus().value()},
          {"entries", std::vector<u64>(m.entries().begin(), m.entries().end())}};
}

BlockMatrix matrix_from_json(const Json& j) {
  try {
    return BlockMatrix::from_entries(Modulus(j.at("q").get<u64>()), j.at("rows").get<std::size_t>(),
                                     j.at("cols").get<std::size_t>(),
                                     j.at("entries").get<std::vector<u64>>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed matrix literal: ") + e.what());
  }
}

Json query_to_json(const Query& q) {
  return {{"worker", q.worker + 1},
          {"m", q.m},
          {"n", q.n},
          {"r", q.r},
          {"a_evals", evals_to_json(q.a_evals, q.rows_a, q.r)},
          {"b_evals", evals_to_json(q.b_evals, q.rows_b, q.r)}};
}

Query query_from_json(const Json& j) {
  try {
    Query q;
    const auto worker = j.at("worker").get<std::size_t>();
    if (worker == 0) throw Error("worker ids are 1-based");
    q.worker = worker - 1;
    q.m = j.at("m").get<std::size_t>();
    q.n = j.at("n").get<std::size_t>();
    q.r = j.at("r").get<std::size_t>();
    q.a_evals = evals_from_json(j.at("a_evals"), q.r, q.rows_a);
    q.b_evals = evals_from_json(j.at("b_evals"), q.r, q.rows_b);
    return q;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed query: ") + e.what());
  }
}

Json worker_output_to_json(const WorkerOutput& o) {
  return {{"worker", o.worker + 1},
          {"rows", o.U.rows()},
          {"cols", o.U.cols()},
          {"entries", std::vector<u64>(o.U.entries().begin(), o.U.entries().end())},
          {"mul_count", o.mul_count}};
}

WorkerOutput worker_output_from_json(const Json& j, Modulus q) {
  try {
    const auto worker = j.at("worker").get<std::size_t>();
    if (worker == 0) throw Error("worker ids are 1-based");
    return {worker - 1,
            BlockMatrix::from_entries(q, j.at("rows").get<std::size_t>(),
                                      j.at("cols").get<std::size_t>(),
                                      j.at("entries").get<std::vector<u64>>()),
            j.at("mul_count").get<std::uint64_t>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed worker output: ") + e.what());
  }
}

Json products_to_json(const std::map<ProductIndex, BlockMatrix>& products) {
  Json out = Json::object();
  for (const auto& [pair, mat] : products) out[to_string(pair)] = matrix_to_json(mat);
  return out;
}

std::string ratio_string(const Ratio& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Json run_report_to_json(const RunReport& rep) {
  const SchemeParams& p = rep.params;
  Json j = {
      {"success", rep.success},
      {"params",
       {{"q", p.q.value()}, {"alpha", p.alpha}, {"L_A", p.lib_a}, {"L_B", p.lib_b},
        {"m", p.m}, {"n", p.n}, {"r", p.r}, {"T", p.T}, {"N", p.N}}},
      {"S_size", rep.s_size},
      {"seed", rep.seed},
      {"R", rep.R},
      {"D", ratio_string(rep.D)},
      {"C", ratio_string(rep.C)},
      {"stragglers", ids_to_json(rep.stragglers)},
      {"responders", ids_to_json(rep.responders)},
      {"used_workers", ids_to_json(rep.used_workers)},
      {"responses_used", rep.used_workers.size()},
      {"realized_ndc", to_double(rep.realized_ndc)},
      {"realized_ndc_exact", ratio_string(rep.realized_ndc)},
      {"realized_ncc", to_double(rep.realized_ncc)},
      {"realized_ncc_exact", ratio_string(rep.realized_ncc)},
      {"max_mul_count", rep.max_mul_count},
      {"audited", rep.audited},
      {"audit_passed", rep.audit_passed},
  };
  if (!rep.failure_reason.empty()) j["failure_reason"] = rep.failure_reason;
  if (rep.timings) {
    j["timings_ms"] = {{"encode", rep.timings->encode_ms},
                       {"compute", rep.timings->compute_ms},
                       {"decode", rep.timings->decode_ms},
                       {"audit", rep.timings->audit_ms}};
  }
  return j;
}

Json sweep_record_to_json(const SweepRecord& rec) {
  Json j = {{"point",
             {{"m", rec.point.m}, {"n", rec.point.n}, {"r", rec.point.r},
              {"T", rec.point.T}, {"S_size", rec.point.s_size}}},
            {"trial", rec.trial},
            {"seed", rec.seed}};
  if (rec.report) j["report"] = run_report_to_json(*rec.report);
  if (!rec.error.empty()) j["error"] = rec.error;
  return j;
}

Json privacy_verdict_to_json(const PrivacyVerdict& v) {
  Json j = {{"pass", v.pass},
            {"within_contract", v.within_contract},
            {"bins", {{"s1", v.bins_s1}, {"s2", v.bins_s2}}},
            {"uniform", {{"s1", v.uniform_s1}, {"s2", v.uniform_s2}}},
            {"z_dims", v.z_dims},
            {"assignments", v.assignments},
            {"q", v.q},
            {"colluders", ids_to_json(v.colluders)},
            {"s1", pairs_to_json(v.s1.pairs())},
            {"s2", pairs_to_json(v.s2.pairs())}};
  if (v.first_divergence) {
    j["first_divergence"] = {{"tuple", v.first_divergence->tuple},
                             {"count_s1", v.first_divergence->count_s1},
                             {"count_s2", v.first_divergence->count_s2}};
  }
  return j;
}

std::string run_csv_row(const RunReport& rep) {
  const SchemeParams& p = rep.params;
  std::ostringstream os;
  os << p.m << ',' << p.n << ',' << p.r << ',' << p.T << ',' << rep.s_size << ',' << p.N
     << ',' << p.q.value() << ',' << rep.R << ',' << format_number(to_double(rep.realized_ndc))
     << ',' << format_number(to_double(rep.realized_ncc)) << ',' << (rep.success ? 1 : 0)
     << ',' << rep.seed;
  return os.str();
}

std::string tradeoff_csv_row(const TradeoffPoint& p) {
  std::ostringstream os;
  os << scheme_name(p.scheme) << ',' << format_number(p.ncc_bound) << ',';
  if (p.feasible) {
    os << p.m << ',' << p.n << ',' << p.r_or_p << ',' << p.T << ',' << p.s_size << ','
       << p.R << ',' << format_number(to_double(p.ndc)) << ','
       << format_number(to_double(p.ncc));
  } else {
    os << ",,," << p.T << ',' << p.s_size << ",,,";
  }
  os << ',' << p.worker_cap << ',' << (p.feasible ? 1 : 0);
  return os.str();
}

}  // namespace fpgmm
