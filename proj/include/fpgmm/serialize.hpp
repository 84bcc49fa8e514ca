#pragma once

// JSON and CSV encodings of the public data formats. Worker ids and library
// indices are 1-based on the wire.

#include <map>
#include <ostream>
#include <string>

#include <json.hpp>

#include "fpgmm/costmodel.hpp"
#include "fpgmm/decoder.hpp"
#include "fpgmm/privacy.hpp"
#include "fpgmm/simulator.hpp"

namespace fpgmm {

using Json = nlohmann::json;

/// {rows, cols, q, entries: [...]} with row-major integers.
Json matrix_to_json(const BlockMatrix& m);
BlockMatrix matrix_from_json(const Json& j);

/// {worker, m, n, r, a_evals: [[...]], b_evals: [[...]]}.
Json query_to_json(const Query& q);
Query query_from_json(const Json& j);

/// {worker, rows, cols, entries, mul_count}. The modulus is not on the wire.
Json worker_output_to_json(const WorkerOutput& o);
WorkerOutput worker_output_from_json(const Json& j, Modulus q);

/// {"i,j": matrix literal, ...}.
Json products_to_json(const std::map<ProductIndex, BlockMatrix>& products);

std::string ratio_string(const Ratio& r);

Json run_report_to_json(const RunReport& rep);
Json sweep_record_to_json(const SweepRecord& rec);
Json privacy_verdict_to_json(const PrivacyVerdict& v);

inline constexpr const char* kRunCsvHeader = "m,n,r,T,S_size,N,q,R,ndc,ncc,success,seed";
std::string run_csv_row(const RunReport& rep);

inline constexpr const char* kTradeoffCsvHeader =
    "scheme,ncc_bound,m,n,r_or_p,T,S_size,R,ndc,ncc,worker_cap,feasible";
std::string tradeoff_csv_row(const TradeoffPoint& p);

std::string format_number(double v);

}  // namespace fpgmm
