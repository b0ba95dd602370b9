#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bicrypt/cost/cost.hpp"

namespace bicrypt::cost {

using Json = nlohmann::ordered_json;

Json to_json(const OpCounts& counts);
Json to_json(const CountSummary& summary);
Json to_json(const LatencyEstimate& est, const LatencyTable& table);
Json to_json(const SpreadState& spread);
Json to_json(const NetworkSpread& spread);

struct TableRow {
    std::string model;
    CountSummary summary;
    LatencyEstimate latency;
};

/// Aligned text table: Model, HEOPs, Add_CC, Mul_PC, Act_C, Latency(s), Amortized(s), then Add_PC, Mul_CC, Rot.
std::string format_table(const std::vector<TableRow>& rows);

}  // namespace bicrypt::cost
