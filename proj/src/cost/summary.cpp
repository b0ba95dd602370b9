#include <cstdlib>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "bicrypt/cost/cost.hpp"
#include "bicrypt/error.hpp"

namespace bicrypt::cost {

namespace {

std::vector<ckks::LayerDelta> aggregate(const std::vector<ckks::LayerDelta>& deltas) {
    std::vector<ckks::LayerDelta> out;
    std::map<std::pair<std::string, BranchTag>, std::size_t> index;
    for (const auto& d : deltas) {
        const auto key = std::make_pair(d.layer, d.branch);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, out.size());
            out.push_back(d);
        } else {
            out[it->second].counts += d.counts;
        }
    }
    return out;
}

}  // namespace

CountSummary count_report(const OpCounts& totals) {
    CountSummary s;
    s.totals = totals;
    s.heops = totals.heops();
    return s;
}

CountSummary count_report(const ckks::OpRecorder& rec) {
    CountSummary s = count_report(rec.totals());
    s.per_layer = aggregate(rec.per_layer());
    s.unattributed = rec.unattributed();
    return s;
}

CountSummary count_report(const net::OpReport& report) {
    CountSummary s = count_report(report.totals);
    s.per_layer = aggregate(report.per_layer);
    s.unattributed = report.unattributed;
    return s;
}

LatencyEstimate latency_estimate(const CountSummary& summary, const LatencyTable& table, int batch, bool batched) {
    if (batch < 1) throw ParameterError("batch must be at least 1");
    LatencyEstimate e;
    e.batch = batch;
    e.batched = batched;
    e.latency_ns = table.cost_ns(summary.totals);
    e.latency_s = static_cast<double>(e.latency_ns) / 1e9;
    e.amortized_s = batched ? e.latency_s / batch : e.latency_s;
    return e;
}

LatencyEstimate latency_estimate(const CountSummary& summary, const std::string& scheme, int batch, bool batched) {
    return latency_estimate(summary, LatencyTable::for_scheme(ckks::parse_scheme(scheme)), batch, batched);
}

LatencyTable load_latency_table(const std::string& path, ckks::Scheme fallback) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open latency table '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IngestionError("latency table '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw IngestionError("latency table '" + path + "' must be a JSON object");
    ckks::Scheme scheme = fallback;
    if (j.contains("scheme")) {
        if (!j["scheme"].is_string()) throw IngestionError("latency table: scheme must be a string");
        scheme = ckks::parse_scheme(j["scheme"].get<std::string>());
    }
    LatencyTable t = LatencyTable::for_scheme(scheme);
    bool rot_given = false;
    for (OpKind k : {OpKind::AddPC, OpKind::AddCC, OpKind::MulPC, OpKind::MulCC, OpKind::Rot}) {
        const char* key = ckks::to_string(k);
        if (!j.contains(key)) continue;
        if (!j[key].is_number()) throw IngestionError(std::string("latency table: ") + key + " must be a number");
        const double ms = j[key].get<double>();
        if (!(ms > 0.0) && !(k == OpKind::Rot && ms == 0.0))
            throw ParameterError(std::string("latency table: ") + key + " must be positive");
        t.set_ms(k, ms);
        rot_given = rot_given || k == OpKind::Rot;
    }
    if (!rot_given) t.set_ms(OpKind::Rot, t.ms(OpKind::MulPC));
    return t;
}

LatencyTable resolve_latency_table(ckks::Scheme scheme) {
    const char* path = std::getenv(kLatencyTableEnv);
    if (path && *path) return load_latency_table(path, scheme);
    return LatencyTable::for_scheme(scheme);
}

}  // namespace bicrypt::cost
