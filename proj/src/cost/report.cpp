#include "bicrypt/cost/report.hpp"

#include <algorithm>
#include <cstdio>

namespace bicrypt::cost {

Json to_json(const OpCounts& c) {
    Json j;
    j["HEOPs"] = c.heops();
    for (OpKind k : ckks::kAllOpKinds) j[ckks::to_string(k)] = c[k];
    return j;
}

Json to_json(const CountSummary& s) {
    Json j;
    j["totals"] = to_json(s.totals);
    Json layers = Json::array();
    for (const auto& d : s.per_layer) {
        Json l;
        l["layer"] = d.layer;
        l["branch"] = ckks::to_string(d.branch);
        l["counts"] = to_json(d.counts);
        layers.push_back(std::move(l));
    }
    j["per_layer"] = std::move(layers);
    j["unattributed"] = to_json(s.unattributed);
    return j;
}

Json to_json(const LatencyEstimate& e, const LatencyTable& t) {
    Json j;
    j["scheme"] = ckks::to_string(t.scheme());
    Json ms;
    for (OpKind k : {OpKind::AddPC, OpKind::AddCC, OpKind::MulPC, OpKind::MulCC, OpKind::Rot})
        ms[ckks::to_string(k)] = t.ms(k);
    j["per_op_ms"] = std::move(ms);
    j["latency_ns"] = e.latency_ns;
    j["latency_s"] = e.latency_s;
    j["batch"] = e.batch;
    j["batched"] = e.batched;
    j["amortized_s"] = e.amortized_s;
    return j;
}

Json to_json(const SpreadState& s) {
    Json j;
    Json layers = Json::array();
    for (const auto& l : s.layers) {
        Json e;
        e["layer"] = l.layer;
        e["branch"] = ckks::to_string(l.branch);
        e["h"] = l.mask.h;
        e["w"] = l.mask.w;
        e["fraction"] = l.fraction;
        layers.push_back(std::move(e));
    }
    j["layers"] = std::move(layers);
    j["full_at"] = s.full_at;
    return j;
}

Json to_json(const NetworkSpread& s) {
    Json j;
    j["cipher"] = to_json(s.cipher);
    j["plain"] = to_json(s.plain);
    Json h;
    h["layer"] = s.head.layer;
    h["fraction"] = s.head.fraction;
    j["head"] = std::move(h);
    return j;
}

std::string format_table(const std::vector<TableRow>& rows) {
    std::size_t name_w = 5;
    for (const auto& r : rows) name_w = std::max(name_w, r.model.size());
    const int nw = static_cast<int>(name_w);
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-*s %8s %8s %8s %6s %11s %13s %8s %8s %8s\n", nw, "Model", "HEOPs", "Add_CC",
                  "Mul_PC", "Act_C", "Latency(s)", "Amortized(s)", "Add_PC", "Mul_CC", "Rot");
    out += buf;
    for (const auto& r : rows) {
        const OpCounts& c = r.summary.totals;
        std::snprintf(buf, sizeof buf, "%-*s %8lld %8lld %8lld %6lld %11.4f %13.4f %8lld %8lld %8lld\n", nw,
                      r.model.c_str(), static_cast<long long>(r.summary.heops),
                      static_cast<long long>(c[OpKind::AddCC]), static_cast<long long>(c[OpKind::MulPC]),
                      static_cast<long long>(c[OpKind::ActC]), r.latency.latency_s, r.latency.amortized_s,
                      static_cast<long long>(c[OpKind::AddPC]), static_cast<long long>(c[OpKind::MulCC]),
                      static_cast<long long>(c[OpKind::Rot]));
        out += buf;
    }
    return out;
}

}  // namespace bicrypt::cost
