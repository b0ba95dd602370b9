#include <algorithm>

#include "bicrypt/net/bicrypto.hpp"

namespace bicrypt::net {

TaintVerdict taint_check(const NetworkSpec& /*net*/, const OpReport& trace) {
    TaintVerdict v;
    for (const ckks::LayerDelta& d : trace.per_layer) {
        if (d.branch != ckks::BranchTag::Plain) continue;
        if (d.counts.all_ops() == 0 && d.counts[ckks::OpKind::ActC] == 0) continue;
        const std::string msg = d.layer + ": " + std::to_string(d.counts.all_ops()) +
                                " ciphertext operations in a plaintext layer";
        if (std::find(v.violations.begin(), v.violations.end(), msg) == v.violations.end()) v.violations.push_back(msg);
    }
    for (const EdgeRecord& e : trace.edges) {
        if (e.to_branch != ckks::BranchTag::Plain || !e.carries_cipher) continue;
        const std::string msg = e.from + " -> " + e.to + ": ciphertext flows into the plaintext branch";
        if (std::find(v.violations.begin(), v.violations.end(), msg) == v.violations.end()) v.violations.push_back(msg);
    }
    v.pass = v.violations.empty();
    return v;
}

}  // namespace bicrypt::net
