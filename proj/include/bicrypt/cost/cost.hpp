#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bicrypt/ckks/latency_table.hpp"
#include "bicrypt/ckks/op_recorder.hpp"
#include "bicrypt/net/bicrypto.hpp"
#include "bicrypt/net/network.hpp"

namespace bicrypt::cost {

using ckks::BranchTag;
using ckks::LatencyTable;
using ckks::OpCounts;
using ckks::OpKind;

struct CountSummary {
    OpCounts totals;
    /// Add_PC + Add_CC + Mul_PC + Mul_CC; rotations are reported separately.
    std::int64_t heops = 0;
    /// Aggregated by layer id in order of first appearance.
    std::vector<ckks::LayerDelta> per_layer;
    OpCounts unattributed;
};

CountSummary count_report(const ckks::OpRecorder& rec);
CountSummary count_report(const net::OpReport& report);
CountSummary count_report(const OpCounts& totals);

struct LatencyEstimate {
    std::int64_t latency_ns = 0;
    double latency_s = 0.0;
    double amortized_s = 0.0;
    int batch = 1;
    bool batched = false;
};

/// Dot product of the counts with the table. amortized = latency / batch for a
/// batched (BHW) run, latency otherwise.
LatencyEstimate latency_estimate(const CountSummary& summary, const LatencyTable& table, int batch = 1,
                                 bool batched = false);
LatencyEstimate latency_estimate(const CountSummary& summary, const std::string& scheme, int batch = 1,
                                 bool batched = false);

/// Reads {"scheme": ..., "Add_PC": ms, "Add_CC": ms, "Mul_PC": ms, "Mul_CC": ms, "Rot": ms}.
/// Missing entries keep the scheme defaults.
LatencyTable load_latency_table(const std::string& path, ckks::Scheme fallback = ckks::Scheme::CKKS);

/// Name of the environment variable that overrides the latency table path.
inline constexpr const char* kLatencyTableEnv = "BICRYPT_LATENCY_TABLE";

/// Table for `scheme`, replaced by the file named in the environment when set.
LatencyTable resolve_latency_table(ckks::Scheme scheme);

struct Mask {
    int h = 0;
    int w = 0;
    std::vector<std::uint8_t> bits;

    Mask() = default;
    Mask(int h_, int w_, bool value = false);
    bool at(int i, int j) const { return bits[static_cast<std::size_t>(i) * static_cast<std::size_t>(w) + j] != 0; }
    void set(int i, int j, bool v) { bits[static_cast<std::size_t>(i) * static_cast<std::size_t>(w) + j] = v ? 1 : 0; }
    bool any() const;
    double fraction() const;
};

/// Mask of size h x w with the centered ch x cw window set.
Mask centered_mask(int h, int w, int ch, int cw);

struct SpreadLayer {
    std::string layer;
    BranchTag branch = BranchTag::Cipher;
    Mask mask;
    double fraction = 0.0;
};

struct SpreadState {
    std::vector<SpreadLayer> layers;
    /// 1-based position in `layers` where the fraction first reaches 1, or 0.
    int full_at = 0;
};

/// Taint propagation through one branch. Conv and pool windows OR their inputs,
/// activations keep the mask, flatten keeps it as a row, FC taints all outputs if any input is tainted.
SpreadState spread_analysis(const net::Branch& branch, const Mask& initial);

/// Per branch. A bi-net's ciphertext branch starts fully tainted and its plaintext branch clean
/// (unless its input is encrypted); a backbone starts from `initial`. Connections carry no taint
/// into the plaintext branch; the head is tainted whenever the ciphertext branch is.
struct NetworkSpread {
    SpreadState cipher;
    SpreadState plain;
    SpreadLayer head;
};

NetworkSpread spread_analysis(const net::NetworkSpec& net, const Mask& initial);

}  // namespace bicrypt::cost
