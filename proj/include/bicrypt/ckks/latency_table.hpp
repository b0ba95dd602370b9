// Copyright 2026 The bicrypt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "bicrypt/ckks/op_kind.hpp"

namespace bicrypt::ckks {

enum class Scheme { CKKS, BGV, TFHE };

const char* to_string(Scheme scheme);
Scheme parse_scheme(const std::string& name);

/// Per-operation latency in milliseconds. Costs are held as integer
/// nanoseconds so that count-times-cost sums are exact.
class LatencyTable {
public:
    LatencyTable() = default;
    LatencyTable(Scheme scheme, double add_pc_ms, double add_cc_ms, double mul_pc_ms, double mul_cc_ms);

    /// Default per-scheme constants; rotation cost defaults to the Mul_PC constant.
    static LatencyTable for_scheme(Scheme scheme);

    Scheme scheme() const { return scheme_; }
    double ms(OpKind kind) const;
    std::int64_t ns(OpKind kind) const;
    void set_ms(OpKind kind, double ms);

    /// Sum of count * cost over Add_PC, Add_CC, Mul_PC, Mul_CC and Rot, in ns.
    std::int64_t cost_ns(const OpCounts& counts) const;

private:
    Scheme scheme_ = Scheme::CKKS;
    std::int64_t add_pc_ns_ = 0;
    std::int64_t add_cc_ns_ = 0;
    std::int64_t mul_pc_ns_ = 0;
    std::int64_t mul_cc_ns_ = 0;
    std::int64_t rot_ns_ = 0;
};

}  // namespace bicrypt::ckks
