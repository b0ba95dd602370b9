// Copyright 2026 The bicrypt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bicrypt/ckks/op_kind.hpp"

namespace bicrypt::ckks {

enum class BranchTag { Cipher, Plain };

const char* to_string(BranchTag tag);

struct LayerDelta {
    std::string layer;
    BranchTag branch = BranchTag::Cipher;
    OpCounts counts;
};

/// Counts homomorphic operations, attributing them to the open layer scope.
///
/// Not thread-safe. Parallel kernels fork one recorder per worker and merge
/// them back in worker order after the join.
class OpRecorder {
public:
    OpRecorder() = default;

    void record(OpKind kind, std::int64_t n = 1);

    /// Counts one rotation and logs its offset when logging is on.
    void record_rotation(std::int64_t offset);
    void set_rotation_log(bool on) { log_rotations_ = on; }
    /// Offsets in issue order; parallel workers are appended in worker order.
    const std::vector<std::int64_t>& rotation_log() const { return rotations_; }

    /// Folds a worker's totals into this recorder (and its open layer).
    void merge(const OpRecorder& worker);

    /// An empty recorder labelled with this recorder's current layer.
    OpRecorder fork() const;

    void begin_layer(std::string layer, BranchTag branch);
    void end_layer();
    bool in_layer() const { return open_; }
    const std::string& current_layer() const { return current_; }

    const OpCounts& totals() const { return totals_; }
    const std::vector<LayerDelta>& per_layer() const { return per_layer_; }
    /// Ops recorded while no layer scope was open.
    const OpCounts& unattributed() const { return unattributed_; }

    class Scope {
    public:
        Scope(OpRecorder& rec, std::string layer, BranchTag branch) : rec_(rec) {
            rec_.begin_layer(std::move(layer), branch);
        }
        ~Scope() {
            if (rec_.in_layer()) rec_.end_layer();
        }
        Scope(const Scope&) = delete;
        Scope& operator=(const Scope&) = delete;

    private:
        OpRecorder& rec_;
    };

private:
    OpCounts totals_;
    OpCounts unattributed_;
    OpCounts snapshot_;
    std::vector<LayerDelta> per_layer_;
    std::string current_;
    BranchTag current_branch_ = BranchTag::Cipher;
    bool open_ = false;
    bool log_rotations_ = false;
    std::vector<std::int64_t> rotations_;
};

}  // namespace bicrypt::ckks
