#include "bicrypt/ckks/op_recorder.hpp"

#include "bicrypt/error.hpp"

namespace bicrypt::ckks {

const char* to_string(BranchTag tag) { return tag == BranchTag::Cipher ? "cipher" : "plain"; }

void OpRecorder::record(OpKind kind, std::int64_t n) {
    if (n < 0) throw UsageError("op counts cannot decrease");
    totals_[kind] += n;
    if (!open_) unattributed_[kind] += n;
}

void OpRecorder::record_rotation(std::int64_t offset) {
    record(OpKind::Rot);
    if (log_rotations_) rotations_.push_back(offset);
}

void OpRecorder::merge(const OpRecorder& worker) {
    totals_ += worker.totals_;
    rotations_.insert(rotations_.end(), worker.rotations_.begin(), worker.rotations_.end());
    if (!open_) unattributed_ += worker.totals_;
}

OpRecorder OpRecorder::fork() const {
    OpRecorder w;
    w.current_ = current_;
    w.log_rotations_ = log_rotations_;
    return w;
}

void OpRecorder::begin_layer(std::string layer, BranchTag branch) {
    if (open_) throw UsageError("layer '" + layer + "' opened inside layer '" + current_ + "'");
    current_ = std::move(layer);
    current_branch_ = branch;
    snapshot_ = totals_;
    open_ = true;
}

void OpRecorder::end_layer() {
    if (!open_) throw UsageError("end_layer without begin_layer");
    per_layer_.push_back(LayerDelta{current_, current_branch_, totals_ - snapshot_});
    open_ = false;
    current_.clear();
}

}  // namespace bicrypt::ckks
