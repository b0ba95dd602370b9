#include "bicrypt/ckks/latency_table.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "bicrypt/error.hpp"

namespace bicrypt::ckks {

const char* to_string(OpKind kind) {
    switch (kind) {
        case OpKind::AddPC: return "Add_PC";
        case OpKind::AddCC: return "Add_CC";
        case OpKind::MulPC: return "Mul_PC";
        case OpKind::MulCC: return "Mul_CC";
        case OpKind::Rot: return "Rot";
        case OpKind::ActC: return "Act_C";
        case OpKind::MaskMulPC: return "Mask_Mul_PC";
    }
    return "?";
}

const char* to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::CKKS: return "CKKS";
        case Scheme::BGV: return "BGV";
        case Scheme::TFHE: return "TFHE";
    }
    return "?";
}

Scheme parse_scheme(const std::string& name) {
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char ch) { return std::toupper(ch); });
    if (up == "CKKS") return Scheme::CKKS;
    if (up == "BGV") return Scheme::BGV;
    if (up == "TFHE") return Scheme::TFHE;
    throw ParameterError("unknown scheme '" + name + "'");
}

namespace {

std::int64_t to_ns(double ms) {
    if (!std::isfinite(ms) || ms < 0.0) throw ParameterError("latency must be a non-negative finite number");
    return std::llround(ms * 1e6);
}

}  // namespace

LatencyTable::LatencyTable(Scheme scheme, double add_pc_ms, double add_cc_ms, double mul_pc_ms, double mul_cc_ms)
    : scheme_(scheme),
      add_pc_ns_(to_ns(add_pc_ms)),
      add_cc_ns_(to_ns(add_cc_ms)),
      mul_pc_ns_(to_ns(mul_pc_ms)),
      mul_cc_ns_(to_ns(mul_cc_ms)),
      rot_ns_(to_ns(mul_pc_ms)) {}

LatencyTable LatencyTable::for_scheme(Scheme scheme) {
    switch (scheme) {
        case Scheme::CKKS: return LatencyTable(scheme, 0.039, 0.077, 0.173, 0.390);
        case Scheme::BGV: return LatencyTable(scheme, 0.049, 0.077, 2.055, 3.379);
        case Scheme::TFHE: return LatencyTable(scheme, 56.03, 256.8, 1018.0, 1585.0);
    }
    throw ParameterError("unknown scheme");
}

std::int64_t LatencyTable::ns(OpKind kind) const {
    switch (kind) {
        case OpKind::AddPC: return add_pc_ns_;
        case OpKind::AddCC: return add_cc_ns_;
        case OpKind::MulPC: return mul_pc_ns_;
        case OpKind::MulCC: return mul_cc_ns_;
        case OpKind::Rot: return rot_ns_;
        case OpKind::ActC:
        case OpKind::MaskMulPC: return 0;
    }
    return 0;
}

double LatencyTable::ms(OpKind kind) const { return static_cast<double>(ns(kind)) / 1e6; }

void LatencyTable::set_ms(OpKind kind, double ms) {
    const std::int64_t v = to_ns(ms);
    switch (kind) {
        case OpKind::AddPC: add_pc_ns_ = v; break;
        case OpKind::AddCC: add_cc_ns_ = v; break;
        case OpKind::MulPC: mul_pc_ns_ = v; break;
        case OpKind::MulCC: mul_cc_ns_ = v; break;
        case OpKind::Rot: rot_ns_ = v; break;
        default: throw ParameterError(std::string("no latency entry for ") + to_string(kind));
    }
}

std::int64_t LatencyTable::cost_ns(const OpCounts& counts) const {
    // Act_C and the mask sub-count are already inside Mul_CC / Mul_PC.
    return counts[OpKind::AddPC] * add_pc_ns_ + counts[OpKind::AddCC] * add_cc_ns_ +
           counts[OpKind::MulPC] * mul_pc_ns_ + counts[OpKind::MulCC] * mul_cc_ns_ + counts[OpKind::Rot] * rot_ns_;
}

}  // namespace bicrypt::ckks
