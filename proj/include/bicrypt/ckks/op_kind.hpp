// Copyright 2026 The bicrypt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace bicrypt::ckks {

enum class OpKind : std::size_t {
    AddPC,
    AddCC,
    MulPC,
    MulCC,
    Rot,
    ActC,
    /// Subset of MulPC issued as 0/1 slot masks (conv, pool, flatten).
    MaskMulPC,
};

inline constexpr std::size_t kOpKindCount = 7;

inline constexpr std::array<OpKind, kOpKindCount> kAllOpKinds = {
    OpKind::AddPC, OpKind::AddCC, OpKind::MulPC, OpKind::MulCC,
    OpKind::Rot,   OpKind::ActC,  OpKind::MaskMulPC,
};

const char* to_string(OpKind kind);

struct OpCounts {
    std::array<std::int64_t, kOpKindCount> n{};

    std::int64_t& operator[](OpKind k) { return n[static_cast<std::size_t>(k)]; }
    std::int64_t operator[](OpKind k) const { return n[static_cast<std::size_t>(k)]; }

    OpCounts& operator+=(const OpCounts& other) {
        for (std::size_t i = 0; i < kOpKindCount; ++i) n[i] += other.n[i];
        return *this;
    }
    friend OpCounts operator+(OpCounts a, const OpCounts& b) { return a += b; }
    friend OpCounts operator-(OpCounts a, const OpCounts& b) {
        for (std::size_t i = 0; i < kOpKindCount; ++i) a.n[i] -= b.n[i];
        return a;
    }
    friend bool operator==(const OpCounts&, const OpCounts&) = default;

    /// Add_PC + Add_CC + Mul_PC + Mul_CC. Rotations are reported separately.
    std::int64_t heops() const {
        return (*this)[OpKind::AddPC] + (*this)[OpKind::AddCC] + (*this)[OpKind::MulPC] +
               (*this)[OpKind::MulCC];
    }
    /// Every homomorphic operation including rotations.
    std::int64_t all_ops() const { return heops() + (*this)[OpKind::Rot]; }
};

}  // namespace bicrypt::ckks
