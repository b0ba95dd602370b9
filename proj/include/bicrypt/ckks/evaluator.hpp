// Copyright 2026 The bicrypt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "bicrypt/ckks/ciphertext.hpp"
#include "bicrypt/ckks/context.hpp"
#include "bicrypt/ckks/op_recorder.hpp"

namespace bicrypt::ckks {

/// Marks plaintext multiplications whose operand is a 0/1 selection mask.
enum class MulRole { Weight, Mask };

Ciphertext encrypt_vector(const PlainVec& v, const HeContext& ctx);
PlainVec decrypt_vector(const Ciphertext& c, const HeContext& ctx);

Ciphertext he_add(const Ciphertext& a, const Ciphertext& b, const HeContext& ctx, OpRecorder& rec);
Ciphertext he_add(const Ciphertext& a, const PlainVec& b, const HeContext& ctx, OpRecorder& rec);

Ciphertext he_mul(const Ciphertext& a, const Ciphertext& b, const HeContext& ctx, OpRecorder& rec);
Ciphertext he_mul(const Ciphertext& a, const PlainVec& b, const HeContext& ctx, OpRecorder& rec,
                  MulRole role = MulRole::Weight);

/// Cyclic left shift by r (right shift for negative r).
Ciphertext he_rotate(const Ciphertext& c, std::int64_t r, const HeContext& ctx, OpRecorder& rec);

/// Throws DepthBudgetError unless c can absorb `levels` more multiplications.
void require_levels(const Ciphertext& c, int levels, const OpRecorder& rec);

}  // namespace bicrypt::ckks
