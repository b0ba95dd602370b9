// Copyright 2026 The bicrypt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "bicrypt/ckks/latency_table.hpp"

namespace bicrypt::ckks {

enum class NoiseModel {
    Off,
    /// Round every product to the nearest multiple of 1/scale.
    Quantize,
};

/// Scheme parameters shared by every ciphertext created under it.
class HeContext {
public:
    std::int64_t poly_degree() const { return poly_degree_; }
    std::int64_t slot_count() const { return poly_degree_ / 2; }
    int max_level() const { return max_level_; }
    double scale() const { return scale_; }
    Scheme scheme() const { return scheme_; }
    NoiseModel noise() const { return noise_; }
    const LatencyTable& latency_table() const { return latency_; }
    std::uint64_t id() const { return id_; }
    /// Symbolic contexts track levels and op counts but carry no slot data.
    bool symbolic() const { return symbolic_; }

    HeContext with_noise(NoiseModel noise) const;
    HeContext with_latency_table(const LatencyTable& table) const;
    HeContext with_symbolic(bool symbolic) const;

private:
    friend HeContext make_context(std::int64_t, int, double, Scheme, NoiseModel);

    std::int64_t poly_degree_ = 0;
    int max_level_ = 0;
    double scale_ = 1.0;
    Scheme scheme_ = Scheme::CKKS;
    NoiseModel noise_ = NoiseModel::Off;
    LatencyTable latency_;
    bool symbolic_ = false;
    std::uint64_t id_ = 0;
};

/// Throws ParameterError unless poly_degree is a power of two >= 8, max_level >= 1, scale > 0.
HeContext make_context(std::int64_t poly_degree, int max_level, double scale, Scheme scheme = Scheme::CKKS,
                       NoiseModel noise = NoiseModel::Off);

}  // namespace bicrypt::ckks
