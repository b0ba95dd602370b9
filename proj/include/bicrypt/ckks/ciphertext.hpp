// Copyright 2026 The bicrypt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace bicrypt::ckks {

class Ciphertext;

namespace detail {
struct SlotAccess;
}

/// A plaintext slot vector. Shorter vectors are zero-padded on use.
class PlainVec {
public:
    PlainVec() = default;
    explicit PlainVec(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return i < values_.size() ? values_[i] : 0.0; }

private:
    std::vector<double> values_;
};

/// Simulated ciphertext. Immutable once built, so copies share slot storage.
class Ciphertext {
public:
    Ciphertext() = default;

    int level() const { return level_; }
    double scale() const { return scale_; }
    std::uint64_t id() const { return id_; }
    std::uint64_t context_id() const { return context_id_; }
    bool valid() const { return context_id_ != 0; }

private:
    friend struct detail::SlotAccess;

    std::shared_ptr<const std::vector<double>> slots_;
    int level_ = 0;
    double scale_ = 1.0;
    std::uint64_t id_ = 0;
    std::uint64_t context_id_ = 0;
};

namespace detail {

std::uint64_t next_provenance_id();

struct SlotAccess {
    static const std::vector<double>* slots(const Ciphertext& c) { return c.slots_.get(); }

    static Ciphertext make(std::uint64_t context_id, std::shared_ptr<const std::vector<double>> slots, int level,
                           double scale) {
        Ciphertext c;
        c.slots_ = std::move(slots);
        c.level_ = level;
        c.scale_ = scale;
        c.id_ = next_provenance_id();
        c.context_id_ = context_id;
        return c;
    }
};

}  // namespace detail

}  // namespace bicrypt::ckks
