#include "bicrypt/ckks/evaluator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "bicrypt/error.hpp"

namespace bicrypt::ckks {

namespace detail {

std::uint64_t next_provenance_id() {
    static std::atomic<std::uint64_t> counter{0};
    return ++counter;
}

}  // namespace detail

PlainVec::PlainVec(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_)
        if (!std::isfinite(v)) throw ParameterError("plaintext vectors must have finite entries");
}

namespace {

using detail::SlotAccess;
using Slots = std::vector<double>;

void check_context(const Ciphertext& c, const HeContext& ctx) {
    if (c.context_id() != ctx.id()) throw UsageError("ciphertext does not belong to this context");
}

void check_plain(const PlainVec& p, const HeContext& ctx) {
    if (static_cast<std::int64_t>(p.size()) > ctx.slot_count())
        throw CapacityError("plaintext vector too long", static_cast<long long>(p.size()), ctx.slot_count());
}

Ciphertext wrap(const HeContext& ctx, Slots&& slots, int level) {
    if (ctx.symbolic()) return SlotAccess::make(ctx.id(), nullptr, level, ctx.scale());
    return SlotAccess::make(ctx.id(), std::make_shared<const Slots>(std::move(slots)), level, ctx.scale());
}

void quantize(Slots& s, const HeContext& ctx) {
    if (ctx.noise() != NoiseModel::Quantize) return;
    const double scale = ctx.scale();
    for (double& v : s) v = std::nearbyint(v * scale) / scale;
}

}  // namespace

void require_levels(const Ciphertext& c, int levels, const OpRecorder& rec) {
    if (c.level() < levels) throw DepthBudgetError(rec.current_layer(), c.level());
}

Ciphertext encrypt_vector(const PlainVec& v, const HeContext& ctx) {
    check_plain(v, ctx);
    Slots s;
    if (!ctx.symbolic()) {
        s.assign(static_cast<std::size_t>(ctx.slot_count()), 0.0);
        std::copy(v.values().begin(), v.values().end(), s.begin());
    }
    return wrap(ctx, std::move(s), ctx.max_level());
}

PlainVec decrypt_vector(const Ciphertext& c, const HeContext& ctx) {
    check_context(c, ctx);
    if (ctx.symbolic()) throw UsageError("symbolic ciphertexts carry no slot data");
    return PlainVec(*SlotAccess::slots(c));
}

Ciphertext he_add(const Ciphertext& a, const Ciphertext& b, const HeContext& ctx, OpRecorder& rec) {
    check_context(a, ctx);
    check_context(b, ctx);
    Slots s;
    if (!ctx.symbolic()) {
        const Slots& x = *SlotAccess::slots(a);
        const Slots& y = *SlotAccess::slots(b);
        s.resize(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
    }
    rec.record(OpKind::AddCC);
    return wrap(ctx, std::move(s), std::min(a.level(), b.level()));
}

Ciphertext he_add(const Ciphertext& a, const PlainVec& b, const HeContext& ctx, OpRecorder& rec) {
    check_context(a, ctx);
    check_plain(b, ctx);
    Slots s;
    if (!ctx.symbolic()) {
        s = *SlotAccess::slots(a);
        const Slots& y = b.values();
        for (std::size_t i = 0; i < y.size(); ++i) s[i] += y[i];
    }
    rec.record(OpKind::AddPC);
    return wrap(ctx, std::move(s), a.level());
}

Ciphertext he_mul(const Ciphertext& a, const Ciphertext& b, const HeContext& ctx, OpRecorder& rec) {
    check_context(a, ctx);
    check_context(b, ctx);
    const int level = std::min(a.level(), b.level());
    if (level < 1) throw DepthBudgetError(rec.current_layer(), level);
    Slots s;
    if (!ctx.symbolic()) {
        const Slots& x = *SlotAccess::slots(a);
        const Slots& y = *SlotAccess::slots(b);
        s.resize(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] * y[i];
        quantize(s, ctx);
    }
    rec.record(OpKind::MulCC);
    return wrap(ctx, std::move(s), level - 1);
}

Ciphertext he_mul(const Ciphertext& a, const PlainVec& b, const HeContext& ctx, OpRecorder& rec, MulRole role) {
    check_context(a, ctx);
    check_plain(b, ctx);
    if (a.level() < 1) throw DepthBudgetError(rec.current_layer(), a.level());
    Slots s;
    if (!ctx.symbolic()) {
        const Slots& x = *SlotAccess::slots(a);
        const Slots& y = b.values();
        s.assign(x.size(), 0.0);
        for (std::size_t i = 0; i < y.size(); ++i) s[i] = x[i] * y[i];
        quantize(s, ctx);
    }
    rec.record(OpKind::MulPC);
    if (role == MulRole::Mask) rec.record(OpKind::MaskMulPC);
    return wrap(ctx, std::move(s), a.level() - 1);
}

Ciphertext he_rotate(const Ciphertext& c, std::int64_t r, const HeContext& ctx, OpRecorder& rec) {
    check_context(c, ctx);
    const std::int64_t n = ctx.slot_count();
    const std::int64_t shift = ((r % n) + n) % n;
    Slots s;
    if (!ctx.symbolic()) {
        const Slots& x = *SlotAccess::slots(c);
        s.resize(x.size());
        std::rotate_copy(x.begin(), x.begin() + shift, x.end(), s.begin());
    }
    rec.record_rotation(r);
    return wrap(ctx, std::move(s), c.level());
}

}  // namespace bicrypt::ckks
