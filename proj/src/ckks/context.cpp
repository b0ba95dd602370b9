#include "bicrypt/ckks/context.hpp"

#include <atomic>
#include <cmath>

#include "bicrypt/error.hpp"

namespace bicrypt::ckks {

namespace {

std::uint64_t next_context_id() {
    static std::atomic<std::uint64_t> counter{0};
    return ++counter;
}

}  // namespace

HeContext make_context(std::int64_t poly_degree, int max_level, double scale, Scheme scheme, NoiseModel noise) {
    if (poly_degree < 8 || (poly_degree & (poly_degree - 1)) != 0)
        throw ParameterError("poly_degree must be a power of two >= 8, got " + std::to_string(poly_degree));
    if (max_level < 1) throw ParameterError("max_level must be >= 1, got " + std::to_string(max_level));
    if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("scale must be positive and finite");

    HeContext ctx;
    ctx.poly_degree_ = poly_degree;
    ctx.max_level_ = max_level;
    ctx.scale_ = scale;
    ctx.scheme_ = scheme;
    ctx.noise_ = noise;
    ctx.latency_ = LatencyTable::for_scheme(scheme);
    ctx.id_ = next_context_id();
    return ctx;
}

HeContext HeContext::with_noise(NoiseModel noise) const {
    HeContext c = *this;
    c.noise_ = noise;
    c.id_ = next_context_id();
    return c;
}

HeContext HeContext::with_latency_table(const LatencyTable& table) const {
    HeContext c = *this;
    c.latency_ = table;
    return c;
}

HeContext HeContext::with_symbolic(bool symbolic) const {
    HeContext c = *this;
    c.symbolic_ = symbolic;
    c.id_ = next_context_id();
    return c;
}

}  // namespace bicrypt::ckks
