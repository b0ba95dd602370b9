#include <algorithm>
#include <variant>

#include "bicrypt/error.hpp"
#include "bicrypt/henn/kernels.hpp"
#include "bicrypt/net/bicrypto.hpp"

namespace bicrypt::net {

namespace {

using ckks::BranchTag;
using henn::LayerParams;
using Scope = ckks::OpRecorder::Scope;

/// Plaintext activations, one tensor per tile.
using PlainTiles = std::vector<Tensor3>;
using Value = std::variant<PlainTiles, CipherGrid, CipherFlat>;

bool is_cipher(const Value& v) { return !std::holds_alternative<PlainTiles>(v); }

struct Env {
    const HeContext& ctx;
    OpRecorder& rec;
    ExecPolicy policy;
};

Value run_plain(const LayerSpec& spec, const LayerParams& p, const std::vector<const Value*>& in) {
    const auto& first = std::get<PlainTiles>(*in[0]);
    PlainTiles out;
    out.reserve(first.size());
    for (std::size_t t = 0; t < first.size(); ++t) {
        std::vector<const Tensor3*> args;
        for (const Value* v : in) args.push_back(&std::get<PlainTiles>(*v)[t]);
        out.push_back(henn::plain_layer(args, spec, p));
    }
    return out;
}

Value run_cipher(const LayerSpec& spec, const LayerParams& p, const std::vector<const Value*>& in, Env& env) {
    const Value& x = *in[0];
    auto fail = [&](const std::string& why) -> Value {
        throw UsageError("layer '" + spec.name + "' " + why);
    };
    switch (spec.kind) {
        case LayerKind::Conv:
            if (auto g = std::get_if<CipherGrid>(&x))
                return henn::conv_layer(*g, p.conv, spec.sh, spec.sw, spec.ph, spec.pw, env.ctx, env.rec, env.policy);
            return fail("needs a spatial ciphertext input");
        case LayerKind::SumPool:
            if (auto g = std::get_if<CipherGrid>(&x))
                return henn::sum_pool(*g, spec.kh, spec.kw, spec.sh, spec.sw, env.ctx, env.rec, env.policy);
            return fail("needs a spatial ciphertext input");
        case LayerKind::Square:
            if (auto g = std::get_if<CipherGrid>(&x)) return henn::square_act(*g, env.ctx, env.rec, env.policy);
            return henn::square_act(std::get<CipherFlat>(x), env.ctx, env.rec, env.policy);
        case LayerKind::Relu: return fail("is a ReLU, which cannot run on ciphertexts");
        case LayerKind::Add: {
            const Value& y = *in[1];
            if (is_cipher(x) && is_cipher(y)) {
                if (x.index() != y.index()) return fail("adds ciphertexts of different layouts");
                if (auto g = std::get_if<CipherGrid>(&x))
                    return henn::add_cipher(*g, std::get<CipherGrid>(y), env.ctx, env.rec);
                return henn::add_cipher(std::get<CipherFlat>(x), std::get<CipherFlat>(y), env.ctx, env.rec);
            }
            const Value& c = is_cipher(x) ? x : y;
            const Value& q = is_cipher(x) ? y : x;
            if (auto g = std::get_if<CipherGrid>(&c)) return henn::add_plain(*g, std::get<PlainTiles>(q), env.ctx, env.rec);
            return fail("adds plaintext to a flat ciphertext");
        }
        case LayerKind::Flatten:
            if (auto g = std::get_if<CipherGrid>(&x)) return henn::flatten(*g, env.ctx, env.rec, env.policy);
            return x;
        case LayerKind::FC:
            if (auto f = std::get_if<CipherFlat>(&x))
                return henn::fc_layer(*f, p.fc.W, {p.fc.bias}, env.ctx, env.rec, env.policy);
            return fail("needs a flattened ciphertext input");
    }
    return fail("has an unknown kind");
}

class BranchRunner {
public:
    BranchRunner(const Branch& b, const std::vector<LayerParams>& params, Value input)
        : b_(b), params_(params), input_(std::move(input)) {
        values_.resize(b.layers.size());
    }

    bool done() const { return next_ >= static_cast<int>(b_.layers.size()); }
    int next() const { return next_; }

    void step(Env& env) {
        const int i = next_;
        const LayerSpec& spec = b_.layers[static_cast<std::size_t>(i)];
        std::vector<const Value*> in;
        bool cipher = false;
        for (int k : layer_inputs(b_, i)) {
            const Value* v = k < 0 ? &input_ : &values_[static_cast<std::size_t>(k)];
            cipher = cipher || is_cipher(*v);
            in.push_back(v);
        }
        Scope s(env.rec, id(i), b_.tag);
        values_[static_cast<std::size_t>(i)] =
            cipher ? run_cipher(spec, params_[static_cast<std::size_t>(i)], in, env)
                   : run_plain(spec, params_[static_cast<std::size_t>(i)], in);
        ++next_;
    }

    std::string id(int i) const { return b_.name + "." + b_.layers[static_cast<std::size_t>(i)].name; }
    Value& value(int i) { return values_[static_cast<std::size_t>(i)]; }
    const Value& output() const { return values_.back(); }

private:
    const Branch& b_;
    const std::vector<LayerParams>& params_;
    Value input_;
    std::vector<Value> values_;
    int next_ = 0;
};

struct SetResult {
    CipherFlat logits;
};

CipherFlat run_set(const NetworkSpec& net, const std::vector<const DecomposedInput*>& imgs,
                   const packing::SlotTiling& tiling, const NetworkWeights& w, Env& env,
                   std::vector<EdgeRecord>& edges, Schedule schedule) {
    PlainTiles plain_in;
    for (const DecomposedInput* d : imgs) plain_in.push_back(d->plain_full);
    Value pin = std::move(plain_in);
    if (net.plain_input_encrypted) {
        pin = henn::encrypt_grid(std::get<PlainTiles>(pin), tiling, env.ctx);
        edges.push_back({"input.plain_full", net.plain.name + "." + net.plain.layers.front().name, net.plain.tag, true});
    }
    BranchRunner plain(net.plain, w.plain, std::move(pin));

    if (net.cipher.empty()) {
        while (!plain.done()) plain.step(env);
        const auto* out = std::get_if<CipherFlat>(&plain.output());
        if (!out) throw UsageError("network output is not an encrypted feature vector");
        return *out;
    }

    PlainTiles seg;
    for (const DecomposedInput* d : imgs) seg.push_back(d->sensitive);
    BranchRunner cipher(net.cipher, w.cipher, henn::encrypt_grid(seg, tiling, env.ctx));

    auto connect = [&](int layer) {
        for (std::size_t k = 0; k < net.connections.size(); ++k) {
            const Connection& c = net.connections[k];
            if (c.cipher_layer != layer) continue;
            while (plain.next() <= c.plain_layer) plain.step(env);
            const Value& src = plain.value(c.plain_layer);
            const std::string cid = "conn" + std::to_string(k + 1);
            edges.push_back({plain.id(c.plain_layer), cid, BranchTag::Cipher, is_cipher(src)});
            if (is_cipher(src))
                throw UsageError("connection '" + cid + "' would read an encrypted plaintext-branch value");
            auto* g = std::get_if<CipherGrid>(&cipher.value(layer));
            if (!g) throw UsageError("connection '" + cid + "' targets a non-spatial ciphertext");
            Scope s(env.rec, cid, BranchTag::Cipher);
            *g = apply_connection(*g, std::get<PlainTiles>(src), c, w.crot[k], env.ctx, env.rec);
        }
    };

    if (schedule == Schedule::PlainFirst)
        while (!plain.done()) plain.step(env);
    while (!cipher.done() || !plain.done()) {
        if (!plain.done()) plain.step(env);
        if (!cipher.done()) {
            const int i = cipher.next();
            cipher.step(env);
            connect(i);
        }
    }

    const auto* xc = std::get_if<CipherFlat>(&cipher.output());
    if (!xc) throw UsageError("ciphertext branch must end flattened and encrypted");
    const std::string pout = plain.id(static_cast<int>(net.plain.layers.size()) - 1);
    if (const auto* xp = std::get_if<CipherFlat>(&plain.output())) {
        edges.push_back({pout, "head.plain", BranchTag::Plain, true});
        return feature_integrate(*xc, *xp, w.head, env.ctx, env.rec, env.policy);
    }
    const auto& tiles = std::get<PlainTiles>(plain.output());
    std::vector<std::vector<double>> xp;
    for (const Tensor3& t : tiles) xp.push_back(t.data);
    edges.push_back({pout, "head.plain", BranchTag::Plain, false});
    edges.push_back({"head.plain", "head.fc1", BranchTag::Cipher, false});
    return feature_integrate(*xc, xp, w.head, env.ctx, env.rec, env.policy);
}

}  // namespace

packing::PackLayout input_layout(const NetworkSpec& net, packing::Strategy strategy, int batch,
                                 std::int64_t slot_count) {
    const Shape3 s = encrypted_input_shape(net);
    return packing::PackLayout{strategy, batch, s.h, s.w, s.c, slot_count};
}

ForwardResult forward_bicrypto(const NetworkSpec& net, const std::vector<DecomposedInput>& batch,
                               const packing::PackLayout& layout, const NetworkWeights& weights,
                               const HeContext& ctx, const ForwardOptions& opts) {
    validate(net);
    if (layout.strategy == packing::Strategy::Batch)
        throw UsageError("batch packing is supported by pack/unpack only; use hw or bhw for inference");
    if (layout.slot_count != ctx.slot_count()) throw UsageError("layout slot count differs from the context");
    const Shape3 s = encrypted_input_shape(net);
    if (layout.channels != s.c || layout.height != s.h || layout.width != s.w)
        throw ShapeError("pack layout does not describe the encrypted input");
    packing::validate(layout);
    if (layout.batch != static_cast<int>(batch.size()))
        throw ShapeError("pack layout batch " + std::to_string(layout.batch) + " but " +
                         std::to_string(batch.size()) + " inputs given");

    ForwardResult res;
    OpRecorder rec;
    Env env{ctx, rec, opts.policy};
    std::vector<std::vector<const DecomposedInput*>> sets;
    if (layout.strategy == packing::Strategy::BHW) {
        sets.emplace_back();
        for (const auto& d : batch) sets.back().push_back(&d);
    } else {
        for (const auto& d : batch) sets.push_back({&d});
    }
    const packing::SlotTiling tiling = packing::tiling_for(layout);
    for (const auto& set : sets) res.logits.push_back(run_set(net, set, tiling, weights, env, res.report.edges, opts.schedule));

    res.report.totals = rec.totals();
    res.report.per_layer = rec.per_layer();
    res.report.unattributed = rec.unattributed();
    res.report.strategy = layout.strategy;
    res.report.images = static_cast<int>(batch.size());
    res.report.ciphertext_sets = static_cast<int>(sets.size());
    int level = ctx.max_level();
    for (const auto& l : res.logits) level = std::min(level, l.min_level());
    res.report.levels_used = ctx.max_level() - level;
    return res;
}

std::vector<std::vector<double>> decrypt_logits(const ForwardResult& result, const HeContext& ctx) {
    std::vector<std::vector<double>> out;
    for (const CipherFlat& f : result.logits)
        for (auto& v : henn::decrypt_flat(f, ctx)) out.push_back(std::move(v));
    return out;
}

}  // namespace bicrypt::net
