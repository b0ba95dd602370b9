#include "bicrypt/henn/kernels.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>

#include "bicrypt/error.hpp"

namespace bicrypt::henn {

using ckks::MulRole;
using ckks::PlainVec;

int CipherGrid::min_level() const {
    int lv = channels.empty() ? 0 : channels.front().level();
    for (const auto& c : channels) lv = std::min(lv, c.level());
    return lv;
}

int CipherFlat::min_level() const {
    int lv = chunks.empty() ? 0 : chunks.front().level();
    for (const auto& c : chunks) lv = std::min(lv, c.level());
    return lv;
}

namespace {

std::size_t slot_at(const SlotTiling& t, int tile, std::int64_t offset) {
    return static_cast<std::size_t>(tile * t.stride + offset);
}

void check_tiling(const SlotTiling& t, const HeContext& ctx) {
    if (t.tiles < 1 || t.stride < 1 || t.tiles * t.stride > ctx.slot_count())
        throw CapacityError("slot tiling does not fit the ciphertext", t.tiles * t.stride, ctx.slot_count());
}

void check_grid_fits(const GridLayout& g, const SlotTiling& t, const std::string& what) {
    const std::int64_t last = g.offset(g.h - 1, g.w - 1);
    if (g.base < 0 || last >= t.stride) throw CapacityError(what + " grid leaves its slot tile", last + 1, t.stride);
}

void require_grid_levels(const CipherGrid& x, int levels, const OpRecorder& rec) {
    for (const auto& c : x.channels) ckks::require_levels(c, levels, rec);
}

std::vector<double> zeros(const HeContext& ctx) {
    return std::vector<double>(static_cast<std::size_t>(ctx.slot_count()), 0.0);
}

/// 1 at every output slot of every tile.
PlainVec output_mask(const GridLayout& g, const SlotTiling& t, const HeContext& ctx) {
    if (ctx.symbolic()) return {};
    std::vector<double> m = zeros(ctx);
    for (int tile = 0; tile < t.tiles; ++tile)
        for (int x = 0; x < g.h; ++x)
            for (int y = 0; y < g.w; ++y) m[slot_at(t, tile, g.offset(x, y))] = 1.0;
    return PlainVec(std::move(m));
}

Ciphertext tree_sum(std::vector<Ciphertext> terms, const HeContext& ctx, OpRecorder& rec) {
    while (terms.size() > 1) {
        std::vector<Ciphertext> next;
        next.reserve((terms.size() + 1) / 2);
        for (std::size_t i = 0; i < terms.size(); i += 2)
            next.push_back(i + 1 < terms.size() ? ckks::he_add(terms[i], terms[i + 1], ctx, rec) : terms[i]);
        terms.swap(next);
    }
    return terms.front();
}

struct WindowPlan {
    GridLayout out;
    std::vector<std::int64_t> offsets;
    int taps = 0;
};

WindowPlan plan_window(const CipherGrid& x, int kh, int kw, int sh, int sw, int ph, int pw, const std::string& what) {
    const GridLayout& g = x.grid;
    if (kh < 1 || kw < 1 || sh < 1 || sw < 1 || ph < 0 || pw < 0)
        throw ShapeError(what + ": kernel, stride and padding must be valid");
    if (g.h + 2 * ph < kh || g.w + 2 * pw < kw)
        throw ShapeError(what + ": kernel " + std::to_string(kh) + "x" + std::to_string(kw) +
                         " larger than input " + std::to_string(g.h) + "x" + std::to_string(g.w));
    WindowPlan p;
    p.out = GridLayout{g.base, g.row_stride * sh, g.col_stride * sw, (g.h + 2 * ph - kh) / sh + 1,
                       (g.w + 2 * pw - kw) / sw + 1};
    check_grid_fits(p.out, x.tiling, what + " output");
    p.taps = kh * kw;
    for (int i = 0; i < kh; ++i)
        for (int j = 0; j < kw; ++j) p.offsets.push_back((i - ph) * g.row_stride + (j - pw) * g.col_stride);
    return p;
}

}  // namespace

CipherGrid encrypt_grid(const std::vector<Tensor3>& per_tile, const SlotTiling& tiling, const HeContext& ctx) {
    check_tiling(tiling, ctx);
    if (static_cast<int>(per_tile.size()) != tiling.tiles) throw ShapeError("one tensor per tile is required");
    const Tensor3& first = per_tile.front();
    CipherGrid g;
    g.grid = GridLayout{0, first.w, 1, first.h, first.w};
    g.tiling = tiling;
    check_grid_fits(g.grid, tiling, "input");
    for (int ch = 0; ch < first.c; ++ch) {
        std::vector<double> s;
        if (!ctx.symbolic()) {
            s = zeros(ctx);
            for (int t = 0; t < tiling.tiles; ++t) {
                if (!per_tile[t].same_shape(first)) throw ShapeError("tile tensors differ in shape");
                for (int x = 0; x < first.h; ++x)
                    for (int y = 0; y < first.w; ++y) s[slot_at(tiling, t, g.grid.offset(x, y))] = per_tile[t].at(ch, x, y);
            }
        }
        g.channels.push_back(ckks::encrypt_vector(PlainVec(std::move(s)), ctx));
    }
    return g;
}

std::vector<Tensor3> decrypt_grid(const CipherGrid& x, const HeContext& ctx) {
    std::vector<Tensor3> out(static_cast<std::size_t>(x.tiling.tiles),
                             Tensor3(static_cast<int>(x.channels.size()), x.grid.h, x.grid.w));
    for (std::size_t ch = 0; ch < x.channels.size(); ++ch) {
        const PlainVec p = ckks::decrypt_vector(x.channels[ch], ctx);
        for (int t = 0; t < x.tiling.tiles; ++t)
            for (int i = 0; i < x.grid.h; ++i)
                for (int j = 0; j < x.grid.w; ++j)
                    out[t].at(static_cast<int>(ch), i, j) = p[slot_at(x.tiling, t, x.grid.offset(i, j))];
    }
    return out;
}

CipherFlat encrypt_flat(const std::vector<std::vector<double>>& per_tile, const SlotTiling& tiling,
                        const HeContext& ctx, std::int64_t offset) {
    check_tiling(tiling, ctx);
    if (static_cast<int>(per_tile.size()) != tiling.tiles) throw ShapeError("one vector per tile is required");
    const std::size_t n = per_tile.front().size();
    if (offset < 0 || offset + static_cast<std::int64_t>(n) > tiling.stride)
        throw CapacityError("feature vector exceeds its slot tile", offset + static_cast<long long>(n), tiling.stride);
    std::vector<double> s;
    if (!ctx.symbolic()) {
        s = zeros(ctx);
        for (int t = 0; t < tiling.tiles; ++t) {
            if (per_tile[t].size() != n) throw ShapeError("tile vectors differ in length");
            for (std::size_t j = 0; j < n; ++j) s[slot_at(tiling, t, offset + static_cast<std::int64_t>(j))] = per_tile[t][j];
        }
    }
    CipherFlat f;
    f.chunks.push_back(ckks::encrypt_vector(PlainVec(std::move(s)), ctx));
    f.offsets.push_back(offset);
    f.features.emplace_back(n);
    for (std::size_t j = 0; j < n; ++j) f.features[0][j] = static_cast<int>(j);
    f.n_features = static_cast<int>(n);
    f.tiling = tiling;
    return f;
}

std::vector<std::vector<double>> decrypt_flat(const CipherFlat& x, const HeContext& ctx) {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(x.tiling.tiles),
                                         std::vector<double>(static_cast<std::size_t>(x.n_features), 0.0));
    for (std::size_t k = 0; k < x.chunks.size(); ++k) {
        const PlainVec p = ckks::decrypt_vector(x.chunks[k], ctx);
        for (int t = 0; t < x.tiling.tiles; ++t)
            for (std::size_t pos = 0; pos < x.features[k].size(); ++pos) {
                const int f = x.features[k][pos];
                if (f >= 0) out[t][f] = p[slot_at(x.tiling, t, x.offsets[k] + static_cast<std::int64_t>(pos))];
            }
    }
    return out;
}

CipherGrid conv_layer(const CipherGrid& x, const ConvWeights& f, int sh, int sw, int ph, int pw,
                      const HeContext& ctx, OpRecorder& rec, ExecPolicy policy) {
    if (static_cast<int>(x.channels.size()) != f.cin)
        throw ShapeError("conv: input has " + std::to_string(x.channels.size()) + " channels, kernel expects " +
                         std::to_string(f.cin));
    if (!f.bias.empty() && static_cast<int>(f.bias.size()) != f.cout) throw ShapeError("conv: bias length mismatch");
    const WindowPlan plan = plan_window(x, f.kh, f.kw, sh, sw, ph, pw, "conv");
    require_grid_levels(x, 2, rec);
    const GridLayout& in = x.grid;
    const GridLayout& out = plan.out;
    const int taps = plan.taps;

    // valid[t]: 1 everywhere except output slots whose source pixel is padding.
    std::vector<std::vector<double>> valid;
    if (!ctx.symbolic()) {
        valid.assign(static_cast<std::size_t>(taps), std::vector<double>(static_cast<std::size_t>(ctx.slot_count()), 1.0));
        for (int i = 0; i < f.kh; ++i)
            for (int j = 0; j < f.kw; ++j) {
                auto& v = valid[static_cast<std::size_t>(i * f.kw + j)];
                for (int tile = 0; tile < x.tiling.tiles; ++tile)
                    for (int a = 0; a < out.h; ++a)
                        for (int b = 0; b < out.w; ++b) {
                            const int r = a * sh + i - ph;
                            const int c = b * sw + j - pw;
                            if (r < 0 || r >= in.h || c < 0 || c >= in.w) v[slot_at(x.tiling, tile, out.offset(a, b))] = 0.0;
                        }
            }
    }
    const PlainVec mask = output_mask(out, x.tiling, ctx);

    std::vector<Ciphertext> rotated(static_cast<std::size_t>(f.cin * taps));
    for_each_unit(policy, f.cin * taps, rec, [&](int u, OpRecorder& r) {
        rotated[static_cast<std::size_t>(u)] = ckks::he_rotate(x.channels[u / taps], plan.offsets[u % taps], ctx, r);
    });

    CipherGrid y;
    y.grid = out;
    y.tiling = x.tiling;
    y.channels.resize(static_cast<std::size_t>(f.cout));
    for_each_unit(policy, f.cout, rec, [&](int o, OpRecorder& r) {
        std::optional<Ciphertext> acc;
        for (int ci = 0; ci < f.cin; ++ci)
            for (int t = 0; t < taps; ++t) {
                PlainVec wv;
                if (!ctx.symbolic()) {
                    const double w = f.at(o, ci, t / f.kw, t % f.kw);
                    std::vector<double> s = valid[static_cast<std::size_t>(t)];
                    for (double& e : s) e *= w;
                    wv = PlainVec(std::move(s));
                }
                Ciphertext p = ckks::he_mul(rotated[static_cast<std::size_t>(ci * taps + t)], wv, ctx, r);
                acc = acc ? ckks::he_add(*acc, p, ctx, r) : p;
            }
        Ciphertext c = ckks::he_mul(*acc, mask, ctx, r, MulRole::Mask);
        if (!f.bias.empty()) {
            PlainVec bv;
            if (!ctx.symbolic()) {
                std::vector<double> s = zeros(ctx);
                for (int tile = 0; tile < x.tiling.tiles; ++tile)
                    for (int a = 0; a < out.h; ++a)
                        for (int b = 0; b < out.w; ++b) s[slot_at(x.tiling, tile, out.offset(a, b))] = f.bias[o];
                bv = PlainVec(std::move(s));
            }
            c = ckks::he_add(c, bv, ctx, r);
        }
        y.channels[static_cast<std::size_t>(o)] = c;
    });
    return y;
}

CipherGrid conv_forward(const CipherGrid& x, const std::vector<double>& kernel, int kh, int kw, int sh, int sw,
                        int ph, int pw, const HeContext& ctx, OpRecorder& rec) {
    if (x.channels.size() != 1) throw ShapeError("conv_forward works on one packed channel");
    if (static_cast<int>(kernel.size()) != kh * kw) throw ShapeError("kernel size mismatch");
    ConvWeights f{1, 1, kh, kw, kernel, {}};
    return conv_layer(x, f, sh, sw, ph, pw, ctx, rec);
}

CipherGrid sum_pool(const CipherGrid& x, int kh, int kw, int sh, int sw, const HeContext& ctx, OpRecorder& rec,
                    ExecPolicy policy) {
    const WindowPlan plan = plan_window(x, kh, kw, sh, sw, 0, 0, "sum_pool");
    require_grid_levels(x, 1, rec);
    const PlainVec mask = output_mask(plan.out, x.tiling, ctx);
    CipherGrid y;
    y.grid = plan.out;
    y.tiling = x.tiling;
    y.channels.resize(x.channels.size());
    for_each_unit(policy, static_cast<int>(x.channels.size()), rec, [&](int ch, OpRecorder& r) {
        Ciphertext acc = ckks::he_rotate(x.channels[ch], plan.offsets[0], ctx, r);
        for (int t = 1; t < plan.taps; ++t)
            acc = ckks::he_add(acc, ckks::he_rotate(x.channels[ch], plan.offsets[t], ctx, r), ctx, r);
        y.channels[static_cast<std::size_t>(ch)] = ckks::he_mul(acc, mask, ctx, r, MulRole::Mask);
    });
    return y;
}

Ciphertext square_act(const Ciphertext& x, const HeContext& ctx, OpRecorder& rec) {
    Ciphertext y = ckks::he_mul(x, x, ctx, rec);
    rec.record(ckks::OpKind::ActC);
    return y;
}

CipherGrid square_act(const CipherGrid& x, const HeContext& ctx, OpRecorder& rec, ExecPolicy policy) {
    CipherGrid y = x;
    for_each_unit(policy, static_cast<int>(x.channels.size()), rec, [&](int ch, OpRecorder& r) {
        y.channels[static_cast<std::size_t>(ch)] = square_act(x.channels[ch], ctx, r);
    });
    return y;
}

CipherFlat square_act(const CipherFlat& x, const HeContext& ctx, OpRecorder& rec, ExecPolicy policy) {
    CipherFlat y = x;
    for_each_unit(policy, static_cast<int>(x.chunks.size()), rec, [&](int k, OpRecorder& r) {
        y.chunks[static_cast<std::size_t>(k)] = square_act(x.chunks[k], ctx, r);
    });
    return y;
}

namespace {

/// Left rotations n2-1 .. 1-n1, one Mul_PC each, pairwise summed. No bias.
/// Input at tile positions offset..offset+n1-1; output lands at offset+n1-n2.
Ciphertext fc_diagonal(const Ciphertext& x, std::int64_t offset, const Matrix& W, const SlotTiling& tiling,
                       const HeContext& ctx, OpRecorder& rec, ExecPolicy policy) {
    const int n1 = W.rows;
    const int n2 = W.cols;
    if (n1 < 1 || n2 < 1) throw ShapeError("fc: matrix must be at least 1x1");
    if (offset < 0 || offset + n1 > tiling.stride)
        throw CapacityError("fc input exceeds its slot tile", offset + n1, tiling.stride);
    const std::int64_t out = fc_output_offset(offset, n1, n2);
    if (out < 0 || out + n2 > tiling.stride)
        throw CapacityError("fc output leaves its slot tile", std::max<std::int64_t>(out + n2, n2 - out), tiling.stride);
    ckks::require_levels(x, 1, rec);
    const int m = n1 + n2 - 1;
    std::vector<Ciphertext> terms(static_cast<std::size_t>(m));
    for_each_unit(policy, m, rec, [&](int u, OpRecorder& r) {
        const int rot = n2 - 1 - u;
        PlainVec wv;
        if (!ctx.symbolic()) {
            std::vector<double> s = zeros(ctx);
            // Output j reads input i = j + n1 - n2 + rot after the rotation.
            for (int j = 0; j < n2; ++j) {
                const int i = j + n1 - n2 + rot;
                if (i < 0 || i >= n1) continue;
                const double w = W.at(i, j);
                for (int t = 0; t < tiling.tiles; ++t) s[slot_at(tiling, t, out + j)] = w;
            }
            wv = PlainVec(std::move(s));
        }
        terms[static_cast<std::size_t>(u)] = ckks::he_mul(ckks::he_rotate(x, rot, ctx, r), wv, ctx, r);
    });
    return tree_sum(std::move(terms), ctx, rec);
}

Ciphertext add_bias(const Ciphertext& c, const TileBias& bias, int n2, std::int64_t offset, const SlotTiling& tiling,
                    const HeContext& ctx, OpRecorder& rec) {
    if (bias.empty()) return c;
    if (bias.size() != 1 && static_cast<int>(bias.size()) != tiling.tiles)
        throw ShapeError("fc: bias must be broadcast or given per tile");
    PlainVec bv;
    if (!ctx.symbolic()) {
        std::vector<double> s = zeros(ctx);
        for (int t = 0; t < tiling.tiles; ++t) {
            const auto& b = bias.size() == 1 ? bias[0] : bias[static_cast<std::size_t>(t)];
            if (static_cast<int>(b.size()) != n2) throw ShapeError("fc: bias length mismatch");
            for (int j = 0; j < n2; ++j) s[slot_at(tiling, t, offset + j)] = b[j];
        }
        bv = PlainVec(std::move(s));
    }
    return ckks::he_add(c, bv, ctx, rec);
}

}  // namespace

Ciphertext fc_forward(const Ciphertext& x, std::int64_t offset, const Matrix& W, const TileBias& bias,
                      const SlotTiling& tiling, const HeContext& ctx, OpRecorder& rec, ExecPolicy policy) {
    check_tiling(tiling, ctx);
    Ciphertext y = fc_diagonal(x, offset, W, tiling, ctx, rec, policy);
    return add_bias(y, bias, W.cols, fc_output_offset(offset, W.rows, W.cols), tiling, ctx, rec);
}

CipherFlat fc_layer(const CipherFlat& x, const Matrix& W, const TileBias& bias, const HeContext& ctx,
                    OpRecorder& rec, ExecPolicy policy) {
    if (W.rows != x.n_features)
        throw ShapeError("fc: matrix has " + std::to_string(W.rows) + " rows for " + std::to_string(x.n_features) +
                         " features");
    const std::int64_t end = x.offsets.front() + static_cast<std::int64_t>(x.features.front().size());
    for (std::size_t k = 0; k < x.chunks.size(); ++k)
        if (x.offsets[k] + static_cast<std::int64_t>(x.features[k].size()) != end)
            throw UsageError("fc: feature chunks are not aligned at a common end position");
    std::optional<Ciphertext> acc;
    std::int64_t out = 0;
    for (std::size_t k = 0; k < x.chunks.size(); ++k) {
        const auto& feat = x.features[k];
        Matrix Wk(static_cast<int>(feat.size()), W.cols);
        for (std::size_t pos = 0; pos < feat.size(); ++pos)
            if (feat[pos] >= 0)
                for (int j = 0; j < W.cols; ++j) Wk.at(static_cast<int>(pos), j) = W.at(feat[pos], j);
        Ciphertext part = fc_diagonal(x.chunks[k], x.offsets[k], Wk, x.tiling, ctx, rec, policy);
        out = fc_output_offset(x.offsets[k], Wk.rows, Wk.cols);
        acc = acc ? ckks::he_add(*acc, part, ctx, rec) : part;
    }
    CipherFlat y;
    y.chunks.push_back(add_bias(*acc, bias, W.cols, out, x.tiling, ctx, rec));
    y.offsets.push_back(out);
    y.features.emplace_back(static_cast<std::size_t>(W.cols));
    for (int j = 0; j < W.cols; ++j) y.features[0][static_cast<std::size_t>(j)] = j;
    y.n_features = W.cols;
    y.tiling = x.tiling;
    return y;
}

CipherFlat flatten(const CipherGrid& x, const HeContext& ctx, OpRecorder& rec, ExecPolicy policy) {
    const GridLayout& g = x.grid;
    const int C = static_cast<int>(x.channels.size());
    const int hw = g.h * g.w;
    CipherFlat y;
    y.tiling = x.tiling;
    y.n_features = C * hw;

    if (C == 1 && g.base == 0 && g.col_stride == 1 && g.row_stride == g.w) {
        y.chunks = x.channels;
        y.offsets.push_back(0);
        y.features.emplace_back(static_cast<std::size_t>(hw));
        for (int i = 0; i < hw; ++i) y.features[0][static_cast<std::size_t>(i)] = i;
        return y;
    }
    require_grid_levels(x, 1, rec);

    // Rows with column stride d are interleaved d at a time into bundles of w*d contiguous slots.
    const std::int64_t cs = g.col_stride;
    const std::int64_t d = cs;
    const std::int64_t bundle = (g.w - 1) * cs + d;
    const std::int64_t per_chunk = x.tiling.stride / bundle;
    if (per_chunk < 1) throw CapacityError("flatten row bundle exceeds its slot tile", bundle, x.tiling.stride);

    struct Row {
        int chunk;
        int channel;
        int row;
        std::int64_t start;
    };
    std::vector<Row> rows;
    for (int gr = 0; gr < C * g.h; ++gr) {
        const std::int64_t b = gr / d;
        rows.push_back(Row{static_cast<int>(b / per_chunk), gr / g.h, gr % g.h, (b % per_chunk) * bundle + gr % d});
        const auto chunk = static_cast<std::size_t>(rows.back().chunk);
        if (y.features.size() <= chunk) y.features.emplace_back();
        auto& feat = y.features[chunk];
        const std::size_t need = static_cast<std::size_t>(rows.back().start + (g.w - 1) * cs + 1);
        if (feat.size() < need) feat.resize(need, -1);
        for (int col = 0; col < g.w; ++col)
            feat[static_cast<std::size_t>(rows.back().start + col * cs)] = gr * g.w + col;
    }
    // Shorter chunks are right-aligned with the first so every chunk ends at the same position.
    for (const auto& feat : y.features)
        y.offsets.push_back(static_cast<std::int64_t>(y.features.front().size() - feat.size()));

    struct Group {
        int chunk;
        int channel;
        std::int64_t shift;
        std::vector<int> rows;
    };
    std::vector<Group> groups;
    std::map<std::tuple<int, int, std::int64_t>, std::size_t> index;
    for (const Row& rw : rows) {
        const std::int64_t target = y.offsets[static_cast<std::size_t>(rw.chunk)] + rw.start;
        const std::int64_t shift = g.base + rw.row * g.row_stride - target;
        const auto key = std::make_tuple(rw.chunk, rw.channel, shift);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, groups.size());
            groups.push_back(Group{rw.chunk, rw.channel, shift, {rw.row}});
        } else {
            groups[it->second].rows.push_back(rw.row);
        }
    }

    std::vector<Ciphertext> moved(groups.size());
    for_each_unit(policy, static_cast<int>(groups.size()), rec, [&](int gi, OpRecorder& r) {
        const Group& grp = groups[static_cast<std::size_t>(gi)];
        PlainVec mask;
        if (!ctx.symbolic()) {
            std::vector<double> s = zeros(ctx);
            for (int t = 0; t < x.tiling.tiles; ++t)
                for (int row : grp.rows)
                    for (int col = 0; col < g.w; ++col) s[slot_at(x.tiling, t, g.offset(row, col))] = 1.0;
            mask = PlainVec(std::move(s));
        }
        Ciphertext m = ckks::he_mul(x.channels[grp.channel], mask, ctx, r, MulRole::Mask);
        moved[static_cast<std::size_t>(gi)] = grp.shift == 0 ? m : ckks::he_rotate(m, grp.shift, ctx, r);
    });

    y.chunks.resize(y.features.size());
    std::vector<bool> started(y.features.size(), false);
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto k = static_cast<std::size_t>(groups[gi].chunk);
        y.chunks[k] = started[k] ? ckks::he_add(y.chunks[k], moved[gi], ctx, rec) : moved[gi];
        started[k] = true;
    }
    return y;
}

CipherGrid add_plain(const CipherGrid& x, const std::vector<Tensor3>& per_tile, const HeContext& ctx,
                     OpRecorder& rec) {
    if (static_cast<int>(per_tile.size()) != x.tiling.tiles) throw ShapeError("one tensor per tile is required");
    for (const Tensor3& z : per_tile)
        if (z.c != static_cast<int>(x.channels.size()) || z.h != x.grid.h || z.w != x.grid.w)
            throw ShapeError("plaintext addend shape " + std::to_string(z.c) + "x" + std::to_string(z.h) + "x" +
                             std::to_string(z.w) + " does not match the ciphertext grid");
    CipherGrid y = x;
    for (std::size_t ch = 0; ch < x.channels.size(); ++ch) {
        PlainVec zv;
        if (!ctx.symbolic()) {
            std::vector<double> s = zeros(ctx);
            for (int t = 0; t < x.tiling.tiles; ++t)
                for (int i = 0; i < x.grid.h; ++i)
                    for (int j = 0; j < x.grid.w; ++j)
                        s[slot_at(x.tiling, t, x.grid.offset(i, j))] = per_tile[t].at(static_cast<int>(ch), i, j);
            zv = PlainVec(std::move(s));
        }
        y.channels[ch] = ckks::he_add(x.channels[ch], zv, ctx, rec);
    }
    return y;
}

CipherGrid add_cipher(const CipherGrid& a, const CipherGrid& b, const HeContext& ctx, OpRecorder& rec) {
    if (a.channels.size() != b.channels.size() || !(a.grid == b.grid) || !(a.tiling == b.tiling))
        throw ShapeError("cannot add ciphertext grids with different layouts");
    CipherGrid y = a;
    for (std::size_t ch = 0; ch < a.channels.size(); ++ch)
        y.channels[ch] = ckks::he_add(a.channels[ch], b.channels[ch], ctx, rec);
    return y;
}

CipherFlat align_flat(const CipherFlat& x, std::int64_t offset, const HeContext& ctx, OpRecorder& rec) {
    CipherFlat y = x;
    for (std::size_t k = 0; k < x.chunks.size(); ++k) {
        if (offset < 0 || offset + static_cast<std::int64_t>(x.features[k].size()) > x.tiling.stride)
            throw CapacityError("aligned chunk leaves its slot tile", offset + static_cast<long long>(x.features[k].size()),
                                x.tiling.stride);
        if (x.offsets[k] == offset) continue;
        y.chunks[k] = ckks::he_rotate(x.chunks[k], x.offsets[k] - offset, ctx, rec);
        y.offsets[k] = offset;
    }
    return y;
}

CipherFlat add_cipher(const CipherFlat& a, const CipherFlat& b, const HeContext& ctx, OpRecorder& rec) {
    if (a.features != b.features || a.offsets != b.offsets || !(a.tiling == b.tiling))
        throw ShapeError("cannot add flat ciphertexts with different layouts");
    CipherFlat y = a;
    for (std::size_t k = 0; k < a.chunks.size(); ++k) y.chunks[k] = ckks::he_add(a.chunks[k], b.chunks[k], ctx, rec);
    return y;
}

}  // namespace bicrypt::henn
