#include <algorithm>

#include "bicrypt/cost/cost.hpp"
#include "bicrypt/error.hpp"

namespace bicrypt::cost {

Mask::Mask(int h_, int w_, bool value)
    : h(h_), w(w_), bits(static_cast<std::size_t>(h_) * static_cast<std::size_t>(w_), value ? 1 : 0) {}

bool Mask::any() const { return std::any_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b != 0; }); }

double Mask::fraction() const {
    if (bits.empty()) return 0.0;
    const auto n = std::count_if(bits.begin(), bits.end(), [](std::uint8_t b) { return b != 0; });
    return static_cast<double>(n) / static_cast<double>(bits.size());
}

Mask centered_mask(int h, int w, int ch, int cw) {
    if (ch < 0 || cw < 0 || ch > h || cw > w) throw ShapeError("centered window larger than the mask");
    Mask m(h, w);
    const int r0 = (h - ch) / 2;
    const int c0 = (w - cw) / 2;
    for (int i = 0; i < ch; ++i)
        for (int j = 0; j < cw; ++j) m.set(r0 + i, c0 + j, true);
    return m;
}

namespace {

Mask window_or(const Mask& in, const henn::LayerSpec& s, int oh, int ow) {
    Mask out(oh, ow);
    for (int a = 0; a < oh; ++a)
        for (int b = 0; b < ow; ++b) {
            bool t = false;
            for (int i = 0; i < s.kh && !t; ++i)
                for (int j = 0; j < s.kw && !t; ++j) {
                    const int r = a * s.sh + i - s.ph;
                    const int c = b * s.sw + j - s.pw;
                    t = r >= 0 && r < in.h && c >= 0 && c < in.w && in.at(r, c);
                }
            out.set(a, b, t);
        }
    return out;
}

}  // namespace

SpreadState spread_analysis(const net::Branch& branch, const Mask& initial) {
    if (initial.h != branch.input.h || initial.w != branch.input.w)
        throw ShapeError("spread: mask is " + std::to_string(initial.h) + "x" + std::to_string(initial.w) +
                         " but the branch input is " + std::to_string(branch.input.h) + "x" +
                         std::to_string(branch.input.w));
    const auto shapes = net::branch_shapes(branch);
    SpreadState st;
    std::vector<Mask> out;
    out.reserve(branch.layers.size());
    for (int i = 0; i < static_cast<int>(branch.layers.size()); ++i) {
        const henn::LayerSpec& s = branch.layers[static_cast<std::size_t>(i)];
        std::vector<const Mask*> in;
        for (int k : net::layer_inputs(branch, i)) in.push_back(k < 0 ? &initial : &out[static_cast<std::size_t>(k)]);
        const henn::Shape3& sh = shapes[static_cast<std::size_t>(i)];
        Mask m;
        switch (s.kind) {
            case henn::LayerKind::Conv:
            case henn::LayerKind::SumPool: m = window_or(*in[0], s, sh.h, sh.w); break;
            case henn::LayerKind::Square:
            case henn::LayerKind::Relu: m = *in[0]; break;
            case henn::LayerKind::Add:
                m = *in[0];
                for (std::size_t k = 0; k < m.bits.size(); ++k) m.bits[k] = m.bits[k] | in[1]->bits[k];
                break;
            case henn::LayerKind::Flatten:
                m = *in[0];
                m.w = m.h * m.w;
                m.h = 1;
                break;
            case henn::LayerKind::FC: m = Mask(1, s.out_channels, in[0]->any()); break;
        }
        const double f = m.fraction();
        st.layers.push_back(SpreadLayer{branch.name + "." + s.name, branch.tag, m, f});
        if (st.full_at == 0 && f == 1.0) st.full_at = i + 1;
        out.push_back(std::move(m));
    }
    return st;
}

NetworkSpread spread_analysis(const net::NetworkSpec& net, const Mask& initial) {
    net::validate(net);
    NetworkSpread r;
    if (net.kind == net::NetKind::Backbone) {
        r.plain = spread_analysis(net.plain, initial);
        return r;
    }
    const Mask cipher_in(net.cipher.input.h, net.cipher.input.w, true);
    r.cipher = spread_analysis(net.cipher, cipher_in);
    if (initial.h != net.plain.input.h || initial.w != net.plain.input.w)
        throw ShapeError("spread: mask does not match the network input");
    r.plain = spread_analysis(net.plain, Mask(initial.h, initial.w, net.plain_input_encrypted));
    const bool head = (!r.cipher.layers.empty() && r.cipher.layers.back().mask.any()) ||
                      (!r.plain.layers.empty() && r.plain.layers.back().mask.any());
    r.head = SpreadLayer{"head", BranchTag::Cipher, Mask(1, net.head.n2, head), head ? 1.0 : 0.0};
    return r;
}

}  // namespace bicrypt::cost
