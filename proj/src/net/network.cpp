#include "bicrypt/net/network.hpp"

#include <algorithm>
#include <cctype>

#include "bicrypt/error.hpp"

namespace bicrypt::net {

const char* to_string(Arch arch) {
    switch (arch) {
        case Arch::CNN3: return "cnn3";
        case Arch::CNN11: return "cnn11";
        case Arch::VGG16: return "vgg16-cifar";
        case Arch::RESNET18: return "resnet18-cifar";
    }
    return "?";
}

const char* to_string(NetKind kind) { return kind == NetKind::BiNet ? "bi-net" : "backbone"; }

Arch parse_arch(const std::string& name) {
    std::string low = name;
    std::transform(low.begin(), low.end(), low.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (low == "cnn3" || low == "cnn-3") return Arch::CNN3;
    if (low == "cnn11" || low == "cnn-11" || low == "cnn11-cifar") return Arch::CNN11;
    if (low == "vgg16" || low == "vgg16-cifar" || low == "vgg-16") return Arch::VGG16;
    if (low == "resnet18" || low == "resnet18-cifar" || low == "resnet-18") return Arch::RESNET18;
    throw ParameterError("unknown architecture '" + name + "'");
}

std::vector<int> layer_inputs(const Branch& b, int i) {
    const LayerSpec& s = b.layers[static_cast<std::size_t>(i)];
    if (!s.inputs.empty()) {
        for (int k : s.inputs)
            if (k < -1 || k >= i)
                throw ShapeError("layer '" + s.name + "' reads layer " + std::to_string(k) + " which is not earlier");
        return s.inputs;
    }
    return {i - 1};
}

std::vector<Shape3> branch_shapes(const Branch& b) {
    std::vector<Shape3> out;
    out.reserve(b.layers.size());
    for (int i = 0; i < static_cast<int>(b.layers.size()); ++i) {
        std::vector<Shape3> in;
        for (int k : layer_inputs(b, i)) in.push_back(k < 0 ? b.input : out[static_cast<std::size_t>(k)]);
        out.push_back(henn::output_shape(b.layers[static_cast<std::size_t>(i)], in));
    }
    return out;
}

void validate(const NetworkSpec& net) {
    const auto cshapes = branch_shapes(net.cipher);
    const auto pshapes = branch_shapes(net.plain);
    if (net.plain.empty()) throw ShapeError("network needs a plaintext (or backbone) branch");
    for (const Connection& c : net.connections) {
        if (c.plain_layer < 0 || c.plain_layer >= static_cast<int>(pshapes.size()) || c.cipher_layer < 0 ||
            c.cipher_layer >= static_cast<int>(cshapes.size()))
            throw ShapeError("connection refers to a missing layer");
        const Shape3& p = pshapes[static_cast<std::size_t>(c.plain_layer)];
        const Shape3& q = cshapes[static_cast<std::size_t>(c.cipher_layer)];
        if (p.c != c.ch_p || q.c != c.ch_c || q.h != c.crop_h || q.w != c.crop_w)
            throw ShapeError("connection shapes disagree with the branches");
        if (c.crop_h > p.h || c.crop_w > p.w) throw ShapeError("connection crop larger than the plaintext map");
    }
    if (net.kind == NetKind::BiNet) {
        if (net.cipher.empty()) throw ShapeError("bi-net needs a ciphertext branch");
        const IntegrationSpec& h = net.head;
        if (h.n1 < 2 || h.n1 % 2 != 0) throw ShapeError("head width n1 must be even");
        if (cshapes.back().size() != h.n_c || pshapes.back().size() != h.n_p)
            throw ShapeError("head input widths disagree with the branch outputs");
    }
}

namespace {

void branch_depths(const Branch& b, std::vector<int>& depth, int input_depth) {
    depth.assign(b.layers.size(), 0);
    for (int i = 0; i < static_cast<int>(b.layers.size()); ++i) {
        int d = 0;
        for (int k : layer_inputs(b, i)) d = std::max(d, k < 0 ? input_depth : depth[static_cast<std::size_t>(k)]);
        depth[static_cast<std::size_t>(i)] = d + henn::level_cost(b.layers[static_cast<std::size_t>(i)]);
    }
}

}  // namespace

int network_depth(const NetworkSpec& net) {
    std::vector<int> cd;
    std::vector<int> pd;
    branch_depths(net.cipher, cd, 0);
    // Connections add plaintext, so they never change cipher depth.
    int d = cd.empty() ? 0 : cd.back();
    if (net.plain_input_encrypted) {
        branch_depths(net.plain, pd, 0);
        d = std::max(d, pd.back());
    }
    if (net.kind == NetKind::BiNet) d += 4;
    return d;
}

Shape3 encrypted_input_shape(const NetworkSpec& net) {
    if (net.cipher.empty() || net.plain_input_encrypted) return net.plain.input;
    return net.cipher.input;
}

std::vector<TensorRef> required_tensors(const NetworkSpec& net) {
    std::vector<TensorRef> out;
    auto add_branch = [&](const Branch& b) {
        for (std::size_t i = 0; i < b.layers.size(); ++i) {
            const LayerSpec& s = b.layers[i];
            if (s.kind == LayerKind::Conv) {
                out.push_back({s.weight, {s.out_channels, s.in_channels, s.kh, s.kw}});
                out.push_back({s.bias, {s.out_channels}});
            } else if (s.kind == LayerKind::FC) {
                out.push_back({s.weight, {s.in_channels, s.out_channels}});
                out.push_back({s.bias, {s.out_channels}});
            }
        }
    };
    add_branch(net.cipher);
    add_branch(net.plain);
    for (const Connection& c : net.connections) out.push_back({c.crot, {c.ch_c, c.ch_p}});
    if (net.kind == NetKind::BiNet) {
        const IntegrationSpec& h = net.head;
        const int half = h.n1 / 2;
        out.push_back({h.W_c1, {h.n_c, half}});
        out.push_back({h.W_p1, {h.n_p, half}});
        out.push_back({h.W_p1_plain, {h.n_p, half}});
        out.push_back({h.b1, {half}});
        out.push_back({h.b1_plain, {half}});
        out.push_back({h.W_c2, {half, h.n2}});
        out.push_back({h.W_p2, {half, h.n2}});
        out.push_back({h.b2, {h.n2}});
    }
    return out;
}

}  // namespace bicrypt::net
