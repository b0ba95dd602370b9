#include "bicrypt/net/network.hpp"

#include "bicrypt/error.hpp"

namespace bicrypt::net {

namespace {

using henn::conv;
using henn::fc;
using henn::flatten;
using henn::relu;
using henn::square;
using henn::sum_pool;

LayerSpec activation(const std::string& name, bool use_square) { return use_square ? square(name) : relu(name); }

/// Conv stacks for CNN-11 and VGG-16: positive entries are 3x3 pad-1 convs, 0 is a 2x2 sum pool.
std::vector<LayerSpec> conv_stack(const std::vector<int>& plan, int in_ch, bool square_act,
                                  std::vector<int>* act_layers) {
    std::vector<LayerSpec> layers;
    int ch = in_ch;
    int conv_i = 0;
    int pool_i = 0;
    for (int p : plan) {
        if (p == 0) {
            layers.push_back(sum_pool("pool" + std::to_string(++pool_i), 2, 2));
            continue;
        }
        ++conv_i;
        layers.push_back(conv("conv" + std::to_string(conv_i), ch, p, 3, 1, 1));
        layers.push_back(activation("act" + std::to_string(conv_i), square_act));
        if (act_layers) act_layers->push_back(static_cast<int>(layers.size()) - 1);
        ch = p;
    }
    return layers;
}

/// Stem, three downsampling stages, each with a strided-conv skip path.
std::vector<LayerSpec> resnet_layers(int in_ch, bool square_act, std::vector<int>* act_layers) {
    std::vector<LayerSpec> L;
    auto push = [&](LayerSpec s) {
        L.push_back(std::move(s));
        return static_cast<int>(L.size()) - 1;
    };
    auto act = [&](const std::string& name, int input) {
        LayerSpec s = activation(name, square_act);
        s.inputs = {input};
        const int i = push(std::move(s));
        if (act_layers) act_layers->push_back(i);
        return i;
    };
    auto cv = [&](const std::string& name, int cin, int cout, int stride, int input) {
        LayerSpec s = conv(name, cin, cout, 3, stride, 1);
        s.inputs = {input};
        return push(std::move(s));
    };
    int x = cv("conv1", in_ch, 64, 1, -1);
    const int a1 = act("act1", x);
    x = cv("conv2a", 64, 64, 1, a1);
    x = act("act2a", x);
    x = cv("conv2b", 64, 64, 1, x);
    x = act("act2b", x);
    int block = push(henn::add("add2", a1, x));
    const int widths[] = {128, 256, 512};
    int cin = 64;
    int stage = 3;
    for (int wdt : widths) {
        const std::string s = std::to_string(stage++);
        x = cv("conv" + s + "a", cin, wdt, 2, block);
        x = act("act" + s + "a", x);
        x = cv("conv" + s + "b", wdt, wdt, 1, x);
        x = act("act" + s + "b", x);
        const int skip = cv("skip" + s, cin, wdt, 2, block);
        block = push(henn::add("add" + s, x, skip));
        cin = wdt;
    }
    return L;
}

struct ArchInfo {
    Shape3 full;
    Shape3 segment;
    int n1;
    int n2;
};

ArchInfo info(Arch arch) {
    switch (arch) {
        case Arch::CNN3: return {{1, 28, 28}, {1, 14, 14}, 100, 10};
        case Arch::CNN11: return {{3, 32, 32}, {3, 16, 16}, 256, 10};
        case Arch::VGG16: return {{3, 32, 32}, {3, 16, 16}, 512, 10};
        case Arch::RESNET18: return {{3, 32, 32}, {3, 16, 16}, 512, 10};
    }
    throw ParameterError("unknown architecture");
}

std::vector<LayerSpec> trunk(Arch arch, bool square_act, std::vector<int>* act_layers) {
    switch (arch) {
        case Arch::CNN3: {
            std::vector<LayerSpec> L;
            L.push_back(conv("conv1", 1, 5, 5, 2, 1));
            L.push_back(activation("act1", square_act));
            if (act_layers) act_layers->push_back(1);
            return L;
        }
        case Arch::CNN11: return conv_stack({32, 32, 0, 64, 64, 0, 128, 128, 0}, 3, square_act, act_layers);
        case Arch::VGG16:
            return conv_stack({64, 64, 0, 128, 128, 0, 256, 256, 256, 0, 512, 512, 512, 0, 512, 512, 512}, 3,
                              square_act, act_layers);
        case Arch::RESNET18: return resnet_layers(3, square_act, act_layers);
    }
    throw ParameterError("unknown architecture");
}

std::vector<LayerSpec> prefixed(std::vector<LayerSpec> layers, const std::string& prefix) {
    for (LayerSpec& s : layers) {
        if (!s.weight.empty()) s.weight = prefix + "." + s.weight;
        if (!s.bias.empty()) s.bias = prefix + "." + s.bias;
    }
    return layers;
}

}  // namespace

NetworkSpec make_network(Arch arch, NetKind kind, PlainActivation act) {
    const ArchInfo ai = info(arch);
    NetworkSpec net;
    net.arch = arch;
    net.kind = kind;
    net.plain.name = "plain";
    net.plain.tag = BranchTag::Plain;
    net.cipher.name = "cipher";
    net.cipher.tag = BranchTag::Cipher;

    if (kind == NetKind::Backbone) {
        net.plain.name = "backbone";
        net.plain.input = ai.full;
        net.plain.layers = trunk(arch, true, nullptr);
        net.plain.layers.push_back(flatten("flatten"));
        const int n_feat = static_cast<int>(branch_shapes(net.plain).back().size());
        net.plain.layers.push_back(fc("fc1", n_feat, ai.n1));
        net.plain.layers.push_back(square("act_fc1"));
        net.plain.layers.push_back(fc("fc2", ai.n1, ai.n2));
        net.plain.layers = prefixed(std::move(net.plain.layers), "backbone");
        net.plain_input_encrypted = true;
        validate(net);
        return net;
    }

    std::vector<int> cipher_acts;
    std::vector<int> plain_acts;
    net.cipher.input = ai.segment;
    net.cipher.layers = prefixed(trunk(arch, true, &cipher_acts), "cipher");
    net.cipher.layers.push_back(flatten("flatten"));
    net.plain.input = ai.full;
    net.plain.layers = prefixed(trunk(arch, act == PlainActivation::Square, &plain_acts), "plain");
    net.plain.layers.push_back(flatten("flatten"));

    const auto cs = branch_shapes(net.cipher);
    const auto ps = branch_shapes(net.plain);
    for (std::size_t k = 0; k < cipher_acts.size(); ++k) {
        Connection c;
        c.plain_layer = plain_acts[k];
        c.cipher_layer = cipher_acts[k];
        const Shape3& q = cs[static_cast<std::size_t>(c.cipher_layer)];
        c.crop_h = q.h;
        c.crop_w = q.w;
        c.ch_c = q.c;
        c.ch_p = ps[static_cast<std::size_t>(c.plain_layer)].c;
        c.crot = "conn" + std::to_string(k + 1) + ".crot";
        net.connections.push_back(c);
    }
    net.head.n1 = ai.n1;
    net.head.n2 = ai.n2;
    net.head.n_c = static_cast<int>(cs.back().size());
    net.head.n_p = static_cast<int>(ps.back().size());
    validate(net);
    return net;
}

NetworkSpec make_miswired_cnn3() {
    NetworkSpec net = make_network(Arch::CNN3, NetKind::BiNet, PlainActivation::Square);
    net.connections.clear();
    net.plain_input_encrypted = true;
    return net;
}

}  // namespace bicrypt::net
