#include "bicrypt/error.hpp"
#include "bicrypt/net/bicrypto.hpp"

namespace bicrypt::net {

namespace {

std::vector<Tensor3> run_branch(const Branch& b, const std::vector<henn::LayerParams>& params, const Tensor3& input,
                                const NetworkSpec& net, const std::vector<Tensor3>* plain_out,
                                const NetworkWeights& w) {
    std::vector<Tensor3> out(b.layers.size());
    for (int i = 0; i < static_cast<int>(b.layers.size()); ++i) {
        std::vector<const Tensor3*> in;
        for (int k : layer_inputs(b, i)) in.push_back(k < 0 ? &input : &out[static_cast<std::size_t>(k)]);
        out[static_cast<std::size_t>(i)] =
            henn::plain_layer(in, b.layers[static_cast<std::size_t>(i)], params[static_cast<std::size_t>(i)]);
        if (!plain_out) continue;
        for (std::size_t k = 0; k < net.connections.size(); ++k) {
            const Connection& c = net.connections[k];
            if (c.cipher_layer != i) continue;
            const Tensor3 z = channel_rotate(
                resize_crop((*plain_out)[static_cast<std::size_t>(c.plain_layer)], c.crop_h, c.crop_w), w.crot[k]);
            out[static_cast<std::size_t>(i)] = henn::add(out[static_cast<std::size_t>(i)], z);
        }
    }
    return out;
}

}  // namespace

std::vector<double> reference_forward(const NetworkSpec& net, const DecomposedInput& input,
                                      const NetworkWeights& w) {
    validate(net);
    const std::vector<Tensor3> p = run_branch(net.plain, w.plain, input.plain_full, net, nullptr, w);
    if (net.cipher.empty()) return p.back().data;
    const std::vector<Tensor3> c = run_branch(net.cipher, w.cipher, input.sensitive, net, &p, w);
    return feature_integrate_plain(c.back().data, p.back().data, w.head);
}

}  // namespace bicrypt::net
