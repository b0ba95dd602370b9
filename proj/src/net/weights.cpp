#include "bicrypt/net/weights.hpp"

#include <cmath>
#include <random>

#include "bicrypt/error.hpp"

namespace bicrypt::net {

namespace {

henn::Matrix to_matrix(const TensorEntry& e) {
    henn::Matrix m(e.shape[0], e.shape[1]);
    for (std::size_t i = 0; i < e.values.size(); ++i) m.data[i] = e.values[i];
    return m;
}

std::vector<double> to_vec(const TensorEntry& e) { return {e.values.begin(), e.values.end()}; }

std::vector<henn::LayerParams> branch_params(const Branch& b, const TensorArchive& ar) {
    std::vector<henn::LayerParams> out(b.layers.size());
    for (std::size_t i = 0; i < b.layers.size(); ++i) {
        const LayerSpec& s = b.layers[i];
        if (s.kind == LayerKind::Conv) {
            henn::ConvWeights& c = out[i].conv;
            c.cout = s.out_channels;
            c.cin = s.in_channels;
            c.kh = s.kh;
            c.kw = s.kw;
            c.w = to_vec(ar.get(s.weight, {s.out_channels, s.in_channels, s.kh, s.kw}));
            c.bias = to_vec(ar.get(s.bias, {s.out_channels}));
        } else if (s.kind == LayerKind::FC) {
            out[i].fc.W = to_matrix(ar.get(s.weight, {s.in_channels, s.out_channels}));
            out[i].fc.bias = to_vec(ar.get(s.bias, {s.out_channels}));
        }
    }
    return out;
}

}  // namespace

NetworkWeights resolve_weights(const NetworkSpec& net, const TensorArchive& ar) {
    std::string problems;
    for (const TensorRef& r : required_tensors(net)) {
        if (!ar.contains(r.name)) {
            problems += (problems.empty() ? "" : ", ") + r.name + " (missing)";
        } else if (ar.get(r.name).shape != r.shape) {
            problems += (problems.empty() ? "" : ", ") + r.name + " (wrong shape)";
        }
    }
    if (!problems.empty()) throw IngestionError("weight archive does not fit " + std::string(to_string(net.arch)) +
                                                " " + to_string(net.kind) + ": " + problems);
    NetworkWeights w;
    w.cipher = branch_params(net.cipher, ar);
    w.plain = branch_params(net.plain, ar);
    for (const Connection& c : net.connections) w.crot.push_back(to_matrix(ar.get(c.crot)));
    if (net.kind == NetKind::BiNet) {
        const IntegrationSpec& h = net.head;
        w.head.W_c1 = to_matrix(ar.get(h.W_c1));
        w.head.W_p1 = to_matrix(ar.get(h.W_p1));
        w.head.W_p1_plain = to_matrix(ar.get(h.W_p1_plain));
        w.head.W_c2 = to_matrix(ar.get(h.W_c2));
        w.head.W_p2 = to_matrix(ar.get(h.W_p2));
        w.head.b1 = to_vec(ar.get(h.b1));
        w.head.b1_plain = to_vec(ar.get(h.b1_plain));
        w.head.b2 = to_vec(ar.get(h.b2));
    }
    return w;
}

TensorArchive make_fixture_weights(const NetworkSpec& net, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](double a) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return static_cast<float>((2.0 * u - 1.0) * a);
    };
    TensorArchive ar;
    for (const TensorRef& r : required_tensors(net)) {
        std::int64_t n = 1;
        for (int d : r.shape) n *= d;
        // Vectors are biases; matrices and kernels are scaled by fan-in.
        double a = 0.1;
        if (r.shape.size() == 4) a = std::sqrt(3.0 / (r.shape[1] * r.shape[2] * r.shape[3]));
        if (r.shape.size() == 2) a = std::sqrt(3.0 / r.shape[r.name.find("crot") != std::string::npos ? 1 : 0]);
        std::vector<float> v(static_cast<std::size_t>(n));
        for (float& x : v) x = uniform(a);
        ar.put(r.name, r.shape, std::move(v));
    }
    ar.meta()["arch"] = to_string(net.arch);
    ar.meta()["kind"] = to_string(net.kind);
    ar.meta()["seed"] = std::to_string(seed);
    return ar;
}

TensorArchive make_zero_weights(const NetworkSpec& net) {
    TensorArchive ar;
    for (const TensorRef& r : required_tensors(net)) {
        std::int64_t n = 1;
        for (int d : r.shape) n *= d;
        ar.put(r.name, r.shape, std::vector<float>(static_cast<std::size_t>(n), 0.0f));
    }
    return ar;
}

}  // namespace bicrypt::net
