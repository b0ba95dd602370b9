#include "bicrypt/henn/layer.hpp"

#include "bicrypt/error.hpp"

namespace bicrypt::henn {

const char* to_string(LayerKind kind) {
    switch (kind) {
        case LayerKind::Conv: return "conv";
        case LayerKind::SumPool: return "sum_pool";
        case LayerKind::Square: return "square";
        case LayerKind::Relu: return "relu";
        case LayerKind::Add: return "add";
        case LayerKind::Flatten: return "flatten";
        case LayerKind::FC: return "fc";
    }
    return "?";
}

LayerSpec conv(std::string name, int in_ch, int out_ch, int k, int stride, int pad) {
    LayerSpec s;
    s.kind = LayerKind::Conv;
    s.weight = name + ".weight";
    s.bias = name + ".bias";
    s.name = std::move(name);
    s.kh = s.kw = k;
    s.sh = s.sw = stride;
    s.ph = s.pw = pad;
    s.in_channels = in_ch;
    s.out_channels = out_ch;
    return s;
}

LayerSpec sum_pool(std::string name, int k, int stride) {
    LayerSpec s;
    s.kind = LayerKind::SumPool;
    s.name = std::move(name);
    s.kh = s.kw = k;
    s.sh = s.sw = stride;
    return s;
}

LayerSpec square(std::string name) {
    LayerSpec s;
    s.kind = LayerKind::Square;
    s.name = std::move(name);
    return s;
}

LayerSpec relu(std::string name) {
    LayerSpec s;
    s.kind = LayerKind::Relu;
    s.name = std::move(name);
    return s;
}

LayerSpec add(std::string name, int a, int b) {
    LayerSpec s;
    s.kind = LayerKind::Add;
    s.name = std::move(name);
    s.inputs = {a, b};
    return s;
}

LayerSpec flatten(std::string name) {
    LayerSpec s;
    s.kind = LayerKind::Flatten;
    s.name = std::move(name);
    return s;
}

LayerSpec fc(std::string name, int in_features, int out_features) {
    LayerSpec s;
    s.kind = LayerKind::FC;
    s.weight = name + ".weight";
    s.bias = name + ".bias";
    s.name = std::move(name);
    s.in_channels = in_features;
    s.out_channels = out_features;
    return s;
}

namespace {

int window_out(int in, int k, int s, int p, const std::string& layer) {
    if (k < 1 || s < 1 || p < 0) throw ShapeError("layer '" + layer + "': kernel, stride and padding must be valid");
    if (in + 2 * p < k)
        throw ShapeError("layer '" + layer + "': kernel " + std::to_string(k) + " larger than padded input " +
                         std::to_string(in + 2 * p));
    return (in + 2 * p - k) / s + 1;
}

}  // namespace

Shape3 output_shape(const LayerSpec& spec, const std::vector<Shape3>& in) {
    const std::size_t want = spec.kind == LayerKind::Add ? 2 : 1;
    if (in.size() != want) throw ShapeError("layer '" + spec.name + "' has the wrong number of inputs");
    const Shape3& x = in[0];
    switch (spec.kind) {
        case LayerKind::Conv:
            if (x.c != spec.in_channels)
                throw ShapeError("layer '" + spec.name + "' expects " + std::to_string(spec.in_channels) +
                                 " channels, got " + std::to_string(x.c));
            return {spec.out_channels, window_out(x.h, spec.kh, spec.sh, spec.ph, spec.name),
                    window_out(x.w, spec.kw, spec.sw, spec.pw, spec.name)};
        case LayerKind::SumPool:
            return {x.c, window_out(x.h, spec.kh, spec.sh, 0, spec.name),
                    window_out(x.w, spec.kw, spec.sw, 0, spec.name)};
        case LayerKind::Square:
        case LayerKind::Relu: return x;
        case LayerKind::Add:
            if (!(in[0] == in[1])) throw ShapeError("layer '" + spec.name + "' adds tensors of different shapes");
            return x;
        case LayerKind::Flatten: return {static_cast<int>(x.size()), 1, 1};
        case LayerKind::FC:
            if (x.size() != spec.in_channels)
                throw ShapeError("layer '" + spec.name + "' expects " + std::to_string(spec.in_channels) +
                                 " features, got " + std::to_string(x.size()));
            return {spec.out_channels, 1, 1};
    }
    throw ShapeError("unknown layer kind");
}

int level_cost(const LayerSpec& spec) {
    switch (spec.kind) {
        case LayerKind::Conv: return 2;
        case LayerKind::SumPool:
        case LayerKind::Square:
        case LayerKind::Flatten:
        case LayerKind::FC: return 1;
        case LayerKind::Relu:
        case LayerKind::Add: return 0;
    }
    return 0;
}

}  // namespace bicrypt::henn
