#pragma once

#include <string>
#include <vector>

namespace bicrypt::henn {

enum class LayerKind { Conv, SumPool, Square, Relu, Add, Flatten, FC };

const char* to_string(LayerKind kind);

struct Shape3 {
    int c = 0;
    int h = 0;
    int w = 0;

    long long size() const { return static_cast<long long>(c) * h * w; }
    friend bool operator==(const Shape3&, const Shape3&) = default;
};

/// One node of a branch. Flattened activations are carried as (n, 1, 1).
struct LayerSpec {
    LayerKind kind = LayerKind::Square;
    std::string name;
    int kh = 1, kw = 1;
    int sh = 1, sw = 1;
    int ph = 0, pw = 0;
    int in_channels = 0;
    int out_channels = 0;
    /// Earlier layer indices within the branch; -1 is the branch input. Empty means the previous layer.
    std::vector<int> inputs;
    std::string weight;
    std::string bias;
};

LayerSpec conv(std::string name, int in_ch, int out_ch, int k, int stride, int pad);
LayerSpec sum_pool(std::string name, int k, int stride);
LayerSpec square(std::string name);
LayerSpec relu(std::string name);
LayerSpec add(std::string name, int a, int b);
LayerSpec flatten(std::string name);
LayerSpec fc(std::string name, int in_features, int out_features);

/// Output shape of `spec` for the given input shapes; throws ShapeError on mismatch.
Shape3 output_shape(const LayerSpec& spec, const std::vector<Shape3>& inputs);

/// Levels a layer consumes when it runs on ciphertexts (flatten is decided by layout).
int level_cost(const LayerSpec& spec);

}  // namespace bicrypt::henn
