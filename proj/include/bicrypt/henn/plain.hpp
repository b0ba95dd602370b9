#pragma once

#include <vector>

#include "bicrypt/henn/layer.hpp"
#include "bicrypt/tensor.hpp"

namespace bicrypt::henn {

struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c, double fill = 0.0) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}
    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

/// Weights laid out (out, in, kh, kw); bias may be empty.
struct ConvWeights {
    int cout = 0;
    int cin = 0;
    int kh = 0;
    int kw = 0;
    std::vector<double> w;
    std::vector<double> bias;

    double at(int o, int i, int y, int x) const {
        return w[((static_cast<std::size_t>(o) * cin + i) * kh + y) * kw + x];
    }
};

/// y = x^T W + bias with W of shape (in, out).
struct FcWeights {
    Matrix W;
    std::vector<double> bias;
};

/// Parameters resolved for one layer; unused members stay empty.
struct LayerParams {
    ConvWeights conv;
    FcWeights fc;
};

Tensor3 conv2d(const Tensor3& x, const ConvWeights& f, int sh, int sw, int ph, int pw);
Tensor3 sum_pool2d(const Tensor3& x, int kh, int kw, int sh, int sw);
Tensor3 square(const Tensor3& x);
Tensor3 relu(const Tensor3& x);
Tensor3 add(const Tensor3& a, const Tensor3& b);
/// (C, H, W) -> (C*H*W, 1, 1) in channel-major order.
Tensor3 flatten(const Tensor3& x);
Tensor3 fc(const Tensor3& x, const FcWeights& w);
std::vector<double> matvec_t(const std::vector<double>& x, const Matrix& W);

/// Reference evaluation of one layer on plaintext data.
Tensor3 plain_layer(const std::vector<const Tensor3*>& inputs, const LayerSpec& spec, const LayerParams& params);

}  // namespace bicrypt::henn
