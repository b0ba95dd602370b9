#include "bicrypt/henn/plain.hpp"

#include <algorithm>

#include "bicrypt/error.hpp"

namespace bicrypt::henn {

Tensor3 conv2d(const Tensor3& x, const ConvWeights& f, int sh, int sw, int ph, int pw) {
    if (x.c != f.cin) throw ShapeError("conv2d: input has " + std::to_string(x.c) + " channels, kernel expects " +
                                       std::to_string(f.cin));
    if (x.h + 2 * ph < f.kh || x.w + 2 * pw < f.kw) throw ShapeError("conv2d: kernel larger than input");
    const int ho = (x.h + 2 * ph - f.kh) / sh + 1;
    const int wo = (x.w + 2 * pw - f.kw) / sw + 1;
    Tensor3 y(f.cout, ho, wo);
    for (int o = 0; o < f.cout; ++o)
        for (int a = 0; a < ho; ++a)
            for (int b = 0; b < wo; ++b) {
                double s = 0.0;
                bool first = true;
                for (int ci = 0; ci < f.cin; ++ci)
                    for (int i = 0; i < f.kh; ++i)
                        for (int j = 0; j < f.kw; ++j) {
                            const int r = a * sh + i - ph;
                            const int c = b * sw + j - pw;
                            if (r < 0 || r >= x.h || c < 0 || c >= x.w) continue;
                            const double t = x.at(ci, r, c) * f.at(o, ci, i, j);
                            s = first ? t : s + t;
                            first = false;
                        }
                if (!f.bias.empty()) s += f.bias[o];
                y.at(o, a, b) = s;
            }
    return y;
}

Tensor3 sum_pool2d(const Tensor3& x, int kh, int kw, int sh, int sw) {
    if (x.h < kh || x.w < kw) throw ShapeError("sum_pool2d: window larger than input");
    const int ho = (x.h - kh) / sh + 1;
    const int wo = (x.w - kw) / sw + 1;
    Tensor3 y(x.c, ho, wo);
    for (int ch = 0; ch < x.c; ++ch)
        for (int a = 0; a < ho; ++a)
            for (int b = 0; b < wo; ++b) {
                double s = x.at(ch, a * sh, b * sw);
                for (int i = 0; i < kh; ++i)
                    for (int j = 0; j < kw; ++j)
                        if (i != 0 || j != 0) s += x.at(ch, a * sh + i, b * sw + j);
                y.at(ch, a, b) = s;
            }
    return y;
}

Tensor3 square(const Tensor3& x) {
    Tensor3 y = x;
    for (double& v : y.data) v = v * v;
    return y;
}

Tensor3 relu(const Tensor3& x) {
    Tensor3 y = x;
    for (double& v : y.data) v = std::max(v, 0.0);
    return y;
}

Tensor3 add(const Tensor3& a, const Tensor3& b) {
    if (!a.same_shape(b)) throw ShapeError("add: shape mismatch");
    Tensor3 y = a;
    for (std::size_t i = 0; i < y.data.size(); ++i) y.data[i] += b.data[i];
    return y;
}

Tensor3 flatten(const Tensor3& x) {
    Tensor3 y(static_cast<int>(x.size()), 1, 1);
    y.data = x.data;
    return y;
}

std::vector<double> matvec_t(const std::vector<double>& x, const Matrix& W) {
    if (static_cast<int>(x.size()) != W.rows)
        throw ShapeError("matvec: vector of " + std::to_string(x.size()) + " against " + std::to_string(W.rows) +
                         " rows");
    std::vector<double> y(static_cast<std::size_t>(W.cols), 0.0);
    for (int j = 0; j < W.cols; ++j) {
        double s = 0.0;
        for (int i = 0; i < W.rows; ++i) s += x[i] * W.at(i, j);
        y[j] = s;
    }
    return y;
}

Tensor3 fc(const Tensor3& x, const FcWeights& w) {
    std::vector<double> y = matvec_t(x.data, w.W);
    if (!w.bias.empty()) {
        if (static_cast<int>(w.bias.size()) != w.W.cols) throw ShapeError("fc: bias length mismatch");
        for (int j = 0; j < w.W.cols; ++j) y[j] += w.bias[j];
    }
    Tensor3 out(w.W.cols, 1, 1);
    out.data = std::move(y);
    return out;
}

Tensor3 plain_layer(const std::vector<const Tensor3*>& inputs, const LayerSpec& spec, const LayerParams& p) {
    const std::size_t want = spec.kind == LayerKind::Add ? 2 : 1;
    if (inputs.size() != want) throw ShapeError("layer '" + spec.name + "' has the wrong number of inputs");
    const Tensor3& x = *inputs[0];
    switch (spec.kind) {
        case LayerKind::Conv: return conv2d(x, p.conv, spec.sh, spec.sw, spec.ph, spec.pw);
        case LayerKind::SumPool: return sum_pool2d(x, spec.kh, spec.kw, spec.sh, spec.sw);
        case LayerKind::Square: return square(x);
        case LayerKind::Relu: return relu(x);
        case LayerKind::Add: return add(x, *inputs[1]);
        case LayerKind::Flatten: return flatten(x);
        case LayerKind::FC: return fc(x, p.fc);
    }
    throw ShapeError("unknown layer kind");
}

}  // namespace bicrypt::henn
