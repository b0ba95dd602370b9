#include <random>

#include "bicrypt/error.hpp"
#include "bicrypt/henn/kernels.hpp"
#include "bicrypt/net/bicrypto.hpp"

namespace bicrypt::net {

DecomposedInput decompose_input(const Tensor3& image, double noise_sigma, std::uint64_t seed) {
    if (image.h % 2 != 0 || image.w % 2 != 0)
        throw ShapeError("decompose_input needs even height and width, got " + std::to_string(image.h) + "x" +
                         std::to_string(image.w));
    if (noise_sigma < 0.0) throw ParameterError("noise sigma must be non-negative");
    DecomposedInput d;
    d.region = Region{image.h / 4, image.w / 4, image.h / 2, image.w / 2};
    d.sensitive = Tensor3(image.c, d.region.h, d.region.w);
    d.plain_full = image;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_sigma);
    for (int ch = 0; ch < image.c; ++ch)
        for (int i = 0; i < image.h; ++i)
            for (int j = 0; j < image.w; ++j) {
                const bool inside = i >= d.region.row0 && i < d.region.row0 + d.region.h && j >= d.region.col0 &&
                                    j < d.region.col0 + d.region.w;
                if (inside) {
                    d.sensitive.at(ch, i - d.region.row0, j - d.region.col0) = image.at(ch, i, j);
                    d.plain_full.at(ch, i, j) = 0.0;
                } else if (noise_sigma > 0.0) {
                    d.plain_full.at(ch, i, j) += noise(rng);
                }
            }
    return d;
}

DecomposedInput whole_image_input(const Tensor3& image) {
    DecomposedInput d;
    d.plain_full = image;
    d.region = Region{0, 0, image.h, image.w};
    return d;
}

Tensor3 resize_crop(const Tensor3& x, int h_c, int w_c) {
    if (h_c < 1 || w_c < 1 || h_c > x.h || w_c > x.w)
        throw ShapeError("crop " + std::to_string(h_c) + "x" + std::to_string(w_c) + " does not fit " +
                         std::to_string(x.h) + "x" + std::to_string(x.w));
    const int r0 = (x.h - h_c) / 2;
    const int c0 = (x.w - w_c) / 2;
    Tensor3 y(x.c, h_c, w_c);
    for (int ch = 0; ch < x.c; ++ch)
        for (int i = 0; i < h_c; ++i)
            for (int j = 0; j < w_c; ++j) y.at(ch, i, j) = x.at(ch, r0 + i, c0 + j);
    return y;
}

Tensor3 channel_rotate(const Tensor3& y, const henn::Matrix& W) {
    if (W.cols != y.c)
        throw ShapeError("channel rotation expects " + std::to_string(W.cols) + " channels, got " +
                         std::to_string(y.c));
    Tensor3 z(W.rows, y.h, y.w);
    for (int i = 0; i < W.rows; ++i)
        for (int p = 0; p < y.h * y.w; ++p) {
            double s = 0.0;
            for (int j = 0; j < y.c; ++j) s += W.at(i, j) * y.data[static_cast<std::size_t>(j) * y.h * y.w + p];
            z.data[static_cast<std::size_t>(i) * y.h * y.w + p] = s;
        }
    return z;
}

CipherGrid apply_connection(const CipherGrid& x_c, const std::vector<Tensor3>& x_p, const Connection& conn,
                            const henn::Matrix& crot, const HeContext& ctx, OpRecorder& rec) {
    if (crot.rows != conn.ch_c || crot.cols != conn.ch_p) throw ShapeError("channel rotation matrix shape mismatch");
    std::vector<Tensor3> z;
    z.reserve(x_p.size());
    for (const Tensor3& t : x_p) z.push_back(channel_rotate(resize_crop(t, conn.crop_h, conn.crop_w), crot));
    return henn::add_plain(x_c, z, ctx, rec);
}

}  // namespace bicrypt::net
