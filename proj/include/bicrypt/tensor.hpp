#pragma once

#include <cstddef>
#include <vector>

namespace bicrypt {

/// Dense channel-major (C, H, W) tensor of doubles.
struct Tensor3 {
    int c = 0;
    int h = 0;
    int w = 0;
    std::vector<double> data;

    Tensor3() = default;
    Tensor3(int channels, int height, int width, double fill = 0.0)
        : c(channels), h(height), w(width),
          data(static_cast<std::size_t>(channels) * height * width, fill) {}

    std::size_t size() const { return data.size(); }
    std::size_t index(int ch, int i, int j) const {
        return (static_cast<std::size_t>(ch) * h + i) * w + j;
    }
    double& at(int ch, int i, int j) { return data[index(ch, i, j)]; }
    double at(int ch, int i, int j) const { return data[index(ch, i, j)]; }

    bool same_shape(const Tensor3& o) const { return c == o.c && h == o.h && w == o.w; }
    friend bool operator==(const Tensor3&, const Tensor3&) = default;
};

}  // namespace bicrypt
