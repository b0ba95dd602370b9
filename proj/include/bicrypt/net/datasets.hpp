#pragma once

#include <string>
#include <vector>

#include "bicrypt/tensor.hpp"

namespace bicrypt::net {

struct LabeledImages {
    std::vector<Tensor3> images;
    std::vector<int> labels;
};

/// Reads an IDX image file (magic 2051) and label file (magic 2049). Pixels become
/// (p/255 - mean) / std. At most `limit` samples when limit > 0.
LabeledImages load_idx(const std::string& images_path, const std::string& labels_path, int limit = 0,
                       double mean = 0.1307, double stddev = 0.3081);

/// Reads a CIFAR-10 binary batch (label byte + 3072 channel-major bytes per record),
/// normalized per channel.
LabeledImages load_cifar10_bin(const std::string& path, int limit = 0);

/// Writes IDX files; pixels are given as raw bytes in [0, 255].
void save_idx(const std::string& images_path, const std::string& labels_path,
              const std::vector<std::vector<unsigned char>>& pixels, int rows, int cols, const std::vector<int>& labels);

/// Resolves a --data argument: a directory holding images.idx3-ubyte and labels.idx1-ubyte
/// (or the t10k-* names), or a CIFAR .bin file.
LabeledImages load_dataset(const std::string& path, int limit = 0);

}  // namespace bicrypt::net
