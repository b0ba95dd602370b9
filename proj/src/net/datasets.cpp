#include "bicrypt/net/datasets.hpp"

#include <array>
#include <filesystem>
#include <fstream>

#include "bicrypt/error.hpp"

namespace bicrypt::net {

namespace fs = std::filesystem;

namespace {

std::vector<unsigned char> read_all(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IngestionError("cannot open dataset file " + path +
                             " (MNIST: download the IDX archives from the public MNIST mirror and gunzip them)");
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::uint32_t be32(const std::vector<unsigned char>& b, std::size_t at) {
    if (at + 4 > b.size()) throw IngestionError("truncated IDX header");
    return (std::uint32_t(b[at]) << 24) | (std::uint32_t(b[at + 1]) << 16) | (std::uint32_t(b[at + 2]) << 8) |
           std::uint32_t(b[at + 3]);
}

void put_be32(std::ofstream& f, std::uint32_t v) {
    const unsigned char b[4] = {static_cast<unsigned char>(v >> 24), static_cast<unsigned char>(v >> 16),
                                static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
    f.write(reinterpret_cast<const char*>(b), 4);
}

}  // namespace

LabeledImages load_idx(const std::string& images_path, const std::string& labels_path, int limit, double mean,
                       double stddev) {
    const auto img = read_all(images_path);
    const auto lab = read_all(labels_path);
    if (be32(img, 0) != 2051) throw IngestionError(images_path + " is not an IDX image file");
    if (be32(lab, 0) != 2049) throw IngestionError(labels_path + " is not an IDX label file");
    const std::uint32_t n = be32(img, 4);
    const std::uint32_t rows = be32(img, 8);
    const std::uint32_t cols = be32(img, 12);
    if (be32(lab, 4) != n) throw IngestionError("IDX image and label counts differ");
    if (img.size() < 16 + std::size_t(n) * rows * cols || lab.size() < 8 + std::size_t(n))
        throw IngestionError("IDX file shorter than its header claims");
    const int count = limit > 0 ? std::min<int>(limit, static_cast<int>(n)) : static_cast<int>(n);
    LabeledImages out;
    for (int k = 0; k < count; ++k) {
        Tensor3 t(1, static_cast<int>(rows), static_cast<int>(cols));
        const std::size_t base = 16 + std::size_t(k) * rows * cols;
        for (std::size_t p = 0; p < std::size_t(rows) * cols; ++p) t.data[p] = (img[base + p] / 255.0 - mean) / stddev;
        out.images.push_back(std::move(t));
        out.labels.push_back(lab[8 + k]);
    }
    return out;
}

LabeledImages load_cifar10_bin(const std::string& path, int limit) {
    static constexpr std::array<double, 3> mean = {0.4914, 0.4822, 0.4465};
    static constexpr std::array<double, 3> stddev = {0.2470, 0.2435, 0.2616};
    const auto b = read_all(path);
    constexpr std::size_t rec = 1 + 3072;
    if (b.empty() || b.size() % rec != 0) throw IngestionError(path + " is not a CIFAR-10 binary batch");
    int n = static_cast<int>(b.size() / rec);
    if (limit > 0) n = std::min(n, limit);
    LabeledImages out;
    for (int k = 0; k < n; ++k) {
        const std::size_t base = std::size_t(k) * rec;
        out.labels.push_back(b[base]);
        Tensor3 t(3, 32, 32);
        for (std::size_t p = 0; p < 3072; ++p) {
            const std::size_t ch = p / 1024;
            t.data[p] = (b[base + 1 + p] / 255.0 - mean[ch]) / stddev[ch];
        }
        out.images.push_back(std::move(t));
    }
    return out;
}

void save_idx(const std::string& images_path, const std::string& labels_path,
              const std::vector<std::vector<unsigned char>>& pixels, int rows, int cols, const std::vector<int>& labels) {
    if (pixels.size() != labels.size()) throw ParameterError("pixel and label counts differ");
    std::ofstream fi(images_path, std::ios::binary);
    std::ofstream fl(labels_path, std::ios::binary);
    if (!fi || !fl) throw IngestionError("cannot write IDX files");
    put_be32(fi, 2051);
    put_be32(fi, static_cast<std::uint32_t>(pixels.size()));
    put_be32(fi, static_cast<std::uint32_t>(rows));
    put_be32(fi, static_cast<std::uint32_t>(cols));
    for (const auto& p : pixels) {
        if (p.size() != std::size_t(rows) * cols) throw ParameterError("image has the wrong pixel count");
        fi.write(reinterpret_cast<const char*>(p.data()), static_cast<std::streamsize>(p.size()));
    }
    put_be32(fl, 2049);
    put_be32(fl, static_cast<std::uint32_t>(labels.size()));
    for (int l : labels) {
        const char c = static_cast<char>(l);
        fl.write(&c, 1);
    }
}

LabeledImages load_dataset(const std::string& path, int limit) {
    const fs::path p(path);
    if (fs::is_directory(p)) {
        for (const auto& [img, lab] : {std::pair{"images.idx3-ubyte", "labels.idx1-ubyte"},
                                       std::pair{"t10k-images-idx3-ubyte", "t10k-labels-idx1-ubyte"},
                                       std::pair{"t10k-images.idx3-ubyte", "t10k-labels.idx1-ubyte"}})
            if (fs::exists(p / img) && fs::exists(p / lab)) return load_idx((p / img).string(), (p / lab).string(), limit);
        if (fs::exists(p / "test_batch.bin")) return load_cifar10_bin((p / "test_batch.bin").string(), limit);
        throw IngestionError("no IDX or CIFAR files found in " + path);
    }
    if (p.extension() == ".bin") return load_cifar10_bin(path, limit);
    throw IngestionError("dataset path " + path + " is neither a directory nor a CIFAR .bin batch");
}

}  // namespace bicrypt::net
