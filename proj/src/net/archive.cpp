#include "bicrypt/net/archive.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "bicrypt/error.hpp"

namespace bicrypt::net {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kFormat = "bicrypt-tensor-archive";

std::string shape_str(const std::vector<int>& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "]";
}

std::uint32_t to_le(std::uint32_t v) {
    if constexpr (std::endian::native == std::endian::little) return v;
    return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
}

}  // namespace

std::int64_t TensorEntry::numel() const {
    std::int64_t n = 1;
    for (int d : shape) n *= d;
    return n;
}

void TensorArchive::put(const std::string& name, std::vector<int> shape, std::vector<float> values) {
    TensorEntry e{std::move(shape), std::move(values)};
    for (int d : e.shape)
        if (d < 0) throw ParameterError("tensor '" + name + "' has a negative dimension");
    if (e.numel() != static_cast<std::int64_t>(e.values.size()))
        throw ParameterError("tensor '" + name + "' has " + std::to_string(e.values.size()) +
                             " values for shape " + shape_str(e.shape));
    if (!contains(name)) order_.push_back(name);
    tensors_[name] = std::move(e);
}

const TensorEntry& TensorArchive::get(const std::string& name) const {
    auto it = tensors_.find(name);
    if (it == tensors_.end()) throw IngestionError("weight archive has no tensor '" + name + "'");
    return it->second;
}

const TensorEntry& TensorArchive::get(const std::string& name, const std::vector<int>& shape) const {
    const TensorEntry& e = get(name);
    if (e.shape != shape)
        throw IngestionError("tensor '" + name + "' has shape " + shape_str(e.shape) + ", expected " +
                             shape_str(shape));
    return e;
}

void TensorArchive::save(const std::string& dir) const {
    fs::create_directories(dir);
    json manifest;
    manifest["format"] = kFormat;
    manifest["version"] = 1;
    json meta = json::object();
    for (const auto& [k, v] : meta_) meta[k] = v;
    manifest["meta"] = meta;
    manifest["tensors"] = json::array();

    std::ofstream bin(fs::path(dir) / "data.bin", std::ios::binary);
    if (!bin) throw IngestionError("cannot write " + (fs::path(dir) / "data.bin").string());
    std::int64_t offset = 0;
    for (const std::string& name : order_) {
        const TensorEntry& e = tensors_.at(name);
        manifest["tensors"].push_back({{"name", name}, {"shape", e.shape}, {"dtype", "f32"}, {"offset", offset}});
        for (float f : e.values) {
            std::uint32_t u = to_le(std::bit_cast<std::uint32_t>(f));
            bin.write(reinterpret_cast<const char*>(&u), 4);
        }
        offset += e.numel() * 4;
    }
    std::ofstream(fs::path(dir) / "manifest.json") << manifest.dump(2) << "\n";
}

TensorArchive TensorArchive::load(const std::string& dir) {
    const fs::path mpath = fs::path(dir) / "manifest.json";
    const fs::path bpath = fs::path(dir) / "data.bin";
    std::ifstream mf(mpath);
    if (!mf) throw IngestionError("cannot open weight manifest " + mpath.string());
    json manifest;
    try {
        manifest = json::parse(mf);
    } catch (const json::exception& e) {
        throw IngestionError("malformed weight manifest " + mpath.string() + ": " + e.what());
    }
    std::ifstream bf(bpath, std::ios::binary);
    if (!bf) throw IngestionError("cannot open weight blob " + bpath.string());
    std::vector<char> blob((std::istreambuf_iterator<char>(bf)), std::istreambuf_iterator<char>());

    TensorArchive ar;
    try {
        if (manifest.value("format", std::string()) != kFormat)
            throw IngestionError("manifest " + mpath.string() + " is not a tensor archive");
        if (manifest.contains("meta"))
            for (const auto& [k, v] : manifest["meta"].items())
                ar.meta_[k] = v.is_string() ? v.get<std::string>() : v.dump();

        struct Span {
            std::int64_t begin;
            std::int64_t end;
            std::string name;
        };
        std::vector<Span> spans;
        for (const auto& t : manifest.at("tensors")) {
            const std::string name = t.at("name").get<std::string>();
            if (t.at("dtype").get<std::string>() != "f32")
                throw IngestionError("tensor '" + name + "' has unsupported dtype " + t.at("dtype").dump());
            std::vector<int> shape = t.at("shape").get<std::vector<int>>();
            const std::int64_t offset = t.at("offset").get<std::int64_t>();
            std::int64_t n = 1;
            for (int d : shape) {
                if (d < 0) throw IngestionError("tensor '" + name + "' has a negative dimension");
                n *= d;
            }
            if (offset < 0 || offset % 4 != 0 || offset + n * 4 > static_cast<std::int64_t>(blob.size()))
                throw IngestionError("tensor '" + name + "' at offset " + std::to_string(offset) + " (" +
                                     std::to_string(n * 4) + " bytes) lies outside data.bin (" +
                                     std::to_string(blob.size()) + " bytes)");
            if (ar.contains(name)) throw IngestionError("tensor '" + name + "' appears twice");
            std::vector<float> values(static_cast<std::size_t>(n));
            for (std::int64_t i = 0; i < n; ++i) {
                std::uint32_t u;
                std::memcpy(&u, blob.data() + offset + 4 * i, 4);
                values[static_cast<std::size_t>(i)] = std::bit_cast<float>(to_le(u));
            }
            spans.push_back({offset, offset + n * 4, name});
            ar.put(name, std::move(shape), std::move(values));
        }
        std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.begin < b.begin; });
        for (std::size_t i = 1; i < spans.size(); ++i)
            if (spans[i].begin < spans[i - 1].end)
                throw IngestionError("tensors '" + spans[i - 1].name + "' and '" + spans[i].name + "' overlap");
    } catch (const json::exception& e) {
        throw IngestionError("malformed weight manifest " + mpath.string() + ": " + e.what());
    }
    return ar;
}

}  // namespace bicrypt::net
