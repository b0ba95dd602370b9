#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bicrypt::net {

struct TensorEntry {
    std::vector<int> shape;
    std::vector<float> values;

    std::int64_t numel() const;
};

/// Named f32 tensors stored as manifest.json plus one little-endian row-major data.bin.
class TensorArchive {
public:
    void put(const std::string& name, std::vector<int> shape, std::vector<float> values);
    bool contains(const std::string& name) const { return tensors_.count(name) != 0; }
    /// Throws IngestionError if absent.
    const TensorEntry& get(const std::string& name) const;
    /// As get(), also checking the shape.
    const TensorEntry& get(const std::string& name, const std::vector<int>& shape) const;

    /// Names in insertion order.
    const std::vector<std::string>& names() const { return order_; }

    /// Free-form string metadata stored in the manifest.
    std::map<std::string, std::string>& meta() { return meta_; }
    const std::map<std::string, std::string>& meta() const { return meta_; }

    /// Writes dir/manifest.json and dir/data.bin, creating dir if needed.
    void save(const std::string& dir) const;
    /// Throws IngestionError on missing files, bad JSON, overlapping or out-of-bounds entries.
    static TensorArchive load(const std::string& dir);

private:
    std::map<std::string, TensorEntry> tensors_;
    std::vector<std::string> order_;
    std::map<std::string, std::string> meta_;
};

}  // namespace bicrypt::net
