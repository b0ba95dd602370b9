#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bicrypt/ckks/ciphertext.hpp"
#include "bicrypt/ckks/context.hpp"
#include "bicrypt/tensor.hpp"

namespace bicrypt::packing {

enum class Strategy { Batch, HW, BHW };

const char* to_string(Strategy s);
Strategy parse_strategy(const std::string& name);

struct PackLayout {
    Strategy strategy = Strategy::HW;
    int batch = 1;
    int height = 1;
    int width = 1;
    int channels = 1;
    std::int64_t slot_count = 0;
};

/// Throws CapacityError if the layout does not fit, ParameterError on bad dims.
void validate(const PackLayout& layout);

/// Slots one ciphertext must hold for this layout.
std::int64_t required_slots(const PackLayout& layout);

std::int64_t ciphertext_count(const PackLayout& layout);

/// BHW: b*h*w + i*w + j. HW: i*w + j. Batch: b.
std::int64_t slot_index(int b, int i, int j, const PackLayout& layout);

/// Ciphertext holding (b, ch, i, j).
std::int64_t ciphertext_index(int b, int ch, int i, int j, const PackLayout& layout);

std::vector<ckks::Ciphertext> pack(const std::vector<Tensor3>& batch, const PackLayout& layout,
                                   const ckks::HeContext& ctx);

std::vector<Tensor3> unpack(const std::vector<ckks::Ciphertext>& cts, const PackLayout& layout,
                            const ckks::HeContext& ctx);

/// Equal-width slot tiles, one image per tile.
struct SlotTiling {
    int tiles = 1;
    std::int64_t stride = 0;

    friend bool operator==(const SlotTiling&, const SlotTiling&) = default;
};

/// A 2-D grid embedded in every tile: (x, y) lives at base + x*row_stride + y*col_stride.
struct GridLayout {
    std::int64_t base = 0;
    std::int64_t row_stride = 1;
    std::int64_t col_stride = 1;
    int h = 0;
    int w = 0;

    std::int64_t offset(int x, int y) const { return base + x * row_stride + y * col_stride; }
    friend bool operator==(const GridLayout&, const GridLayout&) = default;
};

/// Tiling for HW (one tile spanning every slot) or BHW (n tiles of h*w).
SlotTiling tiling_for(const PackLayout& layout);

/// Row-major grid of the packed image inside its tile.
GridLayout grid_for(const PackLayout& layout);

}  // namespace bicrypt::packing
