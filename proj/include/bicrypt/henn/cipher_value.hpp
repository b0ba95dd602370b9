#pragma once

#include <cstdint>
#include <vector>

#include "bicrypt/ckks/ciphertext.hpp"
#include "bicrypt/packing/layout.hpp"

namespace bicrypt::henn {

using packing::GridLayout;
using packing::SlotTiling;

/// One ciphertext per channel, each channel a grid repeated in every tile.
struct CipherGrid {
    std::vector<ckks::Ciphertext> channels;
    GridLayout grid;
    SlotTiling tiling;

    int min_level() const;
};

/// Flattened features packed contiguously inside every tile, split into chunks.
/// Every chunk ends at the same tile position so fully connected partial sums line up.
struct CipherFlat {
    std::vector<ckks::Ciphertext> chunks;
    /// Tile position of the first entry of each chunk.
    std::vector<std::int64_t> offsets;
    /// Per chunk, the logical feature stored at offset + p, or -1 for a hole.
    std::vector<std::vector<int>> features;
    int n_features = 0;
    SlotTiling tiling;

    int min_level() const;
};

}  // namespace bicrypt::henn
