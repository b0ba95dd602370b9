#pragma once

#include <vector>

#include "bicrypt/ckks/context.hpp"
#include "bicrypt/ckks/evaluator.hpp"
#include "bicrypt/henn/cipher_value.hpp"
#include "bicrypt/henn/exec.hpp"
#include "bicrypt/henn/plain.hpp"
#include "bicrypt/packing/layout.hpp"

namespace bicrypt::henn {

using ckks::Ciphertext;
using ckks::HeContext;
using ckks::OpRecorder;

/// Per-tile bias vectors. One entry broadcasts to every tile; empty means no bias.
using TileBias = std::vector<std::vector<double>>;

/// Packs one (C, H, W) tensor per tile; the grid is row-major at the start of each tile.
CipherGrid encrypt_grid(const std::vector<Tensor3>& per_tile, const SlotTiling& tiling, const HeContext& ctx);
std::vector<Tensor3> decrypt_grid(const CipherGrid& x, const HeContext& ctx);

/// Packs one feature vector per tile at tile positions offset..offset+n-1.
CipherFlat encrypt_flat(const std::vector<std::vector<double>>& per_tile, const SlotTiling& tiling,
                        const HeContext& ctx, std::int64_t offset = 0);
/// Logical features of every tile, holes dropped.
std::vector<std::vector<double>> decrypt_flat(const CipherFlat& x, const HeContext& ctx);

/// Multi-channel rotate-multiply-mask convolution. Rotations are shared across output channels.
CipherGrid conv_layer(const CipherGrid& x, const ConvWeights& f, int sh, int sw, int ph, int pw,
                      const HeContext& ctx, OpRecorder& rec, ExecPolicy policy = ExecPolicy::Serial);

/// Single channel, single kernel (kh x kw, row-major), no bias.
CipherGrid conv_forward(const CipherGrid& x, const std::vector<double>& kernel, int kh, int kw, int sh, int sw,
                        int ph, int pw, const HeContext& ctx, OpRecorder& rec);

CipherGrid sum_pool(const CipherGrid& x, int kh, int kw, int sh, int sw, const HeContext& ctx, OpRecorder& rec,
                    ExecPolicy policy = ExecPolicy::Serial);

/// x * x; one Mul_CC and one Act_C.
Ciphertext square_act(const Ciphertext& x, const HeContext& ctx, OpRecorder& rec);
CipherGrid square_act(const CipherGrid& x, const HeContext& ctx, OpRecorder& rec,
                      ExecPolicy policy = ExecPolicy::Serial);
CipherFlat square_act(const CipherFlat& x, const HeContext& ctx, OpRecorder& rec,
                      ExecPolicy policy = ExecPolicy::Serial);

/// Diagonal matrix-vector product with left rotations n2-1 .. 1-n1. x holds n1 values at
/// tile positions offset..offset+n1-1 and W is n1 x n2. The result holds x^T W + bias at
/// tile positions fc_output_offset(offset, n1, n2) onwards.
Ciphertext fc_forward(const Ciphertext& x, std::int64_t offset, const Matrix& W, const TileBias& bias,
                      const SlotTiling& tiling, const HeContext& ctx, OpRecorder& rec,
                      ExecPolicy policy = ExecPolicy::Serial);

inline std::int64_t fc_output_offset(std::int64_t offset, int n1, int n2) { return offset + n1 - n2; }

/// fc_forward over every chunk of x with W indexed by logical feature (n_features x n2).
CipherFlat fc_layer(const CipherFlat& x, const Matrix& W, const TileBias& bias, const HeContext& ctx,
                    OpRecorder& rec, ExecPolicy policy = ExecPolicy::Serial);

/// Gathers a strided multi-channel grid into contiguous chunks (channel-major logical order).
CipherFlat flatten(const CipherGrid& x, const HeContext& ctx, OpRecorder& rec,
                   ExecPolicy policy = ExecPolicy::Serial);

/// Adds one plaintext (C, H, W) tensor per tile; one Add_PC per channel.
CipherGrid add_plain(const CipherGrid& x, const std::vector<Tensor3>& per_tile, const HeContext& ctx,
                     OpRecorder& rec);
CipherGrid add_cipher(const CipherGrid& a, const CipherGrid& b, const HeContext& ctx, OpRecorder& rec);
/// Moves every chunk so that it starts at tile position `offset` (one rotation per moved chunk).
CipherFlat align_flat(const CipherFlat& x, std::int64_t offset, const HeContext& ctx, OpRecorder& rec);

CipherFlat add_cipher(const CipherFlat& a, const CipherFlat& b, const HeContext& ctx, OpRecorder& rec);

}  // namespace bicrypt::henn
