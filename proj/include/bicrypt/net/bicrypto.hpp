#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bicrypt/ckks/context.hpp"
#include "bicrypt/ckks/op_recorder.hpp"
#include "bicrypt/henn/cipher_value.hpp"
#include "bicrypt/henn/exec.hpp"
#include "bicrypt/henn/plain.hpp"
#include "bicrypt/net/network.hpp"
#include "bicrypt/net/weights.hpp"
#include "bicrypt/packing/layout.hpp"
#include "bicrypt/tensor.hpp"

namespace bicrypt::net {

using ckks::HeContext;
using ckks::OpRecorder;
using henn::CipherFlat;
using henn::CipherGrid;
using henn::ExecPolicy;

struct Region {
    int row0 = 0;
    int col0 = 0;
    int h = 0;
    int w = 0;
};

struct DecomposedInput {
    /// Center quarter, unperturbed.
    Tensor3 sensitive;
    /// Full image with the center zeroed and Gaussian noise elsewhere.
    Tensor3 plain_full;
    Region region;
};

/// Splits an image with even height and width into its centered h/2 x w/2 segment and the perturbed rest.
DecomposedInput decompose_input(const Tensor3& image, double noise_sigma, std::uint64_t seed);

/// Input for a backbone run: the whole image, encrypted as is.
DecomposedInput whole_image_input(const Tensor3& image);

/// Centered h_c x w_c window of every channel; offsets use floor division.
Tensor3 resize_crop(const Tensor3& x, int h_c, int w_c);

/// Output channel i = sum_j W[i, j] * y[j]; W is ch_c x ch_p.
Tensor3 channel_rotate(const Tensor3& y, const henn::Matrix& W);

/// z = channel_rotate(resize_crop(x_p)) per tile, added with one Add_PC per ciphertext channel.
CipherGrid apply_connection(const CipherGrid& x_c, const std::vector<Tensor3>& x_p, const Connection& conn,
                            const henn::Matrix& crot, const HeContext& ctx, OpRecorder& rec);

/// Head on a ciphertext x_c and plaintext x_p (one vector per tile). Records the
/// plaintext-neuron sub-path under "head.plain", which issues no HE operations.
CipherFlat feature_integrate(const CipherFlat& x_c, const std::vector<std::vector<double>>& x_p,
                             const HeadWeights& head, const HeContext& ctx, OpRecorder& rec,
                             ExecPolicy policy = ExecPolicy::Serial);

/// Head on an encrypted x_p. Only reachable through a mis-wired network.
CipherFlat feature_integrate(const CipherFlat& x_c, const CipherFlat& x_p, const HeadWeights& head,
                             const HeContext& ctx, OpRecorder& rec, ExecPolicy policy = ExecPolicy::Serial);

/// Plain-arithmetic head.
std::vector<double> feature_integrate_plain(const std::vector<double>& x_c, const std::vector<double>& x_p,
                                            const HeadWeights& head);

enum class Schedule { PlainFirst, Interleaved };

struct ForwardOptions {
    Schedule schedule = Schedule::Interleaved;
    ExecPolicy policy = ExecPolicy::Serial;
};

/// A value crossing from one branch (or the input) into another consumer.
struct EdgeRecord {
    std::string from;
    std::string to;
    ckks::BranchTag to_branch = ckks::BranchTag::Cipher;
    bool carries_cipher = false;
};

struct OpReport {
    ckks::OpCounts totals;
    std::vector<ckks::LayerDelta> per_layer;
    ckks::OpCounts unattributed;
    std::vector<EdgeRecord> edges;
    packing::Strategy strategy = packing::Strategy::HW;
    int images = 0;
    int ciphertext_sets = 0;
    int levels_used = 0;
};

struct ForwardResult {
    /// One logit ciphertext per packed set (n sets under HW, one under BHW).
    std::vector<CipherFlat> logits;
    OpReport report;
};

/// Encrypted forward pass over a batch. HW runs each image as its own ciphertext set;
/// BHW packs the whole batch into one.
ForwardResult forward_bicrypto(const NetworkSpec& net, const std::vector<DecomposedInput>& batch,
                               const packing::PackLayout& layout, const NetworkWeights& weights,
                               const HeContext& ctx, const ForwardOptions& opts = {});

/// Logits of every image in batch order.
std::vector<std::vector<double>> decrypt_logits(const ForwardResult& result, const HeContext& ctx);

/// Pure-real forward pass on the same decomposed input.
std::vector<double> reference_forward(const NetworkSpec& net, const DecomposedInput& input,
                                      const NetworkWeights& weights);

/// Pack layout of the encrypted input for a batch.
packing::PackLayout input_layout(const NetworkSpec& net, packing::Strategy strategy, int batch,
                                 std::int64_t slot_count);

struct TaintVerdict {
    bool pass = true;
    std::vector<std::string> violations;
};

TaintVerdict taint_check(const NetworkSpec& net, const OpReport& trace);

}  // namespace bicrypt::net
