#pragma once

#include <string>
#include <vector>

#include "bicrypt/ckks/op_recorder.hpp"
#include "bicrypt/henn/layer.hpp"

namespace bicrypt::net {

using ckks::BranchTag;
using henn::LayerKind;
using henn::LayerSpec;
using henn::Shape3;

enum class Arch { CNN3, CNN11, VGG16, RESNET18 };
enum class NetKind { BiNet, Backbone };

const char* to_string(Arch arch);
const char* to_string(NetKind kind);
/// Accepts cnn3, cnn11, vgg16(-cifar), resnet18(-cifar).
Arch parse_arch(const std::string& name);

struct Branch {
    std::string name;
    BranchTag tag = BranchTag::Cipher;
    Shape3 input;
    std::vector<LayerSpec> layers;

    bool empty() const { return layers.empty(); }
};

/// Plaintext feature injection: crop plain layer output, mix channels, add to the cipher layer output.
struct Connection {
    int plain_layer = 0;
    int cipher_layer = 0;
    int crop_h = 0;
    int crop_w = 0;
    int ch_p = 0;
    int ch_c = 0;
    std::string crot;
};

/// Two-layer head whose first layer is split into plaintext-only and ciphertext neurons.
struct IntegrationSpec {
    int n1 = 0;
    int n2 = 0;
    int n_c = 0;
    int n_p = 0;
    std::string W_c1 = "head.W_c1";
    std::string W_p1 = "head.W_p1";
    std::string W_p1_plain = "head.W_p1_plain";
    std::string b1 = "head.b1";
    std::string b1_plain = "head.b1_plain";
    std::string W_c2 = "head.W_c2";
    std::string W_p2 = "head.W_p2";
    std::string b2 = "head.b2";
};

/// A backbone is a single plaintext-tagged branch whose input is encrypted whole.
struct NetworkSpec {
    Arch arch = Arch::CNN3;
    NetKind kind = NetKind::BiNet;
    Branch cipher;
    Branch plain;
    std::vector<Connection> connections;
    IntegrationSpec head;
    bool plain_input_encrypted = false;
};

/// Input indices of layer i (resolving the empty default to i-1).
std::vector<int> layer_inputs(const Branch& b, int i);

/// Output shape of every layer; validates the whole branch.
std::vector<Shape3> branch_shapes(const Branch& b);

/// Validates branch shapes, connection targets and head widths. Throws ShapeError.
void validate(const NetworkSpec& net);

/// Levels consumed along the longest path of every encrypted value.
int network_depth(const NetworkSpec& net);

/// Shape of the tensor that is packed into ciphertexts. When both branch inputs are
/// encrypted this is the larger plaintext-branch input, which sets the BHW tile size.
Shape3 encrypted_input_shape(const NetworkSpec& net);

enum class PlainActivation { Relu, Square };

NetworkSpec make_network(Arch arch, NetKind kind, PlainActivation act = PlainActivation::Relu);

/// Bi-net whose plaintext branch input is encrypted and which has no connections. Used as a negative control.
NetworkSpec make_miswired_cnn3();

/// Every tensor the network reads from a weight archive, with its expected shape.
struct TensorRef {
    std::string name;
    std::vector<int> shape;
};
std::vector<TensorRef> required_tensors(const NetworkSpec& net);

}  // namespace bicrypt::net
