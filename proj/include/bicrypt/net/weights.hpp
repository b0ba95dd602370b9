#pragma once

#include <cstdint>
#include <vector>

#include "bicrypt/henn/plain.hpp"
#include "bicrypt/net/archive.hpp"
#include "bicrypt/net/network.hpp"

namespace bicrypt::net {

struct HeadWeights {
    henn::Matrix W_c1;
    henn::Matrix W_p1;
    henn::Matrix W_p1_plain;
    henn::Matrix W_c2;
    henn::Matrix W_p2;
    std::vector<double> b1;
    std::vector<double> b1_plain;
    std::vector<double> b2;
};

/// Archive tensors resolved against a network, widened to double.
struct NetworkWeights {
    std::vector<henn::LayerParams> cipher;
    std::vector<henn::LayerParams> plain;
    /// One (ch_c x ch_p) matrix per connection.
    std::vector<henn::Matrix> crot;
    HeadWeights head;
};

/// Throws IngestionError naming every missing or misshapen tensor.
NetworkWeights resolve_weights(const NetworkSpec& net, const TensorArchive& archive);

/// Deterministic fan-in scaled uniform weights for every tensor the network needs.
TensorArchive make_fixture_weights(const NetworkSpec& net, std::uint64_t seed);

/// Same archive with every value set to zero.
TensorArchive make_zero_weights(const NetworkSpec& net);

}  // namespace bicrypt::net
