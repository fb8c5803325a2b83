#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "uniprompt/binding.hpp"
#include "uniprompt/tensor.hpp"

namespace uniprompt {

struct EncoderConfig {
    std::size_t d_feat = 64;
    std::size_t d_tok = 32;
    std::size_t d_emb = 64;
    std::uint64_t seed = 7;
    bool adapter_enabled = true;

    void validate() const;
};

/// Frozen seeded projection with one relu layer, followed by a trainable
/// linear adapter and L2 normalization. Only the adapter receives
/// gradients; the frozen matrix never changes after init.
struct ImageEncoder {
    Tensor frozen;     // d_emb x d_feat, seeded, immutable
    Tensor adapter_w;  // d_emb x d_emb, trainable, identity at init
    Tensor adapter_b;  // d_emb, trainable, zero at init
    bool adapter_enabled = true;

    struct Nodes {
        NodeId frozen;
        NodeId adapter_w;
        NodeId adapter_b;
        bool adapter_enabled;
    };

    /// Insert the encoder's tensors into a graph. The adapter is trainable
    /// iff `adapter_trainable`; the frozen matrix always enters constant.
    Nodes bind(GraphBinding& b, bool adapter_trainable);

    /// V = l2_normalize(adapter(relu(frozen a))), unit norm.
    NodeId encode(Graph& g, const Nodes& n, const Tensor& a) const;

    /// Value-only path (used by the evaluator); agrees bitwise with the
    /// graph path because both run on the same kernels.
    Tensor encode_value(const Tensor& a) const;
};

/// Mean pooling over token positions followed by a frozen seeded
/// projection and L2 normalization. Gradient reaches every token.
struct TextEncoder {
    Tensor projection;  // d_emb x d_tok, seeded, immutable

    NodeId bind(Graph& g) const;

    NodeId encode(Graph& g, NodeId projection_node, const std::vector<NodeId>& tokens) const;

    Tensor encode_value(const std::vector<Tensor>& tokens) const;
};

std::pair<ImageEncoder, TextEncoder> init_encoders(const EncoderConfig& config);

}  // namespace uniprompt
