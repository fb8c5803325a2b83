#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uniprompt/binding.hpp"
#include "uniprompt/encoders.hpp"
#include "uniprompt/tensor.hpp"

namespace uniprompt {

struct PromptConfig {
    std::size_t n_tokens_specific = 4;
    std::size_t n_tokens_modality = 4;
    std::size_t n_tokens_platform = 4;
    std::size_t d_tok = 32;
    std::size_t d_feat = 64;
    std::size_t n_identities = 64;
    std::size_t n_modalities = 3;
    std::size_t n_platforms = 2;
    std::uint64_t seed = 11;

    void validate() const;
};

/// Learnable token matrices for the three prompt parts plus one frozen
/// terminal token per identity. Tokens are stored one tensor per
/// position so each can enter the graph as its own leaf.
struct PromptBank {
    PromptConfig config;
    std::vector<std::vector<Tensor>> specific;  // [identity][pos], d_tok each
    std::vector<std::vector<Tensor>> modality;  // [modality][pos]
    std::vector<std::vector<Tensor>> platform;  // [platform][pos]
    std::vector<Tensor> class_token;            // [identity], frozen

    static PromptBank init(const PromptConfig& config);

    void collect(std::vector<std::pair<std::string, Tensor*>>& out);

    std::uint64_t hash_specific() const;
    std::uint64_t hash_modality() const;
    std::uint64_t hash_platform() const;
};

/// Weight-tied meta-network g_theta: one shared hidden layer over the raw
/// image feature, three linear heads emitting the per-part biases
/// (sigma_specific, sigma_modality, sigma_platform).
struct VENet {
    Tensor w1, b1;                          // d_hidden x d_feat, d_hidden
    Tensor w_specific, b_specific;          // d_tok x d_hidden, d_tok
    Tensor w_modality, b_modality;
    Tensor w_platform, b_platform;

    static VENet init(std::size_t d_feat, std::size_t d_tok, std::uint64_t seed);
    static std::size_t hidden_dim(std::size_t d_tok);

    struct Nodes {
        NodeId w1, b1, w_specific, b_specific, w_modality, b_modality, w_platform, b_platform;
    };
    Nodes bind(GraphBinding& b, bool trainable);

    struct SigmaNodes {
        NodeId specific, modality, platform;
    };
    SigmaNodes forward(Graph& g, const Nodes& n, const Tensor& a) const;

    struct SigmaValues {
        Tensor specific, modality, platform;
    };
    SigmaValues forward_value(const Tensor& a) const;

    void collect(std::vector<std::pair<std::string, Tensor*>>& out);
    std::uint64_t hash() const;
};

/// Token sequence [specific..., modality..., platform..., class] for one
/// sample, with part-level biases already applied when enhanced.
struct ComposedPrompt {
    std::vector<Tensor> tokens;
    std::size_t identity;
    std::size_t modality;
    std::size_t platform;
};

ComposedPrompt compose_prompt(const PromptBank& bank, const VENet& net, std::size_t identity,
                              std::size_t modality, std::size_t platform, const Tensor& a,
                              bool enhance);

struct BatchSample {
    std::size_t identity;
    std::size_t modality;
    std::size_t platform;
    Tensor feature;
};

struct ComposerOptions {
    bool enhance = false;
    bool train_specific = false;
    bool train_modality = false;
    bool train_platform = false;
    bool train_venet = false;
};

struct BatchTexts {
    std::vector<NodeId> t_identity;  // gradient reaches specific tokens only
    std::vector<NodeId> t_modality;  // gradient reaches modality tokens (+sigma) only
    std::vector<NodeId> t_platform;  // gradient reaches platform tokens (+sigma) only
};

/// Builds the three conditioned text embeddings for every sample of a
/// batch inside one graph. For each output the non-target parts enter as
/// detached constants holding their current (possibly biased) values, so
/// gradient flows only to the target part's tokens and, when enhanced,
/// through that part's sigma head.
class PromptComposer {
public:
    PromptComposer(GraphBinding& binding, PromptBank& bank, VENet& net,
                   const TextEncoder& text_enc, const ComposerOptions& options);

    BatchTexts batch_text_embeddings(const std::vector<BatchSample>& batch);

private:
    enum class Part { specific, modality, platform };

    const std::vector<NodeId>& part_leaves(Part part, std::size_t index);
    NodeId text_for_part(const BatchSample& sample, Part target,
                         const VENet::SigmaNodes* sigma);

    GraphBinding& binding_;
    PromptBank& bank_;
    VENet& net_;
    const TextEncoder& text_enc_;
    ComposerOptions options_;
    NodeId projection_node_;
    bool venet_bound_ = false;
    VENet::Nodes venet_nodes_{};
    // lazily bound token leaves, keyed by part index
    std::vector<std::vector<NodeId>> specific_leaves_;
    std::vector<bool> specific_bound_;
    std::vector<std::vector<NodeId>> modality_leaves_;
    std::vector<bool> modality_bound_;
    std::vector<std::vector<NodeId>> platform_leaves_;
    std::vector<bool> platform_bound_;
};

}  // namespace uniprompt
