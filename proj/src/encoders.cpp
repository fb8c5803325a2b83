#include "uniprompt/encoders.hpp"

#include <cmath>

#include "uniprompt/errors.hpp"
#include "uniprompt/rng.hpp"

namespace uniprompt {

namespace {

constexpr std::uint64_t kImageStream = 0x696d6167ull;  // "imag"
constexpr std::uint64_t kTextStream = 0x74657874ull;   // "text"

Tensor seeded_fan_in_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(cols));
    std::vector<double> data(rows * cols);
    for (double& v : data) v = rng.uniform(-bound, bound);
    return Tensor({rows, cols}, std::move(data));
}

Tensor identity_matrix(std::size_t n) {
    Tensor m = Tensor::zeros({n, n});
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

}  // namespace

void EncoderConfig::validate() const {
    if (d_feat < 2 || d_tok < 2 || d_emb < 2) {
        throw config_error("encoder config: all dimensions must be >= 2");
    }
}

std::pair<ImageEncoder, TextEncoder> init_encoders(const EncoderConfig& config) {
    config.validate();

    Rng img_rng(mix64(config.seed, kImageStream));
    ImageEncoder image;
    image.frozen = seeded_fan_in_matrix(config.d_emb, config.d_feat, img_rng);
    image.adapter_w = identity_matrix(config.d_emb);
    image.adapter_b = Tensor::zeros({config.d_emb});
    image.adapter_enabled = config.adapter_enabled;

    Rng txt_rng(mix64(config.seed, kTextStream));
    TextEncoder text;
    text.projection = seeded_fan_in_matrix(config.d_emb, config.d_tok, txt_rng);

    return {std::move(image), std::move(text)};
}

ImageEncoder::Nodes ImageEncoder::bind(GraphBinding& b, bool adapter_trainable) {
    Nodes n;
    n.frozen = b.graph().constant(frozen);
    n.adapter_w = b.bind("adapter.w", adapter_w, adapter_trainable && adapter_enabled);
    n.adapter_b = b.bind("adapter.b", adapter_b, adapter_trainable && adapter_enabled);
    n.adapter_enabled = adapter_enabled;
    return n;
}

NodeId ImageEncoder::encode(Graph& g, const Nodes& n, const Tensor& a) const {
    if (!a.is_vector() || a.numel() != frozen.cols()) {
        throw contract_error("encode_image: feature length does not match d_feat");
    }
    NodeId hidden = g.relu(g.matvec(n.frozen, g.constant(a)));
    if (n.adapter_enabled) {
        hidden = g.add(g.matvec(n.adapter_w, hidden), n.adapter_b);
    }
    return g.l2_normalize(hidden);
}

Tensor ImageEncoder::encode_value(const Tensor& a) const {
    if (!a.is_vector() || a.numel() != frozen.cols()) {
        throw contract_error("encode_image: feature length does not match d_feat");
    }
    Tensor hidden = kernels::relu(kernels::matvec(frozen, a));
    if (adapter_enabled) {
        hidden = kernels::add(kernels::matvec(adapter_w, hidden), adapter_b);
    }
    return kernels::l2_normalize(hidden);
}

NodeId TextEncoder::bind(Graph& g) const { return g.constant(projection); }

NodeId TextEncoder::encode(Graph& g, NodeId projection_node,
                           const std::vector<NodeId>& tokens) const {
    if (tokens.empty()) throw contract_error("encode_text: empty token sequence");
    for (NodeId t : tokens) {
        if (!g.value(t).is_vector() || g.value(t).numel() != projection.cols()) {
            throw contract_error("encode_text: token length does not match d_tok");
        }
    }
    NodeId pooled = tokens[0];
    for (std::size_t i = 1; i < tokens.size(); ++i) pooled = g.add(pooled, tokens[i]);
    pooled = g.scale(pooled, 1.0 / static_cast<double>(tokens.size()));
    return g.l2_normalize(g.matvec(projection_node, pooled));
}

Tensor TextEncoder::encode_value(const std::vector<Tensor>& tokens) const {
    if (tokens.empty()) throw contract_error("encode_text: empty token sequence");
    for (const Tensor& t : tokens) {
        if (!t.is_vector() || t.numel() != projection.cols()) {
            throw contract_error("encode_text: token length does not match d_tok");
        }
    }
    Tensor pooled = tokens[0];
    for (std::size_t i = 1; i < tokens.size(); ++i) pooled = kernels::add(pooled, tokens[i]);
    pooled = kernels::scale(pooled, 1.0 / static_cast<double>(tokens.size()));
    return kernels::l2_normalize(kernels::matvec(projection, pooled));
}

}  // namespace uniprompt
