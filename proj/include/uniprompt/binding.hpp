#pragma once

#include <string>
#include <vector>

#include "uniprompt/autograd.hpp"

namespace uniprompt {

/// Per-step bridge between owned parameter tensors and graph leaves.
/// Trainable parameters are inserted as requires_grad leaves and recorded
/// so the optimizer can route gradients back; everything else enters as a
/// constant copy.
class GraphBinding {
public:
    explicit GraphBinding(Graph& g) : graph_(&g) {}

    Graph& graph() { return *graph_; }

    NodeId bind(const std::string& name, Tensor& tensor, bool trainable) {
        NodeId id = graph_->leaf(tensor, trainable);
        if (trainable) trained_.push_back({id, name, &tensor});
        return id;
    }

    struct TrainedLeaf {
        NodeId node;
        std::string name;
        Tensor* tensor;
    };

    const std::vector<TrainedLeaf>& trained() const { return trained_; }

private:
    Graph* graph_;
    std::vector<TrainedLeaf> trained_;
};

}  // namespace uniprompt
