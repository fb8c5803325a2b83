#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "uniprompt/tensor.hpp"

namespace uniprompt {

using NodeId = std::uint32_t;

/// Reverse-mode tape over dense tensors. Forward values are computed
/// eagerly at node creation; backward() runs one reverse sweep from a
/// scalar loss. One graph instance is single-threaded; independent
/// graphs are safe on independent threads.
class Graph {
public:
    enum class Op : std::uint8_t {
        leaf,
        add,
        sub,
        scale,
        matvec,
        relu,
        exp,
        log,
        sum,
        mean,
        dot,
        l2_normalize,
        concat,
    };

    NodeId leaf(Tensor value, bool requires_grad);
    /// Leaf that never receives a gradient.
    NodeId constant(Tensor value) { return leaf(std::move(value), false); }
    NodeId constant_scalar(double v) { return constant(Tensor::scalar(v)); }

    NodeId add(NodeId a, NodeId b);
    NodeId sub(NodeId a, NodeId b);
    NodeId scale(NodeId a, double c);
    NodeId matvec(NodeId m, NodeId v);
    NodeId relu(NodeId a);
    NodeId exp(NodeId a);
    NodeId log(NodeId a);
    NodeId sum(NodeId a);
    NodeId mean(NodeId a);
    NodeId dot(NodeId a, NodeId b);
    NodeId l2_normalize(NodeId a, double eps = 1e-12);
    NodeId concat(const std::vector<NodeId>& parts);

    const Tensor& value(NodeId id) const { return nodes_.at(id).value; }
    bool requires_grad(NodeId id) const { return nodes_.at(id).needs_grad; }
    std::size_t size() const { return nodes_.size(); }

    /// Gradients of a scalar loss w.r.t. every requires_grad leaf,
    /// keyed by leaf id. Leaves not connected to the loss get zeros.
    std::unordered_map<NodeId, Tensor> backward(NodeId loss) const;

private:
    struct Node {
        Op op;
        std::vector<NodeId> inputs;
        double scalar_arg = 0.0;
        Tensor value;
        bool needs_grad = false;
    };

    NodeId push(Op op, std::vector<NodeId> inputs, Tensor value, double scalar_arg = 0.0);
    const Node& node(NodeId id) const;

    std::vector<Node> nodes_;
};

/// Central-difference gradient estimate of f at params:
/// (f(p + eps e) - f(p - eps e)) / (2 eps) per coordinate.
/// f must be deterministic; non-finite outputs raise numeric_error.
std::vector<Tensor> finite_diff(const std::function<double(const std::vector<Tensor>&)>& f,
                                const std::vector<Tensor>& params, double eps);

/// max over coordinates of |a - b| / max(1, |b|); used by gradient checks.
double max_relative_error(const Tensor& a, const Tensor& b);

}  // namespace uniprompt
