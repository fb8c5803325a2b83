#include "uniprompt/autograd.hpp"

#include <cmath>
#include <string>

#include "uniprompt/errors.hpp"

namespace uniprompt {

namespace {

const char* op_name(Graph::Op op) {
    switch (op) {
        case Graph::Op::leaf: return "leaf";
        case Graph::Op::add: return "add";
        case Graph::Op::sub: return "sub";
        case Graph::Op::scale: return "scale";
        case Graph::Op::matvec: return "matvec";
        case Graph::Op::relu: return "relu";
        case Graph::Op::exp: return "exp";
        case Graph::Op::log: return "log";
        case Graph::Op::sum: return "sum";
        case Graph::Op::mean: return "mean";
        case Graph::Op::dot: return "dot";
        case Graph::Op::l2_normalize: return "l2_normalize";
        case Graph::Op::concat: return "concat";
    }
    return "?";
}

}  // namespace

const Graph::Node& Graph::node(NodeId id) const {
    if (id >= nodes_.size()) throw contract_error("graph: unknown node id");
    return nodes_[id];
}

NodeId Graph::push(Op op, std::vector<NodeId> inputs, Tensor value, double scalar_arg) {
    Node n;
    n.op = op;
    n.inputs = std::move(inputs);
    n.scalar_arg = scalar_arg;
    n.value = std::move(value);
    for (NodeId in : n.inputs) {
        if (node(in).needs_grad) {
            n.needs_grad = true;
            break;
        }
    }
    nodes_.push_back(std::move(n));
    return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Graph::leaf(Tensor value, bool requires_grad) {
    Node n;
    n.op = Op::leaf;
    n.value = std::move(value);
    n.needs_grad = requires_grad;
    nodes_.push_back(std::move(n));
    return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Graph::add(NodeId a, NodeId b) {
    return push(Op::add, {a, b}, kernels::add(value(a), value(b)));
}

NodeId Graph::sub(NodeId a, NodeId b) {
    return push(Op::sub, {a, b}, kernels::sub(value(a), value(b)));
}

NodeId Graph::scale(NodeId a, double c) {
    return push(Op::scale, {a}, kernels::scale(value(a), c), c);
}

NodeId Graph::matvec(NodeId m, NodeId v) {
    return push(Op::matvec, {m, v}, kernels::matvec(value(m), value(v)));
}

NodeId Graph::relu(NodeId a) {
    return push(Op::relu, {a}, kernels::relu(value(a)));
}

NodeId Graph::exp(NodeId a) {
    return push(Op::exp, {a}, kernels::exp(value(a)));
}

NodeId Graph::log(NodeId a) {
    return push(Op::log, {a}, kernels::log(value(a)));
}

NodeId Graph::sum(NodeId a) {
    return push(Op::sum, {a}, Tensor::scalar(kernels::sum(value(a))));
}

NodeId Graph::mean(NodeId a) {
    return push(Op::mean, {a}, Tensor::scalar(kernels::mean(value(a))));
}

NodeId Graph::dot(NodeId a, NodeId b) {
    return push(Op::dot, {a, b}, Tensor::scalar(kernels::dot(value(a), value(b))));
}

NodeId Graph::l2_normalize(NodeId a, double eps) {
    return push(Op::l2_normalize, {a}, kernels::l2_normalize(value(a), eps));
}

NodeId Graph::concat(const std::vector<NodeId>& parts) {
    std::vector<const Tensor*> values;
    values.reserve(parts.size());
    for (NodeId p : parts) values.push_back(&value(p));
    return push(Op::concat, parts, kernels::concat(values));
}

std::unordered_map<NodeId, Tensor> Graph::backward(NodeId loss) const {
    const Node& loss_node = node(loss);
    if (!loss_node.value.is_scalar()) {
        throw contract_error("backward: loss must be a scalar node");
    }

    // Adjoints, lazily allocated; empty tensor means "zero so far".
    std::vector<Tensor> adj(nodes_.size());
    adj[loss] = Tensor::scalar(1.0);

    auto accumulate = [&adj](NodeId id, const Tensor& delta) {
        if (adj[id].numel() == 0) {
            adj[id] = delta;
        } else {
            adj[id] = kernels::add(adj[id], delta);
        }
    };

    for (NodeId id = loss + 1; id-- > 0;) {
        const Node& n = nodes_[id];
        if (!n.needs_grad || adj[id].numel() == 0 || n.op == Op::leaf) continue;
        const Tensor& g = adj[id];

        try {
            switch (n.op) {
                case Op::add: {
                    if (node(n.inputs[0]).needs_grad) accumulate(n.inputs[0], g);
                    if (node(n.inputs[1]).needs_grad) accumulate(n.inputs[1], g);
                    break;
                }
                case Op::sub: {
                    if (node(n.inputs[0]).needs_grad) accumulate(n.inputs[0], g);
                    if (node(n.inputs[1]).needs_grad)
                        accumulate(n.inputs[1], kernels::scale(g, -1.0));
                    break;
                }
                case Op::scale: {
                    if (node(n.inputs[0]).needs_grad)
                        accumulate(n.inputs[0], kernels::scale(g, n.scalar_arg));
                    break;
                }
                case Op::matvec: {
                    const Tensor& m = node(n.inputs[0]).value;
                    const Tensor& v = node(n.inputs[1]).value;
                    if (node(n.inputs[0]).needs_grad) {
                        std::vector<double> dm(m.numel());
                        for (std::size_t r = 0; r < m.rows(); ++r)
                            for (std::size_t c = 0; c < m.cols(); ++c)
                                dm[r * m.cols() + c] = g[r] * v[c];
                        accumulate(n.inputs[0], Tensor(m.shape(), std::move(dm)));
                    }
                    if (node(n.inputs[1]).needs_grad) {
                        std::vector<double> dv(v.numel(), 0.0);
                        for (std::size_t r = 0; r < m.rows(); ++r)
                            for (std::size_t c = 0; c < m.cols(); ++c)
                                dv[c] += m.at(r, c) * g[r];
                        accumulate(n.inputs[1], Tensor(v.shape(), std::move(dv)));
                    }
                    break;
                }
                case Op::relu: {
                    const Tensor& x = node(n.inputs[0]).value;
                    std::vector<double> dx(x.numel());
                    for (std::size_t i = 0; i < x.numel(); ++i)
                        dx[i] = x[i] > 0.0 ? g[i] : 0.0;
                    accumulate(n.inputs[0], Tensor(x.shape(), std::move(dx)));
                    break;
                }
                case Op::exp: {
                    // n.value holds exp(x).
                    std::vector<double> dx(g.numel());
                    for (std::size_t i = 0; i < g.numel(); ++i) dx[i] = g[i] * n.value[i];
                    accumulate(n.inputs[0], Tensor(g.shape(), std::move(dx)));
                    break;
                }
                case Op::log: {
                    const Tensor& x = node(n.inputs[0]).value;
                    std::vector<double> dx(x.numel());
                    for (std::size_t i = 0; i < x.numel(); ++i) dx[i] = g[i] / x[i];
                    accumulate(n.inputs[0], Tensor(x.shape(), std::move(dx)));
                    break;
                }
                case Op::sum: {
                    const Tensor& x = node(n.inputs[0]).value;
                    const double gv = g.scalar_value();
                    accumulate(n.inputs[0],
                               Tensor(x.shape(), std::vector<double>(x.numel(), gv)));
                    break;
                }
                case Op::mean: {
                    const Tensor& x = node(n.inputs[0]).value;
                    const double gv = g.scalar_value() / static_cast<double>(x.numel());
                    accumulate(n.inputs[0],
                               Tensor(x.shape(), std::vector<double>(x.numel(), gv)));
                    break;
                }
                case Op::dot: {
                    const double gv = g.scalar_value();
                    if (node(n.inputs[0]).needs_grad)
                        accumulate(n.inputs[0], kernels::scale(node(n.inputs[1]).value, gv));
                    if (node(n.inputs[1]).needs_grad)
                        accumulate(n.inputs[1], kernels::scale(node(n.inputs[0]).value, gv));
                    break;
                }
                case Op::l2_normalize: {
                    // y = x / ||x||, dx = (g - (g . y) y) / ||x||.
                    const Tensor& x = node(n.inputs[0]).value;
                    const Tensor& y = n.value;
                    const double nrm = kernels::norm(x);
                    const double gy = kernels::dot(g, y);
                    std::vector<double> dx(x.numel());
                    for (std::size_t i = 0; i < x.numel(); ++i)
                        dx[i] = (g[i] - gy * y[i]) / nrm;
                    accumulate(n.inputs[0], Tensor(x.shape(), std::move(dx)));
                    break;
                }
                case Op::concat: {
                    std::size_t offset = 0;
                    for (NodeId in : n.inputs) {
                        const Tensor& x = node(in).value;
                        if (node(in).needs_grad) {
                            std::vector<double> dx(g.data().begin() + offset,
                                                   g.data().begin() + offset + x.numel());
                            accumulate(in, Tensor(x.shape(), std::move(dx)));
                        }
                        offset += x.numel();
                    }
                    break;
                }
                case Op::leaf:
                    break;
            }
        } catch (const numeric_error& e) {
            throw numeric_error(std::string("backward: ") + e.what() + " at node " +
                                std::to_string(id) + " (" + op_name(n.op) + ")");
        }
    }

    std::unordered_map<NodeId, Tensor> grads;
    for (NodeId id = 0; id < nodes_.size(); ++id) {
        const Node& n = nodes_[id];
        if (n.op != Op::leaf || !n.needs_grad) continue;
        if (adj[id].numel() == 0) {
            grads.emplace(id, Tensor::zeros(n.value.shape()));
        } else {
            grads.emplace(id, std::move(adj[id]));
        }
    }
    return grads;
}

std::vector<Tensor> finite_diff(const std::function<double(const std::vector<Tensor>&)>& f,
                                const std::vector<Tensor>& params, double eps) {
    if (!(eps > 0.0)) throw contract_error("finite_diff: eps must be positive");
    std::vector<Tensor> grads;
    grads.reserve(params.size());
    std::vector<Tensor> work = params;
    for (std::size_t p = 0; p < params.size(); ++p) {
        Tensor g = Tensor::zeros(params[p].shape());
        for (std::size_t i = 0; i < params[p].numel(); ++i) {
            const double orig = work[p][i];
            work[p][i] = orig + eps;
            const double f_plus = f(work);
            work[p][i] = orig - eps;
            const double f_minus = f(work);
            work[p][i] = orig;
            if (!std::isfinite(f_plus) || !std::isfinite(f_minus)) {
                throw numeric_error("finite_diff: objective returned non-finite value");
            }
            g[i] = (f_plus - f_minus) / (2.0 * eps);
        }
        grads.push_back(std::move(g));
    }
    return grads;
}

double max_relative_error(const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b)) throw contract_error("max_relative_error: shape mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.numel(); ++i) {
        const double denom = std::max(1.0, std::abs(b[i]));
        worst = std::max(worst, std::abs(a[i] - b[i]) / denom);
    }
    return worst;
}

}  // namespace uniprompt
