#include "uniprompt/tensor.hpp"

#include <cmath>
#include <numeric>

#include "uniprompt/errors.hpp"

namespace uniprompt {

namespace {

std::size_t shape_numel(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (std::size_t d : shape) n *= d;
    return n;
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    if (shape_numel(shape_) != data_.size()) {
        throw contract_error("tensor: shape does not match data length");
    }
    for (double v : data_) {
        if (!std::isfinite(v)) {
            throw numeric_error("tensor: non-finite value at construction");
        }
    }
}

Tensor Tensor::scalar(double v) { return Tensor({}, {v}); }

Tensor Tensor::zeros(std::vector<std::size_t> shape) {
    const std::size_t n = shape_numel(shape);
    return Tensor(std::move(shape), std::vector<double>(n, 0.0));
}

double Tensor::scalar_value() const {
    if (!is_scalar()) throw contract_error("tensor: scalar_value on non-scalar");
    return data_[0];
}

namespace kernels {

namespace {

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (!a.same_shape(b)) {
        throw contract_error(std::string(op) + ": shape mismatch");
    }
}

}  // namespace

Tensor add(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "add");
    std::vector<double> out(a.numel());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
    return Tensor(a.shape(), std::move(out));
}

Tensor sub(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "sub");
    std::vector<double> out(a.numel());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
    return Tensor(a.shape(), std::move(out));
}

Tensor scale(const Tensor& a, double c) {
    std::vector<double> out(a.numel());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * c;
    return Tensor(a.shape(), std::move(out));
}

Tensor matvec(const Tensor& m, const Tensor& v) {
    if (!m.is_matrix() || !v.is_vector() || m.cols() != v.numel()) {
        throw contract_error("matvec: expected (r x c) matrix and length-c vector");
    }
    std::vector<double> out(m.rows(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < m.cols(); ++c) acc += m.at(r, c) * v[c];
        out[r] = acc;
    }
    return Tensor({m.rows()}, std::move(out));
}

Tensor relu(const Tensor& a) {
    std::vector<double> out(a.numel());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] > 0.0 ? a[i] : 0.0;
    return Tensor(a.shape(), std::move(out));
}

Tensor exp(const Tensor& a) {
    std::vector<double> out(a.numel());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::exp(a[i]);
    return Tensor(a.shape(), std::move(out));
}

Tensor log(const Tensor& a) {
    std::vector<double> out(a.numel());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::log(a[i]);
    return Tensor(a.shape(), std::move(out));
}

double sum(const Tensor& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.numel(); ++i) acc += a[i];
    return acc;
}

double mean(const Tensor& a) {
    if (a.numel() == 0) throw contract_error("mean: empty tensor");
    return sum(a) / static_cast<double>(a.numel());
}

double dot(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "dot");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.numel(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm(const Tensor& a) { return std::sqrt(dot(a, a)); }

Tensor l2_normalize(const Tensor& a, double eps) {
    const double n = norm(a);
    if (!(n > eps)) {
        throw numeric_error("l2_normalize: degenerate vector (norm <= eps)");
    }
    return scale(a, 1.0 / n);
}

Tensor concat(const std::vector<const Tensor*>& parts) {
    if (parts.empty()) throw contract_error("concat: no inputs");
    std::vector<double> out;
    for (const Tensor* p : parts) {
        if (p->rank() > 1) throw contract_error("concat: inputs must be scalars or vectors");
        out.insert(out.end(), p->data().begin(), p->data().end());
    }
    return Tensor({out.size()}, std::move(out));
}

}  // namespace kernels

}  // namespace uniprompt
