#pragma once

#include <cstddef>
#include <vector>

namespace uniprompt {

/// Dense row-major tensor of 64-bit floats. Rank 0 (scalar), 1 (vector)
/// and 2 (matrix) are the only ranks the library uses. Construction
/// rejects non-finite values.
class Tensor {
public:
    Tensor() = default;
    Tensor(std::vector<std::size_t> shape, std::vector<double> data);

    static Tensor scalar(double v);
    static Tensor zeros(std::vector<std::size_t> shape);

    const std::vector<std::size_t>& shape() const { return shape_; }
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    std::size_t numel() const { return data_.size(); }
    std::size_t rank() const { return shape_.size(); }

    bool is_scalar() const { return shape_.empty(); }
    bool is_vector() const { return shape_.size() == 1; }
    bool is_matrix() const { return shape_.size() == 2; }

    std::size_t rows() const { return shape_.at(0); }
    std::size_t cols() const { return shape_.at(1); }

    double scalar_value() const;
    double operator[](std::size_t i) const { return data_[i]; }
    double& operator[](std::size_t i) { return data_[i]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * shape_[1] + c]; }
    double& at(std::size_t r, std::size_t c) { return data_[r * shape_[1] + c]; }

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
    bool operator==(const Tensor& other) const {
        return shape_ == other.shape_ && data_ == other.data_;
    }

private:
    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

// Value-level kernels. The autodiff graph and every value-only path are
// built on these, so the two routes agree bitwise.
namespace kernels {

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double c);
Tensor matvec(const Tensor& m, const Tensor& v);
Tensor relu(const Tensor& a);
Tensor exp(const Tensor& a);
Tensor log(const Tensor& a);
double sum(const Tensor& a);
double mean(const Tensor& a);
double dot(const Tensor& a, const Tensor& b);
double norm(const Tensor& a);

/// Euclidean normalization; throws numeric_error if ||a|| <= eps.
Tensor l2_normalize(const Tensor& a, double eps = 1e-12);

Tensor concat(const std::vector<const Tensor*>& parts);

}  // namespace kernels

}  // namespace uniprompt
