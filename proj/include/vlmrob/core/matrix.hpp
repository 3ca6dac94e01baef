#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vlmrob {

// Dense row-major matrix of doubles. Vectors are 1xN matrices.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::int64_t rows, std::int64_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative shape");
    }

    static Matrix from_rows(std::int64_t rows, std::int64_t cols, std::vector<double> data) {
        if (static_cast<std::size_t>(rows * cols) != data.size())
            throw std::invalid_argument("Matrix: data size does not match shape");
        Matrix m;
        m.rows_ = rows;
        m.cols_ = cols;
        m.data_ = std::move(data);
        return m;
    }

    std::int64_t rows() const { return rows_; }
    std::int64_t cols() const { return cols_; }
    std::int64_t size() const { return rows_ * cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::int64_t r, std::int64_t c) { return data_[r * cols_ + c]; }
    double operator()(std::int64_t r, std::int64_t c) const { return data_[r * cols_ + c]; }

    double* row_ptr(std::int64_t r) { return data_.data() + r * cols_; }
    const double* row_ptr(std::int64_t r) const { return data_.data() + r * cols_; }
    std::span<double> row(std::int64_t r) { return {row_ptr(r), static_cast<std::size_t>(cols_)}; }
    std::span<const double> row(std::int64_t r) const {
        return {row_ptr(r), static_cast<std::size_t>(cols_)};
    }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    std::string shape_str() const {
        return "[" + std::to_string(rows_) + "x" + std::to_string(cols_) + "]";
    }

  private:
    std::int64_t rows_ = 0;
    std::int64_t cols_ = 0;
    std::vector<double> data_;
};

struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require_shape(const Matrix& m, std::int64_t rows, std::int64_t cols,
                          const char* what) {
    if (m.rows() != rows || m.cols() != cols)
        throw ShapeError(std::string(what) + ": expected [" + std::to_string(rows) + "x" +
                         std::to_string(cols) + "], got " + m.shape_str());
}

} // namespace vlmrob
