#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sarfbp {

using cplx = std::complex<double>;

/// Dense row-major 2-D complex array. For imagery the row index runs along
/// azimuth (x) and the column index along range (y); for phase history the
/// row index is the pulse and the column index the fast-time sample.
class Array2D {
public:
    Array2D() = default;
    Array2D(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

    cplx* row(std::size_t r) { return data_.data() + r * cols_; }
    const cplx* row(std::size_t r) const { return data_.data() + r * cols_; }

    bool same_shape(const Array2D& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    double energy() const {
        double e = 0.0;
        for (const auto& v : data_) e += std::norm(v);
        return e;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    void fill(cplx v) { std::fill(data_.begin(), data_.end(), v); }

    Array2D& operator*=(cplx s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    Array2D& operator+=(const Array2D& o) {
        if (!same_shape(o)) throw std::invalid_argument("Array2D: shape mismatch");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Real-valued companion used for sampled phase surfaces.
class RealArray2D {
public:
    RealArray2D() = default;
    RealArray2D(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const double& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool same_shape(const Array2D& o) const { return rows_ == o.rows() && cols_ == o.cols(); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace sarfbp
