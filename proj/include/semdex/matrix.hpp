#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace semdex {

/// Dense row-major matrix. Embedding tables use Real = float (the on-disk
/// format); tests instantiate double for high-precision oracles.
template <class Real>
class MatrixT {
public:
    MatrixT() = default;
    MatrixT(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Real(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::span<Real> row(std::size_t i) {
        assert(i < rows_);
        return {data_.data() + i * cols_, cols_};
    }
    std::span<const Real> row(std::size_t i) const {
        assert(i < rows_);
        return {data_.data() + i * cols_, cols_};
    }

    Real* data() { return data_.data(); }
    const Real* data() const { return data_.data(); }
    std::size_t size() const { return data_.size(); }

    bool operator==(const MatrixT&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Real> data_;
};

using Matrix = MatrixT<float>;

} // namespace semdex
