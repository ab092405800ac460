#pragma once

#include "poisenv/polynomial.hpp"

#include <vector>

namespace poisenv {

class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(std::size_t rows, std::size_t cols, const RingPtr& ring);
    PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<Polynomial>& entries() const { return entries_; }

    const Polynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    Polynomial& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

    PolyMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
    PolyMatrix operator*(const PolyMatrix& other) const;
    PolyMatrix transpose() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Polynomial> entries_;
};

// Fraction-free Gaussian elimination; every division is exact.
Polynomial determinant_bareiss(const PolyMatrix& m);
// Laplace expansion along the first row.
Polynomial determinant_cofactor(const PolyMatrix& m);
Polynomial determinant(const PolyMatrix& m);

// Exact quotient a / b; throws DomainError when b does not divide a.
Polynomial exact_quotient(const Polynomial& a, const Polynomial& b);

}  // namespace poisenv
