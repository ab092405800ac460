#include "poisenv/poly_matrix.hpp"

#include "poisenv/errors.hpp"

namespace poisenv {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, const RingPtr& ring)
    : rows_(rows), cols_(cols), entries_(rows * cols, Polynomial::zero(ring)) {}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) throw DomainError("matrix entry count does not match its shape");
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    std::vector<Polynomial> e;
    e.reserve(rows.size() * cols.size());
    for (std::size_t i : rows)
        for (std::size_t j : cols) e.push_back((*this)(i, j));
    return PolyMatrix(rows.size(), cols.size(), std::move(e));
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& other) const {
    if (cols_ != other.rows_) throw DomainError("matrix shapes do not compose");
    std::vector<Polynomial> e(rows_ * other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < other.cols_; ++j) {
            Polynomial acc;
            for (std::size_t k = 0; k < cols_; ++k) acc += (*this)(i, k) * other(k, j);
            e[i * other.cols_ + j] = std::move(acc);
        }
    return PolyMatrix(rows_, other.cols_, std::move(e));
}

PolyMatrix PolyMatrix::transpose() const {
    std::vector<Polynomial> e(entries_.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) e[j * rows_ + i] = (*this)(i, j);
    return PolyMatrix(cols_, rows_, std::move(e));
}

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DomainError("division by zero polynomial");
    Polynomial rest = a;
    Polynomial q(a.ring() ? a.ring() : b.ring());
    const Monomial& lm = b.leading_monomial();
    while (!rest.is_zero()) {
        const Term& lt = rest.leading_term();
        if (!lm.divides(lt.monomial)) throw DomainError("polynomial division is not exact");
        Rational c = lt.coeff / b.leading_coeff();
        Monomial m = lt.monomial / lm;
        q += Polynomial::monomial(b.ring(), m, c);
        rest.sub_scaled(c, m, b);
    }
    return q;
}

namespace {

void require_square(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
}

RingPtr ring_of(const PolyMatrix& m) {
    for (const auto& e : m.entries())
        if (e.ring()) return e.ring();
    return nullptr;
}

Polynomial one_in(const RingPtr& ring) {
    if (!ring) throw DomainError("matrix entries are not bound to a ring");
    return Polynomial::constant(ring, 1);
}

}  // namespace

Polynomial determinant_bareiss(const PolyMatrix& input) {
    require_square(input);
    std::size_t n = input.rows();
    RingPtr ring = ring_of(input);
    if (n == 0) return ring ? one_in(ring) : Polynomial();
    if (!ring) return Polynomial();
    PolyMatrix a = input;
    Polynomial prev = one_in(ring);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k).is_zero()) {
            std::size_t pivot = k + 1;
            while (pivot < n && a(pivot, k).is_zero()) ++pivot;
            if (pivot == n) return Polynomial::zero(ring);
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial num = a(k, k) * a(i, j) - a(i, k) * a(k, j);
                a(i, j) = exact_quotient(num, prev);
            }
            a(i, k) = Polynomial::zero(ring);
        }
        prev = a(k, k);
    }
    Polynomial det = a(n - 1, n - 1);
    if (det.ring() == nullptr) det = Polynomial::zero(ring);
    return negate ? -det : det;
}

namespace {

Polynomial cofactor_rec(const PolyMatrix& m, std::size_t row, std::vector<std::size_t>& cols, const RingPtr& ring) {
    if (row == m.rows()) return one_in(ring);
    Polynomial acc = Polynomial::zero(ring);
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const Polynomial& entry = m(row, cols[k]);
        if (entry.is_zero()) continue;
        std::size_t c = cols[k];
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
        Polynomial minor = cofactor_rec(m, row + 1, cols, ring);
        cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
        if (k % 2 == 0) acc += entry * minor;
        else acc -= entry * minor;
    }
    return acc;
}

}  // namespace

Polynomial determinant_cofactor(const PolyMatrix& m) {
    require_square(m);
    RingPtr ring = ring_of(m);
    if (!ring) return Polynomial();
    std::vector<std::size_t> cols(m.cols());
    for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
    return cofactor_rec(m, 0, cols, ring);
}

Polynomial determinant(const PolyMatrix& m) { return determinant_bareiss(m); }

}  // namespace poisenv
