#include "poisenv/structure.hpp"

#include "poisenv/errors.hpp"

#include <algorithm>

namespace poisenv {

namespace {

constexpr std::size_t kMaxVars = 12;
constexpr std::size_t kMaxRows = 64;

std::uint64_t mask_of(const IndexTuple& t) {
    std::uint64_t m = 0;
    for (std::size_t i : t) m |= (std::uint64_t{1} << i);
    return m;
}

// Sign of the permutation sorting seq; 0 when seq repeats an index.
int sort_sign(std::vector<std::size_t>& seq) {
    int sign = 1;
    for (std::size_t i = 1; i < seq.size(); ++i)
        for (std::size_t j = i; j > 0 && seq[j - 1] >= seq[j]; --j) {
            if (seq[j - 1] == seq[j]) return 0;
            std::swap(seq[j - 1], seq[j]);
            sign = -sign;
        }
    return sign;
}

IndexTuple without(const IndexTuple& t, std::size_t pos) {
    IndexTuple out;
    for (std::size_t k = 0; k < t.size(); ++k)
        if (k != pos) out.push_back(t[k]);
    return out;
}

}  // namespace

std::vector<IndexTuple> combinations(std::size_t n, std::size_t k) {
    std::vector<IndexTuple> out;
    if (k > n) return out;
    IndexTuple cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

// ---------------------------------------------------------------- MinorCalculator

MinorCalculator::MinorCalculator(const PolyMatrix& matrix, std::shared_ptr<const PoissonAlgebra> algebra)
    : matrix_(matrix), algebra_(std::move(algebra)) {
    if (matrix_.rows() > kMaxRows || matrix_.cols() > kMaxRows)
        throw CapacityError("minor enumeration is capped at 64 rows and columns");
    for (std::size_t i = 0; i < matrix_.rows(); ++i)
        for (std::size_t j = 0; j < matrix_.cols(); ++j) matrix_(i, j) = algebra_->reduce(matrix_(i, j));
}

Polynomial MinorCalculator::minor_mask(std::uint64_t rows, std::uint64_t cols) const {
    if (rows == 0) return Polynomial::constant(algebra_->ring(), 1);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find({rows, cols});
        if (it != memo_.end()) return it->second;
    }
    std::size_t r0 = static_cast<std::size_t>(__builtin_ctzll(rows));
    std::uint64_t rest_rows = rows & (rows - 1);
    Polynomial acc = Polynomial::zero(algebra_->ring());
    int position = 0;
    for (std::uint64_t c = cols; c != 0; c &= c - 1, ++position) {
        std::size_t col = static_cast<std::size_t>(__builtin_ctzll(c));
        const Polynomial& entry = matrix_(r0, col);
        if (entry.is_zero()) continue;
        Polynomial sub = minor_mask(rest_rows, cols & ~(std::uint64_t{1} << col));
        if (sub.is_zero()) continue;
        if (position % 2 == 0) acc += entry * sub;
        else acc -= entry * sub;
    }
    acc = algebra_->reduce(acc);
    std::lock_guard<std::mutex> lock(mutex_);
    memo_.emplace(std::make_pair(rows, cols), acc);
    return acc;
}

Polynomial MinorCalculator::minor(const IndexTuple& rows, const IndexTuple& cols) const {
    if (rows.size() != cols.size()) throw DomainError("minor needs as many rows as columns");
    for (std::size_t i : rows)
        if (i >= matrix_.rows()) throw DomainError("minor row index out of range");
    for (std::size_t j : cols)
        if (j >= matrix_.cols()) throw DomainError("minor column index out of range");
    return minor_mask(mask_of(rows), mask_of(cols));
}

Polynomial MinorCalculator::ordered_minor(const std::vector<std::size_t>& rows,
                                          const std::vector<std::size_t>& cols) const {
    std::vector<std::size_t> r = rows, c = cols;
    int sign = sort_sign(r) * sort_sign(c);
    if (sign == 0) return Polynomial::zero(algebra_->ring());
    Polynomial m = minor(r, c);
    return sign > 0 ? m : -m;
}

MinorCalculator::RankSearch MinorCalculator::search_rank() const {
    RankSearch out;
    std::size_t top = std::min(matrix_.rows(), matrix_.cols());
    for (std::size_t t = top; t >= 1; --t) {
        auto row_sets = combinations(matrix_.rows(), t);
        auto col_sets = combinations(matrix_.cols(), t);
        for (const auto& r : row_sets)
            for (const auto& c : col_sets) {
                Polynomial m = minor(r, c);
                if (!m.is_zero()) out.nonzero.push_back(Minor{r, c, std::move(m)});
            }
        if (!out.nonzero.empty()) {
            out.rank = t;
            return out;
        }
    }
    out.rank = 0;
    out.nonzero.push_back(Minor{{}, {}, Polynomial::constant(algebra_->ring(), 1)});
    return out;
}

// ---------------------------------------------------------------- StructureAnalysis

StructureAnalysis::StructureAnalysis(std::shared_ptr<const PoissonAlgebra> algebra) : algebra_(std::move(algebra)) {
    if (algebra_->num_vars() > kMaxVars)
        throw CapacityError("structure analysis is capped at " + std::to_string(kMaxVars) + " variables");
    jacobian_minors_ = std::make_unique<MinorCalculator>(jacobian_matrix(), algebra_);
    structure_minors_ = std::make_unique<MinorCalculator>(structure_matrix(), algebra_);
}

PolyMatrix StructureAnalysis::jacobian_matrix() const {
    const auto& rels = algebra_->presentation().relations();
    std::size_t n = algebra_->num_vars();
    PolyMatrix j(rels.size(), n, algebra_->ring());
    for (std::size_t s = 0; s < rels.size(); ++s)
        for (std::size_t i = 0; i < n; ++i) j(s, i) = rels[s].derivative(i);
    return j;
}

PolyMatrix StructureAnalysis::structure_matrix() const {
    std::size_t n = algebra_->num_vars();
    PolyMatrix c(n, n, algebra_->ring());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c(i, j) = algebra_->structure_constant(i, j);
    return c;
}

const JacobianRankData& StructureAnalysis::jacobian_rank() const {
    std::call_once(jacobian_once_, [&] {
        auto search = jacobian_minors_->search_rank();
        JacobianRankData data;
        data.r = search.rank;
        for (const auto& m : search.nonzero) {
            if (std::find(data.nonsingular_rows.begin(), data.nonsingular_rows.end(), m.rows) ==
                data.nonsingular_rows.end())
                data.nonsingular_rows.push_back(m.rows);
            if (std::find(data.nonsingular_cols.begin(), data.nonsingular_cols.end(), m.cols) ==
                data.nonsingular_cols.end())
                data.nonsingular_cols.push_back(m.cols);
        }
        std::sort(data.nonsingular_rows.begin(), data.nonsingular_rows.end());
        std::sort(data.nonsingular_cols.begin(), data.nonsingular_cols.end());
        data.minors = std::move(search.nonzero);
        jacobian_ = std::move(data);
    });
    return *jacobian_;
}

const StructureRankData& StructureAnalysis::structure_rank() const {
    std::call_once(structure_once_, [&] {
        auto search = structure_minors_->search_rank();
        StructureRankData data;
        data.d = search.rank;
        for (const auto& m : search.nonzero) {
            for (const auto* t : {&m.rows, &m.cols})
                if (std::find(data.tuples.begin(), data.tuples.end(), *t) == data.tuples.end())
                    data.tuples.push_back(*t);
        }
        std::sort(data.tuples.begin(), data.tuples.end());
        data.minors = std::move(search.nonzero);
        structure_ = std::move(data);
    });
    return *structure_;
}

Polynomial StructureAnalysis::jacobian_minor(const std::vector<std::size_t>& rows,
                                             const std::vector<std::size_t>& cols) const {
    return jacobian_minors_->ordered_minor(rows, cols);
}

Polynomial StructureAnalysis::structure_minor(const std::vector<std::size_t>& rows,
                                              const std::vector<std::size_t>& cols) const {
    return structure_minors_->ordered_minor(rows, cols);
}

Ideal StructureAnalysis::jacobian_ideal() const {
    const auto& data = jacobian_rank();
    const RingPtr& ring = algebra_->ring();
    std::vector<Polynomial> gens = algebra_->presentation().relations();
    for (const auto& m : data.minors) gens.push_back(m.value);
    return Ideal(ring, std::move(gens));
}

Ideal StructureAnalysis::minor_ideal(std::size_t s) const {
    const RingPtr& ring = algebra_->ring();
    std::vector<Polynomial> gens = algebra_->presentation().relations();
    std::size_t n = algebra_->num_vars();
    if (s == 0) {
        gens.push_back(Polynomial::constant(ring, 1));
    } else if (s <= n) {
        for (const auto& r : combinations(n, s))
            for (const auto& c : combinations(n, s)) gens.push_back(structure_minors_->minor(r, c));
    }
    return Ideal(ring, std::move(gens));
}

bool StructureAnalysis::is_regular() const {
    if (jacobian_rank().r == 0) return true;
    return contains_one(jacobian_ideal(), algebra_->limits());
}

std::vector<IndexTuple> StructureAnalysis::critical_columns() const {
    const auto& data = jacobian_rank();
    std::vector<IndexTuple> out;
    for (const auto& cand : combinations(algebra_->num_vars(), data.r + 1)) {
        for (std::size_t k = 0; k < cand.size(); ++k) {
            IndexTuple reduced = without(cand, k);
            if (std::find(data.nonsingular_cols.begin(), data.nonsingular_cols.end(), reduced) !=
                data.nonsingular_cols.end()) {
                out.push_back(cand);
                break;
            }
        }
    }
    return out;
}

DerivationVector StructureAnalysis::derivation_from_columns(const IndexTuple& rows,
                                                            const std::vector<std::size_t>& cols) const {
    if (cols.size() != rows.size() + 1) throw DomainError("derivation generator needs r rows and r+1 columns");
    const RingPtr& ring = algebra_->ring();
    std::size_t r = rows.size();
    DerivationVector v;
    v.coeffs.assign(algebra_->num_vars(), Polynomial::zero(ring));
    // Cofactor expansion along the last row (∂_{c_1}, ..., ∂_{c_{r+1}}).
    for (std::size_t k = 0; k < cols.size(); ++k) {
        std::vector<std::size_t> rest;
        for (std::size_t l = 0; l < cols.size(); ++l)
            if (l != k) rest.push_back(cols[l]);
        Polynomial m = jacobian_minor(rows, rest);
        if ((r + k) % 2 == 0) v.coeffs[cols[k]] += m;
        else v.coeffs[cols[k]] -= m;
    }
    for (auto& c : v.coeffs) c = algebra_->reduce(c);
    return v;
}

std::vector<DerivationGenerator> StructureAnalysis::derivation_generators() const {
    if (!algebra_->presentation().flags().prime_ideal)
        throw DomainError("derivation generators need the prime_ideal flag");
    if (!is_regular()) throw DomainError("derivation generators need a regular algebra (Jacobian ideal is proper)");
    const auto& data = jacobian_rank();
    std::vector<DerivationGenerator> out;
    for (const auto& rows : data.nonsingular_rows)
        for (const auto& cols : critical_columns())
            out.push_back(DerivationGenerator{rows, cols, derivation_from_columns(rows, cols)});
    return out;
}

std::vector<DerelFailure> StructureAnalysis::check_derivation_relations() const {
    const auto& data = jacobian_rank();
    std::size_t r = data.r;
    std::size_t n = algebra_->num_vars();
    std::vector<DerelFailure> failures;
    derel_count_ = 0;
    auto critical = critical_columns();
    for (const auto& i : data.nonsingular_rows)
        for (const auto& ip : data.nonsingular_rows)
            for (const auto& j : data.nonsingular_cols)
                for (const auto& jp : critical) {
                    ++derel_count_;
                    Polynomial delta_ij = jacobian_minor(i, j);
                    DerivationVector lhs = derivation_from_columns(ip, jp);
                    std::vector<Polynomial> rhs(n, Polynomial::zero(algebra_->ring()));
                    for (std::size_t pos = 0; pos < jp.size(); ++pos) {
                        if (std::find(j.begin(), j.end(), jp[pos]) != j.end()) continue;
                        std::size_t nu = pos + 1;
                        Polynomial coeff = jacobian_minor(ip, without(jp, pos));
                        if ((r + 1 + nu) % 2 != 0) coeff = -coeff;
                        std::vector<std::size_t> cols = j;
                        cols.push_back(jp[pos]);
                        DerivationVector d = derivation_from_columns(i, cols);
                        for (std::size_t k = 0; k < n; ++k) rhs[k] += coeff * d.coeffs[k];
                    }
                    for (std::size_t k = 0; k < n; ++k) {
                        Polynomial residue = algebra_->reduce(delta_ij * lhs.coeffs[k] - rhs[k]);
                        if (!residue.is_zero()) failures.push_back(DerelFailure{i, ip, j, jp, k, residue});
                    }
                }
    return failures;
}

OmegaElement StructureAnalysis::kappa_element(const IndexTuple& rows, std::size_t extra_row,
                                              const IndexTuple& cols) const {
    std::size_t d = rows.size();
    OmegaElement w;
    w.coeffs.assign(algebra_->num_vars(), Polynomial::zero(algebra_->ring()));
    w.coeffs[extra_row] += structure_minor(rows, cols);
    for (std::size_t s = 1; s <= d; ++s) {
        std::vector<std::size_t> seq = without(rows, s - 1);
        seq.push_back(extra_row);
        Polynomial m = structure_minor(seq, cols);
        if ((s + d + 1) % 2 == 0) w.coeffs[rows[s - 1]] += m;
        else w.coeffs[rows[s - 1]] -= m;
    }
    for (auto& c : w.coeffs) c = algebra_->reduce(c);
    return w;
}

OmegaElement StructureAnalysis::dual_kappa_element(const IndexTuple& rows, const IndexTuple& cols,
                                                   std::size_t extra_col) const {
    std::size_t d = cols.size();
    OmegaElement w;
    w.coeffs.assign(algebra_->num_vars(), Polynomial::zero(algebra_->ring()));
    w.coeffs[extra_col] -= structure_minor(rows, cols);
    for (std::size_t s = 1; s <= d; ++s) {
        std::vector<std::size_t> seq = without(cols, s - 1);
        seq.push_back(extra_col);
        Polynomial m = structure_minor(rows, seq);
        if ((s + d + 1) % 2 == 0) w.coeffs[cols[s - 1]] -= m;
        else w.coeffs[cols[s - 1]] += m;
    }
    for (auto& c : w.coeffs) c = algebra_->reduce(c);
    return w;
}

std::vector<KappaGenerator> StructureAnalysis::kappa_generators() const {
    const auto& data = structure_rank();
    std::size_t n = algebra_->num_vars();
    std::vector<KappaGenerator> out;
    for (const auto& i : data.tuples)
        for (const auto& j : data.tuples)
            for (std::size_t extra = 0; extra < n; ++extra) {
                if (std::find(i.begin(), i.end(), extra) != i.end()) continue;
                out.push_back(KappaGenerator{i, extra, j, kappa_element(i, extra, j)});
            }
    return out;
}

Polynomial StructureAnalysis::pairing(const DerivationVector& derivation, const OmegaElement& omega) const {
    std::size_t n = algebra_->num_vars();
    if (derivation.coeffs.size() != n || omega.coeffs.size() != n)
        throw AmbientMismatchError("pairing operands have the wrong length");
    Polynomial acc = Polynomial::zero(algebra_->ring());
    for (std::size_t i = 0; i < n; ++i) acc += derivation.coeffs[i] * omega.coeffs[i];
    return algebra_->reduce(acc);
}

// ---------------------------------------------------------------- free functions

namespace {
StructureAnalysis analysis_of(const PoissonPresentation& p) {
    return StructureAnalysis(std::make_shared<const PoissonAlgebra>(p));
}
}  // namespace

JacobianRankData jacobian_rank(const PoissonPresentation& p) { return analysis_of(p).jacobian_rank(); }
StructureRankData structure_rank(const PoissonPresentation& p) { return analysis_of(p).structure_rank(); }
Ideal minor_ideals(const PoissonPresentation& p, std::size_t s) { return analysis_of(p).minor_ideal(s); }
Ideal jacobian_ideal(const PoissonPresentation& p) { return analysis_of(p).jacobian_ideal(); }
std::vector<DerivationGenerator> derivation_generators(const PoissonPresentation& p) {
    return analysis_of(p).derivation_generators();
}
std::vector<KappaGenerator> kappa_generators(const PoissonPresentation& p) { return analysis_of(p).kappa_generators(); }
Polynomial pairing(const PoissonPresentation& p, const DerivationVector& derivation, const OmegaElement& omega) {
    return analysis_of(p).pairing(derivation, omega);
}

}  // namespace poisenv
