#pragma once

#include "poisenv/groebner.hpp"
#include "poisenv/poly_matrix.hpp"
#include "poisenv/presentation.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace poisenv {

// Strictly increasing 0-based indices (reports print them 1-based).
using IndexTuple = std::vector<std::size_t>;

struct Minor {
    IndexTuple rows;
    IndexTuple cols;
    Polynomial value;  // reduced modulo the relation ideal
};

struct JacobianRankData {
    std::size_t r = 0;
    std::vector<IndexTuple> nonsingular_rows;
    std::vector<IndexTuple> nonsingular_cols;
    std::vector<Minor> minors;  // all nonzero r x r minors
};

struct StructureRankData {
    std::size_t d = 0;
    std::vector<IndexTuple> tuples;
    std::vector<Minor> minors;  // all nonzero d x d minors
};

struct DerivationGenerator {
    IndexTuple rows;
    IndexTuple cols;  // a critical (r+1)-tuple
    DerivationVector derivation;
};

struct KappaGenerator {
    IndexTuple rows;
    std::size_t extra_row;
    IndexTuple cols;
    OmegaElement omega;
};

struct DerelFailure {
    IndexTuple rows, rows_prime, cols, cols_prime;
    std::size_t component;
    Polynomial residue;
};

// Minors of a fixed matrix over A = P_n / I, memoized by (row set, column set)
// and reduced modulo I at every level of the Laplace expansion.
class MinorCalculator {
public:
    MinorCalculator(const PolyMatrix& matrix, std::shared_ptr<const PoissonAlgebra> algebra);

    std::size_t rows() const { return matrix_.rows(); }
    std::size_t cols() const { return matrix_.cols(); }
    // Sorted index tuples of equal length.
    Polynomial minor(const IndexTuple& rows, const IndexTuple& cols) const;
    // Arbitrary row and column sequences; repeated indices give zero.
    Polynomial ordered_minor(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

    struct RankSearch {
        std::size_t rank = 0;
        std::vector<Minor> nonzero;
    };
    // Largest size with a nonzero minor, searching from the top down.
    RankSearch search_rank() const;

private:
    Polynomial minor_mask(std::uint64_t rows, std::uint64_t cols) const;

    PolyMatrix matrix_;
    std::shared_ptr<const PoissonAlgebra> algebra_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<std::uint64_t, std::uint64_t>, Polynomial> memo_;
};

std::vector<IndexTuple> combinations(std::size_t n, std::size_t k);

class StructureAnalysis {
public:
    explicit StructureAnalysis(std::shared_ptr<const PoissonAlgebra> algebra);

    const PoissonAlgebra& algebra() const { return *algebra_; }
    const std::shared_ptr<const PoissonAlgebra>& algebra_ptr() const { return algebra_; }

    PolyMatrix jacobian_matrix() const;
    PolyMatrix structure_matrix() const;

    const JacobianRankData& jacobian_rank() const;
    const StructureRankData& structure_rank() const;

    // Δ(rows; cols) with columns taken in the given order.
    Polynomial jacobian_minor(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
    // μ(rows; cols) of the structure matrix, sequences in the given order.
    Polynomial structure_minor(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

    Ideal jacobian_ideal() const;
    Ideal minor_ideal(std::size_t s) const;
    bool is_regular() const;

    // (r+1)-tuples of columns that drop to a nonsingular r-tuple.
    std::vector<IndexTuple> critical_columns() const;
    // ∂_{rows; cols} for an r-tuple of rows and r+1 columns in the given order.
    DerivationVector derivation_from_columns(const IndexTuple& rows, const std::vector<std::size_t>& cols) const;
    // Throws DomainError unless the prime flag is set and A is regular.
    std::vector<DerivationGenerator> derivation_generators() const;
    std::vector<DerelFailure> check_derivation_relations() const;
    // Number of (i, i', j, j') combinations examined by the last call above.
    std::size_t derivation_relation_count() const { return derel_count_; }

    std::vector<KappaGenerator> kappa_generators() const;
    OmegaElement kappa_element(const IndexTuple& rows, std::size_t extra_row, const IndexTuple& cols) const;
    // δ'_{rows; cols, extra_col}.
    OmegaElement dual_kappa_element(const IndexTuple& rows, const IndexTuple& cols, std::size_t extra_col) const;

    Polynomial pairing(const DerivationVector& derivation, const OmegaElement& omega) const;

private:
    std::shared_ptr<const PoissonAlgebra> algebra_;
    std::unique_ptr<MinorCalculator> jacobian_minors_;
    std::unique_ptr<MinorCalculator> structure_minors_;
    mutable std::once_flag jacobian_once_, structure_once_;
    mutable std::optional<JacobianRankData> jacobian_;
    mutable std::optional<StructureRankData> structure_;
    mutable std::size_t derel_count_ = 0;
};

JacobianRankData jacobian_rank(const PoissonPresentation& p);
StructureRankData structure_rank(const PoissonPresentation& p);
Ideal minor_ideals(const PoissonPresentation& p, std::size_t s);
Ideal jacobian_ideal(const PoissonPresentation& p);
std::vector<DerivationGenerator> derivation_generators(const PoissonPresentation& p);
std::vector<KappaGenerator> kappa_generators(const PoissonPresentation& p);
Polynomial pairing(const PoissonPresentation& p, const DerivationVector& derivation, const OmegaElement& omega);

}  // namespace poisenv
