#pragma once

#include "poisenv/groebner.hpp"
#include "poisenv/polynomial.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace poisenv {

struct PresentationFlags {
    bool prime_ideal = false;
    bool cohen_macaulay = false;
    std::optional<int> serre_s_m;
    // User assertion that A is Poisson simple; only consumed by the
    // conditional simplicity verdict for U(A).
    bool poisson_simple = false;
};

// Antisymmetric table of {x_i, x_j}; only entries with i < j are stored.
class BracketTable {
public:
    BracketTable() = default;
    explicit BracketTable(const RingPtr& ring);

    std::size_t size() const { return n_; }
    Polynomial get(std::size_t i, std::size_t j) const;
    // Stores value as {x_i, x_j}; i > j stores the negation at (j, i).
    void set(std::size_t i, std::size_t j, const Polynomial& value);
    bool is_zero() const;

private:
    std::size_t slot(std::size_t i, std::size_t j) const { return i * n_ + j; }
    RingPtr ring_;
    std::size_t n_ = 0;
    std::vector<Polynomial> entries_;
};

// Σ b_j ∂_j, a derivation of A given by its values on the generators.
struct DerivationVector {
    std::vector<Polynomial> coeffs;
};

// Σ b_i dx_i in the module of Kähler differentials.
struct OmegaElement {
    std::vector<Polynomial> coeffs;
};

class PoissonPresentation {
public:
    PoissonPresentation(RingPtr ring, std::vector<Polynomial> relations, BracketTable bracket,
                        PresentationFlags flags = {});

    const RingPtr& ring() const { return ring_; }
    const std::vector<std::string>& vars() const { return ring_->vars(); }
    std::size_t num_vars() const { return ring_->size(); }
    std::size_t num_relations() const { return relations_.size(); }
    const std::vector<Polynomial>& relations() const { return relations_; }
    const BracketTable& bracket_table() const { return bracket_; }
    Polynomial structure_constant(std::size_t i, std::size_t j) const { return bracket_.get(i, j); }

    const PresentationFlags& flags() const { return flags_; }
    PresentationFlags& flags() { return flags_; }

    // (original name, new name) for variables renamed by tensor_product.
    const std::vector<std::pair<std::string, std::string>>& renamed() const { return renamed_; }
    void set_renamed(std::vector<std::pair<std::string, std::string>> r) { renamed_ = std::move(r); }

    Polynomial var(std::size_t i) const { return Polynomial::variable(ring_, i); }
    Polynomial parse(std::string_view text) const { return parse_polynomial(text, ring_); }
    Ideal relation_ideal() const { return Ideal(ring_, relations_); }

private:
    RingPtr ring_;
    std::vector<Polynomial> relations_;
    BracketTable bracket_;
    PresentationFlags flags_;
    std::vector<std::pair<std::string, std::string>> renamed_;
};

// True for names reserved by the enveloping-algebra grammar (d1, d2, ...).
bool is_reserved_name(std::string_view name);

struct JacobiFailure {
    std::size_t i, j, k;
    Polynomial residue;
};

struct ClosureFailure {
    std::size_t var;
    std::size_t relation;
    Polynomial residue;
};

struct ValidationReport {
    std::vector<JacobiFailure> jacobi_failures;
    std::vector<ClosureFailure> closure_failures;
    bool ok() const { return jacobi_failures.empty() && closure_failures.empty(); }
};

// A presentation together with the reduced Gröbner basis of its relation
// ideal; the basis is computed once in the constructor.
class PoissonAlgebra {
public:
    explicit PoissonAlgebra(PoissonPresentation presentation, GroebnerLimits limits = {});

    const PoissonPresentation& presentation() const { return presentation_; }
    const RingPtr& ring() const { return presentation_.ring(); }
    std::size_t num_vars() const { return presentation_.num_vars(); }
    const GroebnerBasis& relation_basis() const { return basis_; }
    const GroebnerLimits& limits() const { return limits_; }

    Polynomial reduce(const Polynomial& p) const { return basis_.normal_form(p); }
    bool in_ideal(const Polynomial& p) const { return reduce(p).is_zero(); }
    // Normal form of {x_i, x_j}.
    const Polynomial& structure_constant(std::size_t i, std::size_t j) const { return constants_[i * num_vars() + j]; }
    bool bracket_trivial() const;

    // Σ ∂_i f · c_ij · ∂_j g without reduction.
    Polynomial raw_bracket(const Polynomial& f, const Polynomial& g) const;
    Polynomial bracket(const Polynomial& f, const Polynomial& g) const { return reduce(raw_bracket(f, g)); }
    // {x_i, q} = Σ_j c_ij ∂_j q; reduced unless raw is set.
    Polynomial bracket_with_var(std::size_t i, const Polynomial& q, bool raw = false) const;
    DerivationVector pad(const Polynomial& a) const;

    ValidationReport validate() const;

private:
    PoissonPresentation presentation_;
    GroebnerLimits limits_;
    GroebnerBasis basis_;
    std::vector<Polynomial> constants_;
};

ValidationReport validate(const PoissonPresentation& p);
Polynomial bracket(const PoissonPresentation& p, const Polynomial& f, const Polynomial& g);
DerivationVector pad(const PoissonPresentation& p, const Polynomial& a);

// Constructors.
PoissonPresentation trivial_presentation(const std::vector<std::string>& names);
// P_{2n}: variables x, y for n = 1, else x1..xn, y1..yn, with {y_i, x_j} = δ_ij.
PoissonPresentation weyl_presentation(std::size_t n);
PoissonPresentation localize(const PoissonPresentation& p, const Polynomial& s);
PoissonPresentation tensor_product(const PoissonPresentation& a, const PoissonPresentation& b);
PoissonPresentation opposite(const PoissonPresentation& p);
// constants[i][j][k] = c_ij^k with {x_i, x_j} = Σ_k c_ij^k x_k.
PoissonPresentation lie_poisson(const std::vector<std::string>& names,
                                const std::vector<std::vector<std::vector<Rational>>>& constants);
// a[i], b[i] are univariate polynomials (any single-variable ring).
PoissonPresentation gwpa(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b);
PoissonPresentation quotient(const PoissonPresentation& p, const std::vector<Polynomial>& extra);

// Structural equality: variables, relations and bracket table.
bool same_presentation(const PoissonPresentation& a, const PoissonPresentation& b);

}  // namespace poisenv
