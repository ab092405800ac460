#pragma once

#include "poisenv/groebner.hpp"
#include "poisenv/presentation.hpp"

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace poisenv {

using Multidegree = std::vector<std::uint32_t>;

// Orders δ-multidegrees for display: higher total degree first, then
// lexicographically larger first.
struct MultidegreeOrder {
    bool operator()(const Multidegree& a, const Multidegree& b) const;
};

std::uint32_t total_degree(const Multidegree& a);

// Σ_α c_α(x) δ_1^{α_1} ... δ_n^{α_n}, coefficients on the left.
class PEAElement {
public:
    using TermMap = std::map<Multidegree, Polynomial, MultidegreeOrder>;

    PEAElement() = default;
    explicit PEAElement(RingPtr ring) : ring_(std::move(ring)) {}

    static PEAElement coefficient(const Polynomial& c);
    static PEAElement delta(const RingPtr& ring, std::size_t i);
    static PEAElement term(const Polynomial& c, Multidegree alpha);

    const RingPtr& ring() const { return ring_; }
    std::size_t num_vars() const { return ring_ ? ring_->size() : 0; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // -1 for the zero element.
    int top_degree() const;
    // Terms of δ-degree exactly k.
    PEAElement homogeneous_part(std::uint32_t k) const;
    Polynomial coefficient_of(const Multidegree& alpha) const;

    void add_term(const Multidegree& alpha, const Polynomial& c);
    PEAElement& operator+=(const PEAElement& other);
    PEAElement& operator-=(const PEAElement& other);
    PEAElement operator-() const;
    friend PEAElement operator+(PEAElement a, const PEAElement& b) { return a += b; }
    friend PEAElement operator-(PEAElement a, const PEAElement& b) { return a -= b; }
    // Left multiplication by a commutative coefficient.
    PEAElement scaled(const Polynomial& c) const;
    PEAElement scaled(const Rational& c) const;

    // Syntactic equality of normal forms.
    bool operator==(const PEAElement& other) const;
    bool operator!=(const PEAElement& other) const { return !(*this == other); }

    // e.g. "x*d2 + 1", "(x + y)*d1^2*d2 - d1".
    std::string to_string() const;

private:
    RingPtr ring_;
    TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const PEAElement& u);

// Element of gr U(P) modelled as a commutative polynomial in
// (δ_1..δ_n, x_1..x_n) reduced modulo (f_s, δ_{f_s}).
struct GradedElement {
    Polynomial poly;
};

enum class RewriteMode { eager, lazy };

// U(P) for a fixed presentation. Products are normal-ordered with δ indices
// ascending from left to right. Caches (pure δ-word products, the Gröbner
// basis used by the zero test) are filled on demand under a mutex, so one
// instance may be shared between threads.
class EnvelopingAlgebra {
public:
    explicit EnvelopingAlgebra(std::shared_ptr<const PoissonAlgebra> algebra, RewriteMode mode = RewriteMode::eager);

    const PoissonAlgebra& algebra() const { return *algebra_; }
    const RingPtr& ring() const { return algebra_->ring(); }
    std::size_t num_vars() const { return algebra_->num_vars(); }
    RewriteMode mode() const { return mode_; }

    PEAElement one() const;
    PEAElement x(std::size_t i) const;
    PEAElement delta(std::size_t i) const;
    PEAElement from_polynomial(const Polynomial& p) const;

    PEAElement multiply(const PEAElement& u, const PEAElement& v) const;
    PEAElement commutator(const PEAElement& u, const PEAElement& v) const;
    // δ_a = Σ_i ∂_i(a) δ_i.
    PEAElement delta_of(const Polynomial& a) const;
    // The operator π(u) applied to p; each δ_i acts as {x_i, ·}.
    Polynomial act_on(const PEAElement& u, const Polynomial& p) const;
    bool is_zero(const PEAElement& u) const;
    bool equal(const PEAElement& u, const PEAElement& v) const { return is_zero(u - v); }
    // Anti-automorphism a ↦ a, δ_i ↦ -δ_i.
    PEAElement opposite_image(const PEAElement& u) const;
    // Commutator of two degree-one elements, split into its degree-1 and degree-0 parts.
    std::pair<OmegaElement, Polynomial> omega_bracket(const OmegaElement& a, const OmegaElement& b) const;
    PEAElement from_omega(const OmegaElement& w) const;
    // Throws DomainError ("not a Poisson endomorphism") when images do not
    // preserve the relations and the bracket.
    PEAElement lift_endomorphism(const std::vector<Polynomial>& images, const PEAElement& u) const;
    void check_endomorphism(const std::vector<Polynomial>& images) const;

    // Commutative model of gr U(P).
    const RingPtr& graded_ring() const { return graded_ring_; }
    GradedElement graded(const Polynomial& p) const;
    GradedElement graded_x(std::size_t i) const;
    GradedElement graded_delta(std::size_t i) const;
    // Symbol of u in degree k, i.e. its δ-degree-k part as a commutative polynomial.
    GradedElement symbol(const PEAElement& u, std::uint32_t k) const;
    GradedElement gr_bracket(const GradedElement& a, const GradedElement& b) const;
    // Reduced Gröbner basis of (f_s, δ_{f_s}) under the δ-leading block order.
    const GroebnerBasis& graded_basis() const;

    // Parses the PEA expression grammar; d1..dn denote δ_1..δ_n.
    PEAElement parse(std::string_view text) const;

    // Counters for the last is_zero call.
    std::size_t last_descent_steps() const { return last_steps_; }

private:
    PEAElement normalize(const PEAElement& u) const;
    Polynomial reduce_coeff(const Polynomial& p) const;
    Polynomial constant_bracket(std::size_t i, const Polynomial& q) const;
    // δ_i · u for normal-ordered u.
    PEAElement left_delta(std::size_t i, const PEAElement& u) const;
    // δ_i · δ^β.
    PEAElement left_delta_word(std::size_t i, const Multidegree& beta) const;
    Polynomial to_graded(const Polynomial& c, const Multidegree& alpha) const;
    PEAElement from_graded(const Polynomial& p) const;

    std::shared_ptr<const PoissonAlgebra> algebra_;
    RewriteMode mode_;
    RingPtr graded_ring_;
    std::vector<std::size_t> x_to_graded_;
    // ∂_k {x_i, x_j} for the δ-δ commutation rule, index (i*n + j)*n + k.
    std::vector<Polynomial> delta_constants_;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<std::size_t, Multidegree>, PEAElement> word_cache_;
    mutable std::once_flag graded_once_;
    mutable std::optional<GroebnerBasis> graded_basis_;
    // Generator g of the graded ideal: relation index and whether it is δ_{f_s}.
    mutable std::vector<std::pair<std::size_t, bool>> graded_generators_;
    mutable std::atomic<std::size_t> last_steps_{0};
};

}  // namespace poisenv
