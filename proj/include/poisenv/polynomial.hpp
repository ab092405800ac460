#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace poisenv {

// Canonical rationals: gmpxx keeps numerator and denominator coprime with a
// positive denominator after every arithmetic operation.
using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps);

    static Monomial variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1);

    std::size_t size() const { return exps_.size(); }
    std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
    std::uint32_t degree() const { return degree_; }
    const std::vector<std::uint32_t>& exponents() const { return exps_; }
    bool is_one() const { return degree_ == 0; }

    Monomial operator*(const Monomial& other) const;
    bool divides(const Monomial& other) const;
    // Pre: divisor.divides(*this).
    Monomial operator/(const Monomial& divisor) const;
    Monomial lcm(const Monomial& other) const;
    bool coprime(const Monomial& other) const;

    bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
    bool operator!=(const Monomial& other) const { return exps_ != other.exps_; }
    // Plain lexicographic comparison on the exponent vector, for use as a map key.
    bool operator<(const Monomial& other) const { return exps_ < other.exps_; }

private:
    std::vector<std::uint32_t> exps_;
    std::uint32_t degree_ = 0;
};

class MonomialOrder {
public:
    enum class Kind { lex, degrevlex, block };

    static MonomialOrder lex() { return MonomialOrder(Kind::lex, 0); }
    static MonomialOrder degrevlex() { return MonomialOrder(Kind::degrevlex, 0); }
    // The first leading_count variables form the leading block; each block is
    // compared by degrevlex and the leading block decides first.
    static MonomialOrder block(std::size_t leading_count) { return MonomialOrder(Kind::block, leading_count); }

    Kind kind() const { return kind_; }
    std::size_t leading_count() const { return leading_; }

    // Returns negative, zero or positive as a <, =, > b.
    int compare(const Monomial& a, const Monomial& b) const;

    bool operator==(const MonomialOrder& o) const { return kind_ == o.kind_ && leading_ == o.leading_; }
    bool operator!=(const MonomialOrder& o) const { return !(*this == o); }

    std::string name() const;

private:
    MonomialOrder(Kind kind, std::size_t leading) : kind_(kind), leading_(leading) {}
    Kind kind_;
    std::size_t leading_;
};

int compare_degrevlex(const Monomial& a, const Monomial& b, std::size_t begin, std::size_t end);

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

// Variable names plus the active monomial order. Shared by every polynomial
// living in the ring.
class PolyRing {
public:
    static RingPtr make(std::vector<std::string> vars, MonomialOrder order = MonomialOrder::degrevlex());

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t size() const { return vars_.size(); }
    const MonomialOrder& order() const { return order_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    RingPtr with_order(MonomialOrder order) const;

    PolyRing(std::vector<std::string> vars, MonomialOrder order);

private:
    std::vector<std::string> vars_;
    MonomialOrder order_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);
bool same_variables(const RingPtr& a, const RingPtr& b);

struct Term {
    Monomial monomial;
    Rational coeff;
};

class Polynomial {
public:
    // The default value is a zero polynomial not yet bound to a ring; it adopts
    // the ring of whatever it is combined with.
    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial zero(const RingPtr& ring) { return Polynomial(ring); }
    static Polynomial constant(const RingPtr& ring, const Rational& c);
    static Polynomial variable(const RingPtr& ring, std::size_t index);
    static Polynomial monomial(const RingPtr& ring, const Monomial& m, const Rational& c = 1);
    // Combines like terms, drops zeros and sorts by the ring order.
    static Polynomial from_terms(const RingPtr& ring, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    std::size_t num_vars() const;

    // Terms in strictly decreasing order under the ring's monomial order.
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::optional<Rational> constant_value() const;

    // Pre: nonzero.
    const Term& leading_term() const { return terms_.front(); }
    const Monomial& leading_monomial() const { return terms_.front().monomial; }
    const Rational& leading_coeff() const { return terms_.front().coeff; }
    // Total degree; -1 for the zero polynomial.
    int total_degree() const;
    Rational coefficient(const Monomial& m) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

    // this - c * m * g, computed with a single merge.
    Polynomial& sub_scaled(const Rational& c, const Monomial& m, const Polynomial& g);
    Polynomial mul_term(const Rational& c, const Monomial& m) const;

    Polynomial pow(unsigned exponent) const;
    Polynomial derivative(std::size_t index) const;
    Polynomial monic() const;

    // Same variables, different order: re-sorts the terms.
    Polynomial in_ring(const RingPtr& target) const;
    // Maps variable i to variable index_map[i] of target.
    Polynomial embed(const RingPtr& target, const std::vector<std::size_t>& index_map) const;
    // Substitutes images[i] for variable i; all images share one ring.
    Polynomial substitute(const std::vector<Polynomial>& images) const;

    bool operator==(const Polynomial& other) const;
    bool operator!=(const Polynomial& other) const { return !(*this == other); }

    // Canonical text: terms by descending degrevlex, e.g. "x^2 - 2*x*y + 1".
    std::string to_string() const;

    // Removes and returns the leading term. Pre: nonzero.
    Term pop_leading();

private:
    void adopt_ring(const Polynomial& other);
    RingPtr ring_;
    std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names);

// Terms in canonical display order (descending degrevlex), independent of the ring order.
std::vector<Term> display_terms(const Polynomial& p);

// Parses an expression in the variables of ring.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars);

Polynomial partial_derivative(const Polynomial& p, std::size_t index);

}  // namespace poisenv
