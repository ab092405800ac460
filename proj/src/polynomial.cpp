#include "poisenv/polynomial.hpp"

#include "poisenv/errors.hpp"
#include "poisenv/expression.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

namespace poisenv {

Rational parse_rational(std::string_view text) {
    Rational q;
    if (q.set_str(std::string(text), 10) != 0) throw ParseError("malformed rational '" + std::string(text) + "'", 0);
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", 0);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
    degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index, std::uint32_t power) {
    Monomial m(nvars);
    m.exps_.at(index) = power;
    m.degree_ = power;
    return m;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
    r.degree_ += other.degree_;
    return r;
}

bool Monomial::divides(const Monomial& other) const {
    if (degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= divisor.exps_[i];
    r.degree_ -= divisor.degree_;
    return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
    std::vector<std::uint32_t> e(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) e[i] = std::max(exps_[i], other.exps_[i]);
    return Monomial(std::move(e));
}

bool Monomial::coprime(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    return true;
}

// ---------------------------------------------------------------- orders

int compare_degrevlex(const Monomial& a, const Monomial& b, std::size_t begin, std::size_t end) {
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = begin; i < end; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = end; i-- > begin;) {
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
        case Kind::lex:
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
            return 0;
        case Kind::degrevlex:
            if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
            return compare_degrevlex(a, b, 0, a.size());
        case Kind::block: {
            std::size_t split = std::min(leading_, a.size());
            int c = compare_degrevlex(a, b, 0, split);
            if (c != 0) return c;
            return compare_degrevlex(a, b, split, a.size());
        }
    }
    return 0;
}

std::string MonomialOrder::name() const {
    switch (kind_) {
        case Kind::lex: return "lex";
        case Kind::degrevlex: return "degrevlex";
        case Kind::block: return "block(" + std::to_string(leading_) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------- PolyRing

PolyRing::PolyRing(std::vector<std::string> vars, MonomialOrder order)
    : vars_(std::move(vars)), order_(order) {}

RingPtr PolyRing::make(std::vector<std::string> vars, MonomialOrder order) {
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (vars[i] == vars[j]) throw DomainError("duplicate variable name '" + vars[i] + "'");
    return std::make_shared<const PolyRing>(std::move(vars), order);
}

std::optional<std::size_t> PolyRing::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return std::nullopt;
}

RingPtr PolyRing::with_order(MonomialOrder order) const { return make(vars_, order); }

bool same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->order() == b->order() && a->vars() == b->vars();
}

bool same_variables(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->vars() == b->vars();
}

// ---------------------------------------------------------------- Polynomial

namespace {

void require_compatible(const RingPtr& a, const RingPtr& b) {
    if (a && b && !same_ring(a, b))
        throw AmbientMismatchError("polynomials belong to different rings");
}

// Merges two descending term lists: a + sign * b.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, const MonomialOrder& order,
                        int sign) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = order.compare(a[i].monomial, b[j].monomial);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(b[j++]);
            if (sign < 0) out.back().coeff = -out.back().coeff;
        } else {
            Rational s = sign > 0 ? Rational(a[i].coeff + b[j].coeff) : Rational(a[i].coeff - b[j].coeff);
            if (s != 0) out.push_back(Term{a[i].monomial, s});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) {
        out.push_back(b[j]);
        if (sign < 0) out.back().coeff = -out.back().coeff;
    }
    return out;
}

}  // namespace

Polynomial Polynomial::constant(const RingPtr& ring, const Rational& c) {
    Polynomial p(ring);
    if (c != 0) p.terms_.push_back(Term{Monomial(ring->size()), c});
    if (c != 0) p.terms_.back().coeff.canonicalize();
    return p;
}

Polynomial Polynomial::variable(const RingPtr& ring, std::size_t index) {
    if (index >= ring->size()) throw DomainError("variable index out of range");
    Polynomial p(ring);
    p.terms_.push_back(Term{Monomial::variable(ring->size(), index), Rational(1)});
    return p;
}

Polynomial Polynomial::monomial(const RingPtr& ring, const Monomial& m, const Rational& c) {
    if (m.size() != ring->size()) throw AmbientMismatchError("monomial arity differs from ring");
    Polynomial p(ring);
    if (c != 0) p.terms_.push_back(Term{m, c});
    if (c != 0) p.terms_.back().coeff.canonicalize();
    return p;
}

Polynomial Polynomial::from_terms(const RingPtr& ring, std::vector<Term> terms) {
    for (auto& t : terms) {
        if (t.monomial.size() != ring->size()) throw AmbientMismatchError("monomial arity differs from ring");
        t.coeff.canonicalize();
    }
    const MonomialOrder& order = ring->order();
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return order.compare(a.monomial, b.monomial) > 0; });
    Polynomial p(ring);
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
            p.terms_.back().coeff += t.coeff;
        } else {
            if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
    return p;
}

std::size_t Polynomial::num_vars() const { return ring_ ? ring_->size() : 0; }

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

std::optional<Rational> Polynomial::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (is_constant()) return terms_[0].coeff;
    return std::nullopt;
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.monomial.degree()));
    return d;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
        if (t.monomial == m) return t.coeff;
    return 0;
}

void Polynomial::adopt_ring(const Polynomial& other) {
    require_compatible(ring_, other.ring_);
    if (!ring_) ring_ = other.ring_;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    adopt_ring(other);
    if (other.terms_.empty()) return *this;
    terms_ = merge(terms_, other.terms_, ring_->order(), 1);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    adopt_ring(other);
    if (other.terms_.empty()) return *this;
    terms_ = merge(terms_, other.terms_, ring_->order(), -1);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_compatible(a.ring_, b.ring_);
    RingPtr ring = a.ring_ ? a.ring_ : b.ring_;
    Polynomial out(ring);
    if (a.is_zero() || b.is_zero()) return out;
    if (b.size() == 1) return a.mul_term(b.terms_[0].coeff, b.terms_[0].monomial);
    if (a.size() == 1) return b.mul_term(a.terms_[0].coeff, a.terms_[0].monomial);
    std::vector<Term> all;
    all.reserve(a.size() * b.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) all.push_back(Term{ta.monomial * tb.monomial, ta.coeff * tb.coeff});
    return Polynomial::from_terms(ring, std::move(all));
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
    *this = *this * other;
    return *this;
}

Polynomial Polynomial::mul_term(const Rational& c, const Monomial& m) const {
    Polynomial r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back(Term{t.monomial * m, t.coeff * c});
    return r;
}

Polynomial& Polynomial::sub_scaled(const Rational& c, const Monomial& m, const Polynomial& g) {
    adopt_ring(g);
    if (c == 0 || g.is_zero()) return *this;
    const MonomialOrder& order = ring_->order();
    std::vector<Term> out;
    out.reserve(terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    Monomial gm;
    while (i < terms_.size() && j < g.terms_.size()) {
        gm = g.terms_[j].monomial * m;
        int cmp = order.compare(terms_[i].monomial, gm);
        if (cmp > 0) {
            out.push_back(std::move(terms_[i++]));
        } else if (cmp < 0) {
            out.push_back(Term{std::move(gm), -(g.terms_[j].coeff * c)});
            ++j;
        } else {
            Rational s = terms_[i].coeff - g.terms_[j].coeff * c;
            if (s != 0) out.push_back(Term{std::move(terms_[i].monomial), std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i) out.push_back(std::move(terms_[i]));
    for (; j < g.terms_.size(); ++j) out.push_back(Term{g.terms_[j].monomial * m, -(g.terms_[j].coeff * c)});
    terms_ = std::move(out);
    return *this;
}

Polynomial Polynomial::pow(unsigned exponent) const {
    if (!ring_) {
        if (exponent == 0) throw DomainError("power of an unbound zero polynomial");
        return *this;
    }
    Polynomial result = constant(ring_, 1);
    Polynomial base = *this;
    while (exponent > 0) {
        if (exponent & 1u) result *= base;
        exponent >>= 1;
        if (exponent > 0) base *= base;
    }
    return result;
}

Polynomial Polynomial::derivative(std::size_t index) const {
    if (ring_ && index >= ring_->size()) throw DomainError("derivative index out of range");
    Polynomial r(ring_);
    for (const auto& t : terms_) {
        std::uint32_t e = t.monomial[index];
        if (e == 0) continue;
        std::vector<std::uint32_t> exps = t.monomial.exponents();
        exps[index] -= 1;
        r.terms_.push_back(Term{Monomial(std::move(exps)), t.coeff * e});
    }
    // Monomial orders are multiplicative, so dividing every surviving term by
    // the same variable keeps the descending order.
    return r;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    Rational inv = 1 / leading_coeff();
    return *this * inv;
}

Polynomial Polynomial::in_ring(const RingPtr& target) const {
    if (!ring_) return Polynomial(target);
    if (ring_->size() != target->size()) throw AmbientMismatchError("ring arity differs");
    if (same_ring(ring_, target)) {
        Polynomial r(*this);
        r.ring_ = target;
        return r;
    }
    return from_terms(target, terms_);
}

Polynomial Polynomial::embed(const RingPtr& target, const std::vector<std::size_t>& index_map) const {
    if (ring_ && index_map.size() != ring_->size()) throw AmbientMismatchError("index map arity differs");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        std::vector<std::uint32_t> e(target->size(), 0);
        for (std::size_t i = 0; i < index_map.size(); ++i) e.at(index_map[i]) += t.monomial[i];
        out.push_back(Term{Monomial(std::move(e)), t.coeff});
    }
    return from_terms(target, std::move(out));
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
    if (ring_ && images.size() != ring_->size()) throw AmbientMismatchError("substitution arity differs");
    RingPtr target;
    for (const auto& img : images)
        if (img.ring()) target = img.ring();
    if (!target) target = ring_;
    Polynomial out(target);
    std::vector<std::vector<Polynomial>> powers(images.size());
    for (const auto& t : terms_) {
        Polynomial prod = constant(target, t.coeff);
        for (std::size_t i = 0; i < images.size(); ++i) {
            std::uint32_t e = t.monomial[i];
            if (e == 0) continue;
            auto& cache = powers[i];
            if (cache.empty()) cache.push_back(constant(target, 1));
            while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
            prod *= cache[e];
        }
        out += prod;
    }
    return out;
}

bool Polynomial::operator==(const Polynomial& other) const {
    if (terms_.size() != other.terms_.size()) return false;
    if (ring_ && other.ring_ && !same_variables(ring_, other.ring_)) return false;
    if (!ring_ || !other.ring_ || same_ring(ring_, other.ring_)) {
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].monomial != other.terms_[i].monomial || terms_[i].coeff != other.terms_[i].coeff)
                return false;
        return true;
    }
    return in_ring(other.ring_) == other;
}

Term Polynomial::pop_leading() {
    Term t = std::move(terms_.front());
    terms_.erase(terms_.begin());
    return t;
}

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += names.at(i);
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

std::vector<Term> display_terms(const Polynomial& p) {
    std::vector<Term> sorted = p.terms();
    std::sort(sorted.begin(), sorted.end(), [](const Term& a, const Term& b) {
        if (a.monomial.degree() != b.monomial.degree()) return a.monomial.degree() > b.monomial.degree();
        return compare_degrevlex(a.monomial, b.monomial, 0, a.monomial.size()) > 0;
    });
    return sorted;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const Term& t : display_terms(*this)) {
        bool negative = sgn(t.coeff) < 0;
        Rational mag = abs(t.coeff);
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        if (t.monomial.is_one()) {
            out += mag.get_str();
        } else {
            if (mag != 1) out += mag.get_str() + "*";
            out += monomial_to_string(t.monomial, ring_->vars());
        }
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

// ---------------------------------------------------------------- parsing

namespace {

struct PolynomialBuilder {
    using value_type = Polynomial;
    RingPtr ring;

    Polynomial number(const Rational& q) const { return Polynomial::constant(ring, q); }
    Polynomial symbol(std::string_view name, std::size_t pos) const {
        auto idx = ring->index_of(name);
        if (!idx) throw UnknownVariableError(std::string(name), pos);
        return Polynomial::variable(ring, *idx);
    }
    Polynomial add(Polynomial a, const Polynomial& b) const { return a += b; }
    Polynomial sub(Polynomial a, const Polynomial& b) const { return a -= b; }
    Polynomial mul(const Polynomial& a, const Polynomial& b) const { return a * b; }
    Polynomial pow(const Polynomial& a, unsigned e) const { return a.pow(e); }
    Polynomial neg(const Polynomial& a) const { return -a; }
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
    PolynomialBuilder builder{ring};
    return parse_expression(text, builder);
}

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars) {
    return parse_polynomial(text, PolyRing::make(vars));
}

Polynomial partial_derivative(const Polynomial& p, std::size_t index) {
    if (index >= p.num_vars()) throw DomainError("derivative index out of range");
    return p.derivative(index);
}

}  // namespace poisenv
