#include "poisenv/pea.hpp"

#include "poisenv/errors.hpp"
#include "poisenv/expression.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace poisenv {

// ---------------------------------------------------------------- PEAElement

std::uint32_t total_degree(const Multidegree& a) { return std::accumulate(a.begin(), a.end(), std::uint32_t{0}); }

bool MultidegreeOrder::operator()(const Multidegree& a, const Multidegree& b) const {
    std::uint32_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
}

PEAElement PEAElement::coefficient(const Polynomial& c) {
    PEAElement u(c.ring());
    if (!c.is_zero()) u.terms_.emplace(Multidegree(c.num_vars(), 0), c);
    return u;
}

PEAElement PEAElement::delta(const RingPtr& ring, std::size_t i) {
    if (i >= ring->size()) throw DomainError("delta index out of range");
    Multidegree alpha(ring->size(), 0);
    alpha[i] = 1;
    return term(Polynomial::constant(ring, 1), std::move(alpha));
}

PEAElement PEAElement::term(const Polynomial& c, Multidegree alpha) {
    PEAElement u(c.ring());
    if (!c.is_zero()) u.terms_.emplace(std::move(alpha), c);
    return u;
}

int PEAElement::top_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(total_degree(terms_.begin()->first));
}

PEAElement PEAElement::homogeneous_part(std::uint32_t k) const {
    PEAElement out(ring_);
    for (const auto& [alpha, c] : terms_)
        if (total_degree(alpha) == k) out.terms_.emplace(alpha, c);
    return out;
}

Polynomial PEAElement::coefficient_of(const Multidegree& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? Polynomial::zero(ring_) : it->second;
}

void PEAElement::add_term(const Multidegree& alpha, const Polynomial& c) {
    if (c.is_zero()) return;
    if (!ring_) ring_ = c.ring();
    else if (!same_variables(ring_, c.ring())) throw AmbientMismatchError("presentation mismatch");
    auto it = terms_.find(alpha);
    if (it == terms_.end()) {
        terms_.emplace(alpha, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

PEAElement& PEAElement::operator+=(const PEAElement& other) {
    if (!ring_) ring_ = other.ring_;
    else if (other.ring_ && !same_variables(ring_, other.ring_)) throw AmbientMismatchError("presentation mismatch");
    for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
    return *this;
}

PEAElement& PEAElement::operator-=(const PEAElement& other) {
    if (!ring_) ring_ = other.ring_;
    else if (other.ring_ && !same_variables(ring_, other.ring_)) throw AmbientMismatchError("presentation mismatch");
    for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
    return *this;
}

PEAElement PEAElement::operator-() const {
    PEAElement out(ring_);
    for (const auto& [alpha, c] : terms_) out.terms_.emplace(alpha, -c);
    return out;
}

PEAElement PEAElement::scaled(const Polynomial& c) const {
    PEAElement out(ring_ ? ring_ : c.ring());
    if (c.is_zero()) return out;
    for (const auto& [alpha, coeff] : terms_) out.add_term(alpha, c * coeff);
    return out;
}

PEAElement PEAElement::scaled(const Rational& c) const {
    PEAElement out(ring_);
    if (c == 0) return out;
    for (const auto& [alpha, coeff] : terms_) out.terms_.emplace(alpha, coeff * c);
    return out;
}

bool PEAElement::operator==(const PEAElement& other) const {
    if (terms_.size() != other.terms_.size()) return false;
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    for (; a != terms_.end(); ++a, ++b)
        if (a->first != b->first || a->second != b->second) return false;
    return true;
}

namespace {

std::string delta_word(const Multidegree& alpha) {
    std::string out;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += "d" + std::to_string(i + 1);
        if (alpha[i] > 1) out += "^" + std::to_string(alpha[i]);
    }
    return out;
}

}  // namespace

std::string PEAElement::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<bool, std::string>> summands;
    for (const auto& [alpha, c] : terms_) {
        std::string word = delta_word(alpha);
        if (!word.empty() && c.size() > 1) {
            summands.emplace_back(false, "(" + c.to_string() + ")*" + word);
            continue;
        }
        for (const Term& t : display_terms(c)) {
            Rational mag = abs(t.coeff);
            std::string body;
            bool bare = t.monomial.is_one() && word.empty();
            if (mag != 1 || bare) body = mag.get_str();
            if (!t.monomial.is_one()) {
                if (!body.empty()) body += '*';
                body += monomial_to_string(t.monomial, c.ring()->vars());
            }
            if (!word.empty()) {
                if (!body.empty()) body += '*';
                body += word;
            }
            summands.emplace_back(sgn(t.coeff) < 0, body);
        }
    }
    std::string out;
    for (std::size_t k = 0; k < summands.size(); ++k) {
        const auto& [negative, body] = summands[k];
        if (k == 0) out += negative ? "-" : "";
        else out += negative ? " - " : " + ";
        out += body;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const PEAElement& u) { return os << u.to_string(); }

// ---------------------------------------------------------------- EnvelopingAlgebra

EnvelopingAlgebra::EnvelopingAlgebra(std::shared_ptr<const PoissonAlgebra> algebra, RewriteMode mode)
    : algebra_(std::move(algebra)), mode_(mode) {
    std::size_t n = num_vars();
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("d" + std::to_string(i));
    for (const auto& v : ring()->vars()) names.push_back(v);
    graded_ring_ = PolyRing::make(names, MonomialOrder::block(n));
    x_to_graded_.resize(n);
    for (std::size_t i = 0; i < n; ++i) x_to_graded_[i] = n + i;

    delta_constants_.assign(n * n * n, Polynomial::zero(ring()));
    const auto& pres = algebra_->presentation();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            Polynomial c = mode_ == RewriteMode::eager ? algebra_->structure_constant(i, j)
                                                       : pres.structure_constant(i, j);
            for (std::size_t k = 0; k < n; ++k) delta_constants_[(i * n + j) * n + k] = reduce_coeff(c.derivative(k));
        }
}

PEAElement EnvelopingAlgebra::one() const { return PEAElement::coefficient(Polynomial::constant(ring(), 1)); }
PEAElement EnvelopingAlgebra::x(std::size_t i) const { return PEAElement::coefficient(Polynomial::variable(ring(), i)); }
PEAElement EnvelopingAlgebra::delta(std::size_t i) const { return PEAElement::delta(ring(), i); }

PEAElement EnvelopingAlgebra::from_polynomial(const Polynomial& p) const {
    if (p.ring() && !same_variables(p.ring(), ring())) throw AmbientMismatchError("presentation mismatch");
    PEAElement u(ring());
    Polynomial c = algebra_->reduce(p.ring() ? p.in_ring(ring()) : Polynomial::zero(ring()));
    u.add_term(Multidegree(num_vars(), 0), c);
    return u;
}

Polynomial EnvelopingAlgebra::reduce_coeff(const Polynomial& p) const {
    return mode_ == RewriteMode::eager ? algebra_->reduce(p) : p;
}

Polynomial EnvelopingAlgebra::constant_bracket(std::size_t i, const Polynomial& q) const {
    return algebra_->bracket_with_var(i, q, mode_ == RewriteMode::lazy);
}

PEAElement EnvelopingAlgebra::normalize(const PEAElement& u) const {
    PEAElement out(ring());
    for (const auto& [alpha, c] : u.terms()) out.add_term(alpha, algebra_->reduce(c));
    return out;
}

PEAElement EnvelopingAlgebra::left_delta_word(std::size_t i, const Multidegree& beta) const {
    auto key = std::make_pair(i, beta);
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = word_cache_.find(key);
        if (it != word_cache_.end()) return it->second;
    }
    std::size_t n = num_vars();
    std::size_t first = 0;
    while (first < n && beta[first] == 0) ++first;
    PEAElement result(ring());
    if (first >= i) {
        Multidegree alpha = beta;
        alpha[i] += 1;
        result.add_term(alpha, Polynomial::constant(ring(), 1));
    } else {
        // δ_i δ_first rest = δ_first (δ_i rest) + Σ_k ∂_k{x_i, x_first} δ_k rest.
        Multidegree rest = beta;
        rest[first] -= 1;
        result = left_delta(first, left_delta_word(i, rest));
        for (std::size_t k = 0; k < n; ++k) {
            const Polynomial& coeff = delta_constants_[(i * n + first) * n + k];
            if (coeff.is_zero()) continue;
            PEAElement tail = left_delta_word(k, rest);
            for (const auto& [alpha, c] : tail.terms()) result.add_term(alpha, reduce_coeff(coeff * c));
        }
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    word_cache_.emplace(std::move(key), result);
    return result;
}

PEAElement EnvelopingAlgebra::left_delta(std::size_t i, const PEAElement& u) const {
    PEAElement result(ring());
    for (const auto& [beta, c] : u.terms()) {
        // δ_i c δ^β = c δ_i δ^β + {x_i, c} δ^β.
        PEAElement word = left_delta_word(i, beta);
        for (const auto& [alpha, w] : word.terms()) result.add_term(alpha, reduce_coeff(c * w));
        result.add_term(beta, constant_bracket(i, c));
    }
    return result;
}

PEAElement EnvelopingAlgebra::multiply(const PEAElement& u, const PEAElement& v) const {
    if ((u.ring() && !same_variables(u.ring(), ring())) || (v.ring() && !same_variables(v.ring(), ring())))
        throw AmbientMismatchError("presentation mismatch");
    PEAElement result(ring());
    for (const auto& [alpha, c] : u.terms()) {
        PEAElement w = v;
        for (std::size_t idx = alpha.size(); idx-- > 0;)
            for (std::uint32_t e = 0; e < alpha[idx]; ++e) w = left_delta(idx, w);
        for (const auto& [gamma, coeff] : w.terms()) result.add_term(gamma, reduce_coeff(c * coeff));
    }
    return mode_ == RewriteMode::lazy ? normalize(result) : result;
}

PEAElement EnvelopingAlgebra::commutator(const PEAElement& u, const PEAElement& v) const {
    return multiply(u, v) - multiply(v, u);
}

PEAElement EnvelopingAlgebra::delta_of(const Polynomial& a) const {
    PEAElement out(ring());
    if (!a.ring()) return out;
    if (!same_variables(a.ring(), ring())) throw AmbientMismatchError("presentation mismatch");
    Polynomial p = a.in_ring(ring());
    for (std::size_t i = 0; i < num_vars(); ++i) {
        Multidegree alpha(num_vars(), 0);
        alpha[i] = 1;
        out.add_term(alpha, algebra_->reduce(p.derivative(i)));
    }
    return out;
}

Polynomial EnvelopingAlgebra::act_on(const PEAElement& u, const Polynomial& p) const {
    Polynomial q0 = p.ring() ? algebra_->reduce(p.in_ring(ring())) : Polynomial::zero(ring());
    Polynomial out = Polynomial::zero(ring());
    for (const auto& [alpha, c] : u.terms()) {
        Polynomial q = q0;
        for (std::size_t idx = alpha.size(); idx-- > 0;)
            for (std::uint32_t e = 0; e < alpha[idx]; ++e) q = algebra_->bracket_with_var(idx, q);
        out += c * q;
    }
    return algebra_->reduce(out);
}

// ---------------------------------------------------------------- graded model

const GroebnerBasis& EnvelopingAlgebra::graded_basis() const {
    std::call_once(graded_once_, [&] {
        std::size_t n = num_vars();
        const auto& rels = algebra_->presentation().relations();
        std::vector<Polynomial> gens;
        for (std::size_t s = 0; s < rels.size(); ++s) {
            Polynomial f = rels[s].embed(graded_ring_, x_to_graded_);
            if (!f.is_zero()) {
                gens.push_back(f);
                graded_generators_.emplace_back(s, false);
            }
            Polynomial df = Polynomial::zero(graded_ring_);
            for (std::size_t i = 0; i < n; ++i)
                df += rels[s].derivative(i).embed(graded_ring_, x_to_graded_) * Polynomial::variable(graded_ring_, i);
            if (!df.is_zero()) {
                gens.push_back(df);
                graded_generators_.emplace_back(s, true);
            }
        }
        graded_basis_ = buchberger(Ideal(graded_ring_, std::move(gens)), graded_ring_->order(), true,
                                   algebra_->limits());
    });
    return *graded_basis_;
}

Polynomial EnvelopingAlgebra::to_graded(const Polynomial& c, const Multidegree& alpha) const {
    std::vector<std::uint32_t> e(graded_ring_->size(), 0);
    for (std::size_t i = 0; i < alpha.size(); ++i) e[i] = alpha[i];
    return c.embed(graded_ring_, x_to_graded_).mul_term(1, Monomial(std::move(e)));
}

PEAElement EnvelopingAlgebra::from_graded(const Polynomial& p) const {
    std::size_t n = num_vars();
    PEAElement out(ring());
    std::map<Multidegree, std::vector<Term>> grouped;
    for (const auto& t : p.terms()) {
        Multidegree alpha(n);
        std::vector<std::uint32_t> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            alpha[i] = t.monomial[i];
            x[i] = t.monomial[n + i];
        }
        grouped[alpha].push_back(Term{Monomial(std::move(x)), t.coeff});
    }
    for (auto& [alpha, terms] : grouped)
        out.add_term(alpha, algebra_->reduce(Polynomial::from_terms(ring(), std::move(terms))));
    return out;
}

GradedElement EnvelopingAlgebra::graded(const Polynomial& p) const {
    if (!same_variables(p.ring(), graded_ring_)) throw AmbientMismatchError("not an element of the graded model");
    return GradedElement{graded_basis().normal_form(p)};
}

GradedElement EnvelopingAlgebra::graded_x(std::size_t i) const {
    return graded(Polynomial::variable(graded_ring_, x_to_graded_.at(i)));
}

GradedElement EnvelopingAlgebra::graded_delta(std::size_t i) const {
    if (i >= num_vars()) throw DomainError("delta index out of range");
    return graded(Polynomial::variable(graded_ring_, i));
}

GradedElement EnvelopingAlgebra::symbol(const PEAElement& u, std::uint32_t k) const {
    Polynomial acc = Polynomial::zero(graded_ring_);
    for (const auto& [alpha, c] : u.terms())
        if (total_degree(alpha) == k) acc += to_graded(c, alpha);
    return graded(acc);
}

GradedElement EnvelopingAlgebra::gr_bracket(const GradedElement& a, const GradedElement& b) const {
    std::size_t n = num_vars();
    const RingPtr& g = graded_ring_;
    Polynomial acc = Polynomial::zero(g);
    std::vector<Polynomial> a_dx(n), a_dd(n), b_dx(n), b_dd(n);
    for (std::size_t i = 0; i < n; ++i) {
        a_dd[i] = a.poly.derivative(i);
        a_dx[i] = a.poly.derivative(n + i);
        b_dd[i] = b.poly.derivative(i);
        b_dx[i] = b.poly.derivative(n + i);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const Polynomial& c = algebra_->structure_constant(i, j);
            if (c.is_zero()) continue;
            Polynomial cg = c.embed(g, x_to_graded_);
            // {δ_i, x_j} = {x_i, δ_j} = c_ij and {δ_i, δ_j} = Σ_k ∂_k(c_ij) δ_k.
            Polynomial mixed = a_dd[i] * b_dx[j] + a_dx[i] * b_dd[j];
            if (!mixed.is_zero()) acc += mixed * cg;
            Polynomial dd = a_dd[i] * b_dd[j];
            if (dd.is_zero()) continue;
            Polynomial dc = Polynomial::zero(g);
            for (std::size_t k = 0; k < n; ++k)
                dc += c.derivative(k).embed(g, x_to_graded_) * Polynomial::variable(g, k);
            acc += dd * dc;
        }
    return graded(acc);
}

// ---------------------------------------------------------------- zero test

bool EnvelopingAlgebra::is_zero(const PEAElement& u) const {
    if (u.ring() && !same_variables(u.ring(), ring())) throw AmbientMismatchError("presentation mismatch");
    PEAElement cur = normalize(u);
    last_steps_ = 0;
    if (cur.is_zero()) return true;
    const GroebnerBasis& basis = graded_basis();
    const auto& rels = algebra_->presentation().relations();
    while (!cur.is_zero()) {
        int top = cur.top_degree();
        Polynomial symbol_poly = Polynomial::zero(graded_ring_);
        for (const auto& [alpha, c] : cur.terms())
            if (static_cast<int>(total_degree(alpha)) == top) symbol_poly += to_graded(c, alpha);
        Reduction red = basis.reduce(symbol_poly);
        if (!red.remainder.is_zero()) return false;
        if (top == 0) {
            // A degree-zero symbol in the ideal means the coefficient lies in I,
            // which normalization already removed.
            throw DescentError("graded descent reached a nonzero element of degree 0 inside the relation ideal");
        }
        PEAElement w(ring());
        for (std::size_t t = 0; t < graded_generators_.size(); ++t) {
            auto [s, is_delta] = graded_generators_[t];
            if (!is_delta) continue;
            // Keep the δ-homogeneous part of degree top-1 of the cofactor.
            std::vector<Term> part;
            for (const auto& term : red.witness.combination[t].terms()) {
                std::uint32_t deg = 0;
                for (std::size_t i = 0; i < num_vars(); ++i) deg += term.monomial[i];
                if (static_cast<int>(deg) == top - 1) part.push_back(term);
            }
            if (part.empty()) continue;
            PEAElement q = from_graded(Polynomial::from_terms(graded_ring_, std::move(part)));
            w += multiply(q, delta_of(rels[s]));
        }
        PEAElement next = normalize(cur - w);
        if (next.top_degree() >= top)
            throw DescentError("graded descent did not lower the top degree " + std::to_string(top) + " of " +
                               cur.to_string());
        cur = std::move(next);
        ++last_steps_;
    }
    return true;
}

// ---------------------------------------------------------------- derived operations

PEAElement EnvelopingAlgebra::opposite_image(const PEAElement& u) const {
    PEAElement result(ring());
    for (const auto& [alpha, c] : u.terms()) {
        // θ(c δ_{a_1} ... δ_{a_k}) = (-1)^k δ_{a_k} ... δ_{a_1} c.
        PEAElement w = PEAElement::coefficient(c);
        std::uint32_t k = 0;
        for (std::size_t idx = 0; idx < alpha.size(); ++idx)
            for (std::uint32_t e = 0; e < alpha[idx]; ++e, ++k) w = left_delta(idx, w);
        result += (k % 2 == 0) ? w : -w;
    }
    return normalize(result);
}

PEAElement EnvelopingAlgebra::from_omega(const OmegaElement& w) const {
    if (w.coeffs.size() != num_vars()) throw AmbientMismatchError("differential has the wrong length");
    PEAElement out(ring());
    for (std::size_t i = 0; i < num_vars(); ++i) {
        Multidegree alpha(num_vars(), 0);
        alpha[i] = 1;
        if (w.coeffs[i].ring()) out.add_term(alpha, algebra_->reduce(w.coeffs[i].in_ring(ring())));
    }
    return out;
}

std::pair<OmegaElement, Polynomial> EnvelopingAlgebra::omega_bracket(const OmegaElement& a,
                                                                     const OmegaElement& b) const {
    PEAElement c = commutator(from_omega(a), from_omega(b));
    if (c.top_degree() > 1) throw DescentError("commutator of differentials has degree above one");
    OmegaElement w;
    w.coeffs.assign(num_vars(), Polynomial::zero(ring()));
    for (std::size_t i = 0; i < num_vars(); ++i) {
        Multidegree alpha(num_vars(), 0);
        alpha[i] = 1;
        w.coeffs[i] = c.coefficient_of(alpha);
    }
    return {w, c.coefficient_of(Multidegree(num_vars(), 0))};
}

void EnvelopingAlgebra::check_endomorphism(const std::vector<Polynomial>& images) const {
    std::size_t n = num_vars();
    if (images.size() != n) throw DomainError("endomorphism needs one image per variable");
    std::vector<Polynomial> sigma;
    for (const auto& img : images) sigma.push_back(img.ring() ? img.in_ring(ring()) : Polynomial::zero(ring()));
    const auto& rels = algebra_->presentation().relations();
    for (std::size_t s = 0; s < rels.size(); ++s)
        if (!algebra_->in_ideal(rels[s].substitute(sigma)))
            throw DomainError("not a Poisson endomorphism: relation " + rels[s].to_string() +
                              " is not mapped into the ideal");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Polynomial lhs = algebra_->bracket(sigma[i], sigma[j]);
            Polynomial rhs = algebra_->reduce(algebra_->presentation().structure_constant(i, j).substitute(sigma));
            if (lhs != rhs)
                throw DomainError("not a Poisson endomorphism: bracket of (" + ring()->vars()[i] + ", " +
                                  ring()->vars()[j] + ") is not preserved");
        }
}

PEAElement EnvelopingAlgebra::lift_endomorphism(const std::vector<Polynomial>& images, const PEAElement& u) const {
    check_endomorphism(images);
    std::vector<Polynomial> sigma;
    for (const auto& img : images) sigma.push_back(img.ring() ? img.in_ring(ring()) : Polynomial::zero(ring()));
    std::vector<PEAElement> delta_images;
    for (const auto& s : sigma) delta_images.push_back(delta_of(s));
    PEAElement result(ring());
    for (const auto& [alpha, c] : u.terms()) {
        PEAElement w = from_polynomial(c.substitute(sigma));
        for (std::size_t idx = 0; idx < alpha.size(); ++idx)
            for (std::uint32_t e = 0; e < alpha[idx]; ++e) w = multiply(w, delta_images[idx]);
        result += w;
    }
    return normalize(result);
}

// ---------------------------------------------------------------- parsing

namespace {

struct PEABuilder {
    using value_type = PEAElement;
    const EnvelopingAlgebra& algebra;

    PEAElement number(const Rational& q) const {
        return PEAElement::coefficient(Polynomial::constant(algebra.ring(), q));
    }
    PEAElement symbol(std::string_view name, std::size_t pos) const {
        if (is_reserved_name(name)) {
            std::size_t k = std::stoul(std::string(name.substr(1)));
            if (k >= 1 && k <= algebra.num_vars()) return algebra.delta(k - 1);
            throw UnknownVariableError(std::string(name), pos);
        }
        auto idx = algebra.ring()->index_of(name);
        if (!idx) throw UnknownVariableError(std::string(name), pos);
        return algebra.x(*idx);
    }
    PEAElement add(PEAElement a, const PEAElement& b) const { return a += b; }
    PEAElement sub(PEAElement a, const PEAElement& b) const { return a -= b; }
    PEAElement mul(const PEAElement& a, const PEAElement& b) const { return algebra.multiply(a, b); }
    PEAElement pow(const PEAElement& a, unsigned e) const {
        PEAElement r = algebra.one();
        for (unsigned k = 0; k < e; ++k) r = algebra.multiply(r, a);
        return r;
    }
    PEAElement neg(const PEAElement& a) const { return -a; }
};

}  // namespace

PEAElement EnvelopingAlgebra::parse(std::string_view text) const {
    PEABuilder builder{*this};
    return normalize(parse_expression(text, builder));
}

}  // namespace poisenv
