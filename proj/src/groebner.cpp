#include "poisenv/groebner.hpp"

#include "poisenv/errors.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace poisenv {

// ---------------------------------------------------------------- Ideal

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators) : ring_(std::move(ring)) {
    for (auto& g : generators) {
        if (g.is_zero()) continue;
        if (!same_variables(g.ring(), ring_)) throw AmbientMismatchError("ideal generator lives in another ring");
        generators_.push_back(g.in_ring(ring_));
    }
}

Ideal Ideal::operator+(const Ideal& other) const {
    if (!same_variables(ring_, other.ring_)) throw AmbientMismatchError("ideals live in different rings");
    std::vector<Polynomial> gens = generators_;
    for (const auto& g : other.generators_) gens.push_back(g.in_ring(ring_));
    return Ideal(ring_, std::move(gens));
}

Ideal Ideal::with(const std::vector<Polynomial>& extra) const {
    std::vector<Polynomial> gens = generators_;
    gens.insert(gens.end(), extra.begin(), extra.end());
    return Ideal(ring_, std::move(gens));
}

// ---------------------------------------------------------------- reduction

namespace {

struct FullReduction {
    Polynomial remainder;
    std::vector<Polynomial> quotients;
};

// Divides p by the divisors until no term of the remainder is divisible by a
// leading monomial. skip, when set, is excluded from the divisors.
FullReduction reduce_full(Polynomial work, const std::vector<const Polynomial*>& divisors, bool want_quotients,
                          std::size_t skip = static_cast<std::size_t>(-1)) {
    FullReduction out;
    RingPtr ring = work.ring();
    if (want_quotients) out.quotients.assign(divisors.size(), Polynomial::zero(ring));
    std::vector<Term> rem;
    while (!work.is_zero()) {
        const Term& lt = work.leading_term();
        std::size_t k = 0;
        for (; k < divisors.size(); ++k) {
            if (k == skip) continue;
            if (divisors[k]->leading_monomial().divides(lt.monomial)) break;
        }
        if (k == divisors.size()) {
            rem.push_back(work.pop_leading());
            continue;
        }
        const Polynomial& g = *divisors[k];
        Rational c = lt.coeff / g.leading_coeff();
        Monomial m = lt.monomial / g.leading_monomial();
        if (want_quotients) out.quotients[k] += Polynomial::monomial(ring, m, c);
        work.sub_scaled(c, m, g);
    }
    out.remainder = Polynomial::from_terms(ring, std::move(rem));
    return out;
}

struct Entry {
    Polynomial poly;
    std::vector<Polynomial> cof;
};

void subtract_combination(std::vector<Polynomial>& target, const std::vector<Polynomial>& quotients,
                          const std::vector<Entry>& entries, const std::vector<std::size_t>& index) {
    for (std::size_t k = 0; k < quotients.size(); ++k) {
        if (quotients[k].is_zero()) continue;
        const auto& cof = entries[index[k]].cof;
        for (std::size_t s = 0; s < target.size(); ++s)
            if (!cof[s].is_zero()) target[s] -= quotients[k] * cof[s];
    }
}

}  // namespace

// ---------------------------------------------------------------- Buchberger

GroebnerBasis buchberger(const Ideal& ideal, const MonomialOrder& order, bool track_cofactors,
                         const GroebnerLimits& limits) {
    GroebnerBasis gb;
    gb.ring_ = same_ring(ideal.ring(), ideal.ring()->with_order(order)) ? ideal.ring()
                                                                        : ideal.ring()->with_order(order);
    const RingPtr& ring = gb.ring_;
    for (const auto& g : ideal.generators()) gb.generators_.push_back(g.in_ring(ring));
    const std::size_t ngens = gb.generators_.size();

    std::vector<Entry> entries;
    for (std::size_t s = 0; s < ngens; ++s) {
        Entry e{gb.generators_[s], {}};
        if (track_cofactors) {
            e.cof.assign(ngens, Polynomial::zero(ring));
            e.cof[s] = Polynomial::constant(ring, 1);
        }
        if (e.poly.total_degree() > static_cast<int>(limits.max_degree))
            throw CapacityError("generator exceeds the total degree cap of " + std::to_string(limits.max_degree));
        entries.push_back(std::move(e));
    }

    // Pending pairs keyed by (lcm degree, j, i): the normal strategy with a
    // deterministic tie-break.
    std::set<std::tuple<std::uint32_t, std::size_t, std::size_t>> pairs;
    std::vector<std::vector<char>> pending;
    auto add_pairs_for = [&](std::size_t j) {
        pending.emplace_back(j + 1, 0);
        for (std::size_t i = 0; i < j; ++i) {
            Monomial l = entries[i].poly.leading_monomial().lcm(entries[j].poly.leading_monomial());
            pairs.emplace(l.degree(), j, i);
            pending[j][i] = 1;
        }
    };
    auto is_pending = [&](std::size_t a, std::size_t b) {
        if (a < b) std::swap(a, b);
        return pending[a][b] != 0;
    };
    for (std::size_t j = 0; j < entries.size(); ++j) add_pairs_for(j);

    while (!pairs.empty()) {
        auto [deg, j, i] = *pairs.begin();
        pairs.erase(pairs.begin());
        pending[j][i] = 0;
        const Polynomial& gi = entries[i].poly;
        const Polynomial& gj = entries[j].poly;
        const Monomial& li = gi.leading_monomial();
        const Monomial& lj = gj.leading_monomial();
        if (li.coprime(lj)) continue;
        Monomial l = li.lcm(lj);
        bool chain = false;
        for (std::size_t k = 0; k < entries.size() && !chain; ++k) {
            if (k == i || k == j) continue;
            if (!entries[k].poly.leading_monomial().divides(l)) continue;
            if (!is_pending(i, k) && !is_pending(j, k)) chain = true;
        }
        if (chain) continue;

        Rational ci = 1 / gi.leading_coeff();
        Rational cj = 1 / gj.leading_coeff();
        Monomial mi = l / li;
        Monomial mj = l / lj;
        Polynomial s = gi.mul_term(ci, mi);
        s.sub_scaled(cj, mj, gj);
        std::vector<Polynomial> cof;
        if (track_cofactors) {
            cof.assign(ngens, Polynomial::zero(ring));
            for (std::size_t t = 0; t < ngens; ++t) {
                cof[t] = entries[i].cof[t].mul_term(ci, mi);
                cof[t].sub_scaled(cj, mj, entries[j].cof[t]);
            }
        }
        std::vector<const Polynomial*> divisors;
        std::vector<std::size_t> index;
        for (std::size_t k = 0; k < entries.size(); ++k) {
            divisors.push_back(&entries[k].poly);
            index.push_back(k);
        }
        FullReduction red = reduce_full(std::move(s), divisors, track_cofactors);
        if (red.remainder.is_zero()) continue;
        if (track_cofactors) subtract_combination(cof, red.quotients, entries, index);
        if (red.remainder.total_degree() > static_cast<int>(limits.max_degree))
            throw CapacityError("Groebner basis element exceeds the total degree cap of " +
                                std::to_string(limits.max_degree));
        if (entries.size() + 1 > limits.max_basis)
            throw CapacityError("Groebner basis exceeds the cap of " + std::to_string(limits.max_basis) +
                                " elements");
        entries.push_back(Entry{std::move(red.remainder), std::move(cof)});
        add_pairs_for(entries.size() - 1);
    }

    // Minimalize: drop elements whose leading monomial is divisible by another's.
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const Monomial& lk = entries[k].poly.leading_monomial();
        bool redundant = false;
        for (std::size_t h = 0; h < entries.size() && !redundant; ++h) {
            if (h == k) continue;
            const Monomial& lh = entries[h].poly.leading_monomial();
            if (!lh.divides(lk)) continue;
            if (lh != lk || h < k) redundant = true;
        }
        if (!redundant) keep.push_back(k);
    }
    std::sort(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) {
        return order.compare(entries[a].poly.leading_monomial(), entries[b].poly.leading_monomial()) < 0;
    });

    // Interreduce tails against the other minimal elements, then make monic.
    std::vector<const Polynomial*> divisors;
    for (std::size_t k : keep) divisors.push_back(&entries[k].poly);
    std::vector<Entry> reduced;
    for (std::size_t pos = 0; pos < keep.size(); ++pos) {
        const Entry& e = entries[keep[pos]];
        FullReduction red = reduce_full(e.poly, divisors, track_cofactors, pos);
        // The leading term is not divisible by any other leading monomial, so
        // it survives into the remainder unchanged.
        Entry out{std::move(red.remainder), e.cof};
        if (track_cofactors) subtract_combination(out.cof, red.quotients, entries, keep);
        Rational inv = 1 / out.poly.leading_coeff();
        out.poly *= inv;
        for (auto& c : out.cof) c *= inv;
        reduced.push_back(std::move(out));
    }
    for (auto& e : reduced) gb.basis_.push_back(std::move(e.poly));
    if (track_cofactors) {
        std::vector<std::vector<Polynomial>> cof;
        for (auto& e : reduced) cof.push_back(std::move(e.cof));
        gb.cofactors_ = std::move(cof);
    }
    return gb;
}

// ---------------------------------------------------------------- queries

bool GroebnerBasis::is_unit() const { return basis_.size() == 1 && basis_[0].is_constant(); }

Polynomial GroebnerBasis::prepare(const Polynomial& p) const {
    if (!p.ring()) return Polynomial::zero(ring_);
    if (!same_variables(p.ring(), ring_)) throw AmbientMismatchError("polynomial and Groebner basis live in different rings");
    return p.in_ring(ring_);
}

Reduction GroebnerBasis::reduce(const Polynomial& p) const {
    Polynomial q = prepare(p);
    std::vector<const Polynomial*> divisors;
    for (const auto& b : basis_) divisors.push_back(&b);
    FullReduction red = reduce_full(std::move(q), divisors, has_cofactors());
    Reduction out;
    out.remainder = std::move(red.remainder);
    out.witness.member = out.remainder.is_zero();
    if (has_cofactors()) {
        out.witness.combination.assign(generators_.size(), Polynomial::zero(ring_));
        for (std::size_t k = 0; k < red.quotients.size(); ++k) {
            if (red.quotients[k].is_zero()) continue;
            for (std::size_t s = 0; s < generators_.size(); ++s)
                if (!(*cofactors_)[k][s].is_zero()) out.witness.combination[s] += red.quotients[k] * (*cofactors_)[k][s];
        }
    }
    return out;
}

Polynomial GroebnerBasis::normal_form(const Polynomial& p) const {
    Polynomial q = prepare(p);
    if (basis_.empty() || q.is_zero()) return q;
    std::vector<const Polynomial*> divisors;
    for (const auto& b : basis_) divisors.push_back(&b);
    return reduce_full(std::move(q), divisors, false).remainder;
}

std::pair<Polynomial, MembershipWitness> normal_form(const Polynomial& p, const GroebnerBasis& g) {
    Reduction r = g.reduce(p);
    return {std::move(r.remainder), std::move(r.witness)};
}

bool contains_one(const Ideal& ideal, const GroebnerLimits& limits) {
    return buchberger(ideal, MonomialOrder::degrevlex(), false, limits).is_unit();
}

bool radical_membership(const Polynomial& p, const Ideal& ideal, const GroebnerLimits& limits) {
    std::vector<std::string> names = ideal.ring()->vars();
    std::string fresh = "_t";
    while (ideal.ring()->index_of(fresh)) fresh += "_";
    names.push_back(fresh);
    RingPtr extended = PolyRing::make(names);
    std::vector<std::size_t> map(ideal.ring()->size());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.generators()) gens.push_back(g.embed(extended, map));
    Polynomial t = Polynomial::variable(extended, names.size() - 1);
    Polynomial pe = p.ring() ? p.embed(extended, map) : Polynomial::zero(extended);
    gens.push_back(Polynomial::constant(extended, 1) - t * pe);
    return contains_one(Ideal(extended, std::move(gens)), limits);
}

int dimension_from_basis(const GroebnerBasis& g) {
    if (g.is_unit()) throw DomainError("empty variety: the ideal is the whole ring");
    std::size_t n = g.ring()->size();
    if (n > 24) throw CapacityError("dimension computation is capped at 24 variables");
    std::vector<std::uint32_t> supports;
    for (const auto& b : g.basis()) {
        std::uint32_t mask = 0;
        const Monomial& lm = b.leading_monomial();
        for (std::size_t i = 0; i < n; ++i)
            if (lm[i] != 0) mask |= (1u << i);
        supports.push_back(mask);
    }
    int best = 0;
    for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
        int size = __builtin_popcount(subset);
        if (size <= best) continue;
        bool independent = true;
        for (std::uint32_t s : supports)
            if ((s & ~subset) == 0) {
                independent = false;
                break;
            }
        if (independent) best = size;
    }
    return best;
}

int ideal_dimension(const Ideal& ideal, const GroebnerLimits& limits) {
    return dimension_from_basis(buchberger(ideal, MonomialOrder::degrevlex(), false, limits));
}

HeightResult ideal_height(const Ideal& ideal, const Ideal& ambient, const GroebnerLimits& limits) {
    GroebnerBasis base = buchberger(ambient, MonomialOrder::degrevlex(), false, limits);
    if (base.is_unit()) throw DomainError("height requested in the zero ring");
    int dim_ambient = dimension_from_basis(base);
    GroebnerBasis sum = buchberger(ideal + ambient, MonomialOrder::degrevlex(), false, limits);
    if (sum.is_unit()) return HeightResult{dim_ambient, true};
    return HeightResult{dim_ambient - dimension_from_basis(sum), false};
}

bool ideals_equal(const Ideal& a, const Ideal& b, const GroebnerLimits& limits) {
    GroebnerBasis ga = buchberger(a, MonomialOrder::degrevlex(), false, limits);
    GroebnerBasis gb = buchberger(b, MonomialOrder::degrevlex(), false, limits);
    if (ga.basis().size() != gb.basis().size()) return false;
    for (std::size_t k = 0; k < ga.basis().size(); ++k)
        if (ga.basis()[k] != gb.basis()[k].in_ring(ga.ring())) return false;
    return true;
}

}  // namespace poisenv
