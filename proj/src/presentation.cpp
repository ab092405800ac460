#include "poisenv/presentation.hpp"

#include "poisenv/errors.hpp"

#include <algorithm>
#include <cctype>

namespace poisenv {

// ---------------------------------------------------------------- BracketTable

BracketTable::BracketTable(const RingPtr& ring)
    : ring_(ring), n_(ring->size()), entries_(n_ * n_, Polynomial::zero(ring)) {}

Polynomial BracketTable::get(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw DomainError("bracket index out of range");
    if (i == j) return Polynomial::zero(ring_);
    if (i < j) return entries_[slot(i, j)];
    return -entries_[slot(j, i)];
}

void BracketTable::set(std::size_t i, std::size_t j, const Polynomial& value) {
    if (i >= n_ || j >= n_) throw DomainError("bracket index out of range");
    Polynomial v = value.ring() ? value.in_ring(ring_) : Polynomial::zero(ring_);
    if (i == j) {
        if (!v.is_zero()) throw DomainError("diagonal bracket entry must be zero");
        return;
    }
    if (i < j) entries_[slot(i, j)] = std::move(v);
    else entries_[slot(j, i)] = -v;
}

bool BracketTable::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

// ---------------------------------------------------------------- PoissonPresentation

bool is_reserved_name(std::string_view name) {
    if (name.size() < 2 || name[0] != 'd') return false;
    return std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

PoissonPresentation::PoissonPresentation(RingPtr ring, std::vector<Polynomial> relations, BracketTable bracket,
                                         PresentationFlags flags)
    : ring_(std::move(ring)), bracket_(std::move(bracket)), flags_(flags) {
    for (const auto& name : ring_->vars()) {
        bool ok = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
        for (char c : name) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ok) throw DomainError("invalid variable name '" + name + "'");
        if (is_reserved_name(name)) throw DomainError("variable name '" + name + "' is reserved for delta symbols");
    }
    if (bracket_.size() != ring_->size()) throw DomainError("bracket table size does not match variable count");
    for (auto& r : relations) {
        if (!r.ring()) continue;
        if (!same_variables(r.ring(), ring_)) throw AmbientMismatchError("relation lives in another ring");
        Polynomial q = r.in_ring(ring_);
        if (!q.is_zero()) relations_.push_back(std::move(q));
    }
}

// ---------------------------------------------------------------- PoissonAlgebra

PoissonAlgebra::PoissonAlgebra(PoissonPresentation presentation, GroebnerLimits limits)
    : presentation_(std::move(presentation)), limits_(limits) {
    basis_ = buchberger(presentation_.relation_ideal(), presentation_.ring()->order(), false, limits_);
    std::size_t n = num_vars();
    constants_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) constants_[i * n + j] = reduce(presentation_.structure_constant(i, j));
}

bool PoissonAlgebra::bracket_trivial() const {
    return std::all_of(constants_.begin(), constants_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

Polynomial PoissonAlgebra::raw_bracket(const Polynomial& f, const Polynomial& g) const {
    std::size_t n = num_vars();
    Polynomial out = Polynomial::zero(ring());
    if (f.is_zero() || g.is_zero()) return out;
    std::vector<Polynomial> dg(n);
    for (std::size_t j = 0; j < n; ++j) dg[j] = g.derivative(j).in_ring(ring());
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial dfi = f.derivative(i).in_ring(ring());
        if (dfi.is_zero()) continue;
        Polynomial inner = Polynomial::zero(ring());
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || dg[j].is_zero()) continue;
            Polynomial c = presentation_.structure_constant(i, j);
            if (c.is_zero()) continue;
            inner += c * dg[j];
        }
        out += dfi * inner;
    }
    return out;
}

Polynomial PoissonAlgebra::bracket_with_var(std::size_t i, const Polynomial& q, bool raw) const {
    std::size_t n = num_vars();
    Polynomial out = Polynomial::zero(ring());
    for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const Polynomial& c = raw ? presentation_.structure_constant(i, j) : structure_constant(i, j);
        if (c.is_zero()) continue;
        Polynomial d = q.derivative(j);
        if (d.is_zero()) continue;
        out += c * d;
    }
    return raw ? out : reduce(out);
}

DerivationVector PoissonAlgebra::pad(const Polynomial& a) const {
    std::size_t n = num_vars();
    DerivationVector v;
    v.coeffs.assign(n, Polynomial::zero(ring()));
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial di = a.ring() ? a.derivative(i).in_ring(ring()) : Polynomial::zero(ring());
        if (di.is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) v.coeffs[j] += di * presentation_.structure_constant(i, j);
    }
    for (auto& c : v.coeffs) c = reduce(c);
    return v;
}

ValidationReport PoissonAlgebra::validate() const {
    ValidationReport report;
    std::size_t n = num_vars();
    const auto& c = [&](std::size_t i, std::size_t j) { return presentation_.structure_constant(i, j); };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Polynomial sum = bracket_with_var(i, c(j, k), true) + bracket_with_var(j, c(k, i), true) +
                                 bracket_with_var(k, c(i, j), true);
                Polynomial r = reduce(sum);
                if (!r.is_zero()) report.jacobi_failures.push_back(JacobiFailure{i, j, k, r});
            }
    const auto& rels = presentation_.relations();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t s = 0; s < rels.size(); ++s) {
            Polynomial r = bracket_with_var(i, rels[s]);
            if (!r.is_zero()) report.closure_failures.push_back(ClosureFailure{i, s, r});
        }
    return report;
}

ValidationReport validate(const PoissonPresentation& p) { return PoissonAlgebra(p).validate(); }

Polynomial bracket(const PoissonPresentation& p, const Polynomial& f, const Polynomial& g) {
    return PoissonAlgebra(p).bracket(f, g);
}

DerivationVector pad(const PoissonPresentation& p, const Polynomial& a) { return PoissonAlgebra(p).pad(a); }

// ---------------------------------------------------------------- constructors

namespace {

PresentationFlags polynomial_flags() {
    PresentationFlags f;
    f.prime_ideal = true;
    f.cohen_macaulay = true;
    return f;
}

std::vector<std::size_t> identity_map(std::size_t n, std::size_t offset = 0) {
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = i + offset;
    return m;
}

}  // namespace

PoissonPresentation trivial_presentation(const std::vector<std::string>& names) {
    RingPtr ring = PolyRing::make(names);
    return PoissonPresentation(ring, {}, BracketTable(ring), polynomial_flags());
}

PoissonPresentation weyl_presentation(std::size_t n) {
    std::vector<std::string> names;
    if (n == 1) {
        names = {"x", "y"};
    } else {
        for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
        for (std::size_t i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
    }
    RingPtr ring = PolyRing::make(names);
    BracketTable table(ring);
    for (std::size_t i = 0; i < n; ++i) table.set(n + i, i, Polynomial::constant(ring, 1));
    return PoissonPresentation(ring, {}, table, polynomial_flags());
}

PoissonPresentation localize(const PoissonPresentation& p, const Polynomial& s) {
    PoissonAlgebra alg(p);
    Polynomial s_red = alg.reduce(s);
    if (s_red.is_zero()) throw DomainError("localizing at zero: the element lies in the relation ideal");
    std::vector<std::string> names = p.vars();
    std::string fresh = "u";
    for (int k = 2; p.ring()->index_of(fresh); ++k) fresh = "u" + std::to_string(k);
    names.push_back(fresh);
    RingPtr ring = PolyRing::make(names, p.ring()->order());
    std::size_t n = p.num_vars();
    auto map = identity_map(n);
    auto lift = [&](const Polynomial& q) { return q.ring() ? q.embed(ring, map) : Polynomial::zero(ring); };

    std::vector<Polynomial> rels;
    for (const auto& f : p.relations()) rels.push_back(lift(f));
    Polynomial u = Polynomial::variable(ring, n);
    Polynomial s_lift = lift(s);
    rels.push_back(s_lift * u - Polynomial::constant(ring, 1));

    BracketTable table(ring);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) table.set(i, j, lift(p.structure_constant(i, j)));
    Polynomial u2 = u * u;
    for (std::size_t j = 0; j < n; ++j) {
        Polynomial sx = alg.bracket(s, p.var(j));
        table.set(n, j, -(u2 * lift(sx)));
    }
    return PoissonPresentation(ring, std::move(rels), table, p.flags());
}

PoissonPresentation tensor_product(const PoissonPresentation& a, const PoissonPresentation& b) {
    std::vector<std::string> names = a.vars();
    std::vector<std::pair<std::string, std::string>> renamed;
    for (const auto& name : b.vars()) {
        std::string candidate = name;
        for (int k = 2; std::find(names.begin(), names.end(), candidate) != names.end() ||
                        (candidate != name && b.ring()->index_of(candidate));
             ++k)
            candidate = name + "_" + std::to_string(k);
        if (candidate != name) renamed.emplace_back(name, candidate);
        names.push_back(candidate);
    }
    RingPtr ring = PolyRing::make(names);
    std::size_t na = a.num_vars(), nb = b.num_vars();
    auto map_a = identity_map(na);
    auto map_b = identity_map(nb, na);
    std::vector<Polynomial> rels;
    for (const auto& f : a.relations()) rels.push_back(f.embed(ring, map_a));
    for (const auto& f : b.relations()) rels.push_back(f.embed(ring, map_b));
    BracketTable table(ring);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = i + 1; j < na; ++j) table.set(i, j, a.structure_constant(i, j).embed(ring, map_a));
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = i + 1; j < nb; ++j)
            table.set(na + i, na + j, b.structure_constant(i, j).embed(ring, map_b));

    PresentationFlags flags;
    // Polynomial rings are domains and Cohen-Macaulay; beyond that we only
    // trust the flags when at most one factor carries relations.
    bool prime_a = a.flags().prime_ideal || a.num_relations() == 0;
    bool prime_b = b.flags().prime_ideal || b.num_relations() == 0;
    flags.prime_ideal = prime_a && prime_b && (a.num_relations() == 0 || b.num_relations() == 0);
    flags.cohen_macaulay = (a.flags().cohen_macaulay || a.num_relations() == 0) &&
                           (b.flags().cohen_macaulay || b.num_relations() == 0);
    PoissonPresentation out(ring, std::move(rels), table, flags);
    out.set_renamed(std::move(renamed));
    return out;
}

PoissonPresentation opposite(const PoissonPresentation& p) {
    BracketTable table(p.ring());
    std::size_t n = p.num_vars();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) table.set(i, j, -p.structure_constant(i, j));
    PoissonPresentation out(p.ring(), p.relations(), table, p.flags());
    out.set_renamed(p.renamed());
    return out;
}

PoissonPresentation lie_poisson(const std::vector<std::string>& names,
                                const std::vector<std::vector<std::vector<Rational>>>& constants) {
    std::size_t n = names.size();
    if (constants.size() != n) throw DomainError("structure constant table has the wrong shape");
    for (const auto& row : constants) {
        if (row.size() != n) throw DomainError("structure constant table has the wrong shape");
        for (const auto& v : row)
            if (v.size() != n) throw DomainError("structure constant table has the wrong shape");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (constants[i][j][k] != -constants[j][i][k])
                    throw DomainError("structure constants are not antisymmetric");
    RingPtr ring = PolyRing::make(names);
    BracketTable table(ring);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Polynomial v = Polynomial::zero(ring);
            for (std::size_t k = 0; k < n; ++k)
                if (constants[i][j][k] != 0) v += Polynomial::variable(ring, k) * constants[i][j][k];
            table.set(i, j, v);
        }
    return PoissonPresentation(ring, {}, table, polynomial_flags());
}

PoissonPresentation gwpa(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
    std::size_t k = a.size();
    if (k == 0 || b.size() != k) throw DomainError("gwpa needs equally many nonzero a_i and b_i");
    std::vector<std::string> names;
    const char* stems[] = {"H", "X", "Y"};
    for (const char* stem : stems)
        for (std::size_t i = 1; i <= k; ++i) names.push_back(k == 1 ? std::string(stem) : stem + std::to_string(i));
    RingPtr ring = PolyRing::make(names);
    auto univariate_at = [&](const Polynomial& p, std::size_t var) {
        if (p.is_zero()) return Polynomial::zero(ring);
        if (p.num_vars() != 1) throw DomainError("gwpa coefficients must be univariate");
        return p.substitute({Polynomial::variable(ring, var)});
    };
    std::vector<Polynomial> rels;
    BracketTable table(ring);
    for (std::size_t i = 0; i < k; ++i) {
        if (a[i].is_zero()) throw DomainError("gwpa requires a_i != 0");
        std::size_t h = i, x = k + i, y = 2 * k + i;
        Polynomial ai = univariate_at(a[i], h);
        Polynomial bi = univariate_at(b[i], h);
        Polynomial X = Polynomial::variable(ring, x), Y = Polynomial::variable(ring, y);
        rels.push_back(X * Y - ai);
        table.set(y, h, bi * Y);
        table.set(x, h, -(bi * X));
        table.set(y, x, bi * ai.derivative(h));
    }
    // X*Y - a(H) is linear in X with coprime coefficients, hence absolutely
    // irreducible; a hypersurface ring is Cohen-Macaulay.
    PresentationFlags flags;
    flags.prime_ideal = true;
    flags.cohen_macaulay = true;
    return PoissonPresentation(ring, std::move(rels), table, flags);
}

PoissonPresentation quotient(const PoissonPresentation& p, const std::vector<Polynomial>& extra) {
    std::vector<Polynomial> rels = p.relations();
    bool grew = false;
    for (const auto& e : extra) {
        if (e.is_zero()) continue;
        rels.push_back(e.in_ring(p.ring()));
        grew = true;
    }
    if (!grew) return p;
    PoissonPresentation q(p.ring(), rels, p.bracket_table(), PresentationFlags{});
    PoissonAlgebra alg(q);
    for (std::size_t i = 0; i < q.num_vars(); ++i)
        for (std::size_t s = 0; s < q.num_relations(); ++s) {
            Polynomial r = alg.bracket_with_var(i, q.relations()[s]);
            if (!r.is_zero())
                throw DomainError("not a Poisson ideal: {" + q.vars()[i] + ", " + q.relations()[s].to_string() +
                                  "} = " + r.to_string() + " is not in the ideal");
        }
    return q;
}

bool same_presentation(const PoissonPresentation& a, const PoissonPresentation& b) {
    if (a.vars() != b.vars() || a.num_relations() != b.num_relations()) return false;
    for (std::size_t s = 0; s < a.num_relations(); ++s)
        if (a.relations()[s] != b.relations()[s].in_ring(a.ring())) return false;
    for (std::size_t i = 0; i < a.num_vars(); ++i)
        for (std::size_t j = i + 1; j < a.num_vars(); ++j)
            if (a.structure_constant(i, j) != b.structure_constant(i, j).in_ring(a.ring())) return false;
    return true;
}

}  // namespace poisenv
