#pragma once

// Seeded random generators and corpus helpers shared by the test binaries.

#include "poisenv/pea.hpp"
#include "poisenv/presentation_io.hpp"

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using namespace poisenv;

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational small_rational(Rng& rng, long bound = 5) {
    long num = 0;
    while (num == 0) num = uniform(rng, -bound, bound);
    Rational q(num, uniform(rng, 1, 3));
    q.canonicalize();
    return q;
}

inline Monomial random_monomial(Rng& rng, std::size_t nvars, unsigned max_degree) {
    std::vector<std::uint32_t> e(nvars, 0);
    unsigned deg = static_cast<unsigned>(uniform(rng, 0, max_degree));
    for (unsigned k = 0; k < deg && nvars > 0; ++k) e[uniform(rng, 0, static_cast<long>(nvars) - 1)] += 1;
    return Monomial(std::move(e));
}

inline Polynomial random_polynomial(Rng& rng, const RingPtr& ring, unsigned max_degree, unsigned max_terms) {
    std::vector<Term> terms;
    unsigned count = static_cast<unsigned>(uniform(rng, 0, max_terms));
    for (unsigned k = 0; k < count; ++k) terms.push_back(Term{random_monomial(rng, ring->size(), max_degree), small_rational(rng)});
    return Polynomial::from_terms(ring, std::move(terms));
}

inline Polynomial random_nonzero_polynomial(Rng& rng, const RingPtr& ring, unsigned max_degree, unsigned max_terms) {
    Polynomial p = random_polynomial(rng, ring, max_degree, max_terms);
    while (p.is_zero()) p = random_polynomial(rng, ring, max_degree, max_terms);
    return p;
}

// Random element with δ-degree at most max_delta and coefficient degree at most max_coeff.
inline PEAElement random_pea(Rng& rng, const EnvelopingAlgebra& u, unsigned max_delta, unsigned max_coeff,
                             unsigned max_terms = 3) {
    PEAElement out(u.ring());
    unsigned count = static_cast<unsigned>(uniform(rng, 1, max_terms));
    for (unsigned k = 0; k < count; ++k) {
        Monomial m = random_monomial(rng, u.num_vars(), max_delta);
        Polynomial c = u.algebra().reduce(random_polynomial(rng, u.ring(), max_coeff, 2));
        out.add_term(m.exponents(), c);
    }
    return out;
}

inline std::string corpus_path(const std::string& name) { return std::string(POISENV_CORPUS_DIR) + "/" + name + ".json"; }

inline std::shared_ptr<const PoissonAlgebra> load_algebra(const std::string& name) {
    return std::make_shared<const PoissonAlgebra>(load_presentation(corpus_path(name)));
}

inline const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names{"weyl2",   "weyl2n",   "sl2",       "trivial3",          "gwpa_h1",
                                                "gwpa_h2", "gwpa_h2m1", "gwpa_bh",  "gwpa_b23",          "gwpa_b0",
                                                "weyl2_localized_x",    "gwpa_h1_localized_x"};
    return names;
}

}  // namespace testsupport
