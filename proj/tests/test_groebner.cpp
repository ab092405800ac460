#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "poisenv/errors.hpp"
#include "poisenv/groebner.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace poisenv;
using testsupport::Rng;

namespace {

Polynomial spoly(const Polynomial& f, const Polynomial& g) {
    Monomial l = f.leading_monomial().lcm(g.leading_monomial());
    return f.mul_term(1 / f.leading_coeff(), l / f.leading_monomial()) -
           g.mul_term(1 / g.leading_coeff(), l / g.leading_monomial());
}

// Remainder by plain multivariate division, independent of GroebnerBasis::reduce.
Polynomial divide(Polynomial p, const std::vector<Polynomial>& basis) {
    Polynomial rem = Polynomial::zero(p.ring());
    while (!p.is_zero()) {
        bool divided = false;
        for (const auto& g : basis) {
            if (g.leading_monomial().divides(p.leading_monomial())) {
                Rational c = p.leading_coeff() / g.leading_coeff();
                p -= g.mul_term(c, p.leading_monomial() / g.leading_monomial());
                divided = true;
                break;
            }
        }
        if (!divided) rem += Polynomial::monomial(p.ring(), p.leading_monomial(), p.leading_coeff()), p.pop_leading();
    }
    return rem;
}

void check_basis_properties(const GroebnerBasis& g) {
    const auto& b = g.basis();
    for (std::size_t i = 0; i < b.size(); ++i) {
        CHECK(b[i].leading_coeff() == 1);
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (i == j) continue;
            for (const auto& t : b[j].terms()) CHECK_FALSE(b[i].leading_monomial().divides(t.monomial));
            if (j > i) CHECK(divide(spoly(b[i], b[j]), b).is_zero());
        }
    }
    if (g.has_cofactors()) {
        for (std::size_t k = 0; k < b.size(); ++k) {
            Polynomial acc = Polynomial::zero(g.ring());
            for (std::size_t s = 0; s < g.generators().size(); ++s) acc += g.cofactors()[k][s] * g.generators()[s];
            CHECK(acc == b[k]);
        }
    }
}

}  // namespace

TEST_CASE("buchberger examples") {
    auto ring = PolyRing::make({"x", "y"});
    auto P = [&](const char* s) { return parse_polynomial(s, ring); };
    GroebnerBasis g = buchberger(Ideal(ring, {P("x")}), MonomialOrder::lex());
    REQUIRE(g.basis().size() == 1);
    CHECK(g.basis()[0].to_string() == "x");

    GroebnerBasis unit = buchberger(Ideal(ring, {P("x*y - 1"), P("x")}), MonomialOrder::degrevlex());
    CHECK(unit.is_unit());
    REQUIRE(unit.basis().size() == 1);
    CHECK(unit.basis()[0].to_string() == "1");

    auto h = PolyRing::make({"H"});
    GroebnerBasis coprime = buchberger(Ideal(h, {parse_polynomial("H^2 - 1", h), parse_polynomial("2*H", h)}),
                                       MonomialOrder::degrevlex());
    CHECK(coprime.is_unit());

    GroebnerBasis zero = buchberger(Ideal(ring, {P("0")}), MonomialOrder::degrevlex());
    CHECK(zero.is_zero_ideal());
}

TEST_CASE("normal form examples with witnesses") {
    auto ring = PolyRing::make({"x", "y"});
    auto P = [&](const char* s) { return parse_polynomial(s, ring); };
    GroebnerBasis g = buchberger(Ideal(ring, {P("x")}), MonomialOrder::degrevlex(), true);
    auto [rem, wit] = normal_form(P("x^2"), g);
    CHECK(rem.is_zero());
    CHECK(wit.member);
    REQUIRE(wit.combination.size() == 1);
    CHECK(wit.combination[0] == P("x"));
    auto [rem2, wit2] = normal_form(P("y"), g);
    CHECK(rem2 == P("y"));
    CHECK_FALSE(wit2.member);

    // XY leads under degrevlex when H is the last variable.
    auto gw = PolyRing::make({"X", "Y", "H"});
    Polynomial f = parse_polynomial("X*Y - (H^2 - 1)", gw);
    GroebnerBasis gg = buchberger(Ideal(gw, {f}), MonomialOrder::degrevlex(), true);
    Polynomial p = parse_polynomial("X*Y", gw);
    auto [r3, w3] = normal_form(p, gg);
    CHECK(r3 == parse_polynomial("H^2 - 1", gw));
    CHECK(p - r3 == w3.combination[0] * f);
}

TEST_CASE("contains_one examples") {
    auto ring = PolyRing::make({"x", "y"});
    auto P = [&](const char* s) { return parse_polynomial(s, ring); };
    CHECK(contains_one(Ideal(ring, {P("x"), P("x - 1")})));
    CHECK_FALSE(contains_one(Ideal(ring, {P("x^2")})));
    auto h = PolyRing::make({"H"});
    CHECK(contains_one(Ideal(h, {parse_polynomial("H^2 - 1", h), parse_polynomial("2*H", h)})));
    CHECK_FALSE(contains_one(Ideal(h, {parse_polynomial("H^2", h), parse_polynomial("2*H", h)})));
}

TEST_CASE("radical membership examples") {
    auto ring = PolyRing::make({"x", "y"});
    auto P = [&](const char* s) { return parse_polynomial(s, ring); };
    CHECK(radical_membership(P("x"), Ideal(ring, {P("x^2")})));
    CHECK_FALSE(radical_membership(P("y"), Ideal(ring, {P("x^2")})));
    auto h = PolyRing::make({"H"});
    CHECK(radical_membership(parse_polynomial("H", h), Ideal(h, {parse_polynomial("H^3", h)})));
    CHECK(radical_membership(P("x + y"), Ideal(ring, {P("x^3"), P("y^2")})));
    CHECK_FALSE(radical_membership(P("x + 1"), Ideal(ring, {P("x^3"), P("y^2")})));
}

TEST_CASE("radical membership agrees with powers found by brute force") {
    Rng rng(19);
    auto ring = PolyRing::make({"x", "y"});
    int hits = 0;
    for (int k = 0; k < 40; ++k) {
        Polynomial base = testsupport::random_nonzero_polynomial(rng, ring, 1, 2);
        Polynomial other = testsupport::random_nonzero_polynomial(rng, ring, 2, 2);
        Ideal ideal(ring, {base.pow(static_cast<unsigned>(testsupport::uniform(rng, 2, 3))) * other});
        Polynomial p = base * testsupport::random_nonzero_polynomial(rng, ring, 1, 2);
        GroebnerBasis g = buchberger(ideal, MonomialOrder::degrevlex());
        bool some_power = false;
        for (unsigned e = 1; e <= 4 && !some_power; ++e) some_power = g.contains(p.pow(e));
        if (some_power) {
            ++hits;
            CHECK(radical_membership(p, ideal));
        }
    }
    CHECK(hits > 0);
}

TEST_CASE("dimension examples") {
    auto ring = PolyRing::make({"x", "y"});
    CHECK(ideal_dimension(Ideal(ring)) == 2);
    CHECK(ideal_dimension(Ideal(ring, {parse_polynomial("x", ring)})) == 1);
    CHECK_THROWS_AS(ideal_dimension(Ideal(ring, {parse_polynomial("1", ring)})), DomainError);
    auto gw = PolyRing::make({"H", "X", "Y"});
    CHECK(ideal_dimension(Ideal(gw, {parse_polynomial("X*Y - H^2 + 1", gw)})) == 2);
    CHECK(ideal_dimension(Ideal(gw, {parse_polynomial("X", gw), parse_polynomial("Y", gw), parse_polynomial("H", gw)})) == 0);
}

TEST_CASE("height examples") {
    auto ring = PolyRing::make({"x", "y"});
    auto P = [&](const char* s) { return parse_polynomial(s, ring); };
    CHECK(ideal_height(Ideal(ring, {P("x")}), Ideal(ring)).height == 1);
    CHECK(ideal_height(Ideal(ring, {P("x"), P("y")}), Ideal(ring)).height == 2);
    auto gw = PolyRing::make({"H", "X", "Y"});
    auto G = [&](const char* s) { return parse_polynomial(s, gw); };
    HeightResult h = ideal_height(Ideal(gw, {G("X"), G("Y"), G("2*H")}), Ideal(gw, {G("X*Y - H^2")}));
    CHECK(h.height == 2);
    CHECK_FALSE(h.unit_ideal);
    // Oracle: dim(A) - dim(A / I) from ideal_dimension.
    CHECK(h.height == ideal_dimension(Ideal(gw, {G("X*Y - H^2")})) -
                          ideal_dimension(Ideal(gw, {G("X*Y - H^2"), G("X"), G("Y"), G("2*H")})));
    CHECK(ideal_height(Ideal(gw, {G("1")}), Ideal(gw, {G("X*Y - H^2")})).unit_ideal);
}

TEST_CASE("random bases satisfy the Buchberger criterion and cofactor identities") {
    Rng rng(1234);
    for (const MonomialOrder& order : {MonomialOrder::lex(), MonomialOrder::degrevlex(), MonomialOrder::block(1)}) {
        auto ring = PolyRing::make({"x", "y", "z"});
        for (int k = 0; k < 25; ++k) {
            std::vector<Polynomial> gens;
            int count = static_cast<int>(testsupport::uniform(rng, 1, 3));
            for (int s = 0; s < count; ++s) gens.push_back(testsupport::random_nonzero_polynomial(rng, ring, 2, 3));
            GroebnerBasis g = buchberger(Ideal(ring, gens), order, true);
            check_basis_properties(g);
            // Every generator reduces to zero, with an exact witness.
            for (const auto& f : gens) {
                Reduction red = g.reduce(f);
                CHECK(red.remainder.is_zero());
                Polynomial acc = Polynomial::zero(g.ring());
                for (std::size_t s = 0; s < g.generators().size(); ++s)
                    acc += red.witness.combination[s] * g.generators()[s];
                CHECK(acc == f.in_ring(g.ring()));
            }
            // contains_one does not depend on the order.
            bool unit = g.is_unit();
            CHECK(unit == buchberger(Ideal(ring, gens), MonomialOrder::lex()).is_unit());
            CHECK(unit == buchberger(Ideal(ring, gens), MonomialOrder::degrevlex()).is_unit());
        }
    }
}

TEST_CASE("witness identity re-expands on random members and non-members") {
    Rng rng(99);
    auto ring = PolyRing::make({"x", "y", "z"});
    for (int k = 0; k < 40; ++k) {
        std::vector<Polynomial> gens{testsupport::random_nonzero_polynomial(rng, ring, 2, 3),
                                     testsupport::random_nonzero_polynomial(rng, ring, 2, 3)};
        GroebnerBasis g = buchberger(Ideal(ring, gens), MonomialOrder::degrevlex(), true);
        Polynomial p = testsupport::random_polynomial(rng, ring, 3, 4);
        if (k % 2 == 0) p = p * gens[0] + testsupport::random_polynomial(rng, ring, 1, 2) * gens[1];
        Reduction red = g.reduce(p);
        Polynomial acc = red.remainder;
        for (std::size_t s = 0; s < g.generators().size(); ++s) acc += red.witness.combination[s] * g.generators()[s];
        CHECK(acc == p);
        CHECK(red.witness.member == red.remainder.is_zero());
        if (k % 2 == 0) CHECK(red.remainder.is_zero());
    }
}

TEST_CASE("membership agrees with brute-force cofactor search") {
    Rng rng(555);
    auto ring = PolyRing::make({"x", "y", "z"});
    int members = 0, others = 0;
    for (int k = 0; k < 30; ++k) {
        std::vector<Polynomial> gens;
        int count = static_cast<int>(testsupport::uniform(rng, 1, 3));
        for (int s = 0; s < count; ++s) gens.push_back(testsupport::random_nonzero_polynomial(rng, ring, 2, 2));
        Polynomial p = testsupport::random_polynomial(rng, ring, 2, 3);
        if (k % 2 == 0)
            for (const auto& g : gens) p += testsupport::random_polynomial(rng, ring, 1, 2) * g;
        GroebnerBasis g = buchberger(Ideal(ring, gens), MonomialOrder::degrevlex(), true);
        Reduction red = g.reduce(p);
        if (red.remainder.is_zero()) {
            ++members;
            int bound = p.total_degree();
            for (std::size_t s = 0; s < gens.size(); ++s)
                if (!red.witness.combination[s].is_zero())
                    bound = std::max(bound, red.witness.combination[s].total_degree() + gens[s].total_degree());
            CHECK(testsupport::brute_force_member(p, gens, static_cast<unsigned>(bound)));
        } else {
            ++others;
            CHECK_FALSE(testsupport::brute_force_member(p, gens, static_cast<unsigned>(std::max(p.total_degree(), 2) + 2)));
        }
    }
    CHECK(members > 0);
    CHECK(others > 0);
}

TEST_CASE("capacity limits abort") {
    auto ring = PolyRing::make({"x", "y", "z"});
    auto P = [&](const char* s) { return parse_polynomial(s, ring); };
    GroebnerLimits tight;
    tight.max_degree = 3;
    CHECK_THROWS_AS(buchberger(Ideal(ring, {P("x^3*y - z^4"), P("x*y^3 - z^2")}), MonomialOrder::lex(), false, tight),
                    CapacityError);
    GroebnerLimits small;
    small.max_basis = 1;
    CHECK_THROWS_AS(buchberger(Ideal(ring, {P("x^2 - y"), P("x*y - z")}), MonomialOrder::lex(), false, small),
                    CapacityError);
}

TEST_CASE("ideal equality") {
    auto ring = PolyRing::make({"x", "y"});
    auto P = [&](const char* s) { return parse_polynomial(s, ring); };
    CHECK(ideals_equal(Ideal(ring, {P("x + y"), P("x - y")}), Ideal(ring, {P("x"), P("y")})));
    CHECK_FALSE(ideals_equal(Ideal(ring, {P("x^2")}), Ideal(ring, {P("x")})));
}
