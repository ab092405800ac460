#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "poisenv/errors.hpp"
#include "poisenv/presentation.hpp"
#include "poisenv/presentation_io.hpp"
#include "poisenv/structure.hpp"
#include "support.hpp"

#include <fstream>
#include <sstream>

using namespace poisenv;
using testsupport::Rng;

namespace {

PoissonPresentation sl2() {
    return lie_poisson({"e", "h", "f"}, {{{0, 0, 0}, {-2, 0, 0}, {0, 1, 0}},
                                         {{2, 0, 0}, {0, 0, 0}, {0, 0, -2}},
                                         {{0, -1, 0}, {0, 0, 2}, {0, 0, 0}}});
}

PoissonPresentation gwpa1(const char* a, const char* b) {
    auto h = PolyRing::make({"H"});
    return gwpa({parse_polynomial(a, h)}, {parse_polynomial(b, h)});
}

// Jacobi cyclic sum computed straight from the Leibniz expansion, without the library bracket.
Polynomial bracket_oracle(const PoissonPresentation& p, const Polynomial& f, const Polynomial& g) {
    Polynomial acc = Polynomial::zero(p.ring());
    for (std::size_t i = 0; i < p.num_vars(); ++i)
        for (std::size_t j = 0; j < p.num_vars(); ++j)
            acc += f.derivative(i) * g.derivative(j) * p.structure_constant(i, j);
    return acc;
}

// Checks that a maps onto b under the variable permutation index_map.
void check_isomorphic(const PoissonPresentation& a, const PoissonPresentation& b, const std::vector<std::size_t>& map) {
    REQUIRE(a.num_vars() == b.num_vars());
    std::vector<Polynomial> rels;
    for (const auto& f : a.relations()) rels.push_back(f.embed(b.ring(), map));
    CHECK(ideals_equal(Ideal(b.ring(), rels), b.relation_ideal()));
    for (std::size_t i = 0; i < a.num_vars(); ++i)
        for (std::size_t j = 0; j < a.num_vars(); ++j)
            CHECK(a.structure_constant(i, j).embed(b.ring(), map) == b.structure_constant(map[i], map[j]));
}

}  // namespace

TEST_CASE("bracket table is antisymmetric by construction") {
    auto ring = PolyRing::make({"x", "y", "z"});
    BracketTable t(ring);
    t.set(0, 1, parse_polynomial("z", ring));
    t.set(2, 1, parse_polynomial("x", ring));
    CHECK(t.get(0, 1).to_string() == "z");
    CHECK(t.get(1, 0).to_string() == "-z");
    CHECK(t.get(1, 2).to_string() == "-x");
    CHECK(t.get(2, 2).is_zero());
    CHECK_THROWS_AS(t.set(1, 1, parse_polynomial("x", ring)), DomainError);
}

TEST_CASE("validate examples") {
    CHECK(validate(weyl_presentation(1)).ok());
    PoissonPresentation w = weyl_presentation(1);
    CHECK(w.structure_constant(0, 1).to_string() == "-1");
    CHECK(validate(sl2()).ok());

    auto ring = PolyRing::make({"x", "y", "z"});
    BracketTable t(ring);
    t.set(0, 1, parse_polynomial("z", ring));
    t.set(0, 2, parse_polynomial("x", ring));
    PoissonPresentation bad(ring, {}, t);
    ValidationReport rep = validate(bad);
    CHECK_FALSE(rep.ok());
    REQUIRE(rep.jacobi_failures.size() == 1);
    // Oracle: the cyclic sum expanded by hand is {x,{y,z}} + {y,{z,x}} + {z,{x,y}} = 0 + {y,-x} + {z,z} = -z.
    Polynomial x = bad.var(0), y = bad.var(1), z = bad.var(2);
    Polynomial cyc = bracket_oracle(bad, x, bracket_oracle(bad, y, z)) + bracket_oracle(bad, y, bracket_oracle(bad, z, x)) +
                     bracket_oracle(bad, z, bracket_oracle(bad, x, y));
    CHECK_FALSE(cyc.is_zero());
    CHECK(rep.jacobi_failures[0].residue == cyc);
}

TEST_CASE("closure failures are reported") {
    PoissonPresentation w = weyl_presentation(1);
    PoissonPresentation q(w.ring(), {w.var(0)}, w.bracket_table());
    ValidationReport rep = validate(q);
    CHECK_FALSE(rep.ok());
    CHECK(rep.closure_failures.size() == 1);
    CHECK(rep.closure_failures[0].var == 1);
}

TEST_CASE("bracket and pad examples") {
    PoissonPresentation w = weyl_presentation(1);
    CHECK(bracket(w, w.var(1), w.var(0)).to_string() == "1");
    DerivationVector py = pad(w, w.var(1));
    CHECK(py.coeffs[0].to_string() == "1");
    CHECK(py.coeffs[1].is_zero());
    for (const auto& c : pad(w, w.parse("1")).coeffs) CHECK(c.is_zero());

    PoissonPresentation s = sl2();
    Polynomial e = s.var(0), h = s.var(1), f = s.var(2);
    CHECK(bracket(s, h, e * f).is_zero());
    CHECK(bracket(s, h, e * f) == bracket(s, h, e) * f + e * bracket(s, h, f));
    DerivationVector ph = pad(s, h);
    CHECK(ph.coeffs[0].to_string() == "2*e");
    CHECK(ph.coeffs[1].is_zero());
    CHECK(ph.coeffs[2].to_string() == "-2*f");
}

TEST_CASE("bracket identities on random triples") {
    Rng rng(7);
    for (const auto& name : testsupport::corpus_names()) {
        auto alg = testsupport::load_algebra(name);
        REQUIRE(alg->validate().ok());
        const RingPtr& ring = alg->ring();
        for (int k = 0; k < 10; ++k) {
            Polynomial f = testsupport::random_polynomial(rng, ring, 3, 3);
            Polynomial g = testsupport::random_polynomial(rng, ring, 3, 3);
            Polynomial h = testsupport::random_polynomial(rng, ring, 3, 3);
            CHECK(alg->bracket(f, f).is_zero());
            CHECK(alg->bracket(f, g) == alg->reduce(-alg->raw_bracket(g, f)));
            CHECK(alg->bracket(f, g * h) == alg->reduce(alg->raw_bracket(f, g) * h + g * alg->raw_bracket(f, h)));
            CHECK(alg->raw_bracket(f, g) == bracket_oracle(alg->presentation(), f, g));
            Polynomial jac = alg->raw_bracket(f, alg->raw_bracket(g, h)) + alg->raw_bracket(g, alg->raw_bracket(h, f)) +
                             alg->raw_bracket(h, alg->raw_bracket(f, g));
            CHECK(alg->in_ideal(jac));
        }
    }
}

TEST_CASE("gradient bracket sums vanish") {
    Rng rng(17);
    for (const auto& name : testsupport::corpus_names()) {
        auto alg = testsupport::load_algebra(name);
        for (int k = 0; k < 20; ++k) {
            Polynomial f = testsupport::random_polynomial(rng, alg->ring(), 4, 4);
            Polynomial acc = Polynomial::zero(alg->ring());
            for (std::size_t j = 0; j < alg->num_vars(); ++j) acc += alg->raw_bracket(f.derivative(j), alg->presentation().var(j));
            CHECK(alg->in_ideal(acc));
        }
    }
}

TEST_CASE("localize examples") {
    PoissonPresentation triv = trivial_presentation({"x", "y"});
    PoissonPresentation lt = localize(triv, triv.var(0));
    REQUIRE(lt.num_vars() == 3);
    for (std::size_t j = 0; j < 3; ++j) CHECK(lt.structure_constant(2, j).is_zero());
    CHECK(lt.relations()[0].to_string() == "x*u - 1");

    PoissonPresentation w = weyl_presentation(1);
    PoissonPresentation lw = localize(w, w.var(0));
    CHECK(lw.vars()[2] == "u");
    // Oracle: 0 = {x*u, y} = x*{u, y} + u*{x, y}, so {u, y} = -u^2 {x, y} = u^2.
    CHECK(lw.structure_constant(2, 1).to_string() == "u^2");
    CHECK(validate(lw).ok());
    PoissonPresentation twice = localize(lw, lw.var(1));
    CHECK(twice.num_vars() == 4);
    CHECK(twice.vars()[3] == "u2");
    CHECK(validate(twice).ok());

    PoissonPresentation g = gwpa1("H", "1");
    CHECK_THROWS_AS(localize(g, g.parse("X*Y - H")), DomainError);
}

TEST_CASE("localize keeps random validated inputs valid") {
    Rng rng(3);
    for (const auto& name : {"weyl2", "sl2", "gwpa_h1", "gwpa_h2m1", "trivial3"}) {
        PoissonPresentation p = load_presentation(testsupport::corpus_path(name));
        Polynomial s = testsupport::random_nonzero_polynomial(rng, p.ring(), 2, 2);
        PoissonAlgebra alg(p);
        if (alg.in_ideal(s)) continue;
        CHECK(validate(localize(p, s)).ok());
    }
}

TEST_CASE("tensor products") {
    PoissonPresentation w = weyl_presentation(1);
    PoissonPresentation w2 = tensor_product(w, w);
    CHECK(w2.vars() == std::vector<std::string>{"x", "y", "x_2", "y_2"});
    CHECK(w2.renamed().size() == 2);
    CHECK(validate(w2).ok());
    // x -> x1, y -> y1, x_2 -> x2, y_2 -> y2 in weyl_presentation(2) = (x1, x2, y1, y2).
    check_isomorphic(w2, weyl_presentation(2), {0, 2, 1, 3});

    PoissonPresentation point = trivial_presentation({});
    CHECK(same_presentation(tensor_product(w, point), w));
    PoissonPresentation t = tensor_product(trivial_presentation({"a"}), trivial_presentation({"b"}));
    CHECK(t.bracket_table().is_zero());
    CHECK(t.relations().empty());
}

TEST_CASE("opposite") {
    PoissonPresentation s = sl2();
    CHECK(same_presentation(opposite(opposite(s)), s));
    CHECK(opposite(weyl_presentation(1)).structure_constant(0, 1).to_string() == "1");
    CHECK(validate(opposite(s)).ok());
}

TEST_CASE("lie_poisson") {
    PoissonPresentation ab = lie_poisson({"a", "b"}, {{{0, 0}, {0, 0}}, {{0, 0}, {0, 0}}});
    CHECK(ab.bracket_table().is_zero());
    PoissonPresentation s = sl2();
    CHECK(s.structure_constant(0, 1).to_string() == "-2*e");
    CHECK(s.structure_constant(0, 2).to_string() == "h");
    CHECK(s.structure_constant(1, 2).to_string() == "-2*f");
    PoissonPresentation two = lie_poisson({"e", "h"}, {{{0, 0}, {1, 0}}, {{-1, 0}, {0, 0}}});
    CHECK(two.structure_constant(0, 1).to_string() == "e");
    CHECK(validate(two).ok());
    CHECK_THROWS_AS(lie_poisson({"a", "b"}, {{{0, 0}, {1, 0}}, {{1, 0}, {0, 0}}}), DomainError);
}

TEST_CASE("gwpa constructor") {
    PoissonPresentation g = gwpa1("H", "1");
    CHECK(g.vars() == std::vector<std::string>{"H", "X", "Y"});
    REQUIRE(g.num_relations() == 1);
    CHECK(g.relations()[0].to_string() == "X*Y - H");
    // Structure matrix in (X, Y, H) order: [[0, -b a', -b X], [b a', 0, b Y], [b X, -b Y, 0]].
    CHECK(g.structure_constant(1, 2).to_string() == "-1");
    CHECK(g.structure_constant(1, 0).to_string() == "-X");
    CHECK(g.structure_constant(2, 0).to_string() == "Y");
    CHECK(validate(g).ok());

    PoissonPresentation flat = gwpa1("H^2", "0");
    CHECK(flat.bracket_table().is_zero());

    auto h = PolyRing::make({"H"});
    PoissonPresentation rank2 =
        gwpa({parse_polynomial("H", h), parse_polynomial("H^2 - 1", h)}, {parse_polynomial("1", h), parse_polynomial("H", h)});
    PoissonPresentation tens = tensor_product(gwpa1("H", "1"), gwpa1("H^2 - 1", "H"));
    // rank2 vars (H1, H2, X1, X2, Y1, Y2); tensor vars (H, X, Y, H_2, X_2, Y_2).
    check_isomorphic(tens, rank2, {0, 2, 4, 1, 3, 5});
    CHECK(validate(rank2).ok());
}

TEST_CASE("quotients") {
    PoissonPresentation w = weyl_presentation(1);
    CHECK(same_presentation(quotient(w, {w.parse("0")}), w));
    CHECK_THROWS_AS(quotient(w, {w.var(0)}), DomainError);
    PoissonPresentation s = sl2();
    PoissonPresentation q = quotient(s, {s.parse("4*e*f + h^2 - 3")});
    CHECK(validate(q).ok());
    CHECK_FALSE(q.flags().prime_ideal);
}

TEST_CASE("structure constant ideal does not depend on the generators") {
    Rng rng(101);
    for (const auto& name : {"sl2", "gwpa_h1", "gwpa_bh", "weyl2n"}) {
        auto alg = testsupport::load_algebra(name);
        StructureAnalysis sa(alg);
        Ideal original = sa.minor_ideal(1);
        std::size_t n = alg->num_vars();
        for (int trial = 0; trial < 3; ++trial) {
            // Unipotent upper-triangular change of generators, hence invertible.
            std::vector<Polynomial> y;
            for (std::size_t k = 0; k < n; ++k) {
                Polynomial v = alg->presentation().var(k);
                for (std::size_t i = k + 1; i < n; ++i)
                    v += Polynomial::constant(alg->ring(), testsupport::uniform(rng, -2, 2)) * alg->presentation().var(i);
                y.push_back(v);
            }
            std::vector<Polynomial> gens = alg->presentation().relations();
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l) gens.push_back(alg->bracket(y[k], y[l]));
            CHECK(ideals_equal(Ideal(alg->ring(), gens), original));
        }
    }
}

TEST_CASE("json input") {
    const std::string good = R"({"vars": ["x", "y"], "relations": [], "bracket": [{"i": "y", "j": "x", "value": "1"}],
                                 "flags": {"prime_ideal": true, "cohen_macaulay": false, "serre_s_m": 2}})";
    PoissonPresentation p = presentation_from_json(good);
    CHECK(p.structure_constant(1, 0).to_string() == "1");
    CHECK(p.flags().prime_ideal);
    CHECK(p.flags().serre_s_m == 2);

    CHECK_THROWS_AS(presentation_from_json(R"({"vars": ["x"], "extra": 1})"), DomainError);
    CHECK_THROWS_AS(presentation_from_json(R"({"vars": ["x", "y"], "bracket": [{"i": "x", "j": "y", "value": "1"},
                                               {"i": "y", "j": "x", "value": "1"}]})"),
                    DomainError);
    CHECK_THROWS_AS(presentation_from_json(R"({"vars": ["x"], "relations": ["x + q"]})"), ParseError);
    CHECK_THROWS_AS(presentation_from_json(R"({"vars": ["d1", "x"]})"), DomainError);
    CHECK_THROWS_AS(presentation_from_json("{"), ParseError);
}

TEST_CASE("corpus files match the constructors and round-trip") {
    auto h = PolyRing::make({"H"});
    auto H = [&](const char* s) { return parse_polynomial(s, h); };
    PoissonPresentation w = weyl_presentation(1);
    PoissonPresentation g = gwpa({H("H")}, {H("1")});
    std::vector<std::pair<std::string, PoissonPresentation>> expected{
        {"weyl2", w},
        {"weyl2n", weyl_presentation(2)},
        {"sl2", sl2()},
        {"trivial3", trivial_presentation({"x", "y", "z"})},
        {"gwpa_h1", g},
        {"gwpa_h2", gwpa({H("H^2")}, {H("1")})},
        {"gwpa_h2m1", gwpa({H("H^2 - 1")}, {H("1")})},
        {"gwpa_bh", gwpa({H("H")}, {H("H")})},
        {"gwpa_b23", gwpa({H("H")}, {H("2/3")})},
        {"gwpa_b0", gwpa({H("H")}, {H("0")})},
        {"weyl2_localized_x", localize(w, w.var(0))},
        {"gwpa_h1_localized_x", localize(g, g.var(1))},
    };
    for (const auto& [name, p] : expected) {
        CAPTURE(name);
        PoissonPresentation loaded = load_presentation(testsupport::corpus_path(name));
        CHECK(same_presentation(loaded, p));
        CHECK(same_presentation(presentation_from_json(presentation_to_json(loaded)), loaded));
        CHECK(validate(loaded).ok());
    }
}
