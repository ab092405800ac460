#pragma once

#include "poisenv/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace poisenv {

class Ideal {
public:
    explicit Ideal(RingPtr ring, std::vector<Polynomial> generators = {});

    const RingPtr& ring() const { return ring_; }
    // Nonzero generators, converted into ring().
    const std::vector<Polynomial>& generators() const { return generators_; }
    bool is_zero() const { return generators_.empty(); }

    Ideal operator+(const Ideal& other) const;
    Ideal with(const std::vector<Polynomial>& extra) const;

private:
    RingPtr ring_;
    std::vector<Polynomial> generators_;
};

struct GroebnerLimits {
    std::size_t max_basis = 5000;
    std::uint32_t max_degree = 64;
};

struct MembershipWitness {
    bool member = false;
    // q_s with p - remainder = sum_s q_s * generators[s].
    std::vector<Polynomial> combination;
};

struct Reduction {
    Polynomial remainder;
    MembershipWitness witness;
};

class GroebnerBasis {
public:
    GroebnerBasis() = default;

    const RingPtr& ring() const { return ring_; }
    const MonomialOrder& order() const { return ring_->order(); }
    // Original generators (nonzero, in ring()).
    const std::vector<Polynomial>& generators() const { return generators_; }
    // Reduced, monic, sorted by increasing leading monomial.
    const std::vector<Polynomial>& basis() const { return basis_; }
    bool has_cofactors() const { return cofactors_.has_value(); }
    // cofactors()[k][s]: basis[k] = sum_s cofactors()[k][s] * generators[s].
    const std::vector<std::vector<Polynomial>>& cofactors() const { return *cofactors_; }

    bool is_unit() const;
    bool is_zero_ideal() const { return basis_.empty(); }

    // The witness combination is filled only when cofactors were tracked.
    Reduction reduce(const Polynomial& p) const;
    Polynomial normal_form(const Polynomial& p) const;
    bool contains(const Polynomial& p) const { return normal_form(p).is_zero(); }

private:
    friend GroebnerBasis buchberger(const Ideal&, const MonomialOrder&, bool, const GroebnerLimits&);
    Polynomial prepare(const Polynomial& p) const;

    RingPtr ring_;
    std::vector<Polynomial> generators_;
    std::vector<Polynomial> basis_;
    std::optional<std::vector<std::vector<Polynomial>>> cofactors_;
};

GroebnerBasis buchberger(const Ideal& ideal, const MonomialOrder& order, bool track_cofactors = false,
                         const GroebnerLimits& limits = {});

std::pair<Polynomial, MembershipWitness> normal_form(const Polynomial& p, const GroebnerBasis& g);

bool contains_one(const Ideal& ideal, const GroebnerLimits& limits = {});
bool radical_membership(const Polynomial& p, const Ideal& ideal, const GroebnerLimits& limits = {});
// Krull dimension of ring / ideal. Throws DomainError ("empty variety") for the unit ideal.
int ideal_dimension(const Ideal& ideal, const GroebnerLimits& limits = {});
int dimension_from_basis(const GroebnerBasis& g);

struct HeightResult {
    int height = 0;
    // The extended ideal is the whole quotient ring; height is reported as dim(quotient).
    bool unit_ideal = false;
};

// Height of the image of ideal in ring / ambient.
HeightResult ideal_height(const Ideal& ideal, const Ideal& ambient, const GroebnerLimits& limits = {});

// Same reduced basis under the given order.
bool ideals_equal(const Ideal& a, const Ideal& b, const GroebnerLimits& limits = {});

}  // namespace poisenv
