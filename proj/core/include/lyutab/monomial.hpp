#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coefficient_ring.hpp"
#include "simplicial.hpp"

namespace lyutab {

// Squarefree monomial ideal in variables x1..xn, generators stored as
// support bitmasks (bit i-1 = variable xi), minimalized and sorted.
struct MonomialIdeal {
    int n = 0;
    std::vector<std::uint32_t> gens;

    std::size_t num_gens() const { return gens.size(); }
    bool operator==(const MonomialIdeal& o) const { return n == o.n && gens == o.gens; }
};

// Drops generators divisible by another generator and deduplicates.
MonomialIdeal minimalize(MonomialIdeal ideal);

// Builds an ideal from 1-based variable index lists; rejects repeated
// indices (not squarefree), empty generators (units) and bad indices.
MonomialIdeal ideal_from_supports(int n, const std::vector<std::vector<int>>& supports);

// Parses a monomial like "x1*x2*x3", "x1 x2" or "x2x11".  Exponents are
// rejected (NotSquareFreeError for ^k with k > 1).
std::uint32_t parse_monomial(const std::string& text, int n);
std::string monomial_to_string(std::uint32_t support);

// The presentation data of the quotient ring under study: either
// F_p[[x1..xn]] / J (equal characteristic) or V[[x1..xn]] / I over a p-adic
// coefficient ring V, where I = J extended, optionally together with p.
struct RingSpec {
    enum class Mode { EqualChar, Mixed };
    Mode mode = Mode::EqualChar;
    std::uint64_t p = 2;
    MonomialIdeal ideal;
    bool include_p = false; // mixed only: whether p is one of the generators

    int n() const { return ideal.n; }
};

void validate(const RingSpec& spec);

// Faces = supports avoiding every generator.
SimplicialComplex stanley_reisner_complex(const MonomialIdeal& ideal);
// Inverse direction: the ideal of minimal nonfaces.  The void complex has no
// squarefree ideal (its ideal is the unit ideal) and is rejected.
MonomialIdeal stanley_reisner_ideal(const SimplicialComplex& complex);
// Complex generated by the complements of the generator supports; for a
// minimal generating set this is the Alexander dual of the above.
SimplicialComplex dual_generated_complex(const MonomialIdeal& ideal);

// Krull dimension of the quotient the spec presents.
int krull_dimension(const RingSpec& spec);

// Reisner's criterion over the given coefficient field.
bool is_cohen_macaulay(const MonomialIdeal& ideal, const CoefficientRing& field);

// Squarefree monomials form a regular sequence iff their supports are
// pairwise disjoint.
bool is_monomial_regular_sequence(const MonomialIdeal& ideal);

} // namespace lyutab
