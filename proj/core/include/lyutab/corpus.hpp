#pragma once

#include <cstdint>
#include <vector>

#include "lyubeznik.hpp"
#include "monomial.hpp"

namespace lyutab {

// Deterministic pseudo-random squarefree ideals.  Draws come from a seeded
// mt19937_64 reduced by modulo, so the corpus is identical across platforms.
std::vector<MonomialIdeal> random_ideals(std::uint64_t seed, std::size_t count, int min_n,
                                         int max_n, std::size_t max_gens);

// Random ideals whose quotients are Cohen-Macaulay over F_p or have Krull
// dimension <= 2; keeps drawing until `count` distinct ones survive.
std::vector<MonomialIdeal> agreement_corpus(std::uint64_t seed, std::size_t count,
                                            std::uint64_t p, int min_n, int max_n,
                                            std::size_t max_gens);

// Every family of 1..max_len squarefree monomials with pairwise disjoint
// supports in n ambient variables, generators listed in increasing order.
std::vector<MonomialIdeal> disjoint_support_families(int n, std::size_t max_len);

// Every squarefree ideal in n ambient variables: antichains of nonempty
// supports, the zero ideal included.
std::vector<MonomialIdeal> all_squarefree_ideals(int n);

// Stanley-Reisner ideals of the complexes obtained from the given ideal's
// complex by adding up to `budget` extra facets of the same dimension; the
// starting complex itself is included.
std::vector<MonomialIdeal> around_complex(const MonomialIdeal& base, std::size_t budget);

struct SearchHit {
    MonomialIdeal ideal;
    std::vector<std::pair<int, int>> diff;
};

// compare_tables over the candidates; every hit is re-derived through the
// brute-force pipeline before being reported, and a disagreement between the
// two pipelines aborts the search.
std::vector<SearchHit> search_differing_tables(
    const std::vector<MonomialIdeal>& candidates, std::uint64_t p,
    const TableOptions& options = {});

} // namespace lyutab
