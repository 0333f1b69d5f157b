#include "lyutab/corpus.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>

#include "lyutab/errors.hpp"

namespace lyutab {

namespace {

struct Draw {
    std::mt19937_64 rng;

    explicit Draw(std::uint64_t seed) : rng(seed) {}
    // Modulo instead of uniform_int_distribution: the distribution's mapping
    // is implementation-defined, and corpus reproducibility matters more
    // than the negligible bias.
    std::uint64_t below(std::uint64_t bound) { return rng() % bound; }
};

MonomialIdeal draw_ideal(Draw& draw, int min_n, int max_n, std::size_t max_gens) {
    const int n = min_n + static_cast<int>(draw.below(max_n - min_n + 1));
    const std::uint32_t full = (1u << n) - 1;
    MonomialIdeal ideal;
    ideal.n = n;
    const std::size_t count = 1 + draw.below(max_gens);
    for (std::size_t g = 0; g < count; ++g)
        ideal.gens.push_back(1u + static_cast<std::uint32_t>(draw.below(full)));
    return minimalize(std::move(ideal));
}

} // namespace

std::vector<MonomialIdeal> random_ideals(std::uint64_t seed, std::size_t count, int min_n,
                                         int max_n, std::size_t max_gens) {
    if (min_n < 1 || max_n < min_n || max_n > 20 || max_gens < 1)
        throw Error("random_ideals: bad bounds");
    Draw draw(seed);
    std::vector<MonomialIdeal> out;
    std::set<std::pair<int, std::vector<std::uint32_t>>> seen;
    while (out.size() < count) {
        MonomialIdeal ideal = draw_ideal(draw, min_n, max_n, max_gens);
        if (seen.insert({ideal.n, ideal.gens}).second) out.push_back(std::move(ideal));
    }
    return out;
}

std::vector<MonomialIdeal> agreement_corpus(std::uint64_t seed, std::size_t count,
                                            std::uint64_t p, int min_n, int max_n,
                                            std::size_t max_gens) {
    Draw draw(seed);
    const CoefficientRing field = CoefficientRing::prime_field(p);
    std::vector<MonomialIdeal> out;
    std::set<std::pair<int, std::vector<std::uint32_t>>> seen;
    std::size_t attempts = 0;
    while (out.size() < count) {
        if (++attempts > 400 * count)
            throw PipelineError("agreement corpus generation is not converging");
        MonomialIdeal ideal = draw_ideal(draw, min_n, max_n, max_gens);
        if (!seen.insert({ideal.n, ideal.gens}).second) continue;
        const int dim = stanley_reisner_complex(ideal).dim() + 1;
        if (dim <= 2 || is_cohen_macaulay(ideal, field)) out.push_back(std::move(ideal));
    }
    return out;
}

std::vector<MonomialIdeal> disjoint_support_families(int n, std::size_t max_len) {
    if (n < 1 || n > 20) throw Error("disjoint_support_families: bad n");
    std::vector<MonomialIdeal> out;
    std::vector<std::uint32_t> current;
    const std::uint32_t full = (1u << n) - 1;
    auto extend = [&](auto&& self, std::uint32_t from, std::uint32_t used) -> void {
        if (!current.empty()) {
            MonomialIdeal ideal;
            ideal.n = n;
            ideal.gens = current;
            out.push_back(std::move(ideal));
        }
        if (current.size() == max_len) return;
        for (std::uint32_t g = from; g <= full; ++g) {
            if (g & used) continue;
            current.push_back(g);
            self(self, g + 1, used | g);
            current.pop_back();
        }
    };
    extend(extend, 1, 0);
    return out;
}

std::vector<MonomialIdeal> all_squarefree_ideals(int n) {
    if (n < 1 || n > 5) throw ResourceLimitError("exhaustive ideal listing needs n <= 5");
    std::vector<MonomialIdeal> out;
    std::vector<std::uint32_t> current;
    const std::uint32_t full = (1u << n) - 1;
    auto extend = [&](auto&& self, std::uint32_t from) -> void {
        MonomialIdeal ideal;
        ideal.n = n;
        ideal.gens = current;
        out.push_back(std::move(ideal));
        for (std::uint32_t g = from; g <= full; ++g) {
            bool comparable = false;
            for (std::uint32_t h : current)
                if ((h & ~g) == 0 || (g & ~h) == 0) {
                    comparable = true;
                    break;
                }
            if (comparable) continue;
            current.push_back(g);
            self(self, g + 1);
            current.pop_back();
        }
    };
    extend(extend, 1);
    return out;
}

std::vector<MonomialIdeal> around_complex(const MonomialIdeal& base, std::size_t budget) {
    SimplicialComplex delta = stanley_reisner_complex(base);
    const int dim = delta.dim();
    if (dim < 0) throw Error("around_complex: the base complex has no facets to match");
    std::vector<std::uint32_t> extras;
    const std::uint32_t full = (1u << base.n) - 1;
    for (std::uint32_t f = 0; f <= full; ++f)
        if (std::popcount(f) == dim + 1 && !delta.contains(f)) extras.push_back(f);

    std::size_t total = 1, binom = 1;
    for (std::size_t k = 1; k <= budget && k <= extras.size(); ++k) {
        binom = binom * (extras.size() - k + 1) / k;
        total += binom;
        if (total > 4096)
            throw ResourceLimitError("around_complex: more than 4096 candidate complexes");
    }

    std::vector<MonomialIdeal> out;
    std::vector<std::uint32_t> chosen;
    auto emit = [&] {
        std::vector<std::uint32_t> facets = delta.facets;
        facets.insert(facets.end(), chosen.begin(), chosen.end());
        out.push_back(stanley_reisner_ideal(make_complex(base.n, facets)));
    };
    auto pick = [&](auto&& self, std::size_t from) -> void {
        emit();
        if (chosen.size() == budget) return;
        for (std::size_t i = from; i < extras.size(); ++i) {
            chosen.push_back(extras[i]);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    pick(pick, 0);
    return out;
}

std::vector<SearchHit> search_differing_tables(
    const std::vector<MonomialIdeal>& candidates, std::uint64_t p,
    const TableOptions& options) {
    std::vector<SearchHit> hits;
    for (const MonomialIdeal& ideal : candidates) {
        TableComparison fast = compare_tables(ideal, p, options);
        if (fast.equal) continue;
        TableOptions slow_options = options;
        slow_options.use_fast_path = !options.use_fast_path;
        TableComparison slow = compare_tables(ideal, p, slow_options);
        if (slow.diff != fast.diff)
            throw PipelineError("search: the two pipelines disagree on a candidate");
        hits.push_back({ideal, fast.diff});
    }
    return hits;
}

} // namespace lyutab
