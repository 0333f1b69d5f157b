#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cech.hpp"
#include "coefficient_ring.hpp"
#include "monomial.hpp"
#include "subquotient.hpp"

namespace lyutab {

// One multigraded strand of the Koszul cochain complex on (p,) x1..xn
// against a graded module: position t is the direct sum of the window pieces
// at base + chi(G & x-directions) over the t-subsets G of the directions.
// When with_p is set, direction 0 is p (it does not shift the degree) and
// direction k >= 1 is x_k; otherwise direction k is x_{k+1}.
struct KoszulStrand {
    CoefficientRing ring;
    bool with_p = false;
    std::vector<int> base;
    std::vector<std::vector<mpz_class>> rels; // generator orders per position
    std::vector<IntMatrix> diffs;             // position t -> t+1

    // Per position, the block layout: subsets in increasing numeric order.
    struct Block {
        std::uint32_t subset = 0;
        std::size_t cell = 0;   // window cell of the block's degree
        std::size_t offset = 0; // first generator row of this block
        std::size_t gens = 0;
    };
    std::vector<std::vector<Block>> blocks;

    std::size_t directions() const { return base.size() + (with_p ? 1 : 0); }
};

// Assembles the strand at the given base degree; every degree base + chi(G)
// must lie inside M's window.  with_p requires the pmaps of M.
KoszulStrand koszul_strand(const GradedLocalCohomology& m, const std::vector<int>& base,
                           bool with_p);

std::vector<CanonicalModule> koszul_strand_cohomology(const KoszulStrand& strand);

// Bass number dim_K Ext^i(K, M) read off the strand at the socle base degree
// (-1, ..., -1).  Works over PrimeField (sequence x only), PAdicIntegers and
// CyclicRing (sequence p, x).  The class must be a K-vector space; anything
// else fails loudly.
std::uint64_t bass_number_koszul(const GradedLocalCohomology& m, int i);
std::vector<std::uint64_t> bass_numbers_koszul(const GradedLocalCohomology& m);

// Transition E^i(level) -> E^i(level+1) between the Koszul cohomologies of
// consecutive tower levels, as a matrix between F_p coordinate spaces.
struct ExtTransition {
    ModuleClass source, target;
    IntMatrix matrix;

    std::size_t rank() const;
};
ExtTransition tower_ext_transition(const TowerResult& tower, std::uint32_t level, int i);

// Bass number of the colimit: the stabilized transition rank at the
// certified level.  With verify_stability, also recomputes the rank one
// level further up (the tower must carry that level) and cross-checks.
std::uint64_t bass_number_koszul(const TowerResult& tower, int i,
                                 bool verify_stability = false);
std::vector<std::uint64_t> bass_numbers_koszul(const TowerResult& tower,
                                               bool verify_stability = false);

// Checks that every Koszul strand with base != (-1,...,-1) and |base[k]+1| <= radius
// differing from the socle base in at most max_moved coordinates is acyclic,
// i.e. that the single strand the tables use carries all of Ext.
bool koszul_concentrated_at_socle(GradedPieceSource& source, int index,
                                  const CoefficientRing& ring, bool with_p, int radius,
                                  int max_moved, std::string* witness = nullptr);

struct TableProvenance {
    std::string pipeline; // "simplicial" or "cech"
    std::uint64_t p = 0;
    bool include_p = false;
    Window window;
    std::uint32_t certified_level = 0; // towers only
    std::uint32_t levels_used = 0;     // towers only

    bool operator==(const TableProvenance& o) const = default;
};

// The (d+1) x (d+1) table of Bass numbers: entry (i, j) is
// dim_K Ext^i(K, H^{dim S - j}(S)) for the ambient regular ring S of the
// requested mode.  Rows are i, columns are j.
struct LyubeznikTable {
    RingSpec::Mode mode = RingSpec::Mode::EqualChar;
    int d = 0;
    std::vector<std::vector<std::uint64_t>> entries;
    TableProvenance provenance;

    std::uint64_t at(int i, int j) const { return entries.at(i).at(j); }
    bool same_numbers(const LyubeznikTable& o) const {
        return mode == o.mode && d == o.d && entries == o.entries;
    }
    bool operator==(const LyubeznikTable& o) const {
        return same_numbers(o) && provenance == o.provenance;
    }
};

struct TableOptions {
    bool use_fast_path = true; // false: brute-force strand source
    unsigned jobs = 1;
    std::optional<Window> window;            // default {-1,0}^n
    std::optional<std::uint32_t> max_level;  // cap on tower levels
    std::uint32_t extra_levels = 0;          // extra levels for stability checks
    bool check_socle_concentration = false;  // extra acyclicity sweep
};

LyubeznikTable equal_char_table(const MonomialIdeal& ideal, std::uint64_t p,
                                const TableOptions& options = {});
LyubeznikTable mixed_table(const MonomialIdeal& ideal, std::uint64_t p, bool include_p,
                           const TableOptions& options = {});
LyubeznikTable table_for(const RingSpec& spec, const TableOptions& options = {});

// Structural properties of a finished table (vanishing ranges and the
// nonvanishing corner), reported with witnesses instead of thrown.
struct PropertyReport {
    struct Item {
        std::string name;
        bool pass = false;
        std::string witness;
    };
    std::vector<Item> items;

    bool all_pass() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
};
PropertyReport verify_table_properties(const LyubeznikTable& table);

// Both invariants of the same quotient ring, compared entrywise.
struct TableComparison {
    LyubeznikTable equal_char;
    LyubeznikTable mixed;
    bool equal = false;
    std::vector<std::pair<int, int>> diff; // (i, j) positions that differ
};
TableComparison compare_tables(const MonomialIdeal& ideal, std::uint64_t p,
                               const TableOptions& options = {});

// Adjoining one power-series variable (and adding it to the ideal) must not
// change the table; checks it for the given spec.
struct InvarianceReport {
    bool pass = false;
    LyubeznikTable original, enlarged;
};
InvarianceReport invariance_add_variable(const RingSpec& spec,
                                         const TableOptions& options = {});

// Ranks of the connecting map H^index(-;F_p) -> H^{index+1}(-;F_p) on the
// graded strands, one entry per window cell.
struct BocksteinReport {
    int index = 0;
    std::uint64_t p = 0;
    Window window;
    std::vector<std::size_t> ranks;
    std::size_t total_rank = 0;
};
BocksteinReport bockstein_ranks(const MonomialIdeal& ideal, int index, std::uint64_t p,
                                const Window& window);

} // namespace lyutab
