#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "coefficient_ring.hpp"
#include "int_matrix.hpp"
#include "module_class.hpp"
#include "monomial.hpp"
#include "simplicial.hpp"
#include "subquotient.hpp"

namespace lyutab {

// One multidegree of the Cech complex on the ideal generators: the summand
// indexed by F (a subset of generators, as a bitmask) survives at degree a
// exactly when every variable with a negative exponent divides lcm(F), and
// all surviving localization maps restrict to +-1 incidence entries.
struct DegreeStrand {
    std::vector<std::vector<std::uint32_t>> summands; // per position 0..r
    std::vector<IntMatrix> diffs;

    std::vector<std::size_t> dims() const;
};

DegreeStrand cech_strand(const MonomialIdeal& ideal, const std::vector<int>& a);

// Rectangular degree box [lo_k, hi_k] per coordinate, row-major cell order.
struct Window {
    std::vector<int> lo, hi;

    static Window box(int n, int low, int high);
    std::size_t cells() const;
    std::vector<int> degree(std::size_t cell) const;
    std::optional<std::size_t> cell_of(const std::vector<int>& a) const;
    bool operator==(const Window& o) const { return lo == o.lo && hi == o.hi; }
};

// Uniform access to canonical graded pieces of H^index and their structure
// maps, either from the raw Cech strands (the oracle) or from restrictions
// of the complex generated by the complements of the generator supports
// (the fast path).  Results are cached per source; pieces of the fast path
// depend only on the negative support of the degree.
class GradedPieceSource {
  public:
    virtual ~GradedPieceSource() = default;

    const MonomialIdeal& ideal() const { return ideal_; }

    virtual const CanonicalModule& module_at(const std::vector<int>& a, int index,
                                             const CoefficientRing& ring) = 0;
    // Multiplication by x_k (0-based k): canonical coordinates of
    // H^index at degree a -> degree a + e_k.
    virtual IntMatrix xmap(const std::vector<int>& a, int k, int index,
                           const CoefficientRing& ring) = 0;
    // Largest p-valuation among elementary divisors of the integral
    // coboundaries underlying the pieces at this degree.
    virtual std::uint32_t coboundary_valuation(const std::vector<int>& a,
                                               std::uint64_t p) = 0;

    // Tower transition Z/p^level -> Z/p^(level+1) on H^index at degree a.
    IntMatrix transition(const std::vector<int>& a, int index, std::uint64_t p,
                         std::uint32_t level);
    // Multiplication by p as an endomorphism of the level-`level` piece.
    IntMatrix pmap(const std::vector<int>& a, int index, std::uint64_t p,
                   std::uint32_t level);

  protected:
    explicit GradedPieceSource(MonomialIdeal ideal) : ideal_(std::move(ideal)) {}
    MonomialIdeal ideal_;
};

std::unique_ptr<GradedPieceSource> make_cech_source(const MonomialIdeal& ideal);
std::unique_ptr<GradedPieceSource> make_fast_source(const MonomialIdeal& ideal);

// All pieces of H^index over a window, with the x_k-multiplication maps
// between neighbouring cells (xmaps[k][cell] defined when a + e_k stays in
// the window) and multiplication by p on each piece.
struct GradedLocalCohomology {
    MonomialIdeal ideal;
    int index = 0;
    CoefficientRing ring;
    Window window;
    std::vector<CanonicalModule> pieces;
    std::vector<std::vector<IntMatrix>> xmaps;
    std::vector<IntMatrix> pmaps;

    const CanonicalModule& piece_at(const std::vector<int>& a) const;
};

GradedLocalCohomology local_cohomology_window(GradedPieceSource& source, int index,
                                              const Window& window,
                                              const CoefficientRing& ring);

// Single graded piece of H^index straight from the Cech strand (the oracle).
ModuleClass cech_graded_piece(const MonomialIdeal& ideal, int index,
                              const std::vector<int>& a, const CoefficientRing& ring);

// Oracle pipeline over the window (raw Cech strands).
GradedLocalCohomology local_cohomology_module(const MonomialIdeal& ideal, int index,
                                              const Window& window,
                                              const CoefficientRing& ring);
// Production pipeline (restriction complexes); same contract.
GradedLocalCohomology simplicial_fast_path(const MonomialIdeal& ideal, int index,
                                           const Window& window,
                                           const CoefficientRing& ring);

// The p-power tower H^{i-1}_J(S/p^l S) whose colimit is H^i_I(S) when p is
// one of the generators of I.  Levels run over Z/p^l for l = 1..l*+1+extra;
// transitions[l-1][cell] maps level l to level l+1.  certified_level is
//   1 + max p-valuation of the elementary divisors of the integral
//   coboundaries involved,
// beyond which transition ranks are stable.  colimit[cell] describes the
// limit piece over the p-adic ring (divisible rank + bounded torsion).
struct TowerResult {
    int index = 0; // the I-side cohomological index i
    std::uint64_t p = 2;
    Window window;
    std::uint32_t certified_level = 1;
    std::vector<GradedLocalCohomology> levels;
    std::vector<std::vector<IntMatrix>> transitions;
    std::vector<ModuleClass> colimit;
};

TowerResult mixed_tower(const RingSpec& spec, int index, const Window& window,
                        GradedPieceSource& source, std::uint32_t extra_levels = 0);

} // namespace lyutab
