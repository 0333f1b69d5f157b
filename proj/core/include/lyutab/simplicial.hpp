#pragma once

#include <cstdint>
#include <vector>

#include "coefficient_ring.hpp"
#include "int_matrix.hpp"
#include "module_class.hpp"
#include "subquotient.hpp"

namespace lyutab {

// Simplicial complex on vertex set {0..n-1}; faces are vertex bitmasks.
// facets lists the maximal faces, deduplicated, irredundant and sorted.
// An empty facet list is the void complex (no faces at all); the facet list
// {0} is the complex whose only face is the empty face.
struct SimplicialComplex {
    int n = 0;
    std::vector<std::uint32_t> facets;

    bool is_void() const { return facets.empty(); }
    bool contains(std::uint32_t face) const;
    // -2 for the void complex, -1 for {empty face}.
    int dim() const;
    std::vector<std::uint32_t> all_faces() const;
    std::vector<std::uint32_t> faces_of_dim(int k) const;
    long reduced_euler() const;

    bool operator==(const SimplicialComplex& o) const {
        return n == o.n && facets == o.facets;
    }
};

SimplicialComplex make_complex(int n, const std::vector<std::uint32_t>& faces);
SimplicialComplex void_complex(int n);
SimplicialComplex irrelevant_complex(int n);
SimplicialComplex full_simplex(int n);
// Boundary of the full simplex on n vertices.
SimplicialComplex simplex_boundary(int n);

// Full subcomplex on the vertex subset `w`.
SimplicialComplex restriction(const SimplicialComplex& k, std::uint32_t w);
// link(F) = {G : G disjoint from F, G u F a face}.
SimplicialComplex link(const SimplicialComplex& k, std::uint32_t face);
// {F : complement of F is not a face}; facets are the complements of the
// minimal nonfaces.
SimplicialComplex alexander_dual(const SimplicialComplex& k);
// Cone with a fresh apex vertex n.
SimplicialComplex cone(const SimplicialComplex& k);

// Reduced simplicial cochain complex.  Position t holds the faces of degree
// t-1 (so position 0 is the empty face); diffs[t] maps position t to t+1 with
// the usual alternating signs.  The void complex has no positions.
struct CochainComplex {
    std::vector<std::vector<std::uint32_t>> faces;
    std::vector<IntMatrix> diffs;

    std::vector<std::size_t> dims() const;
    // Faces in cohomological degree d (= position d+1); empty when absent.
    const std::vector<std::uint32_t>* faces_of_degree(int degree) const;
};

CochainComplex reduced_cochain_complex(const SimplicialComplex& k);

// Reduced cohomology in a single degree (position degree+1), with canonical
// generators, or in all degrees at once.
CanonicalModule reduced_cohomology_module(const SimplicialComplex& k, int degree,
                                          const CoefficientRing& ring);
std::vector<CanonicalModule> reduced_cohomology(const SimplicialComplex& k,
                                                const CoefficientRing& ring);
ModuleClass reduced_cohomology_class(const SimplicialComplex& k, int degree,
                                     const CoefficientRing& ring);

// Cochain restriction: the 0/1 map C^degree(sup) -> C^degree(sub) that picks
// out the faces of the subcomplex.
IntMatrix cochain_restriction(const CochainComplex& sup, const CochainComplex& sub,
                              int degree);

// Bockstein H~^k(K; F_p) -> H~^{k+1}(K; F_p) via integral cocycle lifting.
IntMatrix simplicial_bockstein(const SimplicialComplex& k, int degree, std::uint64_t p);

} // namespace lyutab
