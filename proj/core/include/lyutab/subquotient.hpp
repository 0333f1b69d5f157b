#pragma once

#include <cstdint>
#include <vector>

#include "coefficient_ring.hpp"
#include "int_matrix.hpp"
#include "module_class.hpp"
#include "smith.hpp"

namespace lyutab {

// Cohomology of a complex of presented modules at one position, in canonical
// coordinates.  The ambient chain group is Z^ambient with the diagonal
// relations `ambient_orders` (entry 0 = free generator, q > 0 = q*e_i = 0);
// the cohomology subquotient is presented by canonical generators whose
// orders follow the Smith chain, torsion ascending and free generators last.
//
// The canonical basis is pinned by the Smith change-of-basis matrices of the
// fixed pivot rule, so runs are reproducible and induced maps can be
// expressed as honest integer matrices in these coordinates.
struct CanonicalModule {
    CoefficientRing ring;
    ModuleClass cls;
    std::size_t ambient = 0;
    std::vector<mpz_class> ambient_orders;
    std::vector<mpz_class> orders; // canonical generator orders; 0 = free
    IntMatrix lift;                // ambient x gens: generators as ambient vectors

    // Solve data: for v in the cocycle lattice L,
    //   coords(v) = post * exact_div((pre * v)[0..lrank), div), reduced mod orders.
    IntMatrix proj_pre;
    std::vector<mpz_class> proj_div;
    IntMatrix proj_post;
    std::size_t lrank = 0;

    std::size_t gens() const { return orders.size(); }
    bool is_zero() const { return orders.empty(); }

    // Express ambient vectors (columns) in canonical coordinates.  Throws
    // NotAChainMapError when a column is not in the cocycle lattice.
    IntMatrix coords(const IntMatrix& ambient_columns) const;
};

// p^level for PrimeField/CyclicRing, 0 for Z and Z_p (no modulus).
mpz_class ring_modulus(const CoefficientRing& ring);

// Ambient orders of a free module over the ring: 0...0 or p^level...p^level.
std::vector<mpz_class> uniform_orders(std::size_t n, const CoefficientRing& ring);

// Entrywise balanced reduction mod m (representatives in (-m/2, m/2]).
IntMatrix reduced_mod(const IntMatrix& a, const mpz_class& m);

// ker(g_out)/im(f_in) inside the presented ambient `rel_here`, where maps are
// given on ambient generators.  f_in may have 0 columns (no incoming), g_out
// may have 0 rows (no outgoing).
CanonicalModule cohomology_position(const IntMatrix& f_in,
                                    const std::vector<mpz_class>& rel_here,
                                    const IntMatrix& g_out,
                                    const std::vector<mpz_class>& rel_next,
                                    const CoefficientRing& ring);

// Cohomology of a finite complex of free modules at every position.
// diffs[i] maps position i to i+1 (rows = dims[i+1], cols = dims[i]).
// Throws ComplexNotComposableError when d*d != 0 over the ring.
std::vector<CanonicalModule> complex_cohomology(const std::vector<std::size_t>& dims,
                                                const std::vector<IntMatrix>& diffs,
                                                const CoefficientRing& ring);

// Same for a complex whose ambient modules carry diagonal relations.
std::vector<CanonicalModule> presented_complex_cohomology(
    const std::vector<std::vector<mpz_class>>& rels, const std::vector<IntMatrix>& diffs,
    const CoefficientRing& ring);

// Map induced on canonical cohomology coordinates by an ambient map phi
// (dst.ambient x src.ambient).  With check on, verifies well-definedness and
// throws NotAChainMapError on failure.
IntMatrix induced_map(const CanonicalModule& src, const CanonicalModule& dst,
                      const IntMatrix& phi, bool check = true);

// One-position convenience wrappers matching the exact-linear-algebra API.
ModuleClass cohomology_at(const IntMatrix& d_in, const IntMatrix& d_out,
                          const CoefficientRing& ring);

struct InducedMap {
    ModuleClass source, target;
    IntMatrix matrix;
};
InducedMap induced_map_on_cohomology(const IntMatrix& f, const IntMatrix& src_d_in,
                                     const IntMatrix& src_d_out, const IntMatrix& dst_d_in,
                                     const IntMatrix& dst_d_out, const CoefficientRing& ring);

// Connecting map H^pos(C (x) F_p) -> H^{pos+1}(C (x) F_p) of
// 0 -> Z/p -> Z/p^2 -> Z/p -> 0, by lifting cocycles through the integral
// complex.  `diffs` must be a genuine complex over Z.
IntMatrix bockstein_on_complex(const std::vector<std::size_t>& dims,
                               const std::vector<IntMatrix>& diffs, std::size_t pos,
                               std::uint64_t p);

// Isomorphism class encoded by a list of generator orders (0 = free), using
// the per-ring conventions of CanonicalModule.
ModuleClass module_class_from_orders(const std::vector<mpz_class>& orders,
                                     const CoefficientRing& ring);

// Class of the cokernel of m landing in the presented module with the given
// diagonal orders.  Basis-independent, so it certifies maps written in
// different coordinates.
ModuleClass cokernel_class(const IntMatrix& m, const std::vector<mpz_class>& target_orders,
                           const CoefficientRing& ring);

// Rank of an integer matrix after reduction mod p.
std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p);

// Entry (i, j) reduced into [0, orders[i]) where orders[i] > 0.
IntMatrix reduce_rows_mod_orders(IntMatrix m, const std::vector<mpz_class>& orders);

// Equality of maps into a presented target, i.e. entrywise congruence mod the
// target orders (exact equality on free rows).
bool maps_equal_mod_orders(const IntMatrix& a, const IntMatrix& b,
                           const std::vector<mpz_class>& target_orders);

// A*B where B is expected to be sparse: loops are ordered to skip zero
// entries of B wholesale.
IntMatrix mul_dense_sparse(const IntMatrix& a, const IntMatrix& b);

} // namespace lyutab
