#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "coefficient_ring.hpp"

namespace lyutab {

// Isomorphism class of a finitely generated module over a CoefficientRing,
// plus a divisible part for Artinian colimits over Z_p.
//
// Conventions for `torsion`:
//   Integers / PAdicIntegers : multiset of prime-power orders (2, 4, 9, ...),
//                              one entry per primary cyclic summand.
//   CyclicRing(p, l)         : multiset of exponents e < l (summands Z/p^e);
//                              summands of exponent exactly l count as free.
//   PrimeField               : always empty (everything is free of rank dim).
// `divisible_rank` counts Pruefer summands Z(p^infty); it is only ever
// nonzero for colimit module classes over PAdicIntegers.
struct ModuleClass {
    CoefficientRing ring;
    std::uint64_t free_rank = 0;
    std::vector<std::uint64_t> torsion; // kept sorted ascending
    std::uint64_t divisible_rank = 0;

    ModuleClass() : ring(CoefficientRing::integers()) {}
    explicit ModuleClass(CoefficientRing r) : ring(r) {}
    ModuleClass(CoefficientRing r, std::uint64_t free, std::vector<std::uint64_t> tors,
                std::uint64_t div = 0)
        : ring(r), free_rank(free), torsion(std::move(tors)), divisible_rank(div) {
        std::sort(torsion.begin(), torsion.end());
    }

    bool is_zero() const { return free_rank == 0 && torsion.empty() && divisible_rank == 0; }

    bool operator==(const ModuleClass& o) const {
        return ring == o.ring && free_rank == o.free_rank && torsion == o.torsion &&
               divisible_rank == o.divisible_rank;
    }
    bool operator!=(const ModuleClass& o) const { return !(*this == o); }

    std::string str() const {
        std::ostringstream os;
        if (is_zero()) return "0";
        bool first = true;
        auto sep = [&] {
            if (!first) os << " + ";
            first = false;
        };
        if (free_rank) {
            sep();
            os << ring.name() << "^" << free_rank;
        }
        for (auto t : torsion) {
            sep();
            if (ring.kind == CoefficientRing::Kind::CyclicRing)
                os << "Z/" << ring.p << "^" << t;
            else
                os << "Z/" << t;
        }
        if (divisible_rank) {
            sep();
            os << "Z(" << ring.p << "^inf)^" << divisible_rank;
        }
        return os.str();
    }
};

} // namespace lyutab
