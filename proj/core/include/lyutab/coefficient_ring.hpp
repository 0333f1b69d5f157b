#pragma once

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace lyutab {

// Coefficient rings the cohomology machinery supports.  Everything is
// realized with exact integer arithmetic:
//   Integers       - plain Z.
//   PrimeField     - F_p = Z/p.
//   CyclicRing     - Z/p^level.
//   PAdicIntegers  - Z_p, realized p-locally: integral SNF with torsion
//                    restricted to its p-part (prime-to-p torsion is a unit).
struct CoefficientRing {
    enum class Kind { Integers, PrimeField, CyclicRing, PAdicIntegers };

    Kind kind = Kind::Integers;
    std::uint64_t p = 0;   // prime, when applicable
    std::uint32_t level = 0; // exponent for CyclicRing

    friend auto operator<=>(const CoefficientRing&, const CoefficientRing&) = default;

    static CoefficientRing integers() { return {Kind::Integers, 0, 0}; }
    static CoefficientRing prime_field(std::uint64_t p) {
        check_prime(p);
        return {Kind::PrimeField, p, 1};
    }
    static CoefficientRing cyclic(std::uint64_t p, std::uint32_t level) {
        check_prime(p);
        if (level == 0) throw Error("cyclic ring needs level >= 1");
        return {Kind::CyclicRing, p, level};
    }
    static CoefficientRing padic(std::uint64_t p) {
        check_prime(p);
        return {Kind::PAdicIntegers, p, 0};
    }

    bool is_p_local() const { return kind != Kind::Integers; }
    // Modulus p^level for the residue rings, 0 for Z and Z_p.
    bool has_modulus() const {
        return kind == Kind::PrimeField || kind == Kind::CyclicRing;
    }

    bool operator==(const CoefficientRing& o) const {
        return kind == o.kind && p == o.p && level == o.level;
    }
    bool operator!=(const CoefficientRing& o) const { return !(*this == o); }

    std::string name() const {
        switch (kind) {
        case Kind::Integers: return "Z";
        case Kind::PrimeField: return "F_" + std::to_string(p);
        case Kind::CyclicRing:
            return "Z/" + std::to_string(p) + "^" + std::to_string(level);
        case Kind::PAdicIntegers: return "Z_" + std::to_string(p);
        }
        return "?";
    }

    static void check_prime(std::uint64_t p) {
        if (p < 2) throw Error("p must be a prime >= 2");
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw Error(std::to_string(p) + " is not prime");
    }
};

} // namespace lyutab
