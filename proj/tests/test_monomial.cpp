#include "doctest.h"

#include "lyutab/monomial.hpp"

using namespace lyutab;

TEST_CASE("monomial parsing accepts the usual spellings") {
    CHECK(parse_monomial("x1*x2*x3", 6) == 0b111);
    CHECK(parse_monomial("x1 x2", 4) == 0b11);
    CHECK(parse_monomial("x2x11", 11) == ((1u << 1) | (1u << 10)));
    CHECK(parse_monomial("  x3 * x1 ", 3) == 0b101);

    CHECK_THROWS_AS(parse_monomial("x1^2", 3), NotSquareFreeError);
    CHECK_THROWS_AS(parse_monomial("x1*x1", 3), NotSquareFreeError);
    CHECK_THROWS_AS(parse_monomial("x0", 3), ParseError);
    CHECK_THROWS_AS(parse_monomial("x4", 3), ParseError);
    CHECK_THROWS_AS(parse_monomial("y1", 3), ParseError);
    CHECK_THROWS_AS(parse_monomial("", 3), ParseError);

    CHECK(monomial_to_string(0b101) == "x1*x3");
}

TEST_CASE("ideal construction minimalizes and validates") {
    auto i = ideal_from_supports(4, {{1, 2}, {1, 2, 3}, {3, 4}, {1, 2}});
    CHECK(i.gens == std::vector<std::uint32_t>{0b0011, 0b1100});

    CHECK_THROWS_AS(ideal_from_supports(3, {{1, 1, 2}}), NotSquareFreeError);
    CHECK_THROWS_AS(ideal_from_supports(3, {{}}), ParseError);
    CHECK_THROWS_AS(ideal_from_supports(3, {{4}}), ParseError);

    MonomialIdeal raw;
    raw.n = 3;
    raw.gens = {0b011, 0b111, 0b001, 0b001};
    CHECK(minimalize(raw).gens == std::vector<std::uint32_t>{0b001});
}

TEST_CASE("ring spec validation") {
    RingSpec spec;
    spec.ideal = ideal_from_supports(3, {{1, 2}});
    CHECK_NOTHROW(validate(spec));

    spec.p = 4;
    CHECK_THROWS(validate(spec));
    spec.p = 2;

    spec.include_p = true; // equal characteristic: meaningless
    CHECK_THROWS_AS(validate(spec), ParseError);
    spec.mode = RingSpec::Mode::Mixed;
    CHECK_NOTHROW(validate(spec));
}

TEST_CASE("stanley-reisner dictionary round-trips") {
    // The 5-cycle: edges are faces, chords are nonfaces.
    auto c5 = ideal_from_supports(5, {{1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}});
    auto k = stanley_reisner_complex(c5);
    CHECK(k.dim() == 1);
    CHECK(k.faces_of_dim(1).size() == 5);
    CHECK(stanley_reisner_ideal(k) == c5);

    // Zero ideal <-> full simplex.
    MonomialIdeal zero;
    zero.n = 4;
    CHECK(stanley_reisner_complex(zero) == full_simplex(4));
    CHECK(stanley_reisner_ideal(full_simplex(4)) == zero);

    // Maximal ideal <-> irrelevant complex.
    auto max3 = ideal_from_supports(3, {{1}, {2}, {3}});
    CHECK(stanley_reisner_complex(max3) == irrelevant_complex(3));
    CHECK(stanley_reisner_ideal(irrelevant_complex(3)) == max3);

    CHECK_THROWS(stanley_reisner_ideal(void_complex(3)));
}

TEST_CASE("dual generated complex is the alexander dual") {
    auto c5 = ideal_from_supports(5, {{1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}});
    CHECK(dual_generated_complex(c5) == alexander_dual(stanley_reisner_complex(c5)));

    auto ci = ideal_from_supports(5, {{1, 2}, {3, 4}});
    CHECK(dual_generated_complex(ci) == alexander_dual(stanley_reisner_complex(ci)));
}

TEST_CASE("krull dimension across modes") {
    RingSpec spec;
    spec.ideal = ideal_from_supports(3, {{1}, {2}, {3}});
    CHECK(krull_dimension(spec) == 0); // F_p[[x]]/m = F_p

    spec.mode = RingSpec::Mode::Mixed; // V[[x]]/(x1,x2,x3) = V
    CHECK(krull_dimension(spec) == 1);
    spec.include_p = true; // V[[x]]/(p, x1..x3) = F_p
    CHECK(krull_dimension(spec) == 0);

    RingSpec zero;
    zero.ideal.n = 2;
    CHECK(krull_dimension(zero) == 2);
    zero.mode = RingSpec::Mode::Mixed;
    CHECK(krull_dimension(zero) == 3);
}

TEST_CASE("cohen-macaulayness by reisner's criterion") {
    // The projective-plane ideal: CM away from 2, not CM at 2.
    auto rp2 = ideal_from_supports(
        6, {{1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {1, 4, 6}, {1, 5, 6},
            {2, 3, 6}, {2, 4, 5}, {2, 5, 6}, {3, 4, 5}, {3, 4, 6}});
    CHECK(!is_cohen_macaulay(rp2, CoefficientRing::prime_field(2)));
    CHECK(is_cohen_macaulay(rp2, CoefficientRing::prime_field(3)));
    CHECK(is_cohen_macaulay(rp2, CoefficientRing::prime_field(5)));

    // The 5-cycle is a connected graph: CM in every characteristic.
    auto c5 = ideal_from_supports(5, {{1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}});
    CHECK(is_cohen_macaulay(c5, CoefficientRing::prime_field(2)));

    // An edge plus an isolated vertex: dim 2 ring of depth 1, never CM.
    auto mixed_dim = ideal_from_supports(3, {{1, 3}, {2, 3}});
    CHECK(!is_cohen_macaulay(mixed_dim, CoefficientRing::prime_field(2)));
    CHECK(!is_cohen_macaulay(mixed_dim, CoefficientRing::prime_field(3)));

    // Two disjoint points: K[x,y]/(x*y) is one-dimensional and CM.
    auto pts = ideal_from_supports(2, {{1, 2}});
    CHECK(is_cohen_macaulay(pts, CoefficientRing::prime_field(2)));

    MonomialIdeal zero;
    zero.n = 3;
    CHECK(is_cohen_macaulay(zero, CoefficientRing::prime_field(2)));
}

TEST_CASE("regular sequences are exactly disjoint supports") {
    CHECK(is_monomial_regular_sequence(ideal_from_supports(5, {{1, 2}, {3, 4}})));
    CHECK(is_monomial_regular_sequence(ideal_from_supports(3, {{1}, {2}, {3}})));
    CHECK(!is_monomial_regular_sequence(ideal_from_supports(3, {{1, 2}, {2, 3}})));
    MonomialIdeal zero;
    zero.n = 2;
    CHECK(is_monomial_regular_sequence(zero));
}
