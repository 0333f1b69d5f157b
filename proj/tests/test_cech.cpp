#include "doctest.h"

#include "lyutab/cech.hpp"
#include "lyutab/corpus.hpp"
#include "oracles.hpp"

using namespace lyutab;

namespace {

MonomialIdeal rp2_ideal() {
    return ideal_from_supports(
        6, {{1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {1, 4, 6}, {1, 5, 6},
            {2, 3, 6}, {2, 4, 5}, {2, 5, 6}, {3, 4, 5}, {3, 4, 6}});
}

std::vector<int> socle(int n) { return std::vector<int>(n, -1); }

} // namespace

TEST_CASE("cech strand of the maximal ideal") {
    auto m3 = ideal_from_supports(3, {{1}, {2}, {3}});

    auto s = cech_strand(m3, socle(3));
    CHECK(s.dims() == std::vector<std::size_t>{0, 0, 0, 1});

    // Once a coordinate is nonnegative the strand becomes exact.
    auto s2 = cech_strand(m3, {0, -1, -1});
    CHECK(s2.dims() == std::vector<std::size_t>{0, 0, 1, 1});
    for (int idx = 0; idx <= 3; ++idx) {
        auto cls = cech_graded_piece(m3, idx, {0, -1, -1}, CoefficientRing::integers());
        CHECK(cls.is_zero());
    }

    CHECK(cech_graded_piece(m3, 3, socle(3), CoefficientRing::integers()) ==
          ModuleClass(CoefficientRing::integers(), 1, {}));
    CHECK(cech_graded_piece(m3, 2, socle(3), CoefficientRing::integers()).is_zero());
}

TEST_CASE("cech pieces of the projective-plane ideal at the socle degree") {
    auto rp2 = rp2_ideal();
    const auto z = CoefficientRing::integers();
    // Top cohomological index 4 sees the integral torsion of the plane.
    CHECK(cech_graded_piece(rp2, 4, socle(6), z) == ModuleClass(z, 0, {2}));
    CHECK(cech_graded_piece(rp2, 3, socle(6), z).is_zero());
    CHECK(cech_graded_piece(rp2, 3, socle(6), CoefficientRing::prime_field(2)) ==
          ModuleClass(CoefficientRing::prime_field(2), 1, {}));
    CHECK(cech_graded_piece(rp2, 4, socle(6), CoefficientRing::prime_field(3)).is_zero());
}

TEST_CASE("window cells round-trip") {
    Window w = Window::box(3, -2, 1);
    CHECK(w.cells() == 64);
    for (std::size_t c = 0; c < w.cells(); ++c) {
        auto a = w.degree(c);
        auto back = w.cell_of(a);
        REQUIRE(back.has_value());
        CHECK(*back == c);
    }
    CHECK(!w.cell_of({2, 0, 0}).has_value());
    CHECK(!w.cell_of({-3, 0, 0}).has_value());
}

TEST_CASE("fast path matches the cech oracle on random ideals") {
    auto ideals = random_ideals(0xcafe, 10, 2, 4, 4);
    const std::vector<CoefficientRing> rings{
        CoefficientRing::integers(), CoefficientRing::prime_field(2),
        CoefficientRing::prime_field(3), CoefficientRing::cyclic(2, 2)};

    for (const auto& ideal : ideals) {
        auto fast = make_fast_source(ideal);
        auto brute = make_cech_source(ideal);
        Window w = Window::box(ideal.n, -1, 0);
        for (const auto& ring : rings) {
            for (int index = 1; index <= ideal.n; ++index) {
                for (std::size_t c = 0; c < w.cells(); ++c) {
                    auto a = w.degree(c);
                    const auto& mf = fast->module_at(a, index, ring);
                    const auto& mb = brute->module_at(a, index, ring);
                    CHECK(mf.cls == mb.cls);
                    // Structure maps: same cokernel invariants in both models.
                    for (int k = 0; k < ideal.n; ++k) {
                        auto next = a;
                        next[k] += 1;
                        if (!w.cell_of(next)) continue;
                        const auto& tf = fast->module_at(next, index, ring);
                        const auto& tb = brute->module_at(next, index, ring);
                        IntMatrix xf = fast->xmap(a, k, index, ring);
                        IntMatrix xb = brute->xmap(a, k, index, ring);
                        CHECK(cokernel_class(xf, tf.orders, ring) ==
                              cokernel_class(xb, tb.orders, ring));
                    }
                }
            }
        }
    }
}

TEST_CASE("multiplication by p kills level one") {
    auto rp2 = rp2_ideal();
    auto src = make_fast_source(rp2);
    IntMatrix pm = src->pmap(socle(6), 3, 2, 1);
    CHECK(rank_mod_p(pm, 2) == 0);
}

TEST_CASE("tower of the projective-plane ideal with p in the ideal") {
    RingSpec spec;
    spec.mode = RingSpec::Mode::Mixed;
    spec.p = 2;
    spec.include_p = true;
    spec.ideal = rp2_ideal();

    auto source = make_fast_source(spec.ideal);
    Window w = Window::box(6, -1, 0);
    TowerResult tower = mixed_tower(spec, 4, w, *source);

    CHECK(tower.index == 4);
    CHECK(tower.certified_level == 2);
    REQUIRE(tower.levels.size() == 3); // levels 1 .. certified+1
    REQUIRE(tower.transitions.size() == 2);
    for (std::size_t l = 0; l < tower.levels.size(); ++l) {
        CHECK(tower.levels[l].ring ==
              CoefficientRing::cyclic(2, static_cast<std::uint32_t>(l) + 1));
        CHECK(tower.levels[l].pieces.size() == w.cells());
    }

    // Level sizes obey universal coefficients against the integral pieces
    // one index down (the level complexes are the integral ones reduced).
    const auto z = CoefficientRing::integers();
    const int c = tower.index - 1;
    for (std::size_t cell = 0; cell < w.cells(); ++cell) {
        auto a = w.degree(cell);
        const ModuleClass hz = source->module_at(a, c, z).cls;
        const ModuleClass hz1 = source->module_at(a, c + 1, z).cls;
        for (std::size_t l = 0; l < tower.levels.size(); ++l) {
            auto lvl = static_cast<std::uint32_t>(l) + 1;
            CHECK(oracle::logsize(tower.levels[l].pieces[cell].cls) ==
                  oracle::uct_logsize_mod_pl(hz, hz1, 2, lvl));
        }

        // Colimit: divisible part of rank = free rank at index c, torsion
        // the p-part of the torsion at index c+1.
        const ModuleClass& col = tower.colimit[cell];
        CHECK(col.ring == CoefficientRing::padic(2));
        CHECK(col.divisible_rank == hz.free_rank);
        std::vector<std::uint64_t> ppart;
        for (auto t : hz1.torsion)
            if (t % 2 == 0) ppart.push_back(t);
        CHECK(col.torsion == ppart);
        CHECK(col.free_rank == 0);
    }
}

TEST_CASE("tower demands p in the ideal") {
    RingSpec spec;
    spec.mode = RingSpec::Mode::Mixed;
    spec.p = 2;
    spec.include_p = false;
    spec.ideal = ideal_from_supports(3, {{1}, {2}, {3}});
    auto source = make_fast_source(spec.ideal);
    CHECK_THROWS_AS(mixed_tower(spec, 3, Window::box(3, -1, 0), *source),
                    PNotInIdealError);
}
