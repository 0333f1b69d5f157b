#include <benchmark/benchmark.h>

#include <random>

#include "lyutab/cech.hpp"
#include "lyutab/lyubeznik.hpp"
#include "lyutab/smith.hpp"

using namespace lyutab;

namespace {

IntMatrix random_matrix(std::uint64_t seed, std::size_t rows, std::size_t cols, long mag) {
    std::mt19937_64 rng(seed);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = static_cast<long>(rng() % (2 * mag + 1)) - mag;
    return m;
}

MonomialIdeal plane_ideal() {
    return ideal_from_supports(
        6, {{1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {1, 4, 6}, {1, 5, 6},
            {2, 3, 6}, {2, 4, 5}, {2, 5, 6}, {3, 4, 5}, {3, 4, 6}});
}

MonomialIdeal cycle5_ideal() {
    return ideal_from_supports(5, {{1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}});
}

void BM_SmithSmall(benchmark::State& state) {
    IntMatrix a = random_matrix(1, 6, 6, 9);
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithSmall);

// The production shape: a raw +-1 incidence differential of the plane's
// Cech strand (dense random matrices explode under exact elimination and
// never occur in the pipeline).
void BM_SmithIncidence(benchmark::State& state) {
    auto strand = cech_strand(plane_ideal(), std::vector<int>(6, -1));
    std::size_t widest = 0;
    for (std::size_t i = 1; i < strand.diffs.size(); ++i)
        if (strand.diffs[i].cols() > strand.diffs[widest].cols()) widest = i;
    const IntMatrix d = strand.diffs[widest];
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(d));
}
BENCHMARK(BM_SmithIncidence)->Unit(benchmark::kMillisecond);

// The incidence matrix of the plane's 2-cells against its edges, mod 4:
// the shape the tower levels hit constantly.
void BM_LocalSmithIncidence(benchmark::State& state) {
    auto c = reduced_cochain_complex(stanley_reisner_complex(plane_ideal()));
    const IntMatrix& d = c.diffs[2];
    for (auto _ : state) benchmark::DoNotOptimize(local_smith(d, 2, 2));
}
BENCHMARK(BM_LocalSmithIncidence);

void BM_StrandCohomology(benchmark::State& state) {
    auto ideal = plane_ideal();
    const std::vector<int> socle(6, -1);
    for (auto _ : state) {
        auto piece =
            cech_graded_piece(ideal, 4, socle, CoefficientRing::integers());
        benchmark::DoNotOptimize(piece);
    }
}
BENCHMARK(BM_StrandCohomology)->Unit(benchmark::kMillisecond);

void BM_FastPiece(benchmark::State& state) {
    auto ideal = plane_ideal();
    const std::vector<int> socle(6, -1);
    for (auto _ : state) {
        auto source = make_fast_source(ideal);
        benchmark::DoNotOptimize(
            source->module_at(socle, 4, CoefficientRing::integers()));
    }
}
BENCHMARK(BM_FastPiece);

void BM_EqualTable(benchmark::State& state) {
    auto ideal = plane_ideal();
    for (auto _ : state) benchmark::DoNotOptimize(equal_char_table(ideal, 2));
}
BENCHMARK(BM_EqualTable)->Unit(benchmark::kMillisecond);

void BM_MixedTableTower(benchmark::State& state) {
    auto ideal = plane_ideal();
    for (auto _ : state) benchmark::DoNotOptimize(mixed_table(ideal, 2, true));
}
BENCHMARK(BM_MixedTableTower)->Unit(benchmark::kMillisecond);

void BM_MixedTableHeight(benchmark::State& state) {
    auto ideal = cycle5_ideal();
    for (auto _ : state) benchmark::DoNotOptimize(mixed_table(ideal, 2, false));
}
BENCHMARK(BM_MixedTableHeight)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
