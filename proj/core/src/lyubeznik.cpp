#include "lyutab/lyubeznik.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "lyutab/errors.hpp"
#include "lyutab/parallel.hpp"

namespace lyutab {

namespace {

std::vector<int> socle_base(int n) { return std::vector<int>(n, -1); }

bool needs_p_direction(const CoefficientRing& ring) {
    switch (ring.kind) {
        case CoefficientRing::Kind::PrimeField: return false;
        case CoefficientRing::Kind::CyclicRing:
        case CoefficientRing::Kind::PAdicIntegers: return true;
        case CoefficientRing::Kind::Integers:
            throw MissingStructureMapsError(
                "Bass numbers need a residue characteristic, not plain Z");
    }
    throw PipelineError("unknown coefficient ring");
}

// A Bass-number class must be a vector space over the residue field: every
// canonical generator of order exactly p.
std::uint64_t k_dimension(const CanonicalModule& m) {
    const mpz_class p = m.ring.p;
    for (const auto& q : m.orders)
        if (q != p)
            throw PipelineError("Ext class is not a residue-field vector space: order " +
                                q.get_str() + " over " + m.ring.name());
    return m.orders.size();
}

std::string degree_str(const std::vector<int>& a) {
    std::string s = "(";
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(a[k]);
    }
    return s + ")";
}

} // namespace

KoszulStrand koszul_strand(const GradedLocalCohomology& m, const std::vector<int>& base,
                           bool with_p) {
    const int n = static_cast<int>(m.window.lo.size());
    if (static_cast<int>(base.size()) != n) throw Error("koszul_strand: base length");
    if (with_p && m.pmaps.empty())
        throw MissingStructureMapsError("strand with p-direction needs pmaps");

    KoszulStrand strand;
    strand.ring = m.ring;
    strand.with_p = with_p;
    strand.base = base;
    const std::uint32_t dirs = static_cast<std::uint32_t>(n + (with_p ? 1 : 0));

    auto block_degree = [&](std::uint32_t subset) {
        std::vector<int> a = base;
        for (int k = 0; k < n; ++k)
            if (subset & (1u << (with_p ? k + 1 : k))) a[k] += 1;
        return a;
    };

    strand.blocks.resize(dirs + 1);
    strand.rels.resize(dirs + 1);
    for (std::uint32_t s = 0; s < (1u << dirs); ++s) {
        auto cell = m.window.cell_of(block_degree(s));
        if (!cell) throw Error("koszul_strand: window does not cover the strand");
        KoszulStrand::Block b;
        b.subset = s;
        b.cell = *cell;
        b.gens = m.pieces[*cell].gens();
        auto& level = strand.blocks[std::popcount(s)];
        b.offset = level.empty() ? 0 : level.back().offset + level.back().gens;
        level.push_back(b);
        auto& rel = strand.rels[std::popcount(s)];
        rel.insert(rel.end(), m.pieces[*cell].orders.begin(), m.pieces[*cell].orders.end());
    }

    for (std::uint32_t t = 0; t < dirs; ++t) {
        const auto& src_blocks = strand.blocks[t];
        const auto& dst_blocks = strand.blocks[t + 1];
        IntMatrix d(strand.rels[t + 1].size(), strand.rels[t].size());
        for (const auto& src : src_blocks) {
            for (std::uint32_t u = 0; u < dirs; ++u) {
                if (src.subset & (1u << u)) continue;
                const std::uint32_t s2 = src.subset | (1u << u);
                auto it = std::lower_bound(
                    dst_blocks.begin(), dst_blocks.end(), s2,
                    [](const KoszulStrand::Block& b, std::uint32_t v) { return b.subset < v; });
                const KoszulStrand::Block& dst = *it;
                const int sign = std::popcount(src.subset & ((1u << u) - 1)) % 2 ? -1 : 1;
                const IntMatrix& blk =
                    (with_p && u == 0)
                        ? m.pmaps[src.cell]
                        : m.xmaps[with_p ? u - 1 : u][src.cell];
                if (blk.rows() != dst.gens || blk.cols() != src.gens)
                    throw PipelineError("koszul_strand: block shape mismatch");
                for (std::size_t r = 0; r < blk.rows(); ++r)
                    for (std::size_t c = 0; c < blk.cols(); ++c)
                        if (blk(r, c) != 0)
                            d(dst.offset + r, src.offset + c) = sign * blk(r, c);
            }
        }
        strand.diffs.push_back(std::move(d));
    }
    return strand;
}

std::vector<CanonicalModule> koszul_strand_cohomology(const KoszulStrand& strand) {
    return presented_complex_cohomology(strand.rels, strand.diffs, strand.ring);
}

std::uint64_t bass_number_koszul(const GradedLocalCohomology& m, int i) {
    std::vector<std::uint64_t> all = bass_numbers_koszul(m);
    if (i < 0 || i >= static_cast<int>(all.size())) return 0;
    return all[static_cast<std::size_t>(i)];
}

std::vector<std::uint64_t> bass_numbers_koszul(const GradedLocalCohomology& m) {
    const bool with_p = needs_p_direction(m.ring);
    KoszulStrand strand =
        koszul_strand(m, socle_base(static_cast<int>(m.window.lo.size())), with_p);
    std::vector<std::uint64_t> out;
    for (const CanonicalModule& h : koszul_strand_cohomology(strand))
        out.push_back(k_dimension(h));
    return out;
}

std::size_t ExtTransition::rank() const {
    if (matrix.rows() == 0 || matrix.cols() == 0) return 0;
    return rank_mod_p(matrix, source.ring.p);
}

namespace {

// All Ext transitions level -> level+1 at once (they share the two strands).
std::vector<ExtTransition> ext_transitions_at(const TowerResult& tower,
                                              std::uint32_t level) {
    if (level < 1 || level >= tower.levels.size())
        throw MissingStructureMapsError("tower does not carry level " +
                                        std::to_string(level + 1));
    const GradedLocalCohomology& lo = tower.levels[level - 1];
    const GradedLocalCohomology& hi = tower.levels[level];
    const int n = static_cast<int>(lo.window.lo.size());
    KoszulStrand src = koszul_strand(lo, socle_base(n), true);
    KoszulStrand dst = koszul_strand(hi, socle_base(n), true);

    // The levelwise multiplication-by-p chain map, blockwise.
    std::vector<IntMatrix> phi;
    for (std::size_t t = 0; t < src.rels.size(); ++t) {
        IntMatrix m(dst.rels[t].size(), src.rels[t].size());
        for (std::size_t b = 0; b < src.blocks[t].size(); ++b) {
            const auto& sb = src.blocks[t][b];
            const auto& db = dst.blocks[t][b];
            const IntMatrix& blk = tower.transitions[level - 1][sb.cell];
            if (blk.rows() != db.gens || blk.cols() != sb.gens)
                throw PipelineError("tower transition block shape mismatch");
            for (std::size_t r = 0; r < blk.rows(); ++r)
                for (std::size_t c = 0; c < blk.cols(); ++c)
                    m(db.offset + r, sb.offset + c) = blk(r, c);
        }
        phi.push_back(std::move(m));
    }
    for (std::size_t t = 0; t + 1 < phi.size(); ++t) {
        IntMatrix lhs = mul_dense_sparse(dst.diffs[t], phi[t]);
        IntMatrix rhs = mul_dense_sparse(phi[t + 1], src.diffs[t]);
        if (!maps_equal_mod_orders(lhs, rhs, dst.rels[t + 1]))
            throw NotAChainMapError("tower transition does not commute with Koszul");
    }

    std::vector<CanonicalModule> esrc = koszul_strand_cohomology(src);
    std::vector<CanonicalModule> edst = koszul_strand_cohomology(dst);
    std::vector<ExtTransition> out;
    for (std::size_t i = 0; i < esrc.size(); ++i) {
        k_dimension(esrc[i]);
        k_dimension(edst[i]);
        ExtTransition tr;
        tr.source = esrc[i].cls;
        tr.target = edst[i].cls;
        tr.matrix = induced_map(esrc[i], edst[i], phi[i], true);
        out.push_back(std::move(tr));
    }
    return out;
}

} // namespace

ExtTransition tower_ext_transition(const TowerResult& tower, std::uint32_t level, int i) {
    std::vector<ExtTransition> all = ext_transitions_at(tower, level);
    if (i < 0 || i >= static_cast<int>(all.size()))
        throw Error("tower_ext_transition: index out of range");
    return all[static_cast<std::size_t>(i)];
}

std::vector<std::uint64_t> bass_numbers_koszul(const TowerResult& tower,
                                               bool verify_stability) {
    std::vector<ExtTransition> at = ext_transitions_at(tower, tower.certified_level);
    std::vector<std::uint64_t> out;
    for (const auto& tr : at) out.push_back(tr.rank());
    if (verify_stability) {
        std::vector<ExtTransition> up = ext_transitions_at(tower, tower.certified_level + 1);
        for (std::size_t i = 0; i < out.size(); ++i)
            if (up[i].rank() != out[i])
                throw PipelineError(
                    "tower transition ranks not stable at the certified level (i=" +
                    std::to_string(i) + ")");
    }
    return out;
}

std::uint64_t bass_number_koszul(const TowerResult& tower, int i, bool verify_stability) {
    std::vector<std::uint64_t> all = bass_numbers_koszul(tower, verify_stability);
    if (i < 0 || i >= static_cast<int>(all.size())) return 0;
    return all[static_cast<std::size_t>(i)];
}

bool koszul_concentrated_at_socle(GradedPieceSource& source, int index,
                                  const CoefficientRing& ring, bool with_p, int radius,
                                  int max_moved, std::string* witness) {
    const int n = source.ideal().n;
    std::vector<int> base = socle_base(n);

    // Enumerate bases differing from the socle base in <= max_moved
    // coordinates, each moved within the given radius.
    std::vector<std::vector<int>> bases;
    std::vector<int> moved;
    auto choose = [&](auto&& self, int from, int left) -> void {
        if (!moved.empty()) {
            std::vector<std::vector<int>> partial{base};
            for (int k : moved) {
                std::vector<std::vector<int>> next;
                for (const auto& b : partial)
                    for (int v = -1 - radius; v <= -1 + radius; ++v) {
                        if (v == -1) continue;
                        std::vector<int> c = b;
                        c[k] = v;
                        next.push_back(std::move(c));
                    }
                partial = std::move(next);
            }
            bases.insert(bases.end(), partial.begin(), partial.end());
        }
        if (left == 0) return;
        for (int k = from; k < n; ++k) {
            moved.push_back(k);
            self(self, k + 1, left - 1);
            moved.pop_back();
        }
    };
    choose(choose, 0, max_moved);

    for (const auto& b : bases) {
        Window w;
        w.lo = b;
        w.hi = b;
        for (int k = 0; k < n; ++k) w.hi[k] += 1;
        GradedLocalCohomology m = local_cohomology_window(source, index, w, ring);
        KoszulStrand strand = koszul_strand(m, b, with_p);
        std::vector<CanonicalModule> h = koszul_strand_cohomology(strand);
        for (std::size_t t = 0; t < h.size(); ++t) {
            if (!h[t].is_zero()) {
                if (witness)
                    *witness = "strand at base " + degree_str(b) + " has " +
                               h[t].cls.str() + " at position " + std::to_string(t);
                return false;
            }
        }
    }
    return true;
}

namespace {

Window table_window(const TableOptions& options, int n) {
    Window w = options.window.value_or(Window::box(n, -1, 0));
    if (static_cast<int>(w.lo.size()) != n) throw Error("window dimension mismatch");
    for (int k = 0; k < n; ++k)
        if (w.lo[k] > -1 || w.hi[k] < 0)
            throw Error("window must contain the socle box {-1,0}^n");
    return w;
}

std::unique_ptr<GradedPieceSource> make_source(const MonomialIdeal& ideal,
                                               const TableOptions& options) {
    return options.use_fast_path ? make_fast_source(ideal) : make_cech_source(ideal);
}

std::uint32_t certified_level_over(GradedPieceSource& source, const Window& window,
                                   std::uint64_t p) {
    std::uint32_t v = 0;
    const std::size_t cells = window.cells();
    for (std::size_t cell = 0; cell < cells; ++cell)
        v = std::max(v, source.coboundary_valuation(window.degree(cell), p));
    return v + 1;
}

LyubeznikTable assemble_table(const RingSpec& spec, const TableOptions& options) {
    validate(spec);
    const int n = spec.n();
    const int d = krull_dimension(spec);
    const Window window = table_window(options, n);
    const bool mixed = spec.mode == RingSpec::Mode::Mixed;
    const bool tower_route = mixed && spec.include_p;
    const int top_index = n + (mixed ? 1 : 0); // dim of the ambient regular ring

    LyubeznikTable table;
    table.mode = spec.mode;
    table.d = d;
    table.provenance.pipeline = options.use_fast_path ? "simplicial" : "cech";
    table.provenance.p = spec.p;
    table.provenance.include_p = spec.include_p;
    table.provenance.window = window;

    auto column = [&](GradedPieceSource& source, int j) -> std::vector<std::uint64_t> {
        const int index = top_index - j;
        if (tower_route) {
            const std::uint32_t lstar = certified_level_over(source, window, spec.p);
            if (options.max_level && *options.max_level < lstar + 1)
                throw ResourceLimitError(
                    "level cap " + std::to_string(*options.max_level) +
                    " is below the certified tower height " + std::to_string(lstar + 1));
            TowerResult tower =
                mixed_tower(spec, index, window, source, options.extra_levels);
            return bass_numbers_koszul(tower, options.extra_levels >= 1);
        }
        const CoefficientRing ring = mixed ? CoefficientRing::padic(spec.p)
                                           : CoefficientRing::prime_field(spec.p);
        GradedLocalCohomology m = local_cohomology_window(source, index, window, ring);
        return bass_numbers_koszul(m);
    };

    std::vector<std::vector<std::uint64_t>> columns;
    if (options.jobs > 1) {
        columns = parallel_map(static_cast<std::size_t>(d) + 1, options.jobs,
                               [&](std::size_t j) {
                                   auto source = make_source(spec.ideal, options);
                                   return column(*source, static_cast<int>(j));
                               });
    } else {
        auto source = make_source(spec.ideal, options);
        for (int j = 0; j <= d; ++j) columns.push_back(column(*source, j));
        if (tower_route)
            table.provenance.certified_level =
                certified_level_over(*source, window, spec.p);
    }
    if (tower_route) {
        if (options.jobs > 1) {
            auto source = make_source(spec.ideal, options);
            table.provenance.certified_level =
                certified_level_over(*source, window, spec.p);
        }
        table.provenance.levels_used =
            table.provenance.certified_level + 1 + options.extra_levels;
    }

    table.entries.assign(d + 1, std::vector<std::uint64_t>(d + 1, 0));
    for (int j = 0; j <= d; ++j) {
        const auto& v = columns[static_cast<std::size_t>(j)];
        for (int i = 0; i < static_cast<int>(v.size()); ++i) {
            if (i <= d) {
                table.entries[i][j] = v[static_cast<std::size_t>(i)];
            } else if (v[static_cast<std::size_t>(i)] != 0) {
                throw PipelineError("nonzero Bass number above the ring dimension at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }

    if (options.check_socle_concentration) {
        auto source = make_source(spec.ideal, options);
        for (int j = 0; j <= d; ++j) {
            const int index = top_index - j;
            std::string witness;
            bool ok = true;
            if (tower_route) {
                const std::uint32_t lstar = certified_level_over(*source, window, spec.p);
                for (std::uint32_t level = lstar; level <= lstar + 1 && ok; ++level)
                    ok = koszul_concentrated_at_socle(
                        *source, index - 1, CoefficientRing::cyclic(spec.p, level), true,
                        2, 2, &witness);
            } else {
                const CoefficientRing ring = mixed
                                                 ? CoefficientRing::padic(spec.p)
                                                 : CoefficientRing::prime_field(spec.p);
                ok = koszul_concentrated_at_socle(*source, index, ring, mixed, 2, 2,
                                                  &witness);
            }
            if (!ok)
                throw PipelineError("Ext strand not concentrated at the socle degree: " +
                                    witness);
        }
    }
    return table;
}

} // namespace

LyubeznikTable equal_char_table(const MonomialIdeal& ideal, std::uint64_t p,
                                const TableOptions& options) {
    RingSpec spec;
    spec.mode = RingSpec::Mode::EqualChar;
    spec.p = p;
    spec.ideal = ideal;
    spec.include_p = false;
    return assemble_table(spec, options);
}

LyubeznikTable mixed_table(const MonomialIdeal& ideal, std::uint64_t p, bool include_p,
                           const TableOptions& options) {
    RingSpec spec;
    spec.mode = RingSpec::Mode::Mixed;
    spec.p = p;
    spec.ideal = ideal;
    spec.include_p = include_p;
    return assemble_table(spec, options);
}

LyubeznikTable table_for(const RingSpec& spec, const TableOptions& options) {
    return assemble_table(spec, options);
}

PropertyReport verify_table_properties(const LyubeznikTable& table) {
    PropertyReport report;
    auto add = [&](const std::string& name, bool pass, const std::string& witness) {
        report.items.push_back({name, pass, witness});
    };

    const int d = table.d;
    const int rows = static_cast<int>(table.entries.size());
    bool rect = rows >= d + 1;
    for (const auto& row : table.entries)
        rect = rect && static_cast<int>(row.size()) == (rows ? static_cast<int>(table.entries[0].size()) : 0);
    const int cols = rect && rows ? static_cast<int>(table.entries[0].size()) : 0;
    rect = rect && cols >= d + 1;
    add("rectangular with at least (d+1)x(d+1) entries", rect,
        rect ? "" : "entries do not cover a (d+1)x(d+1) block");
    if (!rect) return report;

    auto first_nonzero = [&](auto&& cond) -> std::optional<std::pair<int, int>> {
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (cond(i, j) && table.at(i, j) != 0) return std::make_pair(i, j);
        return std::nullopt;
    };
    auto spot = [](const std::pair<int, int>& ij) {
        return "nonzero at (" + std::to_string(ij.first) + "," +
               std::to_string(ij.second) + ")";
    };

    auto above_d = first_nonzero([&](int i, int) { return i > d; });
    add("vanishing above the ring dimension (i > d)", !above_d,
        above_d ? spot(*above_d) : "");
    auto beyond_d = first_nonzero([&](int, int j) { return j > d; });
    add("vanishing beyond the ring dimension (j > d)", !beyond_d,
        beyond_d ? spot(*beyond_d) : "");

    if (table.mode == RingSpec::Mode::EqualChar) {
        auto low = first_nonzero([&](int i, int j) { return i > j; });
        add("vanishing below the diagonal (i > j)", !low, low ? spot(*low) : "");
    } else {
        auto low = first_nonzero([&](int i, int j) { return i > j + 1; });
        add("vanishing below the superdiagonal (i > j+1)", !low, low ? spot(*low) : "");
    }

    const bool corner = table.at(d, d) != 0;
    add("highest entry (d,d) nonzero", corner,
        corner ? "" : "entry (d,d) is zero with d = " + std::to_string(d));
    return report;
}

TableComparison compare_tables(const MonomialIdeal& ideal, std::uint64_t p,
                               const TableOptions& options) {
    TableComparison cmp;
    cmp.equal_char = equal_char_table(ideal, p, options);
    cmp.mixed = mixed_table(ideal, p, true, options);
    if (cmp.equal_char.d != cmp.mixed.d)
        throw PipelineError("the two pipelines disagree on the ring dimension");
    cmp.equal = true;
    for (int i = 0; i <= cmp.equal_char.d; ++i)
        for (int j = 0; j <= cmp.equal_char.d; ++j)
            if (cmp.equal_char.at(i, j) != cmp.mixed.at(i, j)) {
                cmp.equal = false;
                cmp.diff.emplace_back(i, j);
            }
    return cmp;
}

InvarianceReport invariance_add_variable(const RingSpec& spec,
                                         const TableOptions& options) {
    RingSpec larger = spec;
    larger.ideal.n = spec.ideal.n + 1;
    larger.ideal.gens.push_back(1u << spec.ideal.n);
    larger.ideal = minimalize(larger.ideal);
    TableOptions larger_options = options;
    larger_options.window.reset(); // windows are per-variable; use the default

    InvarianceReport report;
    report.original = table_for(spec, options);
    report.enlarged = table_for(larger, larger_options);
    report.pass = report.original.same_numbers(report.enlarged);
    return report;
}

BocksteinReport bockstein_ranks(const MonomialIdeal& ideal, int index, std::uint64_t p,
                                const Window& window) {
    CoefficientRing::check_prime(p);
    BocksteinReport report;
    report.index = index;
    report.p = p;
    report.window = window;
    const std::size_t cells = window.cells();
    for (std::size_t cell = 0; cell < cells; ++cell) {
        DegreeStrand strand = cech_strand(ideal, window.degree(cell));
        std::size_t rank = 0;
        if (index >= 0 && index + 1 < static_cast<int>(strand.summands.size())) {
            IntMatrix beta = bockstein_on_complex(strand.dims(), strand.diffs,
                                                  static_cast<std::size_t>(index), p);
            if (beta.rows() > 0 && beta.cols() > 0) rank = rank_mod_p(beta, p);
        }
        report.ranks.push_back(rank);
        report.total_rank += rank;
    }
    return report;
}

} // namespace lyutab
