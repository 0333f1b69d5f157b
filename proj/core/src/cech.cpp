#include "lyutab/cech.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <tuple>

#include "lyutab/errors.hpp"
#include "lyutab/smith.hpp"

namespace lyutab {

namespace {

std::uint32_t negative_support(const std::vector<int>& a) {
    std::uint32_t t = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] < 0) t |= 1u << k;
    return t;
}

CanonicalModule zero_module(const CoefficientRing& ring) {
    return cohomology_position(IntMatrix(0, 0), {}, IntMatrix(0, 0), {}, ring);
}

// The ring itself as a one-generator module (the r = 0 strand at a >= 0).
CanonicalModule unit_module(const CoefficientRing& ring) {
    return cohomology_position(IntMatrix(1, 0), uniform_orders(1, ring), IntMatrix(0, 1),
                               {}, ring);
}

std::uint32_t max_divisor_valuation(const IntMatrix& m, std::uint64_t p) {
    std::uint32_t v = 0;
    mpz_class pz = p;
    for (mpz_class d : smith_normal_form(m).divisors()) {
        std::uint32_t w = 0;
        while (d != 0 && mpz_divisible_p(d.get_mpz_t(), pz.get_mpz_t())) {
            d /= pz;
            ++w;
        }
        v = std::max(v, w);
    }
    return v;
}

} // namespace

std::vector<std::size_t> DegreeStrand::dims() const {
    std::vector<std::size_t> out;
    out.reserve(summands.size());
    for (const auto& s : summands) out.push_back(s.size());
    return out;
}

DegreeStrand cech_strand(const MonomialIdeal& ideal, const std::vector<int>& a) {
    if (static_cast<int>(a.size()) != ideal.n)
        throw Error("cech_strand: degree length mismatch");
    const std::size_t r = ideal.gens.size();
    if (r > 20) throw ResourceLimitError("too many generators for strand enumeration");
    const std::uint32_t neg = negative_support(a);

    DegreeStrand strand;
    strand.summands.resize(r + 1);
    std::vector<std::uint32_t> supp(std::size_t(1) << r, 0);
    for (std::uint32_t f = 0; f < (1u << r); ++f) {
        if (f != 0) {
            std::uint32_t low = f & (~f + 1);
            supp[f] = supp[f & (f - 1)] | ideal.gens[std::countr_zero(low)];
        }
        if ((neg & ~supp[f]) == 0)
            strand.summands[std::popcount(f)].push_back(f);
    }
    for (std::size_t c = 0; c + 1 <= r; ++c) {
        const auto& lo = strand.summands[c];
        const auto& hi = strand.summands[c + 1];
        IntMatrix m(hi.size(), lo.size());
        for (std::size_t row = 0; row < hi.size(); ++row) {
            std::uint32_t g = hi[row];
            int idx = 0;
            for (std::uint32_t rem = g; rem != 0; rem &= rem - 1, ++idx) {
                std::uint32_t bit = rem & (~rem + 1);
                auto it = std::lower_bound(lo.begin(), lo.end(), g & ~bit);
                if (it != lo.end() && *it == (g & ~bit))
                    m(row, it - lo.begin()) = (idx % 2 == 0) ? 1 : -1;
            }
        }
        strand.diffs.push_back(std::move(m));
    }
    return strand;
}

Window Window::box(int n, int low, int high) {
    if (low > high) throw Error("window: low > high");
    Window w;
    w.lo.assign(n, low);
    w.hi.assign(n, high);
    return w;
}

std::size_t Window::cells() const {
    std::size_t total = 1;
    for (std::size_t k = 0; k < lo.size(); ++k) {
        total *= static_cast<std::size_t>(hi[k] - lo[k] + 1);
        if (total > (1u << 22)) throw ResourceLimitError("window too large");
    }
    return total;
}

std::vector<int> Window::degree(std::size_t cell) const {
    std::vector<int> a(lo.size());
    for (std::size_t k = lo.size(); k-- > 0;) {
        std::size_t w = static_cast<std::size_t>(hi[k] - lo[k] + 1);
        a[k] = lo[k] + static_cast<int>(cell % w);
        cell /= w;
    }
    return a;
}

std::optional<std::size_t> Window::cell_of(const std::vector<int>& a) const {
    if (a.size() != lo.size()) return std::nullopt;
    std::size_t cell = 0;
    for (std::size_t k = 0; k < lo.size(); ++k) {
        if (a[k] < lo[k] || a[k] > hi[k]) return std::nullopt;
        cell = cell * static_cast<std::size_t>(hi[k] - lo[k] + 1) +
               static_cast<std::size_t>(a[k] - lo[k]);
    }
    return cell;
}

IntMatrix GradedPieceSource::transition(const std::vector<int>& a, int index,
                                        std::uint64_t p, std::uint32_t level) {
    const CanonicalModule& src = module_at(a, index, CoefficientRing::cyclic(p, level));
    const CanonicalModule& dst =
        module_at(a, index, CoefficientRing::cyclic(p, level + 1));
    if (src.ambient != dst.ambient)
        throw PipelineError("tower levels disagree on the ambient strand");
    IntMatrix phi = IntMatrix::identity(src.ambient);
    for (std::size_t i = 0; i < src.ambient; ++i) phi(i, i) = p;
    return induced_map(src, dst, phi, true);
}

IntMatrix GradedPieceSource::pmap(const std::vector<int>& a, int index, std::uint64_t p,
                                  std::uint32_t level) {
    const CanonicalModule& m = module_at(a, index, CoefficientRing::cyclic(p, level));
    IntMatrix e = IntMatrix::identity(m.gens());
    for (std::size_t i = 0; i < m.gens(); ++i) e(i, i) = p;
    return reduce_rows_mod_orders(std::move(e), m.orders);
}

namespace {

class CechSource final : public GradedPieceSource {
  public:
    explicit CechSource(MonomialIdeal ideal) : GradedPieceSource(std::move(ideal)) {}

    const CanonicalModule& module_at(const std::vector<int>& a, int index,
                                     const CoefficientRing& ring) override {
        auto key = std::make_tuple(a, index, ring);
        auto it = modules_.find(key);
        if (it != modules_.end()) return it->second;
        const DegreeStrand& s = strand(a);
        const int len = static_cast<int>(s.summands.size());
        CanonicalModule cm;
        if (index < 0 || index >= len) {
            cm = zero_module(ring);
        } else {
            const std::size_t amb = s.summands[index].size();
            const IntMatrix f = index > 0 ? s.diffs[index - 1] : IntMatrix(amb, 0);
            const IntMatrix g = index + 1 < len ? s.diffs[index] : IntMatrix(0, amb);
            cm = cohomology_position(f, uniform_orders(amb, ring), g,
                                     uniform_orders(g.rows(), ring), ring);
        }
        return modules_.emplace(std::move(key), std::move(cm)).first->second;
    }

    IntMatrix xmap(const std::vector<int>& a, int k, int index,
                   const CoefficientRing& ring) override {
        std::vector<int> b = a;
        b[k] += 1;
        const CanonicalModule& src = module_at(a, index, ring);
        const CanonicalModule& dst = module_at(b, index, ring);
        // Summands present at a stay present at a + e_k, and multiplication
        // by x_k is the identity on each surviving basis monomial.
        const auto& from = strand(a).summands;
        const auto& to = strand(b).summands;
        IntMatrix phi(dst.ambient, src.ambient);
        if (index >= 0 && index < static_cast<int>(from.size())) {
            const auto& lo = from[index];
            const auto& hi = to[index];
            for (std::size_t c = 0; c < lo.size(); ++c) {
                auto it = std::lower_bound(hi.begin(), hi.end(), lo[c]);
                if (it == hi.end() || *it != lo[c])
                    throw PipelineError("strand summand lost along x-multiplication");
                phi(it - hi.begin(), c) = 1;
            }
        }
        return induced_map(src, dst, phi, true);
    }

    std::uint32_t coboundary_valuation(const std::vector<int>& a,
                                       std::uint64_t p) override {
        auto key = std::make_pair(a, p);
        auto it = vals_.find(key);
        if (it != vals_.end()) return it->second;
        std::uint32_t v = 0;
        for (const IntMatrix& d : strand(a).diffs)
            v = std::max(v, max_divisor_valuation(d, p));
        return vals_.emplace(std::move(key), v).first->second;
    }

  private:
    const DegreeStrand& strand(const std::vector<int>& a) {
        auto it = strands_.find(a);
        if (it != strands_.end()) return it->second;
        return strands_.emplace(a, cech_strand(ideal_, a)).first->second;
    }

    std::map<std::vector<int>, DegreeStrand> strands_;
    std::map<std::tuple<std::vector<int>, int, CoefficientRing>, CanonicalModule>
        modules_;
    std::map<std::pair<std::vector<int>, std::uint64_t>, std::uint32_t> vals_;
};

class FastSource final : public GradedPieceSource {
  public:
    explicit FastSource(MonomialIdeal ideal)
        : GradedPieceSource(std::move(ideal)),
          sigma_(dual_generated_complex(ideal_)) {}

    const CanonicalModule& module_at(const std::vector<int>& a, int index,
                                     const CoefficientRing& ring) override {
        return piece(negative_support(a), index, ring);
    }

    IntMatrix xmap(const std::vector<int>& a, int k, int index,
                   const CoefficientRing& ring) override {
        const std::uint32_t t = negative_support(a);
        const CanonicalModule& src = piece(t, index, ring);
        if (a[k] != -1) return IntMatrix::identity(src.gens());
        const std::uint32_t t2 = t & ~(1u << k);
        auto key = std::make_tuple(t, k, index, ring);
        auto it = xmaps_.find(key);
        if (it != xmaps_.end()) return it->second;
        const CanonicalModule& dst = piece(t2, index, ring);
        IntMatrix phi(dst.ambient, src.ambient);
        if (!ideal_.gens.empty() && t2 != 0)
            phi = cochain_restriction(cochain(t), cochain(t2), index - 2);
        if (phi.rows() != dst.ambient || phi.cols() != src.ambient)
            throw PipelineError("restriction shape mismatch");
        IntMatrix m = induced_map(src, dst, phi, true);
        return xmaps_.emplace(std::move(key), std::move(m)).first->second;
    }

    std::uint32_t coboundary_valuation(const std::vector<int>& a,
                                       std::uint64_t p) override {
        const std::uint32_t t = negative_support(a);
        if (ideal_.gens.empty() || t == 0) return 0;
        auto key = std::make_pair(t, p);
        auto it = vals_.find(key);
        if (it != vals_.end()) return it->second;
        std::uint32_t v = 0;
        for (const IntMatrix& d : cochain(t).diffs)
            v = std::max(v, max_divisor_valuation(d, p));
        return vals_.emplace(key, v).first->second;
    }

  private:
    const CanonicalModule& piece(std::uint32_t t, int index,
                                 const CoefficientRing& ring) {
        auto key = std::make_tuple(t, index, ring);
        auto it = modules_.find(key);
        if (it != modules_.end()) return it->second;
        CanonicalModule cm;
        if (ideal_.gens.empty()) {
            // H^0 of the zero ideal is the ring itself; nothing else survives.
            cm = (t == 0 && index == 0) ? unit_module(ring) : zero_module(ring);
        } else if (t == 0) {
            // Non-negative degrees: all Cech summands present, a cone.
            cm = zero_module(ring);
        } else {
            const CochainComplex& c = cochain(t);
            const int pos = index - 1; // cochain degree index-2
            const int len = static_cast<int>(c.faces.size());
            if (pos < 0 || pos >= len) {
                cm = zero_module(ring);
            } else {
                const std::size_t amb = c.faces[pos].size();
                const IntMatrix f = pos > 0 ? c.diffs[pos - 1] : IntMatrix(amb, 0);
                const IntMatrix g = pos + 1 < len ? c.diffs[pos] : IntMatrix(0, amb);
                cm = cohomology_position(f, uniform_orders(amb, ring), g,
                                         uniform_orders(g.rows(), ring), ring);
            }
        }
        return modules_.emplace(std::move(key), std::move(cm)).first->second;
    }

    const CochainComplex& cochain(std::uint32_t t) {
        auto it = cochains_.find(t);
        if (it != cochains_.end()) return it->second;
        return cochains_.emplace(t, reduced_cochain_complex(restriction(sigma_, t)))
            .first->second;
    }

    SimplicialComplex sigma_;
    std::map<std::uint32_t, CochainComplex> cochains_;
    std::map<std::tuple<std::uint32_t, int, CoefficientRing>, CanonicalModule> modules_;
    std::map<std::tuple<std::uint32_t, int, int, CoefficientRing>, IntMatrix> xmaps_;
    std::map<std::pair<std::uint32_t, std::uint64_t>, std::uint32_t> vals_;
};

} // namespace

std::unique_ptr<GradedPieceSource> make_cech_source(const MonomialIdeal& ideal) {
    return std::make_unique<CechSource>(ideal);
}

std::unique_ptr<GradedPieceSource> make_fast_source(const MonomialIdeal& ideal) {
    return std::make_unique<FastSource>(ideal);
}

const CanonicalModule& GradedLocalCohomology::piece_at(const std::vector<int>& a) const {
    auto cell = window.cell_of(a);
    if (!cell) throw Error("degree outside the window");
    return pieces[*cell];
}

GradedLocalCohomology local_cohomology_window(GradedPieceSource& source, int index,
                                              const Window& window,
                                              const CoefficientRing& ring) {
    GradedLocalCohomology out;
    out.ideal = source.ideal();
    out.index = index;
    out.ring = ring;
    out.window = window;
    const std::size_t cells = window.cells();
    const int n = static_cast<int>(window.lo.size());
    out.pieces.reserve(cells);
    for (std::size_t cell = 0; cell < cells; ++cell)
        out.pieces.push_back(source.module_at(window.degree(cell), index, ring));
    out.xmaps.assign(n, {});
    for (int k = 0; k < n; ++k) {
        out.xmaps[k].resize(cells);
        for (std::size_t cell = 0; cell < cells; ++cell) {
            std::vector<int> a = window.degree(cell);
            a[k] += 1;
            if (window.cell_of(a)) {
                a[k] -= 1;
                out.xmaps[k][cell] = source.xmap(a, k, index, ring);
            }
        }
    }
    if (ring.kind != CoefficientRing::Kind::Integers) {
        out.pmaps.resize(cells);
        for (std::size_t cell = 0; cell < cells; ++cell) {
            const CanonicalModule& m = out.pieces[cell];
            IntMatrix e = IntMatrix::identity(m.gens());
            for (std::size_t i = 0; i < m.gens(); ++i) e(i, i) = ring.p;
            out.pmaps[cell] = reduce_rows_mod_orders(std::move(e), m.orders);
        }
    }
    return out;
}

ModuleClass cech_graded_piece(const MonomialIdeal& ideal, int index,
                              const std::vector<int>& a, const CoefficientRing& ring) {
    auto source = make_cech_source(ideal);
    return source->module_at(a, index, ring).cls;
}

GradedLocalCohomology local_cohomology_module(const MonomialIdeal& ideal, int index,
                                              const Window& window,
                                              const CoefficientRing& ring) {
    auto source = make_cech_source(ideal);
    return local_cohomology_window(*source, index, window, ring);
}

GradedLocalCohomology simplicial_fast_path(const MonomialIdeal& ideal, int index,
                                           const Window& window,
                                           const CoefficientRing& ring) {
    auto source = make_fast_source(ideal);
    return local_cohomology_window(*source, index, window, ring);
}

TowerResult mixed_tower(const RingSpec& spec, int index, const Window& window,
                        GradedPieceSource& source, std::uint32_t extra_levels) {
    if (spec.mode != RingSpec::Mode::Mixed || !spec.include_p)
        throw PNotInIdealError("the tower route requires p among the generators");
    const std::uint64_t p = spec.p;
    const int c = index - 1; // J-side index of the levels

    TowerResult tower;
    tower.index = index;
    tower.p = p;
    tower.window = window;

    const std::size_t cells = window.cells();
    std::uint32_t v = 0;
    for (std::size_t cell = 0; cell < cells; ++cell)
        v = std::max(v, source.coboundary_valuation(window.degree(cell), p));
    tower.certified_level = v + 1;

    const std::uint32_t top = tower.certified_level + 1 + extra_levels;
    for (std::uint32_t level = 1; level <= top; ++level)
        tower.levels.push_back(
            local_cohomology_window(source, c, window, CoefficientRing::cyclic(p, level)));
    for (std::uint32_t level = 1; level < top; ++level) {
        std::vector<IntMatrix> step(cells);
        for (std::size_t cell = 0; cell < cells; ++cell)
            step[cell] = source.transition(window.degree(cell), c, p, level);
        tower.transitions.push_back(std::move(step));
    }

    // Limit pieces: divisible part of rank = the integral free rank at this
    // spot, torsion = the p-torsion of the next integral cohomology.
    const CoefficientRing zz = CoefficientRing::integers();
    tower.colimit.reserve(cells);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        std::vector<int> a = window.degree(cell);
        const ModuleClass here = source.module_at(a, c, zz).cls;
        const ModuleClass next = source.module_at(a, c + 1, zz).cls;
        ModuleClass lim;
        lim.ring = CoefficientRing::padic(p);
        lim.divisible_rank = here.free_rank;
        for (std::uint64_t q : next.torsion) {
            std::uint64_t w = q;
            while (w % p == 0) w /= p;
            if (w == 1) lim.torsion.push_back(q);
        }
        std::sort(lim.torsion.begin(), lim.torsion.end());
        tower.colimit.push_back(std::move(lim));
    }
    return tower;
}

} // namespace lyutab
