#include "lyutab/monomial.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "lyutab/errors.hpp"

namespace lyutab {

MonomialIdeal minimalize(MonomialIdeal ideal) {
    auto& g = ideal.gens;
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    std::vector<std::uint32_t> kept;
    for (std::uint32_t a : g) {
        bool divisible = false;
        for (std::uint32_t b : g)
            if (b != a && (b & ~a) == 0) {
                divisible = true;
                break;
            }
        if (!divisible) kept.push_back(a);
    }
    ideal.gens = std::move(kept);
    return ideal;
}

MonomialIdeal ideal_from_supports(int n, const std::vector<std::vector<int>>& supports) {
    if (n < 0 || n > 25) throw ParseError("variable count out of range");
    MonomialIdeal ideal;
    ideal.n = n;
    for (const auto& s : supports) {
        if (s.empty()) throw ParseError("a generator must not be a unit");
        std::uint32_t mask = 0;
        for (int v : s) {
            if (v < 1 || v > n)
                throw ParseError("variable index out of range: x" + std::to_string(v));
            std::uint32_t bit = 1u << (v - 1);
            if (mask & bit)
                throw NotSquareFreeError("repeated variable x" + std::to_string(v));
            mask |= bit;
        }
        ideal.gens.push_back(mask);
    }
    return minimalize(std::move(ideal));
}

std::uint32_t parse_monomial(const std::string& text, int n) {
    std::uint32_t mask = 0;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) ||
                                   text[i] == '*'))
            ++i;
    };
    skip_ws();
    if (i == text.size()) throw ParseError("empty monomial");
    while (i < text.size()) {
        if (text[i] != 'x') throw ParseError("expected a variable in '" + text + "'");
        ++i;
        if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            throw ParseError("expected a variable index in '" + text + "'");
        int v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + (text[i] - '0');
            if (v > 1'000'000) throw ParseError("variable index too large");
            ++i;
        }
        if (i < text.size() && text[i] == '^') {
            ++i;
            std::string e;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                e += text[i++];
            if (e.empty()) throw ParseError("missing exponent in '" + text + "'");
            if (e != "1")
                throw NotSquareFreeError("monomial '" + text + "' is not squarefree");
        }
        if (v < 1 || v > n)
            throw ParseError("variable index out of range: x" + std::to_string(v));
        std::uint32_t bit = 1u << (v - 1);
        if (mask & bit)
            throw NotSquareFreeError("monomial '" + text + "' is not squarefree");
        mask |= bit;
        skip_ws();
    }
    return mask;
}

std::string monomial_to_string(std::uint32_t support) {
    if (support == 0) return "1";
    std::string out;
    for (int v = 0; v < 32; ++v)
        if (support & (1u << v)) {
            if (!out.empty()) out += "*";
            out += "x" + std::to_string(v + 1);
        }
    return out;
}

void validate(const RingSpec& spec) {
    CoefficientRing::check_prime(spec.p);
    if (spec.n() < 0 || spec.n() > 25) throw ParseError("variable count out of range");
    for (std::uint32_t g : spec.ideal.gens)
        if (g == 0) throw ParseError("a generator must not be a unit");
    if (spec.mode == RingSpec::Mode::EqualChar && spec.include_p)
        throw ParseError("include_p only makes sense in mixed characteristic");
}

SimplicialComplex stanley_reisner_complex(const MonomialIdeal& ideal) {
    if (ideal.n > 20) throw ResourceLimitError("too many variables for face enumeration");
    const std::uint32_t full = ideal.n == 0 ? 0u : (1u << ideal.n) - 1;
    std::vector<std::uint32_t> faces;
    for (std::uint32_t f = 0;; ++f) {
        bool in = true;
        for (std::uint32_t g : ideal.gens)
            if ((g & ~f) == 0) {
                in = false;
                break;
            }
        if (in) faces.push_back(f);
        if (f == full) break;
    }
    return make_complex(ideal.n, faces);
}

MonomialIdeal stanley_reisner_ideal(const SimplicialComplex& complex) {
    if (complex.is_void())
        throw Error("the void complex corresponds to the unit ideal");
    if (complex.n > 20)
        throw ResourceLimitError("too many vertices for nonface enumeration");
    MonomialIdeal ideal;
    ideal.n = complex.n;
    const std::uint32_t full = complex.n == 0 ? 0u : (1u << complex.n) - 1;
    for (std::uint32_t f = 1;; ++f) {
        if (!complex.contains(f)) {
            bool minimal = true;
            for (std::uint32_t rem = f; rem != 0 && minimal; rem &= rem - 1)
                minimal = complex.contains(f & ~(rem & (~rem + 1)));
            if (minimal) ideal.gens.push_back(f);
        }
        if (f == full || full == 0) break;
    }
    return minimalize(std::move(ideal));
}

SimplicialComplex dual_generated_complex(const MonomialIdeal& ideal) {
    const std::uint32_t full = ideal.n == 0 ? 0u : (1u << ideal.n) - 1;
    std::vector<std::uint32_t> fs;
    for (std::uint32_t g : ideal.gens) fs.push_back(full & ~g);
    if (fs.empty()) return void_complex(ideal.n);
    return make_complex(ideal.n, fs);
}

int krull_dimension(const RingSpec& spec) {
    int d = stanley_reisner_complex(spec.ideal).dim() + 1;
    if (spec.mode == RingSpec::Mode::Mixed && !spec.include_p) d += 1;
    return d;
}

bool is_cohen_macaulay(const MonomialIdeal& ideal, const CoefficientRing& field) {
    SimplicialComplex delta = stanley_reisner_complex(ideal);
    if (delta.dim() < 0) return true;
    for (std::uint32_t f : delta.all_faces()) {
        SimplicialComplex lk = link(delta, f);
        int d = lk.dim();
        for (int i = -1; i < d; ++i)
            if (!reduced_cohomology_class(lk, i, field).is_zero()) return false;
    }
    return true;
}

bool is_monomial_regular_sequence(const MonomialIdeal& ideal) {
    for (std::size_t a = 0; a < ideal.gens.size(); ++a)
        for (std::size_t b = a + 1; b < ideal.gens.size(); ++b)
            if (ideal.gens[a] & ideal.gens[b]) return false;
    return true;
}

} // namespace lyutab
