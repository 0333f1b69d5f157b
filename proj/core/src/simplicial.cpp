#include "lyutab/simplicial.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "lyutab/errors.hpp"

namespace lyutab {

namespace {

constexpr int kMaxVertices = 25;

void check_ground_set(int n) {
    if (n < 0 || n > kMaxVertices)
        throw ResourceLimitError("vertex count out of range: " + std::to_string(n));
}

int popcount(std::uint32_t m) { return std::popcount(m); }

} // namespace

SimplicialComplex make_complex(int n, const std::vector<std::uint32_t>& faces) {
    check_ground_set(n);
    const std::uint32_t ground = n == 32 ? ~0u : ((1u << n) - 1);
    std::vector<std::uint32_t> fs;
    fs.reserve(faces.size());
    for (std::uint32_t f : faces) {
        if ((f & ~ground) != 0)
            throw FaceNotInComplexError("face uses a vertex outside the ground set");
        fs.push_back(f);
    }
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    std::vector<std::uint32_t> maximal;
    for (std::uint32_t f : fs) {
        bool dominated = false;
        for (std::uint32_t g : fs)
            if (g != f && (f & ~g) == 0) {
                dominated = true;
                break;
            }
        if (!dominated) maximal.push_back(f);
    }
    return SimplicialComplex{n, maximal};
}

SimplicialComplex void_complex(int n) {
    check_ground_set(n);
    return SimplicialComplex{n, {}};
}

SimplicialComplex irrelevant_complex(int n) { return make_complex(n, {0u}); }

SimplicialComplex full_simplex(int n) {
    check_ground_set(n);
    return make_complex(n, {n == 0 ? 0u : (1u << n) - 1});
}

SimplicialComplex simplex_boundary(int n) {
    check_ground_set(n);
    if (n == 0) return void_complex(0);
    std::vector<std::uint32_t> fs;
    const std::uint32_t full = (1u << n) - 1;
    for (int v = 0; v < n; ++v) fs.push_back(full & ~(1u << v));
    return make_complex(n, fs);
}

bool SimplicialComplex::contains(std::uint32_t face) const {
    for (std::uint32_t g : facets)
        if ((face & ~g) == 0) return true;
    return false;
}

int SimplicialComplex::dim() const {
    if (is_void()) return -2;
    int d = -1;
    for (std::uint32_t f : facets) d = std::max(d, popcount(f) - 1);
    return d;
}

std::vector<std::uint32_t> SimplicialComplex::all_faces() const {
    std::set<std::uint32_t> out;
    for (std::uint32_t f : facets) {
        std::uint32_t s = f;
        while (true) {
            out.insert(s);
            if (s == 0) break;
            s = (s - 1) & f;
        }
    }
    return {out.begin(), out.end()};
}

std::vector<std::uint32_t> SimplicialComplex::faces_of_dim(int k) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t f : all_faces())
        if (popcount(f) == k + 1) out.push_back(f);
    return out;
}

long SimplicialComplex::reduced_euler() const {
    long chi = 0;
    for (std::uint32_t f : all_faces()) chi += (popcount(f) % 2 == 0) ? -1 : 1;
    return chi;
}

SimplicialComplex restriction(const SimplicialComplex& k, std::uint32_t w) {
    if (k.is_void()) return void_complex(k.n);
    std::vector<std::uint32_t> fs;
    for (std::uint32_t f : k.facets) fs.push_back(f & w);
    return make_complex(k.n, fs);
}

SimplicialComplex link(const SimplicialComplex& k, std::uint32_t face) {
    if (!k.contains(face)) throw FaceNotInComplexError("link of a nonface");
    std::vector<std::uint32_t> fs;
    for (std::uint32_t f : k.facets)
        if ((face & ~f) == 0) fs.push_back(f & ~face);
    return make_complex(k.n, fs);
}

SimplicialComplex alexander_dual(const SimplicialComplex& k) {
    check_ground_set(k.n);
    if (k.n > 20) throw ResourceLimitError("alexander dual: ground set too large");
    const std::uint32_t full = k.n == 0 ? 0u : (1u << k.n) - 1;
    std::vector<std::uint32_t> fs;
    for (std::uint32_t f = 0; f <= full; ++f) {
        if (!k.contains(full & ~f)) fs.push_back(f);
        if (full == 0) break;
    }
    return make_complex(k.n, fs);
}

SimplicialComplex cone(const SimplicialComplex& k) {
    check_ground_set(k.n + 1);
    const std::uint32_t apex = 1u << k.n;
    if (k.is_void()) return make_complex(k.n + 1, {apex});
    std::vector<std::uint32_t> fs;
    for (std::uint32_t f : k.facets) fs.push_back(f | apex);
    return make_complex(k.n + 1, fs);
}

std::vector<std::size_t> CochainComplex::dims() const {
    std::vector<std::size_t> out;
    out.reserve(faces.size());
    for (const auto& f : faces) out.push_back(f.size());
    return out;
}

const std::vector<std::uint32_t>* CochainComplex::faces_of_degree(int degree) const {
    int pos = degree + 1;
    if (pos < 0 || pos >= static_cast<int>(faces.size())) return nullptr;
    return &faces[pos];
}

CochainComplex reduced_cochain_complex(const SimplicialComplex& k) {
    CochainComplex c;
    if (k.is_void()) return c;
    const int d = k.dim();
    for (int deg = -1; deg <= d; ++deg) c.faces.push_back(k.faces_of_dim(deg));
    for (int t = 0; t + 1 < static_cast<int>(c.faces.size()); ++t) {
        const auto& lo = c.faces[t];
        const auto& hi = c.faces[t + 1];
        IntMatrix m(hi.size(), lo.size());
        for (std::size_t r = 0; r < hi.size(); ++r) {
            std::uint32_t tau = hi[r];
            int idx = 0;
            for (std::uint32_t rem = tau; rem != 0; rem &= rem - 1, ++idx) {
                std::uint32_t v = rem & (~rem + 1);
                std::uint32_t sub = tau & ~v;
                auto it = std::lower_bound(lo.begin(), lo.end(), sub);
                m(r, it - lo.begin()) = (idx % 2 == 0) ? 1 : -1;
            }
        }
        c.diffs.push_back(std::move(m));
    }
    return c;
}

CanonicalModule reduced_cohomology_module(const SimplicialComplex& k, int degree,
                                          const CoefficientRing& ring) {
    CochainComplex c = reduced_cochain_complex(k);
    const int pos = degree + 1;
    const int len = static_cast<int>(c.faces.size());
    if (pos < 0 || pos >= len) {
        CanonicalModule zero;
        zero.ring = ring;
        zero.cls.ring = ring;
        return zero;
    }
    const std::size_t amb = c.faces[pos].size();
    const IntMatrix f = pos > 0 ? c.diffs[pos - 1] : IntMatrix(amb, 0);
    const IntMatrix g = pos + 1 < len ? c.diffs[pos] : IntMatrix(0, amb);
    return cohomology_position(f, uniform_orders(amb, ring), g,
                               uniform_orders(g.rows(), ring), ring);
}

std::vector<CanonicalModule> reduced_cohomology(const SimplicialComplex& k,
                                                const CoefficientRing& ring) {
    CochainComplex c = reduced_cochain_complex(k);
    return complex_cohomology(c.dims(), c.diffs, ring);
}

ModuleClass reduced_cohomology_class(const SimplicialComplex& k, int degree,
                                     const CoefficientRing& ring) {
    return reduced_cohomology_module(k, degree, ring).cls;
}

IntMatrix cochain_restriction(const CochainComplex& sup, const CochainComplex& sub,
                              int degree) {
    static const std::vector<std::uint32_t> kNone;
    const auto& big = sup.faces_of_degree(degree) ? *sup.faces_of_degree(degree) : kNone;
    const auto& small = sub.faces_of_degree(degree) ? *sub.faces_of_degree(degree) : kNone;
    IntMatrix m(small.size(), big.size());
    for (std::size_t r = 0; r < small.size(); ++r) {
        auto it = std::lower_bound(big.begin(), big.end(), small[r]);
        if (it == big.end() || *it != small[r])
            throw FaceNotInComplexError("restriction target is not a subcomplex");
        m(r, it - big.begin()) = 1;
    }
    return m;
}

IntMatrix simplicial_bockstein(const SimplicialComplex& k, int degree, std::uint64_t p) {
    CochainComplex c = reduced_cochain_complex(k);
    const int pos = degree + 1;
    if (pos < 0 || pos >= static_cast<int>(c.faces.size())) return IntMatrix(0, 0);
    return bockstein_on_complex(c.dims(), c.diffs, pos, p);
}

} // namespace lyutab
