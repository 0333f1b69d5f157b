#include "lyutab/subquotient.hpp"

#include <algorithm>
#include <cstdlib>

#include "lyutab/errors.hpp"

namespace lyutab {

namespace {

mpz_class pow_u64(std::uint64_t base, std::uint32_t e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

// Columns q_i * e_i for the finite-order ambient generators.
IntMatrix relation_columns(const std::vector<mpz_class>& rel) {
    std::size_t count = 0;
    for (const auto& q : rel)
        if (q != 0) ++count;
    IntMatrix out(rel.size(), count);
    std::size_t c = 0;
    for (std::size_t i = 0; i < rel.size(); ++i)
        if (rel[i] != 0) out(i, c++) = rel[i];
    return out;
}

bool uniform_value(const std::vector<mpz_class>& rel, mpz_class& value) {
    if (rel.empty()) {
        value = 0;
        return true;
    }
    for (const auto& q : rel)
        if (q != rel.front()) return false;
    value = rel.front();
    return true;
}

// The cocycle lattice L = {v : g*v lies in the span of the target relations},
// with enough Smith data to solve basis*y = v exactly.
struct LatticeSolve {
    IntMatrix basis;            // ambient x t
    IntMatrix pre;              // n x ambient; rows [t, n) must vanish on L
    std::vector<mpz_class> div; // t exact divisors
    std::size_t t = 0;

    IntMatrix solve(const IntMatrix& v) const {
        IntMatrix w = mul_dense_sparse(pre, v);
        IntMatrix y(t, v.cols());
        for (std::size_t j = 0; j < v.cols(); ++j) {
            for (std::size_t i = t; i < w.rows(); ++i)
                if (w(i, j) != 0)
                    throw NotAChainMapError("vector is not a cocycle for this position");
            for (std::size_t i = 0; i < t; ++i) {
                mpz_class q, r;
                mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), w(i, j).get_mpz_t(),
                            div[i].get_mpz_t());
                if (r != 0)
                    throw NotAChainMapError("vector misses the cocycle lattice");
                y(i, j) = q;
            }
        }
        return y;
    }
};

LatticeSolve lattice_all(std::size_t ambient) {
    LatticeSolve L;
    L.basis = IntMatrix::identity(ambient);
    L.pre = IntMatrix::identity(ambient);
    L.div.assign(ambient, mpz_class(1));
    L.t = ambient;
    return L;
}

// L = {v : g*v = 0 mod m0}; m0 = 0 means the plain integer kernel.
LatticeSolve lattice_kernel_mod(const IntMatrix& g, const mpz_class& m0) {
    const std::size_t amb = g.cols();
    SmithDecomposition snf = smith_normal_form(g);
    LatticeSolve L;
    if (m0 == 0) {
        L.t = amb - snf.rank;
        L.basis = snf.V.submatrix(0, snf.rank, amb, L.t);
        // Coordinates are the trailing rows of V^-1; leading rows certify
        // membership in the kernel.
        L.pre = IntMatrix(amb, amb);
        for (std::size_t i = 0; i < amb; ++i)
            for (std::size_t j = 0; j < amb; ++j) {
                std::size_t src = i < L.t ? snf.rank + i : i - L.t;
                L.pre(i, j) = snf.Vinv(src, j);
            }
        L.div.assign(L.t, mpz_class(1));
    } else {
        // v = V*z is a solution iff d_k * z_k = 0 mod m0, so L = V * diag(c)
        // with c_k = m0 / gcd(d_k, m0).
        L.t = amb;
        std::vector<mpz_class> c(amb, mpz_class(1));
        for (std::size_t k = 0; k < snf.rank; ++k) {
            mpz_class gg;
            mpz_gcd(gg.get_mpz_t(), snf.D(k, k).get_mpz_t(), m0.get_mpz_t());
            c[k] = m0 / gg;
        }
        L.basis = IntMatrix(amb, amb);
        for (std::size_t i = 0; i < amb; ++i)
            for (std::size_t k = 0; k < amb; ++k)
                L.basis(i, k) = snf.V(i, k) * c[k];
        L.pre = snf.Vinv;
        L.div = std::move(c);
    }
    return L;
}

// L = column span of m.
LatticeSolve lattice_span(const IntMatrix& m) {
    SmithDecomposition snf = smith_normal_form(m);
    LatticeSolve L;
    L.t = snf.rank;
    L.basis = IntMatrix(m.rows(), snf.rank);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < snf.rank; ++k)
            L.basis(i, k) = snf.Uinv(i, k) * snf.D(k, k);
    L.pre = snf.U;
    L.div.resize(snf.rank);
    for (std::size_t k = 0; k < snf.rank; ++k) L.div[k] = snf.D(k, k);
    return L;
}

LatticeSolve cocycle_lattice(const IntMatrix& g, const std::vector<mpz_class>& rel_next) {
    const std::size_t amb = g.cols();
    if (g.rows() == 0 || g.is_zero()) return lattice_all(amb);
    mpz_class q;
    if (uniform_value(rel_next, q)) return lattice_kernel_mod(g, q);
    IntMatrix padded = g.hcat(relation_columns(rel_next));
    IntMatrix ker = kernel_basis(padded);
    return lattice_span(ker.submatrix(0, 0, amb, ker.cols()));
}

mpz_class p_part(const mpz_class& d, std::uint64_t p) {
    mpz_class rest = d, pp = 1, pz = p;
    while (mpz_divisible_p(rest.get_mpz_t(), pz.get_mpz_t())) {
        rest /= pz;
        pp *= pz;
    }
    return pp;
}

std::uint32_t p_valuation(mpz_class d, std::uint64_t p) {
    std::uint32_t v = 0;
    mpz_class pz = p;
    while (d != 0 && mpz_divisible_p(d.get_mpz_t(), pz.get_mpz_t())) {
        d /= pz;
        ++v;
    }
    return v;
}

void append_prime_power_factors(const mpz_class& d, std::vector<std::uint64_t>& out) {
    if (!d.fits_ulong_p())
        throw PipelineError("torsion order exceeds the 64-bit factorization range");
    std::uint64_t n = mpz_get_ui(d.get_mpz_t());
    for (std::uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (n % q) continue;
        std::uint64_t pp = 1;
        while (n % q == 0) {
            n /= q;
            pp *= q;
        }
        out.push_back(pp);
    }
    if (n > 1) out.push_back(n);
}

ModuleClass class_from_orders(const std::vector<mpz_class>& orders,
                              const CoefficientRing& ring) {
    ModuleClass cls;
    cls.ring = ring;
    switch (ring.kind) {
        case CoefficientRing::Kind::Integers:
            for (const auto& d : orders) {
                if (d == 0)
                    ++cls.free_rank;
                else {
                    std::vector<std::uint64_t> parts;
                    append_prime_power_factors(d, parts);
                    cls.torsion.insert(cls.torsion.end(), parts.begin(), parts.end());
                }
            }
            break;
        case CoefficientRing::Kind::PAdicIntegers:
            for (const auto& d : orders) {
                if (d == 0)
                    ++cls.free_rank;
                else {
                    if (!d.fits_ulong_p())
                        throw PipelineError("p-power order exceeds 64 bits");
                    cls.torsion.push_back(mpz_get_ui(d.get_mpz_t()));
                }
            }
            break;
        case CoefficientRing::Kind::CyclicRing: {
            mpz_class full = pow_u64(ring.p, ring.level);
            for (const auto& d : orders) {
                if (d == 0)
                    throw PipelineError("free summand over a cyclic coefficient ring");
                if (d == full)
                    ++cls.free_rank;
                else
                    cls.torsion.push_back(p_valuation(d, ring.p));
            }
            break;
        }
        case CoefficientRing::Kind::PrimeField:
            for (const auto& d : orders) {
                if (d != mpz_class(ring.p))
                    throw PipelineError("non-simple order over a prime field");
                ++cls.free_rank;
            }
            break;
    }
    std::sort(cls.torsion.begin(), cls.torsion.end());
    return cls;
}

} // namespace

mpz_class ring_modulus(const CoefficientRing& ring) {
    if (!ring.has_modulus()) return 0;
    return pow_u64(ring.p, ring.kind == CoefficientRing::Kind::PrimeField ? 1 : ring.level);
}

std::vector<mpz_class> uniform_orders(std::size_t n, const CoefficientRing& ring) {
    return std::vector<mpz_class>(n, ring_modulus(ring));
}

IntMatrix reduced_mod(const IntMatrix& a, const mpz_class& m) {
    if (m == 0) return a;
    IntMatrix out(a.rows(), a.cols());
    mpz_class half = m / 2;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            mpz_class r;
            mpz_fdiv_r(r.get_mpz_t(), a(i, j).get_mpz_t(), m.get_mpz_t());
            if (r > half) r -= m;
            out(i, j) = r;
        }
    return out;
}

IntMatrix mul_dense_sparse(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw Error("matrix product shape mismatch");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j)
        for (std::size_t k = 0; k < b.rows(); ++k) {
            const mpz_class& bb = b(k, j);
            if (bb == 0) continue;
            for (std::size_t i = 0; i < a.rows(); ++i) {
                const mpz_class& aa = a(i, k);
                if (aa == 0) continue;
                mpz_addmul(out(i, j).get_mpz_t(), aa.get_mpz_t(), bb.get_mpz_t());
            }
        }
    return out;
}

IntMatrix reduce_rows_mod_orders(IntMatrix m, const std::vector<mpz_class>& orders) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (orders[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            mpz_class r;
            mpz_fdiv_r(r.get_mpz_t(), m(i, j).get_mpz_t(), orders[i].get_mpz_t());
            m(i, j) = r;
        }
    }
    return m;
}

bool maps_equal_mod_orders(const IntMatrix& a, const IntMatrix& b,
                           const std::vector<mpz_class>& target_orders) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            mpz_class d = a(i, j) - b(i, j);
            if (target_orders[i] == 0) {
                if (d != 0) return false;
            } else if (!mpz_divisible_p(d.get_mpz_t(), target_orders[i].get_mpz_t())) {
                return false;
            }
        }
    return true;
}

IntMatrix CanonicalModule::coords(const IntMatrix& ambient_columns) const {
    if (ambient_columns.rows() != ambient)
        throw Error("coords: ambient dimension mismatch");
    IntMatrix w = mul_dense_sparse(proj_pre, ambient_columns);
    // Over a ring with a modulus the projection data is only meaningful mod
    // p^level; balanced reduction also makes the vanishing checks literal.
    if (ring.has_modulus()) w = reduced_mod(w, ring_modulus(ring));
    IntMatrix y(lrank, ambient_columns.cols());
    for (std::size_t j = 0; j < ambient_columns.cols(); ++j) {
        for (std::size_t i = lrank; i < w.rows(); ++i)
            if (w(i, j) != 0) throw NotAChainMapError("image is not a cocycle");
        for (std::size_t i = 0; i < lrank; ++i) {
            mpz_class q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), w(i, j).get_mpz_t(),
                        proj_div[i].get_mpz_t());
            if (r != 0) throw NotAChainMapError("image misses the cocycle lattice");
            y(i, j) = q;
        }
    }
    return reduce_rows_mod_orders(proj_post * y, orders);
}

namespace {

// Cohomology over Z/p^level.  Every module in sight is killed by p^level, so
// the whole computation runs on balanced representatives through local_smith
// and no intermediate entry can grow.  (The integer-lattice route below
// suffers catastrophic coefficient growth on exactly these reduced matrices.)
CanonicalModule cohomology_position_mod(const IntMatrix& f_in,
                                        const std::vector<mpz_class>& rel_here,
                                        const IntMatrix& g_out,
                                        const std::vector<mpz_class>& rel_next,
                                        const CoefficientRing& ring) {
    const std::size_t amb = rel_here.size();
    const std::uint32_t level =
        ring.kind == CoefficientRing::Kind::PrimeField ? 1 : ring.level;
    const mpz_class m0 = ring_modulus(ring);

    // Cocycle lifts {v : g*v lies in the span of the target relations} are
    // the first amb coordinates of ker([g | relations]) over Z/p^level.
    IntMatrix G = reduced_mod(g_out, m0).hcat(relation_columns(rel_next));
    LocalSmithDecomposition kd = local_smith(G, ring.p, level);
    const std::size_t gmin = std::min(G.rows(), G.cols());
    IntMatrix kappa(amb, G.cols());
    for (std::size_t k = 0; k < G.cols(); ++k) {
        std::uint32_t e = k < gmin ? kd.vals[k] : level;
        mpz_class mult = pow_u64(ring.p, level - e);
        for (std::size_t i = 0; i < amb; ++i) kappa(i, k) = kd.V(i, k) * mult;
    }
    kappa = reduced_mod(kappa, m0);

    // Canonical coordinates: the cocycle module is spanned by the columns
    // b_k = p^{c_k} * Uinv(:,k) of the smith form of kappa, one summand
    // p^{c_k} R ~ R/p^{level-c_k} per kept k.
    LocalSmithDecomposition cd = local_smith(kappa, ring.p, level);
    const std::size_t cmin = std::min(kappa.rows(), kappa.cols());
    std::vector<std::uint32_t> cvals(amb, level);
    for (std::size_t k = 0; k < cmin; ++k) cvals[k] = cd.vals[k];
    const std::size_t t2 = cd.rank;

    // Image + ambient relations, written in the b-coordinates.
    IntMatrix B = reduced_mod(f_in, m0).hcat(relation_columns(rel_here));
    IntMatrix W = reduced_mod(cd.U * B, m0);
    IntMatrix Z(t2, B.cols());
    for (std::size_t i = 0; i < amb; ++i) {
        mpz_class pc = pow_u64(ring.p, cvals[i]);
        for (std::size_t j = 0; j < B.cols(); ++j) {
            mpz_class q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), W(i, j).get_mpz_t(),
                        pc.get_mpz_t());
            if (r != 0) throw NotAChainMapError("image is not a cocycle");
            if (i < t2) Z(i, j) = q;
        }
    }

    // Quotient presentation: image columns plus the torsion of the b_k.
    IntMatrix M(t2, B.cols() + t2);
    for (std::size_t i = 0; i < t2; ++i) {
        for (std::size_t j = 0; j < B.cols(); ++j) M(i, j) = Z(i, j);
        M(i, B.cols() + i) = pow_u64(ring.p, level - cvals[i]);
    }
    LocalSmithDecomposition hd = local_smith(M, ring.p, level);

    // Canonical orders p^{d_k}, ascending; units dropped; p^level = free
    // over the coefficient ring.
    std::size_t first = 0;
    while (first < t2 && hd.vals[first] == 0) ++first;
    std::vector<mpz_class> orders;
    for (std::size_t k = first; k < t2; ++k)
        orders.push_back(pow_u64(ring.p, hd.vals[k]));

    CanonicalModule cm;
    cm.ring = ring;
    cm.ambient = amb;
    cm.ambient_orders = rel_here;
    cm.orders = orders;
    cm.cls = class_from_orders(orders, ring);
    cm.lrank = t2;
    cm.proj_pre = cd.U;
    cm.proj_div.resize(t2);
    for (std::size_t k = 0; k < t2; ++k) cm.proj_div[k] = pow_u64(ring.p, cvals[k]);

    IntMatrix bmat(amb, t2);
    for (std::size_t k = 0; k < t2; ++k) {
        mpz_class pc = pow_u64(ring.p, cvals[k]);
        for (std::size_t i = 0; i < amb; ++i) bmat(i, k) = cd.Uinv(i, k) * pc;
    }
    bmat = reduced_mod(bmat, m0);
    IntMatrix kept_uinv(t2, orders.size());
    for (std::size_t c = 0; c < orders.size(); ++c)
        for (std::size_t i = 0; i < t2; ++i) kept_uinv(i, c) = hd.Uinv(i, first + c);
    cm.lift = reduce_rows_mod_orders(mul_dense_sparse(bmat, kept_uinv), rel_here);

    cm.proj_post = IntMatrix(orders.size(), t2);
    for (std::size_t r = 0; r < orders.size(); ++r)
        for (std::size_t j = 0; j < t2; ++j) cm.proj_post(r, j) = hd.U(first + r, j);
    return cm;
}

} // namespace

CanonicalModule cohomology_position(const IntMatrix& f_in,
                                    const std::vector<mpz_class>& rel_here,
                                    const IntMatrix& g_out,
                                    const std::vector<mpz_class>& rel_next,
                                    const CoefficientRing& ring) {
    const std::size_t amb = rel_here.size();
    if (f_in.rows() != amb || (g_out.rows() > 0 && g_out.cols() != amb))
        throw Error("cohomology_position: shape mismatch");
    if (ring.has_modulus())
        return cohomology_position_mod(f_in, rel_here, g_out, rel_next, ring);
    mpz_class m0 = ring_modulus(ring);
    IntMatrix f = m0 != 0 ? reduced_mod(f_in, m0) : f_in;
    IntMatrix g = m0 != 0 ? reduced_mod(g_out, m0) : g_out;

    LatticeSolve L = cocycle_lattice(g, rel_next);
    IntMatrix X = L.solve(f.hcat(relation_columns(rel_here)));
    SmithDecomposition sx = smith_normal_form(X);

    // Canonical orders: Smith divisors, units dropped; over p-local rings
    // only the p-part of each divisor survives.
    std::vector<mpz_class> orders;
    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < L.t; ++k) {
        mpz_class d = k < sx.rank ? sx.D(k, k) : mpz_class(0);
        if (d != 0 && ring.is_p_local()) d = p_part(d, ring.p);
        if (d == 1) continue;
        orders.push_back(d);
        kept.push_back(k);
    }

    CanonicalModule cm;
    cm.ring = ring;
    cm.ambient = amb;
    cm.ambient_orders = rel_here;
    cm.orders = orders;
    cm.cls = class_from_orders(orders, ring);
    cm.lrank = L.t;
    cm.proj_div = L.div;
    cm.proj_pre = std::move(L.pre);

    IntMatrix uinv_kept(L.t, kept.size());
    for (std::size_t c = 0; c < kept.size(); ++c)
        for (std::size_t i = 0; i < L.t; ++i) uinv_kept(i, c) = sx.Uinv(i, kept[c]);
    cm.lift = reduce_rows_mod_orders(mul_dense_sparse(L.basis, uinv_kept), rel_here);

    cm.proj_post = IntMatrix(kept.size(), L.t);
    for (std::size_t r = 0; r < kept.size(); ++r)
        for (std::size_t j = 0; j < L.t; ++j) cm.proj_post(r, j) = sx.U(kept[r], j);
    return cm;
}

std::vector<CanonicalModule> presented_complex_cohomology(
    const std::vector<std::vector<mpz_class>>& rels, const std::vector<IntMatrix>& diffs,
    const CoefficientRing& ring) {
    const std::size_t len = rels.size();
    if (len == 0) return {};
    if (diffs.size() + 1 != len)
        throw Error("complex: need one differential between consecutive positions");
    for (std::size_t i = 0; i < diffs.size(); ++i)
        if (diffs[i].cols() != rels[i].size() || diffs[i].rows() != rels[i + 1].size())
            throw Error("complex: differential shape mismatch");
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
        // Rows of the composite land in presented generators, so each entry
        // only needs to vanish modulo its row's order.
        IntMatrix dd = diffs[i + 1] * diffs[i];
        IntMatrix zero(dd.rows(), dd.cols());
        if (!maps_equal_mod_orders(dd, zero, rels[i + 2]))
            throw ComplexNotComposableError("d o d is nonzero at position " +
                                            std::to_string(i));
    }
    std::vector<CanonicalModule> out;
    out.reserve(len);
    for (std::size_t pos = 0; pos < len; ++pos) {
        const IntMatrix f =
            pos > 0 ? diffs[pos - 1] : IntMatrix(rels[pos].size(), 0);
        const IntMatrix g =
            pos + 1 < len ? diffs[pos] : IntMatrix(0, rels[pos].size());
        out.push_back(
            cohomology_position(f, rels[pos], g, pos + 1 < len ? rels[pos + 1] : std::vector<mpz_class>{}, ring));
    }
    return out;
}

std::vector<CanonicalModule> complex_cohomology(const std::vector<std::size_t>& dims,
                                                const std::vector<IntMatrix>& diffs,
                                                const CoefficientRing& ring) {
    std::vector<std::vector<mpz_class>> rels;
    rels.reserve(dims.size());
    for (std::size_t d : dims) rels.push_back(uniform_orders(d, ring));
    return presented_complex_cohomology(rels, diffs, ring);
}

IntMatrix induced_map(const CanonicalModule& src, const CanonicalModule& dst,
                      const IntMatrix& phi, bool check) {
    if (phi.rows() != dst.ambient || phi.cols() != src.ambient)
        throw Error("induced_map: ambient shape mismatch");
    IntMatrix m = dst.coords(mul_dense_sparse(phi, src.lift));
    if (check) {
        // A generator of finite order q must land in the q-torsion of the target.
        for (std::size_t j = 0; j < src.gens(); ++j) {
            if (src.orders[j] == 0) continue;
            for (std::size_t i = 0; i < dst.gens(); ++i) {
                mpz_class v = src.orders[j] * m(i, j);
                if (dst.orders[i] != 0)
                    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), dst.orders[i].get_mpz_t());
                if (v != 0)
                    throw NotAChainMapError(
                        "map does not respect generator orders on cohomology");
            }
        }
    }
    return m;
}

ModuleClass cohomology_at(const IntMatrix& d_in, const IntMatrix& d_out,
                          const CoefficientRing& ring) {
    const std::size_t amb = d_in.rows();
    if (d_out.cols() != amb) throw Error("cohomology_at: shape mismatch");
    if (d_in.cols() > 0 && d_out.rows() > 0) {
        IntMatrix dd = reduced_mod(d_out * d_in, ring_modulus(ring));
        if (!dd.is_zero()) throw ComplexNotComposableError("d_out o d_in is nonzero");
    }
    return cohomology_position(d_in, uniform_orders(amb, ring), d_out,
                               uniform_orders(d_out.rows(), ring), ring)
        .cls;
}

InducedMap induced_map_on_cohomology(const IntMatrix& f, const IntMatrix& src_d_in,
                                     const IntMatrix& src_d_out, const IntMatrix& dst_d_in,
                                     const IntMatrix& dst_d_out,
                                     const CoefficientRing& ring) {
    CanonicalModule src =
        cohomology_position(src_d_in, uniform_orders(src_d_in.rows(), ring), src_d_out,
                            uniform_orders(src_d_out.rows(), ring), ring);
    CanonicalModule dst =
        cohomology_position(dst_d_in, uniform_orders(dst_d_in.rows(), ring), dst_d_out,
                            uniform_orders(dst_d_out.rows(), ring), ring);
    IntMatrix m = induced_map(src, dst, f, true);
    return InducedMap{src.cls, dst.cls, std::move(m)};
}

ModuleClass module_class_from_orders(const std::vector<mpz_class>& orders,
                                     const CoefficientRing& ring) {
    std::vector<mpz_class> kept;
    for (mpz_class d : orders) {
        if (d != 0 && ring.is_p_local()) d = p_part(d, ring.p);
        if (d != 1) kept.push_back(d);
    }
    return class_from_orders(kept, ring);
}

ModuleClass cokernel_class(const IntMatrix& m, const std::vector<mpz_class>& target_orders,
                           const CoefficientRing& ring) {
    if (m.rows() != target_orders.size()) throw Error("cokernel_class: shape mismatch");
    IntMatrix span = m.hcat(relation_columns(target_orders));
    if (ring.has_modulus()) {
        std::uint32_t level =
            ring.kind == CoefficientRing::Kind::PrimeField ? 1 : ring.level;
        LocalSmithDecomposition ls = local_smith(span, ring.p, level);
        std::vector<mpz_class> orders;
        for (std::size_t k = 0; k < m.rows(); ++k)
            orders.push_back(k < ls.vals.size() ? ls.diag(k) : ring_modulus(ring));
        return module_class_from_orders(orders, ring);
    }
    SmithDecomposition snf = smith_normal_form(span);
    std::vector<mpz_class> orders(m.rows(), mpz_class(0));
    for (std::size_t k = 0; k < snf.rank; ++k) orders[k] = snf.D(k, k);
    return module_class_from_orders(orders, ring);
}

std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p) {
    return local_smith(m, p, 1).rank;
}

IntMatrix bockstein_on_complex(const std::vector<std::size_t>& dims,
                               const std::vector<IntMatrix>& diffs, std::size_t pos,
                               std::uint64_t p) {
    if (pos >= dims.size()) throw Error("bockstein: position out of range");
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i)
        if (!(diffs[i + 1] * diffs[i]).is_zero())
            throw ComplexNotComposableError("bockstein needs an integral complex");
    CoefficientRing fp = CoefficientRing::prime_field(p);
    const std::size_t len = dims.size();
    auto at = [&](std::size_t q) {
        const IntMatrix f = q > 0 ? diffs[q - 1] : IntMatrix(dims[q], 0);
        const IntMatrix g = q + 1 < len ? diffs[q] : IntMatrix(0, dims[q]);
        return cohomology_position(f, uniform_orders(dims[q], fp), g,
                                   uniform_orders(q + 1 < len ? dims[q + 1] : 0, fp), fp);
    };
    CanonicalModule src = at(pos);
    if (pos + 1 >= len) return IntMatrix(0, src.gens());
    CanonicalModule dst = at(pos + 1);
    if (src.gens() == 0 || dst.gens() == 0) return IntMatrix(dst.gens(), src.gens());

    // Lift each mod-p cocycle to Z, apply the integral differential, divide
    // by p, and read the class mod p.
    mpz_class pz = p;
    IntMatrix w = diffs[pos] * src.lift;
    IntMatrix wp(w.rows(), w.cols());
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j) {
            mpz_class q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), w(i, j).get_mpz_t(), pz.get_mpz_t());
            if (r != 0)
                throw PipelineError("bockstein lift: differential image not divisible by p");
            wp(i, j) = q;
        }
    return dst.coords(wp);
}

} // namespace lyutab
