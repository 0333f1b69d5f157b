#include "lyutab/smith.hpp"

#include <cstdint>
#include <cstdlib>
#include <limits>

namespace lyutab {

namespace {

// The elimination kernel is templated on the scalar so the common case runs
// on checked int64 and only genuinely large instances pay for mpz_class.

struct Ops64 {
    using Scalar = std::int64_t;
    static Scalar add(Scalar a, Scalar b) {
        Scalar r;
        if (__builtin_add_overflow(a, b, &r)) throw OverflowEscape();
        return r;
    }
    static Scalar sub(Scalar a, Scalar b) {
        Scalar r;
        if (__builtin_sub_overflow(a, b, &r)) throw OverflowEscape();
        return r;
    }
    static Scalar mul(Scalar a, Scalar b) {
        Scalar r;
        if (__builtin_mul_overflow(a, b, &r)) throw OverflowEscape();
        return r;
    }
    static Scalar neg(Scalar a) { return sub(0, a); }
    static Scalar quot(Scalar a, Scalar b) { return a / b; } // truncated
    static bool abs_less(Scalar a, Scalar b) {
        // |a| < |b| without overflowing on INT64_MIN (we never produce it,
        // but be safe).
        unsigned long long ua = a < 0 ? 0ULL - (unsigned long long)a : (unsigned long long)a;
        unsigned long long ub = b < 0 ? 0ULL - (unsigned long long)b : (unsigned long long)b;
        return ua < ub;
    }
};

struct OpsMpz {
    using Scalar = mpz_class;
    static Scalar add(const Scalar& a, const Scalar& b) { return a + b; }
    static Scalar sub(const Scalar& a, const Scalar& b) { return a - b; }
    static Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }
    static Scalar neg(const Scalar& a) { return -a; }
    static Scalar quot(const Scalar& a, const Scalar& b) { return a / b; } // truncated
    static bool abs_less(const Scalar& a, const Scalar& b) {
        return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0;
    }
};

std::int64_t mod_floor64(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t inv_mod64(std::int64_t a, std::int64_t m) {
    // Extended Euclid; a must be a unit mod m.
    std::int64_t r0 = m, r1 = mod_floor64(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1, s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) throw PipelineError("local smith: pivot unit part is not invertible");
    return mod_floor64(s0, m);
}

mpz_class mod_floor_mpz(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

mpz_class inv_mod_mpz(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw PipelineError("local smith: pivot unit part is not invertible");
    return r;
}

template <typename O> struct Mat {
    using S = typename O::Scalar;
    std::size_t rows = 0, cols = 0;
    std::vector<S> e;
    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), e(r * c) {}
    S& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }
    const S& at(std::size_t i, std::size_t j) const { return e[i * cols + j]; }
    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
};

// Quotient minimizing |a - q*b|; ties resolved toward the smaller q.
// Deterministic, and with the minimal-pivot rule it keeps entries small.
template <typename O> typename O::Scalar nearest_quot(const typename O::Scalar& a,
                                                      const typename O::Scalar& b) {
    using S = typename O::Scalar;
    S q = O::quot(a, b);
    S r = O::sub(a, O::mul(q, b));
    if (r == 0) return q;
    S q_up = O::add(q, 1), q_dn = O::sub(q, 1);
    S r_up = O::sub(a, O::mul(q_up, b));
    S r_dn = O::sub(a, O::mul(q_dn, b));
    S best_q = q, best_r = r;
    if (O::abs_less(r_dn, best_r) || (!O::abs_less(best_r, r_dn) && q_dn < best_q)) {
        best_q = q_dn;
        best_r = r_dn;
    }
    if (O::abs_less(r_up, best_r) || (!O::abs_less(best_r, r_up) && q_up < best_q)) {
        best_q = q_up;
        best_r = r_up;
    }
    return best_q;
}

template <typename O> struct SnfWork {
    using S = typename O::Scalar;
    Mat<O> a, u, uinv, v, vinv;

    explicit SnfWork(Mat<O> m)
        : a(std::move(m)), u(Mat<O>::identity(a.rows)), uinv(Mat<O>::identity(a.rows)),
          v(Mat<O>::identity(a.cols)), vinv(Mat<O>::identity(a.cols)) {}

    // row_i -= q * row_j on A; track U (left) and Uinv.
    void row_sub(std::size_t i, std::size_t j, const S& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < a.cols; ++k)
            a.at(i, k) = O::sub(a.at(i, k), O::mul(q, a.at(j, k)));
        for (std::size_t k = 0; k < a.rows; ++k)
            u.at(i, k) = O::sub(u.at(i, k), O::mul(q, u.at(j, k)));
        // (E^-1 adds back): uinv <- uinv * E^-1 means col j += q * col i.
        for (std::size_t k = 0; k < a.rows; ++k)
            uinv.at(k, j) = O::add(uinv.at(k, j), O::mul(q, uinv.at(k, i)));
    }
    void col_sub(std::size_t j, std::size_t i, const S& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < a.rows; ++k)
            a.at(k, j) = O::sub(a.at(k, j), O::mul(q, a.at(k, i)));
        for (std::size_t k = 0; k < a.cols; ++k)
            v.at(k, j) = O::sub(v.at(k, j), O::mul(q, v.at(k, i)));
        for (std::size_t k = 0; k < a.cols; ++k)
            vinv.at(i, k) = O::add(vinv.at(i, k), O::mul(q, vinv.at(j, k)));
    }
    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < a.cols; ++k) std::swap(a.at(i, k), a.at(j, k));
        for (std::size_t k = 0; k < a.rows; ++k) std::swap(u.at(i, k), u.at(j, k));
        for (std::size_t k = 0; k < a.rows; ++k) std::swap(uinv.at(k, i), uinv.at(k, j));
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < a.rows; ++k) std::swap(a.at(k, i), a.at(k, j));
        for (std::size_t k = 0; k < a.cols; ++k) std::swap(v.at(k, i), v.at(k, j));
        for (std::size_t k = 0; k < a.cols; ++k) std::swap(vinv.at(i, k), vinv.at(j, k));
    }
    void row_negate(std::size_t i) {
        for (std::size_t k = 0; k < a.cols; ++k) a.at(i, k) = O::neg(a.at(i, k));
        for (std::size_t k = 0; k < a.rows; ++k) u.at(i, k) = O::neg(u.at(i, k));
        for (std::size_t k = 0; k < a.rows; ++k) uinv.at(k, i) = O::neg(uinv.at(k, i));
    }

    // Minimal |value| pivot in the trailing submatrix, ties by (row, col).
    bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) {
        bool found = false;
        for (std::size_t i = t; i < a.rows; ++i)
            for (std::size_t j = t; j < a.cols; ++j) {
                const S& x = a.at(i, j);
                if (x == 0) continue;
                if (!found || O::abs_less(x, a.at(pi, pj))) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        return found;
    }

    std::size_t run() {
        std::size_t t = 0;
        const std::size_t tmax = std::min(a.rows, a.cols);
        while (t < tmax) {
            std::size_t pi = 0, pj = 0;
            if (!find_pivot(t, pi, pj)) break;
            row_swap(t, pi);
            col_swap(t, pj);
            for (;;) {
                // Clear column t, restarting with any smaller remainder as
                // the new pivot.
                bool dirty = false;
                for (std::size_t i = t + 1; i < a.rows; ++i) {
                    if (a.at(i, t) == 0) continue;
                    S q = nearest_quot<O>(a.at(i, t), a.at(t, t));
                    row_sub(i, t, q);
                    if (a.at(i, t) != 0) {
                        row_swap(t, i); // remainder is smaller in abs value
                        dirty = true;
                    }
                }
                if (dirty) continue;
                for (std::size_t j = t + 1; j < a.cols; ++j) {
                    if (a.at(t, j) == 0) continue;
                    S q = nearest_quot<O>(a.at(t, j), a.at(t, t));
                    col_sub(j, t, q);
                    if (a.at(t, j) != 0) {
                        col_swap(t, j);
                        dirty = true;
                    }
                }
                if (dirty) continue;
                // Row and column are clear.  Enforce divisibility of the
                // trailing block by the pivot.
                bool fixed = false;
                for (std::size_t i = t + 1; i < a.rows && !fixed; ++i)
                    for (std::size_t j = t + 1; j < a.cols && !fixed; ++j) {
                        S q = O::quot(a.at(i, j), a.at(t, t));
                        if (O::sub(a.at(i, j), O::mul(q, a.at(t, t))) != 0) {
                            // Fold row i into row t and restart the clearing.
                            row_sub(t, i, O::neg(S(1)));
                            fixed = true;
                        }
                    }
                if (!fixed) break;
            }
            if (a.at(t, t) < 0) row_negate(t);
            ++t;
        }
        return t;
    }
};

// Elimination over Z/p^level.  Every entry of a, u, uinv, v, vinv is kept a
// balanced representative mod m0 = p^level, so with m0 < 2^31 the int64 path
// cannot overflow.
template <typename O> struct LocalWork {
    using S = typename O::Scalar;
    Mat<O> a, u, uinv, v, vinv;
    S m0, half, prime;
    std::uint32_t level;
    std::vector<std::uint32_t> vals;
    std::size_t rank = 0;

    static S modf(const S& x, const S& m);
    static S inv(const S& x, const S& m);

    LocalWork(Mat<O> m, S m0_, S p_, std::uint32_t lvl)
        : a(std::move(m)), u(Mat<O>::identity(a.rows)), uinv(Mat<O>::identity(a.rows)),
          v(Mat<O>::identity(a.cols)), vinv(Mat<O>::identity(a.cols)), m0(m0_),
          half(O::quot(m0_, S(2))), prime(p_), level(lvl) {
        for (auto& x : a.e) rebalance(x);
    }

    void rebalance(S& x) {
        x = modf(x, m0);
        if (x > half) x = O::sub(x, m0);
    }

    std::uint32_t valuation(const S& x) const {
        if (x == 0) return level;
        S t = x;
        std::uint32_t e = 0;
        while (e < level) {
            S q = O::quot(t, prime);
            if (O::sub(t, O::mul(q, prime)) != 0) break;
            t = q;
            ++e;
        }
        return e;
    }

    void row_sub(Mat<O>& m, std::size_t i, std::size_t j, const S& q) {
        for (std::size_t k = 0; k < m.cols; ++k) {
            m.at(i, k) = O::sub(m.at(i, k), O::mul(q, m.at(j, k)));
            rebalance(m.at(i, k));
        }
    }
    void col_add(Mat<O>& m, std::size_t j, std::size_t i, const S& q) {
        for (std::size_t k = 0; k < m.rows; ++k) {
            m.at(k, j) = O::add(m.at(k, j), O::mul(q, m.at(k, i)));
            rebalance(m.at(k, j));
        }
    }

    void row_op(std::size_t i, std::size_t j, const S& q) {
        if (q == 0) return;
        row_sub(a, i, j, q);
        row_sub(u, i, j, q);
        col_add(uinv, j, i, q);
    }
    void col_op(std::size_t j, std::size_t i, const S& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < a.rows; ++k) {
            a.at(k, j) = O::sub(a.at(k, j), O::mul(q, a.at(k, i)));
            rebalance(a.at(k, j));
        }
        for (std::size_t k = 0; k < a.cols; ++k) {
            v.at(k, j) = O::sub(v.at(k, j), O::mul(q, v.at(k, i)));
            rebalance(v.at(k, j));
        }
        for (std::size_t k = 0; k < a.cols; ++k) {
            vinv.at(i, k) = O::add(vinv.at(i, k), O::mul(q, vinv.at(j, k)));
            rebalance(vinv.at(i, k));
        }
    }
    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < a.cols; ++k) std::swap(a.at(i, k), a.at(j, k));
        for (std::size_t k = 0; k < a.rows; ++k) std::swap(u.at(i, k), u.at(j, k));
        for (std::size_t k = 0; k < a.rows; ++k) std::swap(uinv.at(k, i), uinv.at(k, j));
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < a.rows; ++k) std::swap(a.at(k, i), a.at(k, j));
        for (std::size_t k = 0; k < a.cols; ++k) std::swap(v.at(k, i), v.at(k, j));
        for (std::size_t k = 0; k < a.cols; ++k) std::swap(vinv.at(i, k), vinv.at(j, k));
    }
    // row_i *= w with w a unit; uinv column i picks up w^-1.
    void row_scale(std::size_t i, const S& w, const S& winv) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            a.at(i, k) = O::mul(a.at(i, k), w);
            rebalance(a.at(i, k));
        }
        for (std::size_t k = 0; k < a.rows; ++k) {
            u.at(i, k) = O::mul(u.at(i, k), w);
            rebalance(u.at(i, k));
        }
        for (std::size_t k = 0; k < a.rows; ++k) {
            uinv.at(k, i) = O::mul(uinv.at(k, i), winv);
            rebalance(uinv.at(k, i));
        }
    }

    void run() {
        const std::size_t tmax = std::min(a.rows, a.cols);
        vals.assign(tmax, level);
        for (std::size_t t = 0; t < tmax; ++t) {
            // Minimal p-valuation pivot; it divides every trailing entry, so
            // one clearing pass suffices and valuations come out ascending.
            std::uint32_t best = level;
            std::size_t pi = t, pj = t;
            for (std::size_t i = t; i < a.rows && best > 0; ++i)
                for (std::size_t j = t; j < a.cols; ++j) {
                    std::uint32_t e = valuation(a.at(i, j));
                    if (e < best) {
                        best = e;
                        pi = i;
                        pj = j;
                        if (best == 0) break;
                    }
                }
            if (best >= level) break; // trailing block is zero mod m0
            row_swap(t, pi);
            col_swap(t, pj);
            S pe = 1;
            for (std::uint32_t e = 0; e < best; ++e) pe = O::mul(pe, prime);
            S unit = O::quot(a.at(t, t), pe);
            row_scale(t, inv(modf(unit, m0), m0), modf(unit, m0));
            a.at(t, t) = pe; // representative of p^e is exact after scaling
            for (std::size_t i = t + 1; i < a.rows; ++i)
                row_op(i, t, O::quot(a.at(i, t), pe));
            for (std::size_t j = t + 1; j < a.cols; ++j)
                col_op(j, t, O::quot(a.at(t, j), pe));
            vals[t] = best;
        }
        for (std::uint32_t e : vals)
            if (e < level) ++rank;
    }
};

template <> std::int64_t LocalWork<Ops64>::modf(const std::int64_t& x,
                                                const std::int64_t& m) {
    return mod_floor64(x, m);
}
template <> std::int64_t LocalWork<Ops64>::inv(const std::int64_t& x,
                                               const std::int64_t& m) {
    return inv_mod64(x, m);
}
template <> mpz_class LocalWork<OpsMpz>::modf(const mpz_class& x, const mpz_class& m) {
    return mod_floor_mpz(x, m);
}
template <> mpz_class LocalWork<OpsMpz>::inv(const mpz_class& x, const mpz_class& m) {
    return inv_mod_mpz(x, m);
}

bool fits_int64(const IntMatrix& m) {
    static const mpz_class lo = mpz_class(std::numeric_limits<std::int32_t>::min());
    static const mpz_class hi = mpz_class(std::numeric_limits<std::int32_t>::max());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) < lo || m(i, j) > hi) return false;
    return true;
}

Mat<Ops64> to64(const IntMatrix& m) {
    Mat<Ops64> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m(i, j).get_si();
    return r;
}

Mat<OpsMpz> toMpz(const IntMatrix& m) {
    Mat<OpsMpz> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m(i, j);
    return r;
}

template <typename O> IntMatrix fromWork(const Mat<O>& m) {
    IntMatrix r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r(i, j) = m.at(i, j);
    return r;
}

template <typename O> SmithDecomposition pack(SnfWork<O>& w, std::size_t rank) {
    SmithDecomposition d;
    d.U = fromWork(w.u);
    d.Uinv = fromWork(w.uinv);
    d.V = fromWork(w.v);
    d.Vinv = fromWork(w.vinv);
    d.D = fromWork(w.a);
    d.rank = rank;
    return d;
}

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
    if (fits_int64(a)) {
        try {
            SnfWork<Ops64> w(to64(a));
            std::size_t rank = w.run();
            return pack(w, rank);
        } catch (const OverflowEscape&) {
            // fall through to the exact path
        }
    }
    SnfWork<OpsMpz> w(toMpz(a));
    std::size_t rank = w.run();
    return pack(w, rank);
}

IntMatrix kernel_basis(const IntMatrix& a) {
    if (a.cols() == 0) return IntMatrix(0, 0);
    if (a.rows() == 0) return IntMatrix::identity(a.cols());
    SmithDecomposition s = smith_normal_form(a);
    return s.V.submatrix(0, s.rank, a.cols(), a.cols() - s.rank);
}

IntMatrix column_span_basis(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    // col span(A) = col span(Uinv * D): basis = d_k * (Uinv column k).
    IntMatrix b(a.rows(), s.rank);
    for (std::size_t k = 0; k < s.rank; ++k)
        for (std::size_t i = 0; i < a.rows(); ++i) b(i, k) = s.Uinv(i, k) * s.D(k, k);
    return b;
}

std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw PipelineError("solve_integer shape mismatch");
    SmithDecomposition s = smith_normal_form(a);
    IntMatrix ub = s.U * b;
    IntMatrix y(a.cols(), b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t k = 0; k < a.rows(); ++k) {
            if (k < s.rank) {
                mpz_class q, r;
                mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), ub(k, c).get_mpz_t(),
                            s.D(k, k).get_mpz_t());
                if (r != 0) return std::nullopt;
                if (k < a.cols()) y(k, c) = q;
            } else if (ub(k, c) != 0) {
                return std::nullopt;
            }
        }
    }
    return s.V * y;
}

std::size_t rank_of(const IntMatrix& a) { return smith_normal_form(a).rank; }

mpz_class LocalSmithDecomposition::diag(std::size_t k) const {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, vals.at(k));
    return r;
}

LocalSmithDecomposition local_smith(const IntMatrix& a, std::uint64_t p,
                                    std::uint32_t level) {
    if (p < 2 || level == 0) throw PipelineError("local smith needs a modulus p^level");
    LocalSmithDecomposition d;
    d.p = p;
    d.level = level;
    mpz_class m0;
    mpz_ui_pow_ui(m0.get_mpz_t(), p, level);
    // Balanced entries stay below m0/2 and quotients below m0, so products
    // fit int64 whenever m0 < 2^31.
    if (m0 < mpz_class(1) << 31) {
        Mat<Ops64> m(a.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                mpz_class r;
                mpz_fdiv_r(r.get_mpz_t(), a(i, j).get_mpz_t(), m0.get_mpz_t());
                m.at(i, j) = r.get_si();
            }
        LocalWork<Ops64> w(std::move(m), m0.get_si(), static_cast<std::int64_t>(p),
                           level);
        w.run();
        d.U = fromWork(w.u);
        d.Uinv = fromWork(w.uinv);
        d.V = fromWork(w.v);
        d.Vinv = fromWork(w.vinv);
        d.vals = std::move(w.vals);
        d.rank = w.rank;
    } else {
        LocalWork<OpsMpz> w(toMpz(a), m0, mpz_class(p), level);
        w.run();
        d.U = fromWork(w.u);
        d.Uinv = fromWork(w.uinv);
        d.V = fromWork(w.v);
        d.Vinv = fromWork(w.vinv);
        d.vals = std::move(w.vals);
        d.rank = w.rank;
    }
    return d;
}

} // namespace lyutab
