#pragma once

#include <optional>
#include <vector>

#include "int_matrix.hpp"

namespace lyutab {

// U * A * V = D with U, V unimodular and D diagonal with the divisibility
// chain d1 | d2 | ... | d_rank, all d_k > 0.  Uinv and Vinv are tracked
// during elimination so callers get exact inverses for free.
//
// Pivoting rule (fixed, so every run reproduces the same decomposition):
// among the nonzero entries of the trailing submatrix pick one of minimal
// absolute value, breaking ties by smallest (row, col).
struct SmithDecomposition {
    IntMatrix U, Uinv, V, Vinv, D;
    std::size_t rank = 0;

    std::vector<mpz_class> divisors() const {
        std::vector<mpz_class> d(rank);
        for (std::size_t k = 0; k < rank; ++k) d[k] = D(k, k);
        return d;
    }
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

// Basis of ker(A) as columns of an n x (n - rank) matrix.  The kernel lattice
// of an integer matrix is saturated, so this basis spans it over Z.
IntMatrix kernel_basis(const IntMatrix& a);

// Full-column-rank basis of the lattice spanned by the columns of A.
IntMatrix column_span_basis(const IntMatrix& a);

// Solve A * X = B over Z; returns std::nullopt when no integral solution
// exists.  Shapes: A is m x n, B is m x k, X is n x k.
std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& b);

// Rank of A over Q (read off the SNF).
std::size_t rank_of(const IntMatrix& a);

// Smith form over the chain ring Z/p^level: U * A * V = D (mod p^level)
// with U, V invertible mod p^level and D(k, k) = p^vals[k], vals ascending.
// Unlike the integer form this is a single elimination pass (the minimal
// p-valuation pivot divides every trailing entry), and every intermediate
// entry stays a balanced representative mod p^level, so nothing ever grows.
struct LocalSmithDecomposition {
    IntMatrix U, Uinv, V, Vinv;
    std::vector<std::uint32_t> vals; // min(rows, cols) entries; level = zero
    std::uint64_t p = 0;
    std::uint32_t level = 0;
    std::size_t rank = 0; // number of vals[k] < level

    mpz_class diag(std::size_t k) const;
};

LocalSmithDecomposition local_smith(const IntMatrix& a, std::uint64_t p,
                                    std::uint32_t level);

} // namespace lyutab
