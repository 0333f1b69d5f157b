#pragma once

#include <cstddef>
#include <gmpxx.h>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "errors.hpp"

namespace lyutab {

// Dense matrix over Z with arbitrary-precision entries, row major.
// All exact linear algebra in the library goes through this type; the
// elimination kernels may use a checked int64 fast path internally but the
// public representation is always exact.
class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::initializer_list<long> entries)
        : rows_(rows), cols_(cols), e_(entries.begin(), entries.end()) {
        if (e_.size() != rows * cols) throw PipelineError("IntMatrix initializer size mismatch");
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    mpz_class& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const mpz_class& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& v : e_)
            if (v != 0) return false;
        return true;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols_ != o.rows_) throw PipelineError("IntMatrix product shape mismatch");
        IntMatrix p(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const mpz_class& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    if (o(k, j) == 0) continue;
                    p(i, j) += a * o(k, j);
                }
            }
        return p;
    }

    IntMatrix operator-(const IntMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw PipelineError("IntMatrix sum shape mismatch");
        IntMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
        return r;
    }

    // [this | o] side by side.
    IntMatrix hcat(const IntMatrix& o) const {
        if (rows_ != o.rows_) throw PipelineError("IntMatrix hcat shape mismatch");
        IntMatrix r(rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
        }
        return r;
    }

    IntMatrix submatrix(std::size_t row0, std::size_t col0, std::size_t nrows,
                        std::size_t ncols) const {
        IntMatrix r(nrows, ncols);
        for (std::size_t i = 0; i < nrows; ++i)
            for (std::size_t j = 0; j < ncols; ++j) r(i, j) = (*this)(row0 + i, col0 + j);
        return r;
    }

    IntMatrix column(std::size_t j) const { return submatrix(0, j, rows_, 1); }

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i == 0 ? "[" : " ");
            for (std::size_t j = 0; j < m.cols_; ++j)
                os << m(i, j) << (j + 1 < m.cols_ ? " " : "");
            os << (i + 1 < m.rows_ ? ";\n" : "]");
        }
        if (m.rows_ == 0) os << "[]";
        return os;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<mpz_class> e_;
};

} // namespace lyutab
