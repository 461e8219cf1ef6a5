#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "powops/int_matrix.hpp"
#include "powops/prime.hpp"

namespace powops {

/// Dense matrix over the field F_p, entries kept reduced to [0, p).
class FpMat {
  public:
    FpMat(PrimeContext prime, std::size_t rows, std::size_t cols)
        : prime_(prime), rows_(rows), cols_(cols), data_(rows * cols) {}

    static FpMat reduce(const IntMat& a, PrimeContext prime) {
        FpMat m(prime, a.rows(), a.cols());
        for (std::size_t r = 0; r < a.rows(); ++r) {
            for (std::size_t c = 0; c < a.cols(); ++c) {
                m(r, c) = mod_nonnegative(a(r, c), prime.p());
            }
        }
        return m;
    }

    static FpMat identity(PrimeContext prime, std::size_t n) {
        FpMat m(prime, n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    const PrimeContext& prime() const noexcept { return prime_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const FpMat& other) const {
        return prime_ == other.prime_ && rows_ == other.rows_ && cols_ == other.cols_ &&
               data_ == other.data_;
    }

    bool is_zero() const {
        for (const Int& e : data_) {
            if (e != 0) {
                return false;
            }
        }
        return true;
    }

    FpMat operator*(const FpMat& rhs) const {
        require_same_prime(prime_, rhs.prime_);
        if (cols_ != rhs.rows_) {
            throw std::invalid_argument("FpMat: dimension mismatch in product");
        }
        FpMat out(prime_, rows_, rhs.cols_);
        const Int& p = prime_.p();
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& a = (*this)(i, k);
                if (a == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < rhs.cols_; ++j) {
                    out(i, j) = (out(i, j) + a * rhs(k, j)) % p;
                }
            }
        }
        return out;
    }

    /// Matrix power by repeated squaring; exponent zero gives the identity.
    FpMat pow(std::size_t e) const {
        if (rows_ != cols_) {
            throw std::invalid_argument("FpMat: power of a non-square matrix");
        }
        FpMat result = identity(prime_, rows_);
        FpMat base = *this;
        while (e > 0) {
            if (e & 1u) {
                result = result * base;
            }
            e >>= 1u;
            if (e > 0) {
                base = base * base;
            }
        }
        return result;
    }

    std::size_t rank() const {
        FpMat work = *this;
        return work.forward_eliminate();
    }

    /// Indices of a maximal set of linearly independent columns, in order.
    std::vector<std::size_t> pivot_columns() const {
        FpMat work = *this;
        std::vector<std::size_t> pivots;
        work.forward_eliminate(&pivots);
        return pivots;
    }

    /// Solve this * x = b for each column b of rhs. Throws if any column is
    /// outside the column space (callers only use it when solvability is
    /// guaranteed, so that indicates a bug).
    FpMat solve(const FpMat& rhs) const {
        require_same_prime(prime_, rhs.prime_);
        if (rows_ != rhs.rows_) {
            throw std::invalid_argument("FpMat: dimension mismatch in solve");
        }
        // Eliminate on [A | B] and read solutions off the reduced form.
        FpMat aug(prime_, rows_, cols_ + rhs.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                aug(r, c) = (*this)(r, c);
            }
            for (std::size_t c = 0; c < rhs.cols_; ++c) {
                aug(r, cols_ + c) = rhs(r, c);
            }
        }
        std::vector<std::size_t> pivots;
        aug.reduced_eliminate(cols_, &pivots);
        // Rows whose leading entry lies in the B block mean no solution.
        for (std::size_t r = 0; r < rows_; ++r) {
            bool lhs_zero = true;
            for (std::size_t c = 0; c < cols_; ++c) {
                if (aug(r, c) != 0) {
                    lhs_zero = false;
                    break;
                }
            }
            if (!lhs_zero) {
                continue;
            }
            for (std::size_t c = 0; c < rhs.cols_; ++c) {
                if (aug(r, cols_ + c) != 0) {
                    throw std::logic_error("FpMat::solve: inconsistent system");
                }
            }
        }
        FpMat x(prime_, cols_, rhs.cols_);
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            for (std::size_t c = 0; c < rhs.cols_; ++c) {
                x(pivots[k], c) = aug(k, cols_ + c);
            }
        }
        return x;
    }

    Int det() const {
        if (rows_ != cols_) {
            throw std::invalid_argument("FpMat: determinant of a non-square matrix");
        }
        FpMat work = *this;
        const Int& p = prime_.p();
        Int d = 1;
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t pivot_row = col;
            while (pivot_row < rows_ && work(pivot_row, col) == 0) {
                ++pivot_row;
            }
            if (pivot_row == rows_) {
                return 0;
            }
            if (pivot_row != col) {
                work.swap_rows(pivot_row, col);
                d = (p - d) % p;
            }
            d = (d * work(col, col)) % p;
            const Int inv = inverse_mod(work(col, col));
            for (std::size_t r = col + 1; r < rows_; ++r) {
                if (work(r, col) == 0) {
                    continue;
                }
                const Int factor = (work(r, col) * inv) % p;
                work.subtract_multiple(r, col, factor, col);
            }
        }
        return d;
    }

  private:
    // Row echelon form in place; returns rank and optionally pivot columns.
    std::size_t forward_eliminate(std::vector<std::size_t>* pivots = nullptr) {
        std::size_t lead = 0;
        for (std::size_t col = 0; col < cols_ && lead < rows_; ++col) {
            std::size_t pivot_row = lead;
            while (pivot_row < rows_ && (*this)(pivot_row, col) == 0) {
                ++pivot_row;
            }
            if (pivot_row == rows_) {
                continue;
            }
            swap_rows(pivot_row, lead);
            const Int inv = inverse_mod((*this)(lead, col));
            scale_row(lead, inv);
            for (std::size_t r = lead + 1; r < rows_; ++r) {
                if ((*this)(r, col) != 0) {
                    subtract_multiple(r, lead, (*this)(r, col), col);
                }
            }
            if (pivots != nullptr) {
                pivots->push_back(col);
            }
            ++lead;
        }
        return lead;
    }

    // Reduced row echelon form, with pivots restricted to the first
    // lhs_cols columns (used for augmented solves).
    void reduced_eliminate(std::size_t lhs_cols, std::vector<std::size_t>* pivots) {
        std::size_t lead = 0;
        for (std::size_t col = 0; col < lhs_cols && lead < rows_; ++col) {
            std::size_t pivot_row = lead;
            while (pivot_row < rows_ && (*this)(pivot_row, col) == 0) {
                ++pivot_row;
            }
            if (pivot_row == rows_) {
                continue;
            }
            swap_rows(pivot_row, lead);
            const Int inv = inverse_mod((*this)(lead, col));
            scale_row(lead, inv);
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r != lead && (*this)(r, col) != 0) {
                    subtract_multiple(r, lead, (*this)(r, col), col);
                }
            }
            pivots->push_back(col);
            ++lead;
        }
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) {
            return;
        }
        for (std::size_t c = 0; c < cols_; ++c) {
            std::swap((*this)(i, c), (*this)(j, c));
        }
    }

    void scale_row(std::size_t r, const Int& factor) {
        const Int& p = prime_.p();
        for (std::size_t c = 0; c < cols_; ++c) {
            (*this)(r, c) = ((*this)(r, c) * factor) % p;
        }
    }

    // row r -= factor * row src, starting at column start_col
    void subtract_multiple(std::size_t r, std::size_t src, Int factor, std::size_t start_col) {
        const Int& p = prime_.p();
        for (std::size_t c = start_col; c < cols_; ++c) {
            (*this)(r, c) = mod_nonnegative((*this)(r, c) - factor * (*this)(src, c), p);
        }
    }

    Int inverse_mod(const Int& a) const {
        // Extended Euclid; a is nonzero mod a prime, so the inverse exists.
        Int r0 = prime_.p();
        Int r1 = mod_nonnegative(a, prime_.p());
        Int s0 = 0;
        Int s1 = 1;
        while (r1 != 0) {
            const Int q = r0 / r1;
            Int r2 = r0 - q * r1;
            r0 = std::move(r1);
            r1 = std::move(r2);
            Int s2 = s0 - q * s1;
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r0 != 1) {
            throw std::logic_error("FpMat: attempted to invert zero");
        }
        return mod_nonnegative(s0, prime_.p());
    }

    PrimeContext prime_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Int> data_;
};

/// Columns of a indexed by keep, as a new matrix.
inline FpMat select_columns(const FpMat& a, const std::vector<std::size_t>& keep) {
    FpMat out(a.prime(), a.rows(), keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) {
        for (std::size_t r = 0; r < a.rows(); ++r) {
            out(r, j) = a(r, keep[j]);
        }
    }
    return out;
}

}  // namespace powops
