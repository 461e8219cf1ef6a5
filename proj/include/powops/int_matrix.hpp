#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "powops/integers.hpp"

namespace powops {

/// Dense matrix of exact integers, row-major. Rows or columns may be zero;
/// a 0xN or Nx0 matrix is a legitimate value.
class IntMat {
  public:
    IntMat() = default;

    IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntMat(std::initializer_list<std::initializer_list<Int>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) {
                throw std::invalid_argument("IntMat: ragged initializer");
            }
            for (const auto& e : row) {
                data_.push_back(e);
            }
        }
    }

    static IntMat identity(std::size_t n) {
        IntMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const IntMat& other) const = default;

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Int& e) { return e == 0; });
    }

    IntMat transposed() const {
        IntMat t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                t(c, r) = (*this)(r, c);
            }
        }
        return t;
    }

    IntMat operator*(const IntMat& rhs) const {
        if (cols_ != rhs.rows_) {
            throw std::invalid_argument("IntMat: dimension mismatch in product");
        }
        IntMat out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& a = (*this)(i, k);
                if (a == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < rhs.cols_; ++j) {
                    out(i, j) += a * rhs(k, j);
                }
            }
        }
        return out;
    }

    IntMat operator-(const IntMat& rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
            throw std::invalid_argument("IntMat: dimension mismatch in difference");
        }
        IntMat out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            out.data_[i] = data_[i] - rhs.data_[i];
        }
        return out;
    }

    /// Matrix times column vector.
    std::vector<Int> apply(const std::vector<Int>& v) const {
        if (v.size() != cols_) {
            throw std::invalid_argument("IntMat: vector length mismatch");
        }
        std::vector<Int> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            Int acc = 0;
            for (std::size_t j = 0; j < cols_; ++j) {
                acc += (*this)(i, j) * v[j];
            }
            out[i] = std::move(acc);
        }
        return out;
    }

    std::vector<Int> row(std::size_t r) const {
        std::vector<Int> out(cols_);
        for (std::size_t c = 0; c < cols_; ++c) {
            out[c] = (*this)(r, c);
        }
        return out;
    }

    std::vector<Int> column(std::size_t c) const {
        std::vector<Int> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            out[r] = (*this)(r, c);
        }
        return out;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

/// Stack a on top of b (column counts must agree; a 0-row matrix adapts).
inline IntMat vstack(const IntMat& a, const IntMat& b) {
    if (a.rows() == 0) {
        return b;
    }
    if (b.rows() == 0) {
        return a;
    }
    if (a.cols() != b.cols()) {
        throw std::invalid_argument("vstack: column count mismatch");
    }
    IntMat out(a.rows() + b.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out(r, c) = a(r, c);
        }
    }
    for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
            out(a.rows() + r, c) = b(r, c);
        }
    }
    return out;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Int determinant(IntMat a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("determinant: matrix not square");
    }
    const std::size_t n = a.rows();
    if (n == 0) {
        return 1;
    }
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a(swap_row, k) == 0) {
                ++swap_row;
            }
            if (swap_row == n) {
                return 0;
            }
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(k, c), a(swap_row, c));
            }
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = exact_quotient(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev,
                                         "Bareiss elimination");
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

/// Smith decomposition left * a * right == diag, with left and right
/// unimodular and diag diagonal, nonnegative, each entry dividing the next.
struct SmithDecomposition {
    IntMat diag;
    IntMat left;
    IntMat right;

    std::vector<Int> invariant_factors() const {
        std::vector<Int> factors;
        const std::size_t limit = std::min(diag.rows(), diag.cols());
        for (std::size_t i = 0; i < limit; ++i) {
            if (diag(i, i) != 0) {
                factors.push_back(diag(i, i));
            }
        }
        return factors;
    }
};

namespace detail {

struct SmithWorkspace {
    IntMat d;
    IntMat left;
    IntMat right;
    bool track;

    explicit SmithWorkspace(const IntMat& a, bool track_transforms)
        : d(a), track(track_transforms) {
        if (track) {
            left = IntMat::identity(a.rows());
            right = IntMat::identity(a.cols());
        }
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) {
            return;
        }
        for (std::size_t c = 0; c < d.cols(); ++c) {
            std::swap(d(i, c), d(j, c));
        }
        if (track) {
            for (std::size_t c = 0; c < left.cols(); ++c) {
                std::swap(left(i, c), left(j, c));
            }
        }
    }

    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) {
            return;
        }
        for (std::size_t r = 0; r < d.rows(); ++r) {
            std::swap(d(r, i), d(r, j));
        }
        if (track) {
            for (std::size_t r = 0; r < right.rows(); ++r) {
                std::swap(right(r, i), right(r, j));
            }
        }
    }

    // row dst += c * row src
    void add_row(std::size_t dst, std::size_t src, const Int& c) {
        for (std::size_t k = 0; k < d.cols(); ++k) {
            d(dst, k) += c * d(src, k);
        }
        if (track) {
            for (std::size_t k = 0; k < left.cols(); ++k) {
                left(dst, k) += c * left(src, k);
            }
        }
    }

    // col dst += c * col src
    void add_col(std::size_t dst, std::size_t src, const Int& c) {
        for (std::size_t k = 0; k < d.rows(); ++k) {
            d(k, dst) += c * d(k, src);
        }
        if (track) {
            for (std::size_t k = 0; k < right.rows(); ++k) {
                right(k, dst) += c * right(k, src);
            }
        }
    }

    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < d.cols(); ++c) {
            d(i, c) = -d(i, c);
        }
        if (track) {
            for (std::size_t c = 0; c < left.cols(); ++c) {
                left(i, c) = -left(i, c);
            }
        }
    }
};

// Smallest nonzero |entry| in the submatrix with corner (t, t); ties broken
// row-major so runs are reproducible.
inline bool find_pivot(const IntMat& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best = 0;
    for (std::size_t i = t; i < d.rows(); ++i) {
        for (std::size_t j = t; j < d.cols(); ++j) {
            if (d(i, j) == 0) {
                continue;
            }
            Int mag = abs(d(i, j));
            if (!found || mag < best) {
                found = true;
                best = std::move(mag);
                pi = i;
                pj = j;
            }
        }
    }
    return found;
}

inline SmithDecomposition smith_impl(const IntMat& a, bool track) {
    SmithWorkspace w(a, track);
    const std::size_t steps = std::min(a.rows(), a.cols());
    for (std::size_t t = 0; t < steps; ++t) {
        std::size_t pi = t;
        std::size_t pj = t;
        if (!find_pivot(w.d, t, pi, pj)) {
            break;  // remaining submatrix is zero
        }
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        for (;;) {
            // Shrink the pivot until it divides its whole row and column.
            bool clean = true;
            for (std::size_t i = t + 1; i < w.d.rows(); ++i) {
                if (w.d(i, t) != 0) {
                    Int q = w.d(i, t) / w.d(t, t);
                    w.add_row(i, t, -q);
                    if (w.d(i, t) != 0) {
                        clean = false;
                    }
                }
            }
            for (std::size_t j = t + 1; j < w.d.cols(); ++j) {
                if (w.d(t, j) != 0) {
                    Int q = w.d(t, j) / w.d(t, t);
                    w.add_col(j, t, -q);
                    if (w.d(t, j) != 0) {
                        clean = false;
                    }
                }
            }
            if (!clean) {
                std::size_t ni = t;
                std::size_t nj = t;
                find_pivot(w.d, t, ni, nj);
                w.swap_rows(t, ni);
                w.swap_cols(t, nj);
                continue;
            }
            // Pivot must also divide the rest of the submatrix for the
            // divisibility chain; if not, fold the offending row in.
            bool divides_all = true;
            for (std::size_t i = t + 1; i < w.d.rows() && divides_all; ++i) {
                for (std::size_t j = t + 1; j < w.d.cols(); ++j) {
                    if (w.d(i, j) % w.d(t, t) != 0) {
                        w.add_row(t, i, Int(1));
                        divides_all = false;
                        break;
                    }
                }
            }
            if (divides_all) {
                break;
            }
        }
        if (w.d(t, t) < 0) {
            w.negate_row(t);
        }
    }
    return SmithDecomposition{std::move(w.d), std::move(w.left), std::move(w.right)};
}

}  // namespace detail

inline SmithDecomposition smith_normal_form(const IntMat& a) {
    return detail::smith_impl(a, true);
}

/// Invariant factors only, skipping transform bookkeeping.
inline std::vector<Int> smith_invariant_factors(const IntMat& a) {
    return detail::smith_impl(a, false).invariant_factors();
}

/// Parse "[[1,2],[3,-4]]" into a matrix of exact integers. Whitespace is
/// ignored; "[]" is the 0x0 matrix and "[[],[]]" a 2x0 matrix.
inline IntMat parse_matrix_text(std::string_view text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text) {
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
            s.push_back(c);
        }
    }
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) -> ParseError {
        return ParseError("matrix literal: " + why);
    };
    auto expect = [&](char c) {
        if (pos >= s.size() || s[pos] != c) {
            throw fail(std::string("expected '") + c + "'");
        }
        ++pos;
    };
    expect('[');
    std::vector<std::vector<Int>> rows;
    if (pos < s.size() && s[pos] == ']') {
        ++pos;
    } else {
        for (;;) {
            expect('[');
            std::vector<Int> row;
            if (pos < s.size() && s[pos] == ']') {
                ++pos;
            } else {
                for (;;) {
                    std::size_t start = pos;
                    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
                        ++pos;
                    }
                    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
                        ++pos;
                    }
                    if (pos == start) {
                        throw fail("expected an integer entry");
                    }
                    row.push_back(parse_int(std::string_view(s).substr(start, pos - start)));
                    if (pos < s.size() && s[pos] == ',') {
                        ++pos;
                        continue;
                    }
                    expect(']');
                    break;
                }
            }
            rows.push_back(std::move(row));
            if (pos < s.size() && s[pos] == ',') {
                ++pos;
                continue;
            }
            expect(']');
            break;
        }
    }
    if (pos != s.size()) {
        throw fail("trailing characters");
    }
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (const auto& row : rows) {
        if (row.size() != cols) {
            throw fail("rows have different lengths");
        }
    }
    IntMat m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

inline std::string matrix_to_text(const IntMat& m) {
    std::string out = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r > 0) {
            out += ",";
        }
        out += "[";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c > 0) {
                out += ",";
            }
            out += m(r, c).str();
        }
        out += "]";
    }
    out += "]";
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const IntMat& m) {
    return os << matrix_to_text(m);
}

}  // namespace powops
