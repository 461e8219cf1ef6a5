#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "powops/fp_matrix.hpp"
#include "powops/int_matrix.hpp"

using namespace powops;

namespace {

IntMat random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    IntMat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = dist(rng);
        }
    }
    return m;
}

}  // namespace

TEST_CASE("matrix basics") {
    IntMat a{{1, 2}, {3, 4}};
    REQUIRE(a.rows() == 2);
    REQUIRE(a.cols() == 2);
    REQUIRE(a(1, 0) == 3);

    IntMat id = IntMat::identity(2);
    REQUIRE(a * id == a);
    REQUIRE(id * a == a);

    IntMat t = a.transposed();
    REQUIRE(t(0, 1) == 3);
    REQUIRE(t.transposed() == a);

    REQUIRE(a.apply({1, 1}) == std::vector<Int>{3, 7});

    IntMat empty(0, 3);
    REQUIRE(vstack(empty, a).rows() == 2);
    REQUIRE(vstack(a, a).rows() == 4);
}

TEST_CASE("determinant") {
    REQUIRE(determinant(IntMat{{1, 2}, {3, 4}}) == -2);
    REQUIRE(determinant(IntMat{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}) == 30);
    REQUIRE(determinant(IntMat{{0, 1}, {1, 0}}) == -1);
    REQUIRE(determinant(IntMat{{1, 1}, {2, 2}}) == 0);
    REQUIRE(determinant(IntMat::identity(4)) == 1);
    REQUIRE(determinant(IntMat(0, 0)) == 1);
}

TEST_CASE("smith normal form: pinned examples") {
    // diag(2, 3) has invariant factors 1, 6.
    auto f = smith_invariant_factors(IntMat{{2, 0}, {0, 3}});
    REQUIRE(f == std::vector<Int>{1, 6});

    // Single entry.
    REQUIRE(smith_invariant_factors(IntMat{{9}}) == std::vector<Int>{9});

    // Zero matrix has no invariant factors.
    REQUIRE(smith_invariant_factors(IntMat(2, 3)).empty());

    // A full worked example.
    auto g = smith_invariant_factors(IntMat{{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}});
    REQUIRE(g == std::vector<Int>{2, 2, 156});
}

TEST_CASE("smith normal form: transform identities on random matrices") {
    std::mt19937 rng(20260819);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t rows = 1 + trial % 5;
        const std::size_t cols = 1 + (trial / 5) % 5;
        IntMat a = random_matrix(rng, rows, cols, -30, 30);
        SmithDecomposition snf = smith_normal_form(a);

        REQUIRE(snf.left * a * snf.right == snf.diag);
        REQUIRE(abs(determinant(snf.left)) == 1);
        REQUIRE(abs(determinant(snf.right)) == 1);

        // Diagonal, nonnegative, divisibility chain.
        for (std::size_t r = 0; r < snf.diag.rows(); ++r) {
            for (std::size_t c = 0; c < snf.diag.cols(); ++c) {
                if (r != c) {
                    REQUIRE(snf.diag(r, c) == 0);
                }
            }
        }
        auto factors = snf.invariant_factors();
        for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
            REQUIRE(factors[i] > 0);
            REQUIRE(factors[i + 1] % factors[i] == 0);
        }

        // Invariant under transposition.
        REQUIRE(smith_invariant_factors(a.transposed()) == factors);
    }
}

TEST_CASE("matrix literals") {
    REQUIRE(parse_matrix_text("[[1,2],[3,-4]]") == IntMat{{1, 2}, {3, -4}});
    REQUIRE(parse_matrix_text(" [ [ 0 ] ] ") == IntMat{{0}});
    REQUIRE(parse_matrix_text("[]").rows() == 0);
    REQUIRE(parse_matrix_text("[[],[]]").rows() == 2);
    REQUIRE(parse_matrix_text("[[],[]]").cols() == 0);
    REQUIRE(parse_matrix_text("[[123456789012345678901234567890]]")(0, 0) ==
            Int("123456789012345678901234567890"));

    REQUIRE(matrix_to_text(IntMat{{1, 2}, {3, -4}}) == "[[1,2],[3,-4]]");
    REQUIRE_THROWS_AS(parse_matrix_text("[[1,2],[3]]"), ParseError);
    REQUIRE_THROWS_AS(parse_matrix_text("[[1,x]]"), ParseError);
    REQUIRE_THROWS_AS(parse_matrix_text("[[1]] junk"), ParseError);
}

TEST_CASE("F_p matrices") {
    PrimeContext p2(2);
    PrimeContext p5(5);

    FpMat a = FpMat::reduce(IntMat{{3, -1}, {10, 7}}, p5);
    REQUIRE(a(0, 0) == 3);
    REQUIRE(a(0, 1) == 4);
    REQUIRE(a(1, 0) == 0);
    REQUIRE(a(1, 1) == 2);

    SECTION("rank") {
        REQUIRE(FpMat::reduce(IntMat{{1, 1}, {1, 1}}, p2).rank() == 1);
        REQUIRE(FpMat::reduce(IntMat{{1, 1}, {1, 0}}, p2).rank() == 2);
        REQUIRE(FpMat::reduce(IntMat{{2, 4}, {6, 8}}, p2).rank() == 0);
        REQUIRE(FpMat::identity(p5, 3).rank() == 3);
        REQUIRE(FpMat(p5, 0, 4).rank() == 0);
    }

    SECTION("powers") {
        FpMat nil = FpMat::reduce(IntMat{{0, 1}, {0, 0}}, p2);
        REQUIRE(!nil.is_zero());
        REQUIRE(nil.pow(2).is_zero());
        REQUIRE(nil.pow(0) == FpMat::identity(p2, 2));

        FpMat swap = FpMat::reduce(IntMat{{0, 1}, {1, 0}}, p5);
        REQUIRE(swap.pow(2) == FpMat::identity(p5, 2));
    }

    SECTION("determinant") {
        REQUIRE(FpMat::reduce(IntMat{{1, 2}, {3, 4}}, p5).det() == 3);  // -2 mod 5
        REQUIRE(FpMat::reduce(IntMat{{1, 1}, {1, 1}}, p2).det() == 0);
        REQUIRE(FpMat::identity(p2, 3).det() == 1);
    }

    SECTION("solve and pivot columns") {
        // Columns 0 and 2 independent, column 1 = 2 * column 0 (mod 5).
        FpMat m = FpMat::reduce(IntMat{{1, 2, 0}, {3, 6, 1}}, p5);
        const auto pivots = m.pivot_columns();
        REQUIRE(pivots == std::vector<std::size_t>{0, 2});

        FpMat basis = select_columns(m, pivots);
        FpMat coords = basis.solve(m);
        REQUIRE(basis * coords == m);
    }

    SECTION("random solve round-trips") {
        std::mt19937 rng(7);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t n = 1 + trial % 4;
            FpMat m = FpMat::reduce(random_matrix(rng, n, n + trial % 3, 0, 4), p5);
            FpMat basis = select_columns(m, m.pivot_columns());
            REQUIRE(basis.rank() == m.rank());
            FpMat coords = basis.solve(m);
            REQUIRE(basis * coords == m);
        }
    }
}
