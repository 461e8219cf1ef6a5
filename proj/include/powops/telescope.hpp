#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

#include "powops/fp_matrix.hpp"
#include "powops/int_matrix.hpp"
#include "powops/prime.hpp"

namespace powops {

namespace detail {

inline FpMat residue_of_square(const IntMat& phi, PrimeContext prime) {
    if (phi.rows() != phi.cols()) {
        throw std::invalid_argument("telescope: matrix must be square");
    }
    return FpMat::reduce(phi, prime);
}

}  // namespace detail

/// Whether the mod-p reduction φ̄ is nilpotent; φ̄^d = 0 with d the
/// dimension is necessary and sufficient.
inline bool is_nilpotent_mod_p(const IntMat& phi, PrimeContext prime) {
    const FpMat reduced = detail::residue_of_square(phi, prime);
    return reduced.pow(reduced.rows()).is_zero();
}

/// The F_p-dimension of the residue of the telescope inverting φ: iterating
/// φ̄ settles onto its eventual image im(φ̄^d), and the colimit mod p is
/// that subspace. Rank 0 is exactly the nilpotent case.
inline std::size_t telescope_residue_rank(const IntMat& phi, PrimeContext prime) {
    const FpMat reduced = detail::residue_of_square(phi, prime);
    return reduced.pow(reduced.rows()).rank();
}

/// Determinant (in F_p) of φ̄ restricted to its eventual image, in the
/// basis of pivot columns of φ̄^d. The restriction is always invertible;
/// the 0×0 case (nilpotent φ̄) has determinant 1 by convention.
inline Int eventual_image_restriction_det(const IntMat& phi, PrimeContext prime) {
    const FpMat reduced = detail::residue_of_square(phi, prime);
    const FpMat eventual = reduced.pow(reduced.rows());
    const FpMat basis = select_columns(eventual, eventual.pivot_columns());
    // φ̄ maps the eventual image into itself; express φ̄·basis in the basis.
    const FpMat restricted = basis.solve(reduced * basis);
    return restricted.det();
}

/// Consistency report for: nilpotent mod p ⟺ telescope residue vanishes.
struct TelescopeReport {
    unsigned long long samples = 0;
    unsigned long long nilpotent = 0;
    std::optional<IntMat> counterexample;  // first inconsistent matrix, if any

    bool consistent() const noexcept { return !counterexample.has_value(); }
};

namespace detail {

inline void telescope_check_one(const IntMat& phi, PrimeContext prime,
                                TelescopeReport& report) {
    const bool nilpotent = is_nilpotent_mod_p(phi, prime);
    const std::size_t rank = telescope_residue_rank(phi, prime);
    ++report.samples;
    if (nilpotent) {
        ++report.nilpotent;
    }
    if ((rank == 0) != nilpotent && !report.counterexample.has_value()) {
        report.counterexample = phi;
    }
}

}  // namespace detail

/// Exhaustive check over all d×d matrices with entries in [0, entry_bound),
/// enumerated in row-major counting order.
inline TelescopeReport verify_telescope_exhaustive(PrimeContext prime, std::size_t dimension,
                                                   unsigned long long entry_bound) {
    TelescopeReport report;
    const std::size_t cells = dimension * dimension;
    std::vector<unsigned long long> odometer(cells, 0);
    for (;;) {
        IntMat phi(dimension, dimension);
        for (std::size_t c = 0; c < cells; ++c) {
            phi(c / dimension, c % dimension) = odometer[c];
        }
        detail::telescope_check_one(phi, prime, report);
        std::size_t c = cells;
        while (c > 0) {
            --c;
            if (++odometer[c] < entry_bound) {
                break;
            }
            odometer[c] = 0;
            if (c == 0) {
                return report;
            }
        }
    }
}

/// Randomized check: `samples` matrices with entries uniform in
/// [0, entry_bound), from a fixed seed for reproducibility.
inline TelescopeReport verify_telescope_random(PrimeContext prime, std::size_t dimension,
                                               unsigned long long samples,
                                               unsigned long long entry_bound,
                                               std::uint64_t seed) {
    TelescopeReport report;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned long long> entry(0, entry_bound - 1);
    for (unsigned long long s = 0; s < samples; ++s) {
        IntMat phi(dimension, dimension);
        for (std::size_t r = 0; r < dimension; ++r) {
            for (std::size_t c = 0; c < dimension; ++c) {
                phi(r, c) = entry(rng);
            }
        }
        detail::telescope_check_one(phi, prime, report);
    }
    return report;
}

}  // namespace powops
