#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "powops/module_map.hpp"
#include "powops/presented_module.hpp"

namespace powops {

/// An element of M[x]/(x^N): one coefficient vector over M's generators for
/// each power x^0 … x^{N−1}. Arithmetic stays inside the truncation.
struct TruncatedSeries {
    PresentedModule module;
    std::vector<std::vector<Int>> coefficients;  // coefficients[k][generator]

    TruncatedSeries(PresentedModule m, std::size_t truncation_order)
        : module(std::move(m)),
          coefficients(truncation_order,
                       std::vector<Int>(module.num_generators())) {}

    std::size_t truncation_order() const noexcept { return coefficients.size(); }

    TruncatedSeries operator+(const TruncatedSeries& other) const {
        if (!(module == other.module) ||
            truncation_order() != other.truncation_order()) {
            throw std::invalid_argument("TruncatedSeries: mismatched operands");
        }
        TruncatedSeries out = *this;
        for (std::size_t k = 0; k < coefficients.size(); ++k) {
            for (std::size_t i = 0; i < module.num_generators(); ++i) {
                out.coefficients[k][i] += other.coefficients[k][i];
            }
        }
        return out;
    }

    /// Multiplication by x: shift up one degree, the top coefficient falls
    /// off the truncation.
    TruncatedSeries times_x() const {
        TruncatedSeries out(module, truncation_order());
        for (std::size_t k = 0; k + 1 < coefficients.size(); ++k) {
            out.coefficients[k + 1] = coefficients[k];
        }
        return out;
    }

    TruncatedSeries operator*(const Int& scalar) const {
        TruncatedSeries out = *this;
        for (auto& coefficient : out.coefficients) {
            for (Int& entry : coefficient) {
                entry *= scalar;
            }
        }
        return out;
    }
};

/// The truncated module M[x]/(x^N) as a presented module: generator
/// (k, i) = x^k·eᵢ at index k·g + i, with M's relations repeated in every
/// degree.
inline PresentedModule truncated_polynomial_module(const PresentedModule& m, std::size_t n) {
    const std::size_t g = m.num_generators();
    const IntMat& rel = m.relations();
    IntMat rows(rel.rows() * n, g * n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t r = 0; r < rel.rows(); ++r) {
            for (std::size_t c = 0; c < g; ++c) {
                rows(k * rel.rows() + r, k * g + c) = rel(r, c);
            }
        }
    }
    return PresentedModule(m.prime(), g * n, std::move(rows));
}

/// Multiplication by (x − p) as a module map on M[x]/(x^N).
inline ModuleMap x_minus_p_map(const PresentedModule& m, std::size_t n) {
    const std::size_t g = m.num_generators();
    const PresentedModule mx = truncated_polynomial_module(m, n);
    IntMat matrix(g * n, g * n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < g; ++i) {
            matrix(k * g + i, k * g + i) = -m.prime().p();
            if (k + 1 < n) {
                matrix((k + 1) * g + i, k * g + i) = 1;
            }
        }
    }
    return ModuleMap(mx, mx, std::move(matrix));
}

/// Cokernel of (x − p) on M[x]/(x^N). Since x is forced to act as p and
/// x^N = 0, this is M/p^N·M; for finitely generated M the tower over N
/// recovers the module itself — completion is invisible at this scale.
inline PresentedModule truncated_analytic_cokernel(const PresentedModule& m, std::size_t n) {
    if (n < 1) {
        throw std::invalid_argument("truncated_analytic_cokernel: order must be >= 1");
    }
    return map_cokernel(x_minus_p_map(m, n));
}

/// The stages [coker((x−p) on M[x]/(x^N))] for N = 1..n_max.
inline std::vector<PresentedModule> stabilization_tower(const PresentedModule& m,
                                                        std::size_t n_max) {
    std::vector<PresentedModule> tower;
    tower.reserve(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        tower.push_back(truncated_analytic_cokernel(m, n));
    }
    return tower;
}

/// The natural surjection stage N+1 → stage N of the tower (truncation of
/// series), expressed on the cokernel presentations returned by
/// truncated_analytic_cokernel.
inline ModuleMap tower_step(const PresentedModule& m, std::size_t n) {
    const PresentedModule higher = truncated_analytic_cokernel(m, n + 1);
    const PresentedModule lower = truncated_analytic_cokernel(m, n);
    const std::size_t g = m.num_generators();
    IntMat matrix(g * n, g * (n + 1));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < g; ++i) {
            matrix(k * g + i, k * g + i) = 1;
        }
    }
    return ModuleMap(higher, lower, std::move(matrix));
}

/// Base-p digits c₀…c_{K−1} in [0, p−1] with a ≡ Σ c_k p^k mod p^K: the
/// truncated expansion of a around p (substituting x = p realizes it as a
/// series in the analytic-completion quotient).
inline std::vector<Int> taylor_expand(const Int& a, std::size_t digit_count,
                                      PrimeContext prime) {
    if (digit_count < 1) {
        throw std::invalid_argument("taylor_expand: digit count must be >= 1");
    }
    std::vector<Int> digits;
    digits.reserve(digit_count);
    Int rest = mod_nonnegative(a, pow_int(Int(prime.p()), static_cast<unsigned>(digit_count)));
    for (std::size_t k = 0; k < digit_count; ++k) {
        digits.push_back(rest % prime.p());
        rest /= prime.p();
    }
    return digits;
}

/// Σ c_k p^k — the evaluation inverse of taylor_expand.
inline Int evaluate_digits(const std::vector<Int>& digits, PrimeContext prime) {
    Int value = 0;
    Int power = 1;
    for (const Int& c : digits) {
        value += c * power;
        power *= prime.p();
    }
    return value;
}

}  // namespace powops
