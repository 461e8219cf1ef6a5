#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "powops/int_matrix.hpp"
#include "powops/prime.hpp"

namespace powops {

/// Isomorphism type of a finitely presented Z_p-module:
/// Z_p^free_rank ⊕ ⊕ᵢ Z/p^{torsion[i]}, torsion sorted non-increasing.
struct NormalForm {
    std::size_t free_rank = 0;
    std::vector<unsigned> torsion;

    bool operator==(const NormalForm& other) const = default;

    bool is_zero() const noexcept { return free_rank == 0 && torsion.empty(); }

    std::size_t min_generators() const noexcept { return free_rank + torsion.size(); }
};

/// Largest torsion exponent, 0 for torsion-free modules.
inline unsigned max_torsion_exponent(const NormalForm& nf) {
    return nf.torsion.empty() ? 0 : nf.torsion.front();
}

/// A finitely presented Z_p-module: a chosen generator count and an integer
/// matrix whose rows are relations among the generators. The p-local Smith
/// data of the relations is computed once at construction; it yields both
/// the normal form and the exact membership test for the relation span.
class PresentedModule {
  public:
    PresentedModule(PrimeContext prime, std::size_t num_generators, IntMat relations)
        : prime_(prime),
          num_generators_(num_generators),
          relations_(std::move(relations)) {
        if (relations_.rows() == 0) {
            relations_ = IntMat(0, num_generators_);  // canonical empty shape
        } else if (relations_.cols() != num_generators_) {
            throw std::invalid_argument("PresentedModule: relation width != generator count");
        }
        span_ = smith_normal_form(relations_.transposed());
        const std::vector<Int> factors = span_.invariant_factors();
        normal_form_.free_rank = num_generators_ - factors.size();
        for (const Int& f : factors) {
            const unsigned e = valuation(f, prime_.p());
            if (e >= 1) {
                normal_form_.torsion.push_back(e);
            }
        }
        std::sort(normal_form_.torsion.begin(), normal_form_.torsion.end(),
                  std::greater<unsigned>());
    }

    static PresentedModule zero(PrimeContext prime) {
        return PresentedModule(prime, 0, IntMat(0, 0));
    }

    static PresentedModule free_module(PrimeContext prime, std::size_t rank) {
        return PresentedModule(prime, rank, IntMat(0, rank));
    }

    /// Z/p^e on one generator.
    static PresentedModule cyclic(PrimeContext prime, unsigned e) {
        IntMat rel(1, 1);
        rel(0, 0) = prime_power(prime.p(), e);
        return PresentedModule(prime, 1, std::move(rel));
    }

    /// Canonical presentation of a normal form: free generators first, then
    /// one generator per torsion factor with the single relation p^e · x.
    static PresentedModule from_normal_form(PrimeContext prime, const NormalForm& nf) {
        const std::size_t g = nf.free_rank + nf.torsion.size();
        IntMat rel(nf.torsion.size(), g);
        for (std::size_t i = 0; i < nf.torsion.size(); ++i) {
            rel(i, nf.free_rank + i) = prime_power(prime.p(), nf.torsion[i]);
        }
        return PresentedModule(prime, g, std::move(rel));
    }

    const PrimeContext& prime() const noexcept { return prime_; }
    std::size_t num_generators() const noexcept { return num_generators_; }
    const IntMat& relations() const noexcept { return relations_; }
    const NormalForm& normal_form() const noexcept { return normal_form_; }

    /// Presentation equality (same generators and relation matrix), not
    /// isomorphism; use normal_form() to compare isomorphism types.
    bool operator==(const PresentedModule& other) const {
        return prime_ == other.prime_ && num_generators_ == other.num_generators_ &&
               relations_ == other.relations_;
    }

    /// Whether v (a column over the generators) lies in the Z_p-span of the
    /// relation rows. With L·Rᵀ·Q = D, the system Rᵀc = v transforms to
    /// D·(Q⁻¹c) = L·v, solvable over Z_p iff each component of L·v is
    /// divisible by the p-part of the matching diagonal entry.
    bool in_relation_span(const std::vector<Int>& v) const {
        if (v.size() != num_generators_) {
            throw std::invalid_argument("in_relation_span: vector length mismatch");
        }
        const std::vector<Int> w = span_.left.apply(v);
        const std::size_t diag_len = std::min(span_.diag.rows(), span_.diag.cols());
        for (std::size_t i = 0; i < num_generators_; ++i) {
            if (w[i] == 0) {
                continue;
            }
            const Int d = i < diag_len ? span_.diag(i, i) : Int(0);
            if (d == 0) {
                return false;
            }
            if (valuation(w[i], prime_.p()) < valuation(d, prime_.p())) {
                return false;
            }
        }
        return true;
    }

  private:
    PrimeContext prime_;
    std::size_t num_generators_;
    IntMat relations_;
    SmithDecomposition span_;
    NormalForm normal_form_;
};

/// Normal form of the cokernel of a relation matrix, without keeping the
/// presentation around.
inline NormalForm normal_form_of(const IntMat& relations, std::size_t num_generators,
                                 PrimeContext prime) {
    return PresentedModule(prime, num_generators, relations).normal_form();
}

inline PresentedModule direct_sum(const PresentedModule& m, const PresentedModule& n) {
    require_same_prime(m.prime(), n.prime());
    const std::size_t gm = m.num_generators();
    const std::size_t gn = n.num_generators();
    IntMat rel(m.relations().rows() + n.relations().rows(), gm + gn);
    for (std::size_t r = 0; r < m.relations().rows(); ++r) {
        for (std::size_t c = 0; c < gm; ++c) {
            rel(r, c) = m.relations()(r, c);
        }
    }
    for (std::size_t r = 0; r < n.relations().rows(); ++r) {
        for (std::size_t c = 0; c < gn; ++c) {
            rel(m.relations().rows() + r, gm + c) = n.relations()(r, c);
        }
    }
    return PresentedModule(m.prime(), gm + gn, std::move(rel));
}

/// Tensor product over Z_p. Generators are the pairs (i, j) in row-major
/// order (index i·g_N + j); relations are r ⊗ e_j for each relation r of M
/// and e_i ⊗ s for each relation s of N.
inline PresentedModule tensor(const PresentedModule& m, const PresentedModule& n) {
    require_same_prime(m.prime(), n.prime());
    const std::size_t gm = m.num_generators();
    const std::size_t gn = n.num_generators();
    const std::size_t rows = m.relations().rows() * gn + gm * n.relations().rows();
    IntMat rel(rows, gm * gn);
    std::size_t out = 0;
    for (std::size_t r = 0; r < m.relations().rows(); ++r) {
        for (std::size_t j = 0; j < gn; ++j, ++out) {
            for (std::size_t i = 0; i < gm; ++i) {
                rel(out, i * gn + j) = m.relations()(r, i);
            }
        }
    }
    for (std::size_t i = 0; i < gm; ++i) {
        for (std::size_t s = 0; s < n.relations().rows(); ++s, ++out) {
            for (std::size_t j = 0; j < gn; ++j) {
                rel(out, i * gn + j) = n.relations()(s, j);
            }
        }
    }
    return PresentedModule(m.prime(), gm * gn, std::move(rel));
}

}  // namespace powops
