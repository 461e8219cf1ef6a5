#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "powops/module_map.hpp"
#include "powops/presented_module.hpp"
#include "powops/theta_polynomial.hpp"

namespace powops {

/// All monomials of the given weight on num_generators weight-1 generators,
/// in canonical order. Symbols θʲxᵢ have weight p^j, so only depths with
/// p^j ≤ n can occur. Weight 0 yields the empty monomial alone.
inline std::vector<ThetaMonomial> weight_monomials(std::size_t num_generators,
                                                   unsigned long long n, PrimeContext prime) {
    // Symbols in ascending canonical order.
    std::vector<std::pair<ThetaSymbol, unsigned long long>> symbols;  // with weights
    for (std::size_t i = 0; i < num_generators; ++i) {
        unsigned long long w = 1;
        for (unsigned j = 0; w <= n && n > 0; ++j) {
            symbols.push_back({ThetaSymbol{i, j}, w});
            if (w > n / static_cast<unsigned long long>(prime.p())) {
                break;  // next depth would overflow past n
            }
            w *= static_cast<unsigned long long>(prime.p());
        }
    }
    std::vector<ThetaMonomial> out;
    ThetaMonomial partial;
    auto search = [&](auto&& self, std::size_t index, unsigned long long remaining) -> void {
        if (remaining == 0) {
            out.push_back(partial);
            return;
        }
        if (index == symbols.size()) {
            return;
        }
        const auto& [sym, w] = symbols[index];
        const unsigned long long max_mult = remaining / w;
        for (unsigned long long mult = 0; mult <= max_mult; ++mult) {
            ThetaMonomial saved = partial;
            if (mult > 0) {
                partial = partial.times(
                    ThetaMonomial::symbol(sym.generator, sym.depth,
                                          static_cast<unsigned>(mult)));
            }
            self(self, index + 1, remaining - mult * w);
            partial = std::move(saved);
        }
    };
    search(search, 0, n);
    std::sort(out.begin(), out.end());
    return out;
}

/// The depth-0 monomials of weight n: the basis of Sym^n.
inline std::vector<ThetaMonomial> sym_monomials(std::size_t num_generators,
                                                unsigned long long n) {
    std::vector<ThetaMonomial> out;
    ThetaMonomial partial;
    auto search = [&](auto&& self, std::size_t i, unsigned long long remaining) -> void {
        if (i == num_generators) {
            if (remaining == 0) {
                out.push_back(partial);
            }
            return;
        }
        for (unsigned long long mult = 0; mult <= remaining; ++mult) {
            ThetaMonomial saved = partial;
            if (mult > 0) {
                partial = partial.times(
                    ThetaMonomial::symbol(i, 0, static_cast<unsigned>(mult)));
            }
            self(self, i + 1, remaining - mult);
            partial = std::move(saved);
        }
    };
    search(search, 0, n);
    std::sort(out.begin(), out.end());
    return out;
}

/// The weight-n piece of the free θ-algebra on a module's generators,
/// modulo the weight-n slice of the θ-ideal generated by its relations.
struct WeightPiece {
    unsigned long long weight;
    std::vector<ThetaMonomial> basis;
    PresentedModule module;
};

namespace detail {

/// Index lookup for expansion on a monomial basis.
inline std::map<ThetaMonomial, std::size_t> basis_index(
    const std::vector<ThetaMonomial>& basis) {
    std::map<ThetaMonomial, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        index.emplace(basis[i], i);
    }
    return index;
}

/// Write a homogeneous polynomial as a row over the basis; every term must
/// be a basis monomial.
inline std::vector<Int> expand_on_basis(const ThetaPolynomial& z,
                                        const std::map<ThetaMonomial, std::size_t>& index,
                                        std::size_t width) {
    std::vector<Int> row(width);
    for (const auto& [m, c] : z.terms()) {
        const auto it = index.find(m);
        if (it == index.end()) {
            throw ExactnessError("expand_on_basis: term of unexpected weight: " + m.label());
        }
        row[it->second] = c;
    }
    return row;
}

/// Relation rows of the weight-n slice: every product m·θʲ(ρ) with ρ a
/// relation of the presentation, p^j ≤ n, and m a monomial of the
/// complementary weight n − p^j.
inline std::vector<std::vector<Int>> slice_rows(
    const PresentedModule& m, unsigned long long n,
    const std::map<ThetaMonomial, std::size_t>& index, std::size_t width) {
    const PrimeContext prime = m.prime();
    std::vector<std::vector<Int>> rows;
    const IntMat& rel = m.relations();
    for (std::size_t r = 0; r < rel.rows(); ++r) {
        ThetaPolynomial rho;
        for (std::size_t c = 0; c < rel.cols(); ++c) {
            rho.add_term(ThetaMonomial::symbol(c, 0), rel(r, c));
        }
        unsigned long long pj = 1;
        for (unsigned j = 0; pj <= n; ++j) {
            // rho is homogeneous of weight p^j here.
            for (const ThetaMonomial& cof :
                 weight_monomials(m.num_generators(), n - pj, prime)) {
                rows.push_back(expand_on_basis(
                    ThetaPolynomial::monomial(cof, 1) * rho, index, width));
            }
            if (pj > n / static_cast<unsigned long long>(prime.p())) {
                break;
            }
            pj *= static_cast<unsigned long long>(prime.p());
            rho = theta_apply(rho, prime);
        }
    }
    return rows;
}

inline IntMat rows_to_matrix(const std::vector<std::vector<Int>>& rows, std::size_t width) {
    IntMat out(rows.size(), width);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            out(r, c) = rows[r][c];
        }
    }
    return out;
}

}  // namespace detail

/// Weight-n piece over the presentation exactly as given (no
/// renormalization). The basis is the canonical monomial enumeration on the
/// module's own generators; relations are the θ-ideal slice.
inline WeightPiece weight_piece(const PresentedModule& m, unsigned long long n) {
    std::vector<ThetaMonomial> basis = weight_monomials(m.num_generators(), n, m.prime());
    const auto index = detail::basis_index(basis);
    const auto rows = detail::slice_rows(m, n, index, basis.size());
    PresentedModule module(m.prime(), basis.size(),
                           detail::rows_to_matrix(rows, basis.size()));
    return WeightPiece{n, std::move(basis), std::move(module)};
}

/// T_n of the module's isomorphism type: the weight piece of the canonical
/// presentation of its normal form. Weight 0 gives Z_p on the empty
/// monomial; weights no monomial can reach give the zero module.
inline WeightPiece power_piece(const PresentedModule& m, unsigned long long n) {
    return weight_piece(
        PresentedModule::from_normal_form(m.prime(), m.normal_form()), n);
}

/// T_n on a map: basis monomial Π(θʲxᵢ)^a ↦ Π θʲ(f(xᵢ))^a expanded on the
/// target basis. Operates on the presentations as given, so source and
/// target pieces are the weight_piece results; construction re-certifies
/// well-definedness exactly.
inline ModuleMap power_piece_map(const ModuleMap& f, unsigned long long n) {
    const PrimeContext prime = f.prime();
    WeightPiece source = weight_piece(f.source(), n);
    WeightPiece target = weight_piece(f.target(), n);
    const auto target_index = detail::basis_index(target.basis);

    // θ-iterates of the generator images, filled lazily per depth.
    std::vector<std::vector<ThetaPolynomial>> images(f.source().num_generators());
    for (std::size_t c = 0; c < images.size(); ++c) {
        ThetaPolynomial image;
        for (std::size_t t = 0; t < f.target().num_generators(); ++t) {
            image.add_term(ThetaMonomial::symbol(t, 0), f.matrix()(t, c));
        }
        images[c].push_back(std::move(image));
    }
    auto image_iterate = [&](std::size_t generator, unsigned depth) -> const ThetaPolynomial& {
        auto& column = images[generator];
        while (column.size() <= depth) {
            column.push_back(theta_apply(column.back(), prime));
        }
        return column[depth];
    };

    IntMat matrix(target.basis.size(), source.basis.size());
    for (std::size_t col = 0; col < source.basis.size(); ++col) {
        ThetaPolynomial expansion = ThetaPolynomial::constant(1);
        for (const auto& [sym, mult] : source.basis[col].factors()) {
            expansion = expansion * image_iterate(sym.generator, sym.depth).pow(mult);
        }
        const std::vector<Int> column =
            detail::expand_on_basis(expansion, target_index, target.basis.size());
        for (std::size_t row = 0; row < target.basis.size(); ++row) {
            matrix(row, col) = column[row];
        }
    }
    return ModuleMap(std::move(source.module), std::move(target.module), std::move(matrix));
}

/// Sym^n(M) (depth-0 monomials and slice), the comparison map into T_n(M)
/// induced by inclusion of monomial bases, and whether it is an
/// isomorphism. Works on the canonical presentation of M's normal form.
struct SymComparison {
    WeightPiece sym;
    WeightPiece tn;
    ModuleMap comparison;
    bool isomorphism;
};

inline SymComparison sym_compare(const PresentedModule& m, unsigned long long n) {
    const PresentedModule canon =
        PresentedModule::from_normal_form(m.prime(), m.normal_form());
    WeightPiece tn = weight_piece(canon, n);

    std::vector<ThetaMonomial> sym_basis = sym_monomials(canon.num_generators(), n);
    const auto sym_index = detail::basis_index(sym_basis);
    // Depth-0 slice only: m·ρ for monomials m of weight n − 1.
    std::vector<std::vector<Int>> rows;
    const IntMat& rel = canon.relations();
    if (n >= 1) {
        for (std::size_t r = 0; r < rel.rows(); ++r) {
            ThetaPolynomial rho;
            for (std::size_t c = 0; c < rel.cols(); ++c) {
                rho.add_term(ThetaMonomial::symbol(c, 0), rel(r, c));
            }
            for (const ThetaMonomial& cof : sym_monomials(canon.num_generators(), n - 1)) {
                rows.push_back(detail::expand_on_basis(
                    ThetaPolynomial::monomial(cof, 1) * rho, sym_index, sym_basis.size()));
            }
        }
    }
    PresentedModule sym_module(canon.prime(), sym_basis.size(),
                               detail::rows_to_matrix(rows, sym_basis.size()));

    const auto tn_index = detail::basis_index(tn.basis);
    IntMat inclusion(tn.basis.size(), sym_basis.size());
    for (std::size_t col = 0; col < sym_basis.size(); ++col) {
        inclusion(tn_index.at(sym_basis[col]), col) = 1;
    }
    ModuleMap comparison(sym_module, tn.module, std::move(inclusion));
    const bool iso = is_iso_map(comparison);
    return SymComparison{WeightPiece{n, std::move(sym_basis), std::move(sym_module)},
                         std::move(tn), std::move(comparison), iso};
}

/// Whether T_n(M ⊕ N) and ⊕_{i+j=n} T_i(M) ⊗ T_j(N) have equal normal forms.
inline bool binomial_formula_holds(const PresentedModule& m, const PresentedModule& n_mod,
                                   unsigned long long n) {
    require_same_prime(m.prime(), n_mod.prime());
    const NormalForm lhs = power_piece(direct_sum(m, n_mod), n).module.normal_form();
    PresentedModule rhs = PresentedModule::zero(m.prime());
    for (unsigned long long i = 0; i <= n; ++i) {
        rhs = direct_sum(rhs, tensor(power_piece(m, i).module,
                                     power_piece(n_mod, n - i).module));
    }
    return lhs == rhs.normal_form();
}

/// One row of the mod-p comparison table: Z/p ⊗ T_n applied to the quotient
/// q_k : Z_p → Z/p^k.
struct ResidueTableRow {
    unsigned k;
    NormalForm source;
    NormalForm target;
    bool isomorphism;
};

inline std::vector<ResidueTableRow> residue_stabilization_table(PrimeContext prime,
                                                                unsigned long long n,
                                                                unsigned k_max) {
    std::vector<ResidueTableRow> rows;
    const PresentedModule zp = PresentedModule::free_module(prime, 1);
    for (unsigned k = 1; k <= k_max; ++k) {
        const ModuleMap q(zp, PresentedModule::cyclic(prime, k), IntMat{{1}});
        const ModuleMap reduced = residue_tensor(power_piece_map(q, n));
        rows.push_back(ResidueTableRow{k, reduced.source().normal_form(),
                                       reduced.target().normal_form(),
                                       is_iso_map(reduced)});
    }
    return rows;
}

/// Scan k = 1..k_max for the least k₀ from which Z/p ⊗ T_n(q_k) stays an
/// isomorphism through k_max; k0 is empty when even k_max fails.
struct StabilizationScan {
    std::vector<bool> flags;  // flags[k-1] for k = 1..k_max
    std::optional<unsigned> k0;
};

inline StabilizationScan stabilization_scan(PrimeContext prime, unsigned long long n,
                                            unsigned k_max) {
    StabilizationScan scan;
    for (const ResidueTableRow& row : residue_stabilization_table(prime, n, k_max)) {
        scan.flags.push_back(row.isomorphism);
    }
    for (unsigned k = k_max; k >= 1 && scan.flags[k - 1]; --k) {
        scan.k0 = k;
    }
    return scan;
}

}  // namespace powops
