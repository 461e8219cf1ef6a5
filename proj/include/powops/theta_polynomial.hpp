#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "powops/integers.hpp"
#include "powops/prime.hpp"

namespace powops {

/// The symbol θʲxᵢ: generator index i at θ-depth j (j = 0 is xᵢ itself).
struct ThetaSymbol {
    std::size_t generator = 0;
    unsigned depth = 0;

    auto operator<=>(const ThetaSymbol&) const = default;
};

/// A commutative monomial in the symbols θʲxᵢ. Factors are kept sorted by
/// symbol with multiplicities ≥ 1; the empty product is 1.
///
/// The canonical order between monomials compares factor sequences
/// lexicographically, symbols ascending and, at equal symbols,
/// multiplicity descending. On the weight-p piece in one generator this
/// puts x^p before θx, and on weight p² it runs x^{p²}, x^{p²−p}·θx, …,
/// (θx)^p, θ²x.
class ThetaMonomial {
  public:
    using Factor = std::pair<ThetaSymbol, unsigned>;

    ThetaMonomial() = default;

    static ThetaMonomial one() { return ThetaMonomial(); }

    static ThetaMonomial symbol(std::size_t generator, unsigned depth,
                                unsigned multiplicity = 1) {
        ThetaMonomial m;
        if (multiplicity > 0) {
            m.factors_.push_back({ThetaSymbol{generator, depth}, multiplicity});
        }
        return m;
    }

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    bool is_one() const noexcept { return factors_.empty(); }

    /// Σ multiplicity · p^depth.
    unsigned long long weight(long long p) const {
        unsigned long long w = 0;
        for (const auto& [sym, mult] : factors_) {
            unsigned long long scale = 1;
            for (unsigned j = 0; j < sym.depth; ++j) {
                scale *= static_cast<unsigned long long>(p);
            }
            w += mult * scale;
        }
        return w;
    }

    /// Merge-product of two monomials.
    ThetaMonomial times(const ThetaMonomial& other) const {
        ThetaMonomial out;
        out.factors_.reserve(factors_.size() + other.factors_.size());
        std::size_t a = 0;
        std::size_t b = 0;
        while (a < factors_.size() && b < other.factors_.size()) {
            if (factors_[a].first < other.factors_[b].first) {
                out.factors_.push_back(factors_[a++]);
            } else if (other.factors_[b].first < factors_[a].first) {
                out.factors_.push_back(other.factors_[b++]);
            } else {
                out.factors_.push_back(
                    {factors_[a].first, factors_[a].second + other.factors_[b].second});
                ++a;
                ++b;
            }
        }
        for (; a < factors_.size(); ++a) {
            out.factors_.push_back(factors_[a]);
        }
        for (; b < other.factors_.size(); ++b) {
            out.factors_.push_back(other.factors_[b]);
        }
        return out;
    }

    bool operator==(const ThetaMonomial& other) const = default;

    /// Canonical order (see class comment); also the map-key order, so
    /// iterating a polynomial's terms walks the canonical basis order.
    bool operator<(const ThetaMonomial& other) const {
        const std::size_t n = std::min(factors_.size(), other.factors_.size());
        for (std::size_t k = 0; k < n; ++k) {
            if (factors_[k].first != other.factors_[k].first) {
                return factors_[k].first < other.factors_[k].first;
            }
            if (factors_[k].second != other.factors_[k].second) {
                return factors_[k].second > other.factors_[k].second;
            }
        }
        return factors_.size() < other.factors_.size();
    }

    /// ASCII label, e.g. "x0^3*th(x1)^2" or "th2(x0)"; "1" for the empty
    /// monomial.
    std::string label() const {
        if (factors_.empty()) {
            return "1";
        }
        std::string out;
        for (const auto& [sym, mult] : factors_) {
            if (!out.empty()) {
                out += "*";
            }
            std::string base = "x" + std::to_string(sym.generator);
            if (sym.depth == 1) {
                base = "th(" + base + ")";
            } else if (sym.depth > 1) {
                base = "th" + std::to_string(sym.depth) + "(" + base + ")";
            }
            out += base;
            if (mult > 1) {
                out += "^" + std::to_string(mult);
            }
        }
        return out;
    }

  private:
    std::vector<Factor> factors_;
};

/// An integer linear combination of θ-monomials, the elements of the free
/// θ-ring. Terms with coefficient zero are never stored.
class ThetaPolynomial {
  public:
    ThetaPolynomial() = default;

    static ThetaPolynomial zero() { return ThetaPolynomial(); }

    static ThetaPolynomial constant(Int c) {
        ThetaPolynomial z;
        if (c != 0) {
            z.terms_.emplace(ThetaMonomial::one(), std::move(c));
        }
        return z;
    }

    static ThetaPolynomial symbol(std::size_t generator, unsigned depth) {
        return monomial(ThetaMonomial::symbol(generator, depth), 1);
    }

    static ThetaPolynomial monomial(ThetaMonomial m, Int coefficient) {
        ThetaPolynomial z;
        if (coefficient != 0) {
            z.terms_.emplace(std::move(m), std::move(coefficient));
        }
        return z;
    }

    const std::map<ThetaMonomial, Int>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool operator==(const ThetaPolynomial& other) const = default;

    void add_term(const ThetaMonomial& m, const Int& coefficient) {
        if (coefficient == 0) {
            return;
        }
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, coefficient);
        } else {
            it->second += coefficient;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    ThetaPolynomial operator+(const ThetaPolynomial& other) const {
        ThetaPolynomial out = *this;
        for (const auto& [m, c] : other.terms_) {
            out.add_term(m, c);
        }
        return out;
    }

    ThetaPolynomial operator-() const {
        ThetaPolynomial out = *this;
        for (auto& [m, c] : out.terms_) {
            c = -c;
        }
        return out;
    }

    ThetaPolynomial operator-(const ThetaPolynomial& other) const {
        ThetaPolynomial out = *this;
        for (const auto& [m, c] : other.terms_) {
            out.add_term(m, -c);
        }
        return out;
    }

    ThetaPolynomial operator*(const ThetaPolynomial& other) const {
        ThetaPolynomial out;
        for (const auto& [ma, ca] : terms_) {
            for (const auto& [mb, cb] : other.terms_) {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        return out;
    }

    ThetaPolynomial operator*(const Int& scalar) const {
        ThetaPolynomial out;
        if (scalar == 0) {
            return out;
        }
        for (const auto& [m, c] : terms_) {
            out.terms_.emplace(m, c * scalar);
        }
        return out;
    }

    ThetaPolynomial pow(unsigned e) const {
        ThetaPolynomial result = constant(1);
        ThetaPolynomial base = *this;
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

    /// Split into homogeneous weight components.
    std::map<unsigned long long, ThetaPolynomial> by_weight(long long p) const {
        std::map<unsigned long long, ThetaPolynomial> out;
        for (const auto& [m, c] : terms_) {
            out[m.weight(p)].add_term(m, c);
        }
        return out;
    }

    /// Whether all terms share one weight (true for the zero polynomial);
    /// reports that weight through the out-parameter when present.
    bool is_homogeneous(long long p, unsigned long long& weight_out) const {
        bool first = true;
        for (const auto& [m, c] : terms_) {
            const unsigned long long w = m.weight(p);
            if (first) {
                weight_out = w;
                first = false;
            } else if (w != weight_out) {
                return false;
            }
        }
        return true;
    }

    std::string str() const {
        if (terms_.empty()) {
            return "0";
        }
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) {
                out += c > 0 ? " + " : " - ";
            } else if (c < 0) {
                out += "-";
            }
            const Int mag = abs(c);
            if (mag != 1 || m.is_one()) {
                out += mag.str();
                if (!m.is_one()) {
                    out += "*";
                }
            }
            if (!m.is_one()) {
                out += m.label();
            }
        }
        return out;
    }

  private:
    std::map<ThetaMonomial, Int> terms_;
};

/// The Adams operation ψ: the ring endomorphism acting on symbols by
/// ψ(θʲx) = (θʲx)^p + p·θʲ⁺¹x and fixing constants.
inline ThetaPolynomial psi(const ThetaPolynomial& z, PrimeContext prime) {
    const unsigned long long p_exp = static_cast<unsigned long long>(prime.p());
    ThetaPolynomial out;
    for (const auto& [m, c] : z.terms()) {
        ThetaPolynomial term = ThetaPolynomial::constant(c);
        for (const auto& [sym, mult] : m.factors()) {
            ThetaPolynomial image =
                ThetaPolynomial::monomial(
                    ThetaMonomial::symbol(sym.generator, sym.depth,
                                          static_cast<unsigned>(p_exp)),
                    1) +
                ThetaPolynomial::symbol(sym.generator, sym.depth + 1) * Int(prime.p());
            term = term * image.pow(mult);
        }
        out = out + term;
    }
    return out;
}

/// θ(z) = (ψ(z) − z^p) / p. The division is exact for every input — ψ lifts
/// the Frobenius — so a remainder signals an internal bug (ExactnessError).
inline ThetaPolynomial theta_apply(const ThetaPolynomial& z, PrimeContext prime) {
    const ThetaPolynomial numerator =
        psi(z, prime) - z.pow(static_cast<unsigned>(prime.p()));
    ThetaPolynomial out;
    for (const auto& [m, c] : numerator.terms()) {
        out.add_term(m, exact_quotient(c, Int(prime.p()), "theta_apply"));
    }
    return out;
}

/// θ composed with itself `iterations` times.
inline ThetaPolynomial theta_iterate(ThetaPolynomial z, unsigned iterations,
                                     PrimeContext prime) {
    for (unsigned j = 0; j < iterations; ++j) {
        z = theta_apply(z, prime);
    }
    return z;
}

/// Extend xᵢ ↦ images[i] to the θ-ring map on polynomials: θʲxᵢ ↦ θʲ(images[i]).
/// Symbols whose generator index has no image are rejected.
inline ThetaPolynomial substitute(const ThetaPolynomial& z,
                                  const std::vector<ThetaPolynomial>& images,
                                  PrimeContext prime) {
    // Cache θ-iterates of the images as needed: iterate_cache[i][j] = θʲ(images[i]).
    std::vector<std::vector<ThetaPolynomial>> iterate_cache(images.size());
    auto iterate = [&](std::size_t i, unsigned depth) -> const ThetaPolynomial& {
        auto& column = iterate_cache[i];
        if (column.empty()) {
            column.push_back(images[i]);
        }
        while (column.size() <= depth) {
            column.push_back(theta_apply(column.back(), prime));
        }
        return column[depth];
    };
    ThetaPolynomial out;
    for (const auto& [m, c] : z.terms()) {
        ThetaPolynomial term = ThetaPolynomial::constant(c);
        for (const auto& [sym, mult] : m.factors()) {
            if (sym.generator >= images.size()) {
                throw std::invalid_argument("substitute: generator index out of range");
            }
            term = term * iterate(sym.generator, sym.depth).pow(mult);
        }
        out = out + term;
    }
    return out;
}

}  // namespace powops
