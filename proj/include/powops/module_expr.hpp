#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "powops/presented_module.hpp"

namespace powops {

/// Parse the module expression language:
///
///   expr := "0" | term ("+" term)*
///   term := "Zp" ["^" r]  |  "Z/p" ["^" e]      (r ≥ 0, e ≥ 1)
///
/// Whitespace is ignored. "Zp" is one free summand, "Zp^r" is r of them,
/// "Z/p^e" is the cyclic module of order p^e. The presentation lists
/// generators in the order written.
inline PresentedModule parse_module_expr(std::string_view text, PrimeContext prime) {
    std::string s;
    s.reserve(text.size());
    for (char c : text) {
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
            s.push_back(c);
        }
    }
    if (s.empty()) {
        throw ParseError("module expression: empty input");
    }
    if (s == "0") {
        return PresentedModule::zero(prime);
    }

    std::size_t pos = 0;
    auto read_exponent = [&](unsigned long long fallback) -> unsigned long long {
        if (pos >= s.size() || s[pos] != '^') {
            return fallback;
        }
        ++pos;
        const std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            ++pos;
        }
        if (pos == start || pos - start > 6) {
            throw ParseError("module expression: malformed exponent");
        }
        return std::stoull(s.substr(start, pos - start));
    };

    std::size_t free_generators = 0;
    std::vector<unsigned> torsion_order;  // exponents in written order
    std::vector<bool> is_torsion;         // generator layout in written order
    for (;;) {
        if (s.compare(pos, 3, "Z/p") == 0) {
            pos += 3;
            const unsigned long long e = read_exponent(1);
            if (e < 1) {
                throw ParseError("module expression: torsion exponent must be >= 1");
            }
            torsion_order.push_back(static_cast<unsigned>(e));
            is_torsion.push_back(true);
        } else if (s.compare(pos, 2, "Zp") == 0) {
            pos += 2;
            const unsigned long long r = read_exponent(1);
            for (unsigned long long i = 0; i < r; ++i) {
                ++free_generators;
                is_torsion.push_back(false);
            }
        } else {
            throw ParseError("module expression: expected 'Zp' or 'Z/p' at position " +
                             std::to_string(pos));
        }
        if (pos == s.size()) {
            break;
        }
        if (s[pos] != '+') {
            throw ParseError("module expression: expected '+' at position " +
                             std::to_string(pos));
        }
        ++pos;
        if (pos == s.size()) {
            throw ParseError("module expression: trailing '+'");
        }
    }

    const std::size_t g = is_torsion.size();
    IntMat rel(torsion_order.size(), g);
    std::size_t row = 0;
    std::size_t torsion_seen = 0;
    for (std::size_t col = 0; col < g; ++col) {
        if (is_torsion[col]) {
            rel(row, col) = prime_power(prime.p(), torsion_order[torsion_seen]);
            ++row;
            ++torsion_seen;
        }
    }
    return PresentedModule(prime, g, std::move(rel));
}

/// Render a normal form in the same language, e.g. "Zp^2 + Z/p^3 + Z/p".
/// The zero module renders as "0". Round-trips through parse_module_expr.
inline std::string render_normal_form(const NormalForm& nf) {
    if (nf.is_zero()) {
        return "0";
    }
    std::string out;
    if (nf.free_rank > 0) {
        out = nf.free_rank == 1 ? "Zp" : "Zp^" + std::to_string(nf.free_rank);
    }
    for (unsigned e : nf.torsion) {
        if (!out.empty()) {
            out += " + ";
        }
        out += e == 1 ? "Z/p" : "Z/p^" + std::to_string(e);
    }
    return out;
}

}  // namespace powops
