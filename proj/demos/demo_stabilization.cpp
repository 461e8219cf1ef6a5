// Walk the weight-p power-operation piece across the cyclic quotients
// q_k : Zp -> Z/p^k and watch the mod-p comparison settle: it misses at
// k = 1 and is an isomorphism from k = 2 on. The same scan is available on
// the command line as `powops-cli example-3-1` and `powops-cli stabilize`.

#include <iostream>

#include "powops/module_expr.hpp"
#include "powops/power_piece.hpp"

using namespace powops;

int main() {
    for (long long p : {2, 3}) {
        const PrimeContext prime(p);
        const auto n = static_cast<unsigned long long>(p);
        std::cout << "p = " << p << ", weight n = " << n << "\n";
        std::cout << "  T_p(Zp) = "
                  << render_normal_form(
                         power_piece(PresentedModule::free_module(prime, 1), n)
                             .module.normal_form())
                  << "\n";
        for (const ResidueTableRow& row : residue_stabilization_table(prime, n, 6)) {
            std::cout << "  k = " << row.k << ":  Z/p (x) T_p(Z/p^" << row.k
                      << ") = " << render_normal_form(row.target) << "  vs  "
                      << render_normal_form(row.source) << "  ->  "
                      << (row.isomorphism ? "isomorphism" : "not an isomorphism") << "\n";
        }
        const StabilizationScan scan = stabilization_scan(prime, n, 6);
        std::cout << "  stabilizes from k0 = ";
        if (scan.k0.has_value()) {
            std::cout << *scan.k0;
        } else {
            std::cout << "(none within the scan)";
        }
        std::cout << "\n\n";
    }

    // Weights up to p^2 stabilize at different exponents; the scan makes the
    // pattern visible.
    const PrimeContext two(2);
    std::cout << "p = 2, k0 by weight:\n";
    for (unsigned long long n = 1; n <= 4; ++n) {
        const StabilizationScan scan = stabilization_scan(two, n, 8);
        std::cout << "  n = " << n << ": k0 = " << *scan.k0 << "\n";
    }
    return 0;
}
