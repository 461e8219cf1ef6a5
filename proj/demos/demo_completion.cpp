// The analytic side in miniature: truncated cokernels of x - p recover
// M/p^N level by level, and base-p digit strings are the element-level
// shadow of the same expansion.

#include <iostream>

#include "powops/completion.hpp"
#include "powops/module_expr.hpp"

using namespace powops;

int main() {
    const PrimeContext prime(3);

    const PresentedModule m = parse_module_expr("Zp + Z/p^2", prime);
    std::cout << "M = " << render_normal_form(m.normal_form()) << ", p = " << prime.p()
              << "\n";
    for (std::size_t n = 1; n <= 5; ++n) {
        std::cout << "  coker(x - p | order " << n
                  << ") = " << render_normal_form(truncated_analytic_cokernel(m, n).normal_form())
                  << "\n";
    }

    std::cout << "\nbase-3 digits:\n";
    for (long long a : {10, -1, 42}) {
        const auto digits = taylor_expand(Int(a), 5, prime);
        std::cout << "  " << a << " =";
        for (std::size_t i = 0; i < digits.size(); ++i) {
            std::cout << (i ? " + " : " ") << digits[i] << "*3^" << i;
        }
        std::cout << "  (mod 3^5)\n";
    }
    return 0;
}
