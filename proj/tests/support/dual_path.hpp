#pragma once

// Independent computation of T_n(Z/p^k) used to cross-check the θ-ideal
// slicing: write Z/p^k as the coequalizer of the parallel pair
// Z_p{x, r} ⇉ Z_p{x} (r ↦ p^k·x and r ↦ 0), apply the weight-n functor to
// both maps, and take the cokernel of their difference.

#include "powops/power_piece.hpp"

namespace powops::testsupport {

inline NormalForm tn_via_coequalizer(PrimeContext prime, unsigned k, unsigned long long n) {
    const PresentedModule pair_source = PresentedModule::free_module(prime, 2);
    const PresentedModule pair_target = PresentedModule::free_module(prime, 1);
    IntMat d0(1, 2);
    d0(0, 0) = 1;
    d0(0, 1) = prime_power(prime.p(), k);
    IntMat d1(1, 2);
    d1(0, 0) = 1;

    const ModuleMap t0 = power_piece_map(ModuleMap(pair_source, pair_target, d0), n);
    const ModuleMap t1 = power_piece_map(ModuleMap(pair_source, pair_target, d1), n);
    const ModuleMap difference(t0.source(), t0.target(), t0.matrix() - t1.matrix());
    return map_cokernel(difference).normal_form();
}

}  // namespace powops::testsupport
