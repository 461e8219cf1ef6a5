#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "powops/module_expr.hpp"
#include "powops/module_map.hpp"
#include "powops/presented_module.hpp"
#include "support/generators.hpp"

using namespace powops;
using namespace powops::testsupport;

namespace {

NormalForm nf(std::size_t free_rank, std::vector<unsigned> torsion) {
    return NormalForm{free_rank, std::move(torsion)};
}

}  // namespace

TEST_CASE("normal forms of basic presentations") {
    PrimeContext p2(2);
    PrimeContext p3(3);

    // One generator killed by p^2.
    REQUIRE(PresentedModule(p2, 1, IntMat{{4}}).normal_form() == nf(0, {2}));
    REQUIRE(PresentedModule(p3, 1, IntMat{{9}}).normal_form() == nf(0, {2}));

    // Prime-to-p invariant factors are units and disappear.
    REQUIRE(PresentedModule(p3, 2, IntMat{{2, 0}, {0, 3}}).normal_form() == nf(0, {1}));
    REQUIRE(PresentedModule(p2, 2, IntMat{{2, 0}, {0, 3}}).normal_form() == nf(0, {1}));
    REQUIRE(PresentedModule(p2, 1, IntMat{{6}}).normal_form() == nf(0, {1}));
    REQUIRE(PresentedModule(p2, 1, IntMat{{3}}).normal_form() == nf(0, {}));

    // No relations: free on all generators.
    REQUIRE(PresentedModule(p2, 3, IntMat(0, 3)).normal_form() == nf(3, {}));

    // Zero module.
    REQUIRE(PresentedModule::zero(p2).normal_form().is_zero());
    REQUIRE(PresentedModule(p2, 1, IntMat{{1}}).normal_form().is_zero());

    // Factories.
    REQUIRE(PresentedModule::free_module(p2, 2).normal_form() == nf(2, {}));
    REQUIRE(PresentedModule::cyclic(p2, 3).normal_form() == nf(0, {3}));
    REQUIRE(PresentedModule::from_normal_form(p3, nf(2, {3, 1})).normal_form() ==
            nf(2, {3, 1}));
}

TEST_CASE("normal form is invariant under presentation changes") {
    std::mt19937 rng(42);
    for (long long p : {2, 3, 5}) {
        PrimeContext prime(p);
        for (const NormalForm& form : all_normal_forms(3, 3)) {
            PresentedModule canonical = PresentedModule::from_normal_form(prime, form);
            for (int trial = 0; trial < 8; ++trial) {
                REQUIRE(scrambled_presentation(rng, canonical).normal_form() == form);
            }
        }
    }
}

TEST_CASE("direct sums") {
    PrimeContext p3(3);
    const PresentedModule zp = PresentedModule::free_module(p3, 1);
    const PresentedModule zp2 = PresentedModule::cyclic(p3, 2);
    const PresentedModule zp1 = PresentedModule::cyclic(p3, 1);
    const PresentedModule zp3 = PresentedModule::cyclic(p3, 3);

    REQUIRE(direct_sum(zp, zp2).normal_form() == nf(1, {2}));
    REQUIRE(direct_sum(zp1, zp3).normal_form() == nf(0, {3, 1}));
    REQUIRE(direct_sum(PresentedModule::zero(p3), zp2).normal_form() == zp2.normal_form());
    REQUIRE(direct_sum(zp2, PresentedModule::zero(p3)).normal_form() == zp2.normal_form());
}

TEST_CASE("tensor products") {
    PrimeContext p2(2);
    const PresentedModule zp = PresentedModule::free_module(p2, 1);
    const PresentedModule t2 = PresentedModule::cyclic(p2, 2);
    const PresentedModule t3 = PresentedModule::cyclic(p2, 3);
    const PresentedModule t1 = PresentedModule::cyclic(p2, 1);

    REQUIRE(tensor(t2, t3).normal_form() == nf(0, {2}));
    REQUIRE(tensor(t3, t2).normal_form() == nf(0, {2}));

    const PresentedModule mixed = direct_sum(zp, PresentedModule::cyclic(p2, 4));
    REQUIRE(tensor(zp, mixed).normal_form() == mixed.normal_form());
    REQUIRE(tensor(t1, mixed).normal_form() == nf(0, {1, 1}));
}

TEST_CASE("sum and tensor laws on random small modules") {
    std::mt19937 rng(271828);
    PrimeContext p2(2);
    PrimeContext p5(5);
    for (int trial = 0; trial < 40; ++trial) {
        const PrimeContext prime = trial % 2 == 0 ? p2 : p5;
        auto rand_mod = [&] {
            return PresentedModule::from_normal_form(prime, random_normal_form(rng, 2, 3));
        };
        const PresentedModule a = rand_mod();
        const PresentedModule b = rand_mod();
        const PresentedModule c = rand_mod();

        REQUIRE(direct_sum(a, b).normal_form() == direct_sum(b, a).normal_form());
        REQUIRE(tensor(a, b).normal_form() == tensor(b, a).normal_form());
        REQUIRE(direct_sum(direct_sum(a, b), c).normal_form() ==
                direct_sum(a, direct_sum(b, c)).normal_form());
        REQUIRE(tensor(tensor(a, b), c).normal_form() ==
                tensor(a, tensor(b, c)).normal_form());
        REQUIRE(tensor(a, direct_sum(b, c)).normal_form() ==
                direct_sum(tensor(a, b), tensor(a, c)).normal_form());
    }
}

TEST_CASE("well-definedness certificates") {
    PrimeContext p2(2);
    const PresentedModule zp = PresentedModule::free_module(p2, 1);
    const PresentedModule z4 = PresentedModule::cyclic(p2, 2);
    const PresentedModule z2 = PresentedModule::cyclic(p2, 1);

    // Quotient maps are fine.
    REQUIRE_NOTHROW(ModuleMap(zp, z4, IntMat{{1}}));
    REQUIRE_NOTHROW(ModuleMap(z4, z2, IntMat{{1}}));

    // Z/4 -> Z_p sending the generator anywhere nonzero is not a map.
    try {
        ModuleMap bad(z4, zp, IntMat{{1}});
        FAIL("expected IllDefinedMapError");
    } catch (const IllDefinedMapError& e) {
        REQUIRE(e.relation_index() == 0);
    }

    // Z/2 -> Z/4 needs the generator to land in the p-divisible part.
    REQUIRE_THROWS_AS(ModuleMap(z2, z4, IntMat{{1}}), IllDefinedMapError);
    REQUIRE_NOTHROW(ModuleMap(z2, z4, IntMat{{2}}));

    // Shape validation.
    REQUIRE_THROWS_AS(ModuleMap(zp, z4, IntMat{{1, 0}}), std::invalid_argument);
}

TEST_CASE("cokernels") {
    PrimeContext p3(3);
    const PresentedModule zp = PresentedModule::free_module(p3, 1);

    for (unsigned k = 1; k <= 8; ++k) {
        const ModuleMap mul = ModuleMap::scalar(zp, prime_power(3, k));
        REQUIRE(map_cokernel(mul).normal_form() == nf(0, {k}));
    }

    const PresentedModule z9 = PresentedModule::cyclic(p3, 2);
    REQUIRE(map_cokernel(ModuleMap::identity(z9)).normal_form().is_zero());
    REQUIRE(map_cokernel(ModuleMap::scalar(z9, 3)).normal_form() == nf(0, {1}));
}

TEST_CASE("nakayama surjectivity and isomorphism detection") {
    PrimeContext p5(5);
    const PresentedModule zp = PresentedModule::free_module(p5, 1);
    const PresentedModule z25 = PresentedModule::cyclic(p5, 2);
    const PresentedModule z5 = PresentedModule::cyclic(p5, 1);

    REQUIRE(!nakayama_surjective(ModuleMap::scalar(zp, 5)));
    REQUIRE(nakayama_surjective(ModuleMap(zp, z25, IntMat{{1}})));

    const ModuleMap quotient(z25, z5, IntMat{{1}});
    REQUIRE(nakayama_surjective(quotient));
    REQUIRE(!is_iso_map(quotient));

    REQUIRE(is_iso_map(ModuleMap::identity(z25)));
    REQUIRE(!is_iso_map(ModuleMap::scalar(zp, 5)));
    REQUIRE(is_iso_map(ModuleMap::scalar(zp, 7)));  // a unit at p = 5

    // Zero module edge cases: anything surjects onto 0.
    const ModuleMap to_zero(zp, PresentedModule::zero(p5), IntMat(0, 1));
    REQUIRE(nakayama_surjective(to_zero));
    REQUIRE(map_cokernel(to_zero).normal_form().is_zero());
    REQUIRE(!is_iso_map(to_zero));
}

TEST_CASE("nakayama agrees with exact surjectivity on random maps") {
    std::mt19937 rng(1618);
    for (long long p : {2, 3}) {
        PrimeContext prime(p);
        for (int trial = 0; trial < 150; ++trial) {
            const PresentedModule source =
                PresentedModule::from_normal_form(prime, random_normal_form(rng, 2, 3));
            const PresentedModule target =
                PresentedModule::from_normal_form(prime, random_normal_form(rng, 2, 3));
            const ModuleMap f = random_map(rng, source, target, 6);
            REQUIRE(nakayama_surjective(f) == map_cokernel(f).normal_form().is_zero());
        }
    }
}

TEST_CASE("composition and residue tensor") {
    PrimeContext p2(2);
    const PresentedModule zp = PresentedModule::free_module(p2, 1);
    const PresentedModule z8 = PresentedModule::cyclic(p2, 3);
    const PresentedModule z2 = PresentedModule::cyclic(p2, 1);

    const ModuleMap q1(zp, z8, IntMat{{1}});
    const ModuleMap q2(z8, z2, IntMat{{1}});
    const ModuleMap both = compose(q2, q1);
    REQUIRE(both.matrix() == IntMat{{1}});
    REQUIRE(both.source() == zp);
    REQUIRE(both.target() == z2);

    REQUIRE_THROWS_AS(compose(q1, q1), std::invalid_argument);

    // Z/p tensor the quotient Z_p -> Z/p^3 becomes an isomorphism.
    const ModuleMap res = residue_tensor(q1);
    REQUIRE(res.source().normal_form() == nf(0, {1}));
    REQUIRE(res.target().normal_form() == nf(0, {1}));
    REQUIRE(is_iso_map(res));
}

TEST_CASE("module expression parsing") {
    PrimeContext p3(3);

    REQUIRE(parse_module_expr("Zp", p3).normal_form() == nf(1, {}));
    REQUIRE(parse_module_expr("Zp^4", p3).normal_form() == nf(4, {}));
    REQUIRE(parse_module_expr("Z/p", p3).normal_form() == nf(0, {1}));
    REQUIRE(parse_module_expr("Z/p^3", p3).normal_form() == nf(0, {3}));
    REQUIRE(parse_module_expr("Zp^2 + Z/p^3 + Z/p", p3).normal_form() == nf(2, {3, 1}));
    REQUIRE(parse_module_expr("Z/p + Zp + Z/p^2", p3).normal_form() == nf(1, {2, 1}));
    REQUIRE(parse_module_expr("  Z/p^2+Zp  ", p3).normal_form() == nf(1, {2}));
    REQUIRE(parse_module_expr("0", p3).normal_form().is_zero());
    REQUIRE(parse_module_expr("Zp^0", p3).normal_form().is_zero());

    REQUIRE_THROWS_AS(parse_module_expr("", p3), ParseError);
    REQUIRE_THROWS_AS(parse_module_expr("Zq", p3), ParseError);
    REQUIRE_THROWS_AS(parse_module_expr("Z/p^0", p3), ParseError);
    REQUIRE_THROWS_AS(parse_module_expr("Zp +", p3), ParseError);
    REQUIRE_THROWS_AS(parse_module_expr("Zp ++ Z/p", p3), ParseError);
    REQUIRE_THROWS_AS(parse_module_expr("Zp^", p3), ParseError);

    // Rendering round-trips through the grammar.
    for (const NormalForm& form : all_normal_forms(3, 4)) {
        const std::string text = render_normal_form(form);
        REQUIRE(parse_module_expr(text, p3).normal_form() == form);
    }
    REQUIRE(render_normal_form(nf(2, {3, 1})) == "Zp^2 + Z/p^3 + Z/p");
    REQUIRE(render_normal_form(nf(0, {})) == "0");
    REQUIRE(render_normal_form(nf(1, {})) == "Zp");
}
