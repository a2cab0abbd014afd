#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dgt/module.hpp"
#include "fixtures.hpp"

using namespace dgt;

TEST_CASE("regular and free modules satisfy the module axioms") {
    for (FieldSpec f : {FieldSpec::rationals(), FieldSpec::prime(2)}) {
        CAPTURE(f.str());
        for (AlgebraPtr a : {fx::exterior(f), fx::dual_numbers(f), fx::path_a2(f)}) {
            CHECK(check_module(regular_module(a, Side::Left)).ok());
            CHECK(check_module(regular_module(a, Side::Right)).ok());
            CHECK(check_module(free_module(a, {0})).ok());
            CHECK(check_module(free_module(a, {-1, 0, 2})).ok());
        }
    }
}

TEST_CASE("corrupted action fails the axiom suite") {
    FieldSpec q = FieldSpec::rationals();
    AlgebraPtr e2 = fx::exterior(q);
    DGModule m = regular_module(e2, Side::Left);
    m.action[{1, 1}] = {{1, Scalar::one(q)}};  // x . x = x: wrong degree and x^2 != 0
    CHECK_FALSE(check_module(m).ok());
}

TEST_CASE("shift signs") {
    FieldSpec q = FieldSpec::rationals();
    AlgebraPtr e2 = fx::exterior(q);

    SUBCASE("odd shift flips the differential and odd-degree actions") {
        AlgebraPtr k = fx::ground(q);
        DGModule ct = fx::contractible(k);
        DGModule s = shift_module(ct, 1);
        CHECK(check_module(s).ok());
        CHECK(s.space.dim(-1) == 1);
        CHECK(s.differential.block(-1).at(0, 0) == Scalar(q, -1));
        CHECK(shift_module(s, -1).differential == ct.differential);

        DGModule r = regular_module(e2, Side::Left);
        DGModule sr = shift_module(r, 1);
        CHECK(check_module(sr).ok());
        // x (degree 1) acting on the shifted unit picks up a -1
        Vec x = flat_basis_vec(e2->space, 1);
        Vec unit_coord = flat_basis_vec(sr.space, sr.space.flat_index(-1, 0));
        Vec acted = sr.act(x, unit_coord);
        bool found = false;
        for (const auto& c : acted)
            if (!c.is_zero()) {
                CHECK(c == Scalar(q, -1));
                found = true;
            }
        CHECK(found);
    }

    SUBCASE("even shift leaves the structure constants alone") {
        DGModule r = regular_module(e2, Side::Left);
        DGModule s2 = shift_module(r, 2);
        CHECK(check_module(s2).ok());
        CHECK(s2.action == r.action);
        for (const auto& [d, b] : r.differential.blocks)
            CHECK(s2.differential.blocks.at(d - 2) == b);
    }

    SUBCASE("right module shift does not touch the action") {
        DGModule r = regular_module(e2, Side::Right);
        DGModule s = shift_module(r, 1);
        CHECK(check_module(s).ok());
        CHECK(s.action == r.action);
    }
}

TEST_CASE("direct sums and cones of modules") {
    FieldSpec q = FieldSpec::rationals();
    AlgebraPtr a2 = fx::path_a2(q);
    DGModule r = regular_module(a2, Side::Left);

    SUBCASE("sum of two regulars has doubled dimensions and valid axioms") {
        ModuleSum ms = direct_sum_modules({r, r}, {"p:", "q:"});
        CHECK(check_module(ms.total).ok());
        CHECK(ms.total.dim() == 2 * r.dim());
        // inclusions followed by projections are the identities
        CHECK(compose(ms.projections[0], ms.inclusions[0]) == GradedMap::identity(r.space));
        CHECK(compose(ms.projections[1], ms.inclusions[1]) == GradedMap::identity(r.space));
        CHECK(is_module_chain_map(r, ms.total, ms.inclusions[0]));
    }

    SUBCASE("cone of the identity is exact and a module") {
        ModuleCone c = cone_module(r, r, GradedMap::identity(r.space));
        CHECK(check_module(c.module).ok());
        CHECK(is_exact(c.module.complex()));
        CHECK(is_module_chain_map(r, c.module, c.inclusion));
    }

    SUBCASE("cone rejects maps that are not module maps") {
        DGModule s = fx::a2_source_simple(a2);
        // a linear map r -> s that ignores the action: send e2 to s
        GradedMap f = GradedMap::zero(r.space, s.space, 0);
        Matrix b(q, 1, 3);
        b.at(0, 2) = Scalar::one(q);
        f.set_block(0, b);
        CHECK_THROWS_AS(cone_module(r, s, f), std::invalid_argument);
    }
}

TEST_CASE("bimodule checks and trivial-side wrappers") {
    FieldSpec q = FieldSpec::rationals();
    AlgebraPtr k = fx::ground(q);
    AlgebraPtr dn = fx::dual_numbers(q);

    DGBimodule b = fx::dn_bimodule(dn, k);
    CHECK(check_module(b).ok());
    CHECK(check_module(b.left_module()).ok());
    CHECK(check_module(b.right_module()).ok());

    DGModule r = regular_module(dn, Side::Left);
    DGBimodule w = with_trivial_right(r, k);
    CHECK(check_module(w).ok());

    // breaking compatibility (rm)s = r(ms) must be caught
    DGBimodule bad = fx::dn_bimodule(dn, k);
    bad.right_action[{0, 1}] = {{1, Scalar(q, 2)}};  // t . 1 = 2t on the right only
    CHECK_FALSE(check_module(bad).ok());
}

TEST_CASE("enveloping algebra round trip") {
    FieldSpec q = FieldSpec::rationals();
    AlgebraPtr k = fx::ground(q);
    AlgebraPtr e2 = fx::exterior(q);
    DGAlgebra envd = enveloping_algebra(e2, k);
    CHECK(check_dga(envd).ok());
    AlgebraPtr env = std::make_shared<DGAlgebra>(envd);

    DGBimodule b = fx::e2_bimodule(e2, k);
    DGModule as_left = bimodule_as_left_env(b, env);
    CHECK(check_module(as_left).ok());
    DGBimodule back = left_env_as_bimodule(as_left, e2, k);
    CHECK(back.left_action == b.left_action);
    CHECK(back.right_action == b.right_action);
    CHECK(back.differential == b.differential);
}
