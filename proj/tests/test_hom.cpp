#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dgt/hom.hpp"
#include "fixtures.hpp"

using namespace dgt;

TEST_CASE("hom complex dimensions and internal differential") {
    FieldSpec q = FieldSpec::rationals();
    AlgebraPtr e2 = fx::exterior(q);
    DGModule r = regular_module(e2, Side::Left);

    SUBCASE("endomorphisms of the regular module = right multiplications") {
        HomComplex h = hom_complex(r, r);
        // Hom_{E2}(E2, E2) ~ E2: one map in degree 0 and one in degree 1
        CHECK(h.cx.space.dim(0) == 1);
        CHECK(h.cx.space.dim(1) == 1);
        CHECK(h.cx.space.flat_dim() == 2);
        // every basis map is linear over the algebra: realize and spot-check
        GradedMap f = h.basis_map(h.cx.space.flat_index(1, 0));
        Vec x = flat_basis_vec(e2->space, 1);
        Vec e = flat_basis_vec(e2->space, 0);
        Matrix fm = flat_matrix(f);
        // f(e) determines f(x) via f(x e) = f(x); consistency with the action:
        // f has odd degree, so f(x) = f(x . e) = (-1)^{|f||x|} ... realized by construction
        CHECK(fm.apply(e) == x);
    }

    SUBCASE("coords_of inverts realize and rejects outsiders") {
        HomComplex h = hom_complex(r, r);
        Vec c = flat_zero(h.cx.space);
        c[0] = Scalar(q, 3);
        GradedMap f = h.realize(c);
        CHECK(h.coords_of(f) == c);
        // the identity lies in degree 0
        Vec idc = h.coords_of(GradedMap::identity(r.space));
        CHECK_FALSE(idc[h.cx.space.flat_index(0, 0)].is_zero());
        // a non-linear map is rejected: swap the basis in degree 0 only
        GradedMap bad = GradedMap::zero(r.space, r.space, -1);
        Matrix b(q, 1, 1);
        b.at(0, 0) = Scalar::one(q);
        bad.set_block(1, b);  // degree -1 map x -> e, not E2-linear
        CHECK_THROWS_AS(h.coords_of(bad), std::invalid_argument);
    }
}

TEST_CASE("endomorphism algebra composition") {
    FieldSpec q = FieldSpec::rationals();
    AlgebraPtr a2 = fx::path_a2(q);
    DGModule r = regular_module(a2, Side::Left);
    HomComplex h = hom_complex(r, r);
    DGAlgebra e = end_dga(h, "EndA2");
    CHECK(check_dga(e).ok());
    // End of the regular left module is the opposite algebra: same total dim
    CHECK(e.dim() == a2->dim());
    // and its degree-0 homology has the same dimension as A2 itself
    HomologyData he = homology(e.complex());
    CHECK(he.homology.dim(0) == 3);
}

TEST_CASE("tensor over the algebra collapses R (x)_R V to V") {
    FieldSpec q = FieldSpec::rationals();
    AlgebraPtr e2 = fx::exterior(q);
    DGModule rr = regular_module(e2, Side::Right);
    DGModule rl = regular_module(e2, Side::Left);
    TensorResult t = tensor_over_algebra(rr, rl);
    // E2 (x)_{E2} E2 = E2: dims 1,1 in degrees 0,1
    CHECK(t.cx.space.dim(0) == 1);
    CHECK(t.cx.space.dim(1) == 1);
    CHECK(t.cx.space.flat_dim() == 2);
    // projection then section is the identity on the quotient
    CHECK(compose(t.projection, t.section) == GradedMap::identity(t.cx.space));
}

TEST_CASE("duals") {
    FieldSpec q = FieldSpec::rationals();
    AlgebraPtr e2 = fx::exterior(q);
    DGModule r = regular_module(e2, Side::Left);

    SUBCASE("dual space flips degrees and stars labels") {
        GradedSpace d = dual_space(r.space);
        CHECK(d.dim(0) == 1);
        CHECK(d.dim(-1) == 1);
        CHECK(d.basis.at(-1)[0] == "x*");
    }

    SUBCASE("dual complex squares to zero and dualizes homology") {
        AlgebraPtr k = fx::ground(q);
        DGModule ct = fx::contractible(k);
        Complex dc = dual_complex(ct.complex());  // exactness is preserved
        CHECK(is_exact(dc));
        HomologyData h = homology(dual_complex(r.complex()));
        CHECK(h.homology.dim(0) == 1);
        CHECK(h.homology.dim(-1) == 1);
    }

    SUBCASE("dual module satisfies the axioms on the other side") {
        DGModule d = dualize(r);
        CHECK(d.side == Side::Right);
        CHECK(check_module(d).ok());
        // double dual recovers the original structure constants
        DGModule dd = dualize(d);
        CHECK(dd.side == Side::Left);
        CHECK(check_module(dd).ok());
        // labels pick up stars, but dims and action constants are restored
        for (int d : r.space.degrees()) CHECK(dd.space.dim(d) == r.space.dim(d));
        CHECK(dd.action == r.action);
    }

    SUBCASE("bimodule dual swaps the acting algebras") {
        AlgebraPtr k = fx::ground(q);
        DGBimodule b = fx::e2_bimodule(e2, k);
        DGBimodule d = dualize(b);
        CHECK(d.left_algebra.get() == k.get());
        CHECK(d.right_algebra.get() == e2.get());
        CHECK(check_module(d).ok());
    }
}

TEST_CASE("hom into an exact target is exact") {
    FieldSpec q = FieldSpec::rationals();
    AlgebraPtr k = fx::ground(q);
    DGModule ct = fx::contractible(k);
    DGModule triv = regular_module(k, Side::Left);
    HomComplex h = hom_complex(triv, ct);
    CHECK(is_exact(h.cx));
}
