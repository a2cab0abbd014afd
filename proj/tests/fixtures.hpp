#pragma once

// Shared hand-checked structure constants for the test suite.

#include "dgt/tilt.hpp"

namespace fx {

using namespace dgt;

inline AlgebraPtr ground(FieldSpec f = FieldSpec::rationals()) {
    return std::make_shared<DGAlgebra>(unit_algebra(f, "k"));
}

/// Exterior algebra on one generator of degree 1.
inline AlgebraPtr exterior(FieldSpec f = FieldSpec::rationals()) {
    auto a = std::make_shared<DGAlgebra>();
    a->name = "E2";
    a->space.field = f;
    a->space.basis[0] = {"e"};
    a->space.basis[1] = {"x"};
    a->differential = GradedMap{a->space, a->space, 1, {}};
    a->unit = flat_zero(a->space);
    a->unit[0] = Scalar::one(f);
    Scalar one = Scalar::one(f);
    a->mul_table[{0, 0}] = {{0, one}};
    a->mul_table[{0, 1}] = {{1, one}};
    a->mul_table[{1, 0}] = {{1, one}};
    return a;
}

/// Dual numbers: t in degree 0 with t^2 = 0.
inline AlgebraPtr dual_numbers(FieldSpec f = FieldSpec::rationals()) {
    auto a = std::make_shared<DGAlgebra>();
    a->name = "DN";
    a->space.field = f;
    a->space.basis[0] = {"e", "t"};
    a->differential = GradedMap{a->space, a->space, 1, {}};
    a->unit = flat_zero(a->space);
    a->unit[0] = Scalar::one(f);
    Scalar one = Scalar::one(f);
    a->mul_table[{0, 0}] = {{0, one}};
    a->mul_table[{0, 1}] = {{1, one}};
    a->mul_table[{1, 0}] = {{1, one}};
    return a;
}

/// Path algebra of the quiver 1 -> 2 (basis sorted: a, e1, e2).
inline AlgebraPtr path_a2(FieldSpec f = FieldSpec::rationals()) {
    auto a = std::make_shared<DGAlgebra>();
    a->name = "A2";
    a->space.field = f;
    a->space.basis[0] = {"a", "e1", "e2"};
    a->differential = GradedMap{a->space, a->space, 1, {}};
    a->unit = flat_zero(a->space);
    a->unit[1] = Scalar::one(f);
    a->unit[2] = Scalar::one(f);
    Scalar one = Scalar::one(f);
    a->mul_table[{0, 1}] = {{0, one}};  // a e1 = a
    a->mul_table[{1, 1}] = {{1, one}};
    a->mul_table[{2, 0}] = {{0, one}};  // e2 a = a
    a->mul_table[{2, 2}] = {{2, one}};
    return a;
}

/// 2x2 matrix units.
inline AlgebraPtr matrix2(FieldSpec f = FieldSpec::rationals()) {
    auto a = std::make_shared<DGAlgebra>();
    a->name = "M2";
    a->space.field = f;
    a->space.basis[0] = {"e11", "e12", "e21", "e22"};
    a->differential = GradedMap{a->space, a->space, 1, {}};
    a->unit = flat_zero(a->space);
    a->unit[0] = Scalar::one(f);
    a->unit[3] = Scalar::one(f);
    Scalar one = Scalar::one(f);
    auto e = [](int i, int j) { return 2 * (i - 1) + (j - 1); };
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int l = 1; l <= 2; ++l)
                a->mul_table[{e(i, j), e(j, l)}] = {{e(i, l), one}};
    return a;
}

/// Contractible two-term left module over any algebra acting through the unit:
/// x in degree 0, y in degree 1, dx = y.
inline DGModule contractible(const AlgebraPtr& a) {
    FieldSpec f = a->field();
    GradedSpace sp;
    sp.field = f;
    sp.basis[0] = {"x"};
    sp.basis[1] = {"y"};
    Matrix d(f, 2, 2);
    d.at(1, 0) = Scalar::one(f);
    DGModule m{a, Side::Left, sp, graded_from_flat(sp, sp, 1, d), {}};
    for (int p = 0; p < a->dim(); ++p) {
        Scalar c = a->unit[p];
        if (c.is_zero()) continue;
        m.action[{p, 0}] = {{0, c}};
        m.action[{p, 1}] = {{1, c}};
    }
    return m;
}

/// One-dimensional (R, S)-bimodule in a chosen degree, both units acting.
inline DGBimodule one_dim_bimodule(const AlgebraPtr& r, const AlgebraPtr& s, int degree = 0) {
    FieldSpec f = r->field();
    GradedSpace sp;
    sp.field = f;
    sp.basis[degree] = {"m"};
    DGBimodule b{r, s, sp, GradedMap{sp, sp, 1, {}}, {}, {}};
    for (int p = 0; p < r->dim(); ++p)
        if (!r->unit[p].is_zero()) b.left_action[{p, 0}] = {{0, r->unit[p]}};
    for (int q = 0; q < s->dim(); ++q)
        if (!s->unit[q].is_zero()) b.right_action[{q, 0}] = {{0, s->unit[q]}};
    return b;
}

/// DN as an (DN, k)-bimodule: left regular action, trivial right action.
inline DGBimodule dn_bimodule(const AlgebraPtr& dn, const AlgebraPtr& k) {
    GradedSpace sp = dn->space;
    DGBimodule b{dn, k, sp, dn->differential, {}, {}};
    for (const auto& [key, terms] : dn->mul_table) b.left_action[key] = terms;
    Scalar one = Scalar::one(dn->field());
    for (int i = 0; i < dn->dim(); ++i) b.right_action[{0, i}] = {{i, one}};
    return b;
}

/// Rank-one free (E2, k)-bimodule with a degree-1 part: x m0 = m1.
inline DGBimodule e2_bimodule(const AlgebraPtr& e2, const AlgebraPtr& k) {
    FieldSpec f = e2->field();
    GradedSpace sp;
    sp.field = f;
    sp.basis[0] = {"m0"};
    sp.basis[1] = {"m1"};
    DGBimodule b{e2, k, sp, GradedMap{sp, sp, 1, {}}, {}, {}};
    Scalar one = Scalar::one(f);
    b.left_action[{0, 0}] = {{0, one}};
    b.left_action[{0, 1}] = {{1, one}};
    b.left_action[{1, 0}] = {{1, one}};  // x m0 = m1
    b.right_action[{0, 0}] = {{0, one}};
    b.right_action[{0, 1}] = {{1, one}};
    return b;
}

/// The A2 path algebra presented as [k k; 0 k].
inline TiltProblem a2_problem(FieldSpec f = FieldSpec::rationals()) {
    TiltProblem p;
    p.R = ground(f);
    p.S = ground(f);
    p.M = one_dim_bimodule(p.R, p.S, 0);
    p.name = "a2";
    return p;
}

inline TriangularDGA a2_triangular(FieldSpec f = FieldSpec::rationals()) {
    TiltProblem p = a2_problem(f);
    return build_triangular(p.R, p.S, p.M, "a2");
}

/// Simple module at the source vertex of the A2 path algebra.
inline DGModule a2_source_simple(const AlgebraPtr& a2) {
    FieldSpec f = a2->field();
    GradedSpace sp;
    sp.field = f;
    sp.basis[0] = {"s"};
    DGModule m{a2, Side::Left, sp, GradedMap{sp, sp, 1, {}}, {}};
    m.action[{1, 0}] = {{0, Scalar::one(f)}};  // e1 s = s, everything else 0
    return m;
}

}  // namespace fx
