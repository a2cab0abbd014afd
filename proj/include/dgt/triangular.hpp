#pragma once

#include "dgt/hom.hpp"

namespace dgt {

// Positions of the single 1 in each column of a 0/1 inclusion map.
inline std::vector<int> inclusion_indices(const GradedMap& incl) {
    Matrix m = flat_matrix(incl);
    std::vector<int> out(m.cols(), -1);
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i)
            if (!m.at(i, j).is_zero()) out[j] = i;
    return out;
}

/// The upper triangular algebra [R M; 0 S].  Elements live in component
/// coordinates; basis labels carry r:/m:/s: prefixes.
struct TriangularDGA {
    AlgebraPtr R, S;
    DGBimodule M;
    AlgebraPtr algebra;  // Lambda
    Vec e_R, e_S;
    std::vector<int> r_idx, m_idx, s_idx;  // component flat -> Lambda flat

    FieldSpec field() const { return algebra->field(); }
};

inline TriangularDGA build_triangular(const AlgebraPtr& r, const AlgebraPtr& s,
                                      const DGBimodule& m, const std::string& name) {
    if (r->field() != s->field() || r->field() != m.field()) throw FieldMismatch();
    if (m.left_algebra.get() != r.get() || m.right_algebra.get() != s.get())
        throw std::invalid_argument("bimodule is not over the given algebra pair");

    DirectSum ds = direct_sum({r->space, m.space, s->space}, {"r:", "m:", "s:"});
    auto lam = std::make_shared<DGAlgebra>();
    lam->name = name;
    lam->space = ds.total;
    lam->differential =
        direct_sum_map({r->differential, m.differential, s->differential}, ds, ds);

    TriangularDGA t{r, s, m, lam, {}, {}, {}, {}, {}};
    t.r_idx = inclusion_indices(ds.inclusions[0]);
    t.m_idx = inclusion_indices(ds.inclusions[1]);
    t.s_idx = inclusion_indices(ds.inclusions[2]);

    t.e_R = flat_zero(lam->space);
    t.e_S = flat_zero(lam->space);
    for (int i = 0; i < r->dim(); ++i) t.e_R[t.r_idx[i]] = r->unit[i];
    for (int i = 0; i < s->dim(); ++i) t.e_S[t.s_idx[i]] = s->unit[i];
    lam->unit = flat_zero(lam->space);
    for (int i = 0; i < lam->dim(); ++i) lam->unit[i] = t.e_R[i] + t.e_S[i];

    auto put = [&](int i, int j, const Terms& terms, const std::vector<int>& target_idx) {
        Terms out;
        for (const auto& [k, c] : terms) out.emplace_back(target_idx[k], c);
        if (!out.empty()) lam->mul_table[{i, j}] = out;
    };
    DGModule ml = m.left_module(), mr = m.right_module();
    for (int i = 0; i < r->dim(); ++i)
        for (int j = 0; j < r->dim(); ++j)
            put(t.r_idx[i], t.r_idx[j], r->basis_product(i, j), t.r_idx);
    for (int i = 0; i < s->dim(); ++i)
        for (int j = 0; j < s->dim(); ++j)
            put(t.s_idx[i], t.s_idx[j], s->basis_product(i, j), t.s_idx);
    for (int i = 0; i < r->dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            put(t.r_idx[i], t.m_idx[j], ml.basis_action(i, j), t.m_idx);
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < s->dim(); ++j)
            put(t.m_idx[i], t.s_idx[j], mr.basis_action(j, i), t.m_idx);
    return t;
}

/// B = Lambda e_R = [R; 0]: underlying space R, only the R-component acts.
inline DGModule build_B(const TriangularDGA& t) {
    DGModule b{t.algebra, Side::Left, t.R->space, t.R->differential, {}};
    for (int i = 0; i < t.R->dim(); ++i)
        for (int j = 0; j < t.R->dim(); ++j) {
            Terms terms = t.R->basis_product(i, j);
            if (!terms.empty()) b.action[{t.r_idx[i], j}] = terms;
        }
    return b;
}

/// C = Lambda e_S = [M; S] with the m:/s: component labels, carrying the left
/// Lambda-action and a right S-action.
struct ColumnC {
    DGModule module;  // left Lambda
    DGBimodule bimodule;  // (Lambda, S)
    DirectSum parts;  // M then S
    std::vector<int> m_idx, s_idx;  // component flat -> C flat
};

inline ColumnC build_C(const TriangularDGA& t) {
    DirectSum ds = direct_sum({t.M.space, t.S->space}, {"m:", "s:"});
    ColumnC c;
    c.parts = ds;
    c.m_idx = inclusion_indices(ds.inclusions[0]);
    c.s_idx = inclusion_indices(ds.inclusions[1]);

    GradedMap diff = direct_sum_map({t.M.differential, t.S->differential}, ds, ds);
    DGModule mod{t.algebra, Side::Left, ds.total, diff, {}};
    DGModule ml = t.M.left_module(), mr = t.M.right_module();
    auto put = [&](int i, int j, const Terms& terms, const std::vector<int>& target_idx,
                   ActionTable& table) {
        Terms out;
        for (const auto& [k, cf] : terms) out.emplace_back(target_idx[k], cf);
        if (!out.empty()) table[{i, j}] = out;
    };
    // [r m; 0 s][m'; s'] = [r m' + m s'; s s']
    for (int i = 0; i < t.R->dim(); ++i)
        for (int j = 0; j < t.M.dim(); ++j)
            put(t.r_idx[i], c.m_idx[j], ml.basis_action(i, j), c.m_idx, mod.action);
    for (int i = 0; i < t.M.dim(); ++i)
        for (int j = 0; j < t.S->dim(); ++j)
            put(t.m_idx[i], c.s_idx[j], mr.basis_action(j, i), c.m_idx, mod.action);
    for (int i = 0; i < t.S->dim(); ++i)
        for (int j = 0; j < t.S->dim(); ++j)
            put(t.s_idx[i], c.s_idx[j], t.S->basis_product(i, j), c.s_idx, mod.action);
    c.module = mod;

    c.bimodule = DGBimodule{t.algebra, t.S, ds.total, diff, mod.action, {}};
    // right S-action: [m; s] s~ = [m s~; s s~]
    for (int p = 0; p < t.S->dim(); ++p) {
        for (int j = 0; j < t.M.dim(); ++j)
            put(p, c.m_idx[j], mr.basis_action(p, j), c.m_idx, c.bimodule.right_action);
        for (int j = 0; j < t.S->dim(); ++j)
            put(p, c.s_idx[j], t.S->basis_product(j, p), c.s_idx, c.bimodule.right_action);
    }
    return c;
}

/// The row module [X Y] as a right Lambda-module: (x, y)[r m; 0 s] =
/// (xr, xm + ys).  Used with X = R, Y = M and with X = 0, Y = S.
inline DGModule row_RM(const TriangularDGA& t) {
    DirectSum ds = direct_sum({t.R->space, t.M.space}, {"r:", "m:"});
    std::vector<int> ri = inclusion_indices(ds.inclusions[0]);
    std::vector<int> mi = inclusion_indices(ds.inclusions[1]);
    DGModule mod{t.algebra, Side::Right, ds.total,
                 direct_sum_map({t.R->differential, t.M.differential}, ds, ds), {}};
    DGModule ml = t.M.left_module(), mr = t.M.right_module();
    auto put = [&](int i, int j, const Terms& terms, const std::vector<int>& target_idx) {
        Terms out;
        for (const auto& [k, c] : terms) out.emplace_back(target_idx[k], c);
        if (!out.empty()) mod.action[{i, j}] = out;
    };
    // keys are (Lambda index, row index) meaning row . lambda
    for (int i = 0; i < t.R->dim(); ++i)
        for (int j = 0; j < t.R->dim(); ++j)
            put(t.r_idx[i], ri[j], t.R->basis_product(j, i), ri);
    for (int i = 0; i < t.M.dim(); ++i)
        for (int j = 0; j < t.R->dim(); ++j)
            put(t.m_idx[i], ri[j], ml.basis_action(j, i), mi);
    for (int i = 0; i < t.S->dim(); ++i)
        for (int j = 0; j < t.M.dim(); ++j)
            put(t.s_idx[i], mi[j], mr.basis_action(i, j), mi);
    return mod;
}

/// [0 S] as an (S, Lambda)-bimodule: s~ (0, y) = (0, s~ y) and
/// (0, y)[r m; 0 s] = (0, y s).
inline DGBimodule row_0S(const TriangularDGA& t) {
    DGBimodule out{t.S, t.algebra, t.S->space, t.S->differential, {}, {}};
    for (int i = 0; i < t.S->dim(); ++i)
        for (int j = 0; j < t.S->dim(); ++j) {
            Terms terms = t.S->basis_product(i, j);
            if (!terms.empty()) out.left_action[{i, j}] = terms;
            Terms rt = t.S->basis_product(j, i);
            if (!rt.empty()) out.right_action[{t.s_idx[i], j}] = rt;
        }
    return out;
}

/// The quotient C -> C/[M;0], a left Lambda-module with underlying space S.
struct QuotientC {
    DGModule module;
    ChainMap projection;  // from C
};

inline QuotientC quotient_C(const TriangularDGA& t, const ColumnC& c) {
    FieldSpec field = t.field();
    std::map<int, Matrix> gens;
    for (int i = 0; i < t.M.dim(); ++i) {
        int flat = c.m_idx[i];
        auto [d, p] = c.module.space.degree_pos(flat);
        auto it = gens.find(d);
        if (it == gens.end())
            it = gens.emplace(d, Matrix(field, c.module.space.dim(d), 0)).first;
        Matrix& g = it->second;
        Matrix wider(field, g.rows(), g.cols() + 1);
        for (int col = 0; col < g.cols(); ++col) wider.set_column(col, g.column_vec(col));
        Vec e(g.rows(), Scalar::zero(field));
        e[p] = Scalar::one(field);
        wider.set_column(g.cols(), e);
        it->second = wider;
    }
    Subspace sub = Subspace::span(c.module.space, gens);
    auto [q, proj] = quotient(c.module.space, sub);

    // section by label: quotient labels are the surviving s: labels of C
    GradedMap sect = GradedMap::zero(q, c.module.space, 0);
    for (int d : q.degrees()) {
        Matrix s(field, c.module.space.dim(d), q.dim(d));
        for (int j = 0; j < q.dim(d); ++j) {
            const auto& amb = c.module.space.basis.at(d);
            for (int i = 0; i < static_cast<int>(amb.size()); ++i)
                if (amb[i] == q.basis.at(d)[j]) s.at(i, j) = Scalar::one(field);
        }
        sect.blocks[d] = s;
    }

    QuotientC out;
    out.module = DGModule{t.algebra, Side::Left, q,
                          compose(proj, compose(c.module.differential, sect)), {}};
    Matrix pm = flat_matrix(proj), sm = flat_matrix(sect);
    for (int p = 0; p < t.algebra->dim(); ++p) {
        Vec ep = flat_basis_vec(t.algebra->space, p);
        for (int j = 0; j < q.flat_dim(); ++j) {
            Vec img = pm.apply(c.module.act(ep, sm.apply(flat_basis_vec(q, j))));
            Terms terms;
            for (int k = 0; k < static_cast<int>(img.size()); ++k)
                if (!img[k].is_zero()) terms.emplace_back(k, img[k]);
            if (!terms.empty()) out.module.action[{p, j}] = terms;
        }
    }
    out.projection = ChainMap::make(c.module.complex(), out.module.complex(), proj);
    return out;
}

/// i_*(X) = [X; 0]: the R-module X viewed over Lambda, with M and S acting
/// by zero as matrix multiplication forces.
inline DGModule embed_left(const TriangularDGA& t, const DGModule& x) {
    if (x.algebra.get() != t.R.get() || x.side != Side::Left) throw SideMismatch();
    DGModule out{t.algebra, Side::Left, x.space, x.differential, {}};
    for (const auto& [key, terms] : x.action)
        out.action[{t.r_idx[key.first], key.second}] = terms;
    return out;
}

/// Checks [X;0] == B (x)_R X through the map x -> class(1 (x) x).
inline bool embed_tensor_crosscheck(const TriangularDGA& t, const DGModule& x) {
    // B as a (Lambda, R)-bimodule
    DGModule b = build_B(t);
    DGBimodule bb{t.algebra, t.R, b.space, b.differential, b.action, {}};
    for (int p = 0; p < t.R->dim(); ++p)
        for (int j = 0; j < t.R->dim(); ++j) {
            Terms terms = t.R->basis_product(j, p);
            if (!terms.empty()) bb.right_action[{p, j}] = terms;
        }
    auto kalg = std::make_shared<DGAlgebra>(unit_algebra(t.field()));
    DGBimodule xb = with_trivial_right(x, kalg);
    DGBimodule tens = tensor_bimodules(bb, xb);
    DGModule tmod = tens.left_module();

    TensorResult tr = tensor_over_algebra(bb.right_module(), xb.left_module());
    Matrix proj = flat_matrix(tr.projection);
    DGModule ix = embed_left(t, x);
    Matrix iso(t.field(), tmod.dim(), ix.dim());
    for (int j = 0; j < ix.dim(); ++j) {
        Vec amb = flat_zero(tr.ambient);
        for (int i = 0; i < t.R->dim(); ++i)
            if (!t.R->unit[i].is_zero())
                amb[tr.pair_flat(b.space, x.space, i, j)] = t.R->unit[i];
        iso.set_column(j, proj.apply(amb));
    }
    GradedMap f = graded_from_flat(ix.space, tmod.space, 0, iso);
    return is_module_chain_map(ix, tmod, f) && bijective_in_every_degree(f);
}

/// Hom_Lambda(C, Lambda) compared with [0 S] through the basis of maps
/// theta_s, plus the right-module summand decomposition of Lambda.
inline Report c_star_report(const TriangularDGA& t, const ColumnC& c) {
    Report rep;
    FieldSpec field = t.field();
    DGModule lam_left = regular_module(t.algebra, Side::Left);
    HomComplex hc = hom_complex(c.module, lam_left);

    bool dims_ok = true;
    for (int d : hc.cx.space.degrees())
        if (hc.cx.space.dim(d) != t.S->space.dim(d)) dims_ok = false;
    for (int d : t.S->space.degrees())
        if (hc.cx.space.dim(d) != t.S->space.dim(d)) dims_ok = false;
    rep.add("Hom(C, algebra) has the dimensions of S", "module-iso", dims_ok);

    // theta_s(m', s') = (-1)^{|s||c|} (0, m' s, s' s)
    auto theta = [&](int si) {
        int sd = t.S->degree_of(si);
        Matrix m(field, t.algebra->dim(), c.module.dim());
        DGModule mr = t.M.right_module();
        for (int j = 0; j < t.M.dim(); ++j) {
            bool flip = (sd * t.M.space.degree_of(j)) % 2 != 0;
            for (const auto& [k, cf] : mr.basis_action(si, j))
                m.at(t.m_idx[k], c.m_idx[j]) = flip ? -cf : cf;
        }
        for (int j = 0; j < t.S->dim(); ++j) {
            bool flip = (sd * t.S->space.degree_of(j)) % 2 != 0;
            for (const auto& [k, cf] : t.S->basis_product(j, si))
                m.at(t.s_idx[k], c.s_idx[j]) = flip ? -cf : cf;
        }
        return graded_from_flat(c.module.space, t.algebra->space, sd, m);
    };

    bool member = true, chain = true, bijective = true;
    GradedMap big = GradedMap::zero(t.S->space, hc.cx.space, 0);
    std::vector<Vec> coords(t.S->dim());
    for (int si = 0; si < t.S->dim() && member; ++si) {
        GradedMap th = theta(si);
        try {
            coords[si] = hc.coords_of(th);
        } catch (const std::invalid_argument&) {
            member = false;
            break;
        }
    }
    rep.add("each theta_s is a module homomorphism C -> algebra", "module-iso", member);
    if (member) {
        Matrix mat(field, hc.cx.space.flat_dim(), t.S->dim());
        for (int si = 0; si < t.S->dim(); ++si) mat.set_column(si, coords[si]);
        // columns must be graded and assemble to a degree-0 iso
        GradedMap iso = graded_from_flat(t.S->space, hc.cx.space, 0, mat);
        bijective = bijective_in_every_degree(iso);
        chain = compose(hc.cx.differential, iso) == compose(iso, t.S->differential);
        rep.add("s -> theta_s is a chain map", "module-iso", chain);
        rep.add("s -> theta_s is bijective", "module-iso", bijective);

        // left S-equivariance: s~ . theta_s = theta_{s~ s} with
        // (s~ f)(c) = (-1)^{|s~|(|f|+|c|)} f(c s~)
        bool equiv = true;
        DGModule cr = c.bimodule.right_module();
        for (int p = 0; p < t.S->dim() && equiv; ++p) {
            int pd = t.S->degree_of(p);
            for (int si = 0; si < t.S->dim() && equiv; ++si) {
                GradedMap th = theta(si);
                Matrix thm = flat_matrix(th);
                Matrix acted(field, t.algebra->dim(), c.module.dim());
                for (int j = 0; j < c.module.dim(); ++j) {
                    int cd = c.module.space.degree_of(j);
                    bool flip = (pd * (t.S->degree_of(si) + cd)) % 2 != 0;
                    Vec cs = cr.act(flat_basis_vec(t.S->space, p),
                                    flat_basis_vec(c.module.space, j));
                    Vec img = thm.apply(cs);
                    for (int k = 0; k < t.algebra->dim(); ++k)
                        acted.at(k, j) = flip ? -img[k] : img[k];
                }
                // compare with theta_{p s_i}
                Matrix expect(field, t.algebra->dim(), c.module.dim());
                for (const auto& [k, cf] : t.S->basis_product(p, si)) {
                    Matrix tk = flat_matrix(theta(k));
                    for (int i2 = 0; i2 < tk.rows(); ++i2)
                        for (int j2 = 0; j2 < tk.cols(); ++j2)
                            expect.at(i2, j2) += cf * tk.at(i2, j2);
                }
                if (acted != expect) equiv = false;
            }
        }
        rep.add("theta intertwines the left S-actions", "module-iso", equiv);
    }

    // [R M] + [0 S] = algebra as right modules
    DGModule rm = row_RM(t);
    DGBimodule zs = row_0S(t);
    ModuleSum sum = direct_sum_modules({rm, zs.right_module()}, {"t:", "b:"});
    Matrix phi(field, sum.total.dim(), t.algebra->dim());
    Matrix i0 = flat_matrix(sum.inclusions[0]), i1 = flat_matrix(sum.inclusions[1]);
    std::vector<int> ri = inclusion_indices(
        direct_sum({t.R->space, t.M.space}, {"r:", "m:"}).inclusions[0]);
    std::vector<int> mi = inclusion_indices(
        direct_sum({t.R->space, t.M.space}, {"r:", "m:"}).inclusions[1]);
    for (int i = 0; i < t.R->dim(); ++i)
        phi.set_column(t.r_idx[i], i0.apply(flat_basis_vec(rm.space, ri[i])));
    for (int i = 0; i < t.M.dim(); ++i)
        phi.set_column(t.m_idx[i], i0.apply(flat_basis_vec(rm.space, mi[i])));
    for (int i = 0; i < t.S->dim(); ++i)
        phi.set_column(t.s_idx[i], i1.apply(flat_basis_vec(zs.space, i)));
    GradedMap phimap = graded_from_flat(t.algebra->space, sum.total.space, 0, phi);
    DGModule lam_right = regular_module(t.algebra, Side::Right);
    bool summand = is_module_chain_map(lam_right, sum.total, phimap) &&
                   bijective_in_every_degree(phimap);
    rep.add("[R M] + [0 S] decomposes the algebra as right modules", "module-iso", summand);
    return rep;
}

inline Report verify_section3(const TriangularDGA& t,
                              const std::vector<DGModule>& test_modules = {}) {
    Report rep;
    FieldSpec field = t.field();
    DGModule b = build_B(t);
    ColumnC c = build_C(t);

    // (a) algebra = B + C through the component reshuffle
    {
        ModuleSum sum = direct_sum_modules({b, c.module}, {"b:", "c:"});
        Matrix i0 = flat_matrix(sum.inclusions[0]), i1 = flat_matrix(sum.inclusions[1]);
        Matrix theta(field, sum.total.dim(), t.algebra->dim());
        for (int i = 0; i < t.R->dim(); ++i)
            theta.set_column(t.r_idx[i], i0.apply(flat_basis_vec(b.space, i)));
        for (int i = 0; i < t.M.dim(); ++i)
            theta.set_column(t.m_idx[i],
                             i1.apply(flat_basis_vec(c.module.space, c.m_idx[i])));
        for (int i = 0; i < t.S->dim(); ++i)
            theta.set_column(t.s_idx[i],
                             i1.apply(flat_basis_vec(c.module.space, c.s_idx[i])));
        GradedMap f = graded_from_flat(t.algebra->space, sum.total.space, 0, theta);
        DGModule lam_left = regular_module(t.algebra, Side::Left);
        bool ok = is_module_chain_map(lam_left, sum.total, f) &&
                  bijective_in_every_degree(f);
        rep.add("algebra = B + C as left modules", "module-iso", ok);
    }

    // (b) Hom(C, B) vanishes in every degree
    {
        HomComplex hc = hom_complex(c.module, b);
        rep.add("Hom(C, B) = 0 in all degrees", "exactness",
                hc.cx.space.total_dim() == 0,
                "dim " + std::to_string(hc.cx.space.total_dim()));
    }

    // (c) End(B) = R^op via r -> (b -> (-1)^{|r||b|} b r), likewise End(C) = S^op
    {
        HomComplex hb = hom_complex(b, b);
        DGAlgebra endb = end_dga(hb, "End(B)");
        DGAlgebra rop = opposite(*t.R);
        bool ok = endb.dim() == t.R->dim();
        if (ok) {
            Matrix cols(field, endb.dim(), t.R->dim());
            for (int ri = 0; ri < t.R->dim() && ok; ++ri) {
                int rd = t.R->degree_of(ri);
                Matrix fr(field, b.dim(), b.dim());
                for (int j = 0; j < b.dim(); ++j) {
                    bool flip = (rd * b.space.degree_of(j)) % 2 != 0;
                    for (const auto& [k, cf] : t.R->basis_product(j, ri))
                        fr.at(k, j) = flip ? -cf : cf;
                }
                try {
                    cols.set_column(ri, hb.coords_of(graded_from_flat(b.space, b.space, rd, fr)));
                } catch (const std::invalid_argument&) {
                    ok = false;
                }
            }
            if (ok) {
                GradedMap f = graded_from_flat(rop.space, endb.space, 0, cols);
                DGAMorphism mor{&rop, &endb, f};
                ok = check_dga_morphism(mor).ok() && bijective_in_every_degree(f);
            }
        }
        rep.add("End(B) = R^op", "module-iso", ok);
    }
    {
        HomComplex hcc = hom_complex(c.module, c.module);
        DGAlgebra endc = end_dga(hcc, "End(C)");
        DGAlgebra sop = opposite(*t.S);
        bool ok = endc.dim() == t.S->dim();
        if (ok) {
            DGModule mr = t.M.right_module();
            Matrix cols(field, endc.dim(), t.S->dim());
            for (int si = 0; si < t.S->dim() && ok; ++si) {
                int sd = t.S->degree_of(si);
                Matrix gs(field, c.module.dim(), c.module.dim());
                for (int j = 0; j < t.M.dim(); ++j) {
                    bool flip = (sd * t.M.space.degree_of(j)) % 2 != 0;
                    for (const auto& [k, cf] : mr.basis_action(si, j))
                        gs.at(c.m_idx[k], c.m_idx[j]) = flip ? -cf : cf;
                }
                for (int j = 0; j < t.S->dim(); ++j) {
                    bool flip = (sd * t.S->space.degree_of(j)) % 2 != 0;
                    for (const auto& [k, cf] : t.S->basis_product(j, si))
                        gs.at(c.s_idx[k], c.s_idx[j]) = flip ? -cf : cf;
                }
                try {
                    cols.set_column(
                        si, hcc.coords_of(graded_from_flat(c.module.space, c.module.space, sd, gs)));
                } catch (const std::invalid_argument&) {
                    ok = false;
                }
            }
            if (ok) {
                GradedMap f = graded_from_flat(sop.space, endc.space, 0, cols);
                DGAMorphism mor{&sop, &endc, f};
                ok = check_dga_morphism(mor).ok() && bijective_in_every_degree(f);
            }
        }
        rep.add("End(C) = S^op", "module-iso", ok);
    }

    // (d) Hom(C, algebra) = S plus the right-module summand structure
    rep.append(c_star_report(t, c));

    // (e) dim H^i(X) = dim H^i Hom(B,X) + dim H^i Hom(C,X)
    {
        std::vector<DGModule> probes = test_modules;
        if (probes.empty()) {
            probes.push_back(regular_module(t.algebra, Side::Left));
            probes.push_back(b);
            probes.push_back(c.module);
        }
        bool ok = true;
        std::string witness;
        for (std::size_t idx = 0; idx < probes.size() && ok; ++idx) {
            const DGModule& x = probes[idx];
            HomologyData hx = homology(x.complex());
            HomologyData hbx = homology(hom_complex(b, x).cx);
            HomologyData hcx = homology(hom_complex(c.module, x).cx);
            std::set<int> degs;
            for (int d : hx.homology.degrees()) degs.insert(d);
            for (int d : hbx.homology.degrees()) degs.insert(d);
            for (int d : hcx.homology.degrees()) degs.insert(d);
            for (int d : degs)
                if (hx.homology.dim(d) != hbx.homology.dim(d) + hcx.homology.dim(d)) {
                    ok = false;
                    witness = "probe " + std::to_string(idx) + " degree " + std::to_string(d);
                }
        }
        rep.add("homology of probes splits over Hom(B,-) and Hom(C,-)", "exactness", ok,
                witness);
    }

    // Peirce corners: e_R A e_R, e_S A e_S, e_R A e_S have the component dims
    {
        auto corner_dims = [&](const Vec& l, const Vec& r) {
            std::map<int, Matrix> cols;
            for (int i = 0; i < t.algebra->dim(); ++i) {
                Vec v = t.algebra->mul(l, t.algebra->mul(flat_basis_vec(t.algebra->space, i), r));
                GradedVec g = to_graded(t.algebra->space, v);
                for (auto& [d, comp] : g.comps) {
                    bool nz = false;
                    for (const auto& x : comp)
                        if (!x.is_zero()) nz = true;
                    if (!nz) continue;
                    auto it = cols.find(d);
                    if (it == cols.end())
                        it = cols.emplace(d, Matrix(field, t.algebra->space.dim(d), 0)).first;
                    Matrix wider(field, it->second.rows(), it->second.cols() + 1);
                    for (int cc = 0; cc < it->second.cols(); ++cc)
                        wider.set_column(cc, it->second.column_vec(cc));
                    wider.set_column(it->second.cols(), comp);
                    it->second = wider;
                }
            }
            std::map<int, int> dims;
            for (auto& [d, m] : cols) dims[d] = m.column_reduced().cols();
            return dims;
        };
        auto matches = [&](const std::map<int, int>& dims, const GradedSpace& sp) {
            for (auto& [d, n] : dims)
                if (n != sp.dim(d)) return false;
            for (int d : sp.degrees())
                if (sp.dim(d) != (dims.count(d) ? dims.at(d) : 0)) return false;
            return true;
        };
        bool ok = matches(corner_dims(t.e_R, t.e_R), t.R->space) &&
                  matches(corner_dims(t.e_S, t.e_S), t.S->space) &&
                  matches(corner_dims(t.e_R, t.e_S), t.M.space);
        rep.add("Peirce corners have the component dimensions", "module-iso", ok);
    }
    return rep;
}

}  // namespace dgt
