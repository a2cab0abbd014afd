#pragma once

#include "dgt/resolution.hpp"

namespace dgt {

struct PhiCheckFailed : std::runtime_error {
    explicit PhiCheckFailed(const std::string& detail)
        : std::runtime_error("corner-assembled morphism failed verification:\n" + detail) {}
};

struct RigidityFailed : std::runtime_error {
    int degree;
    explicit RigidityFailed(int d)
        : std::runtime_error("End homology is nonzero in degree " + std::to_string(d)),
          degree(d) {}
};

struct ExtNotConcentrated : std::runtime_error {
    int degree;
    explicit ExtNotConcentrated(int d)
        : std::runtime_error("Hom homology is nonzero in degree " + std::to_string(d)),
          degree(d) {}
};

struct NotSelfDual : std::runtime_error {
    explicit NotSelfDual(const std::string& why)
        : std::runtime_error("no bimodule isomorphism between the dual and the algebra: " +
                             why) {}
};

struct TiltProblem {
    AlgebraPtr R, S;
    DGBimodule M;
    std::optional<DGModule> X;    // left R-module; defaults to R itself
    std::optional<DGModule> U;    // supplied resolution of X
    std::optional<GradedMap> u_aug;
    std::optional<DGBimodule> V;  // supplied replacement of M
    std::optional<GradedMap> v_aug;
    ResolutionCaps caps;
    std::string name = "tilted";
};

/// Inverse of a bijective degree-0 graded map, blockwise.
inline GradedMap inverse_graded(const GradedMap& f) {
    if (f.degree != 0 || !bijective_in_every_degree(f))
        throw std::invalid_argument("only bijective degree-0 maps invert");
    GradedMap out{f.target, f.source, 0, {}};
    for (int n : f.source.degrees())
        if (f.source.dim(n) > 0) out.blocks[n] = *f.block(n).inverse();
    return out;
}

/// Dual of a degree-0 map: block at n is the transpose of the block at -n.
inline GradedMap dual_map(const GradedMap& f) {
    if (f.degree != 0) throw std::invalid_argument("dual_map expects degree 0");
    GradedMap out{dual_space(f.target), dual_space(f.source), 0, {}};
    for (const auto& [d, b] : f.blocks) out.blocks[-d] = b.transposed();
    return out;
}

// ---------------------------------------------------------------------------
// W = cone([V;0] -> C) and its normal form

struct WData {
    ColumnC c;
    QuotientC quot;
    DGModule embedded_V;  // [V;0]
    GradedMap f_C;        // [V;0] -> C
    DGModule W;
    ModuleCone cone_;     // parts: 0 = C, 1 = Sigma [V;0]
    ChainMap theta;       // W -> C/[M;0]
    std::vector<int> c_in_W, v_in_W;  // component flat -> W flat
};

inline WData build_W(const TriangularDGA& t, const DGBimodule& v, const GradedMap& f_vm) {
    WData w;
    w.c = build_C(t);
    w.quot = quotient_C(t, w.c);
    w.embedded_V = embed_left(t, v.left_module());

    // column embedding of f: V -> M into C
    Matrix fm = flat_matrix(f_vm);
    Matrix fc(t.field(), w.c.module.dim(), v.dim());
    for (int j = 0; j < v.dim(); ++j)
        for (int i = 0; i < t.M.dim(); ++i)
            if (!fm.at(i, j).is_zero()) fc.at(w.c.m_idx[i], j) = fm.at(i, j);
    w.f_C = graded_from_flat(v.space, w.c.module.space, 0, fc);

    w.cone_ = cone_module(w.embedded_V, w.c.module, w.f_C);
    w.W = w.cone_.module;
    w.c_in_W = inclusion_indices(w.cone_.sum.inclusions[0]);
    w.v_in_W = inclusion_indices(w.cone_.sum.inclusions[1]);

    // (m, s, v) -> class of [0; s]
    GradedMap th = compose(w.quot.projection.map, w.cone_.sum.projections[0]);
    w.theta = ChainMap::make(w.W.complex(), w.quot.module.complex(), th);
    return w;
}

/// Entrywise block structure of the cone differential, plus theta being a
/// quasi-isomorphism onto the quotient.
inline Report verify_W(const TriangularDGA& t, const WData& w, const DGBimodule& v,
                       const GradedMap& f_vm) {
    Report rep;
    FieldSpec field = t.field();
    Matrix expected(field, w.W.dim(), w.W.dim());
    Matrix dc = flat_matrix(w.c.module.differential);
    Matrix dv = flat_matrix(v.differential);
    Matrix fm = flat_matrix(f_vm);
    for (int j = 0; j < w.c.module.dim(); ++j)
        for (int i = 0; i < w.c.module.dim(); ++i)
            if (!dc.at(i, j).is_zero()) expected.at(w.c_in_W[i], w.c_in_W[j]) = dc.at(i, j);
    for (int j = 0; j < v.dim(); ++j) {
        for (int i = 0; i < t.M.dim(); ++i)
            if (!fm.at(i, j).is_zero())
                expected.at(w.c_in_W[w.c.m_idx[i]], w.v_in_W[j]) = fm.at(i, j);
        for (int i = 0; i < v.dim(); ++i)
            if (!dv.at(i, j).is_zero()) expected.at(w.v_in_W[i], w.v_in_W[j]) = -dv.at(i, j);
    }
    rep.add("cone differential is [dC f; 0 -dV] entrywise", "structure",
            flat_matrix(w.W.differential) == expected);
    rep.add("W passes the module axioms", "axiom", check_module(w.W).ok());
    rep.add("(m,s,v) -> [0;s] is a quasi-isomorphism onto C/[M;0]", "quasi-iso",
            is_quasi_iso(w.theta));
    return rep;
}

/// The coordinate reshuffle W = [Z; S] where Z is the cone of f: V -> M,
/// together with exactness of Z.
inline Report verify_W_normal_form(const TriangularDGA& t, const WData& w,
                                   const DGBimodule& v, const GradedMap& f_vm) {
    Report rep;
    FieldSpec field = t.field();

    // [Z; S] built directly: Z = M + Sigma V with the connecting block.
    GradedSpace sv = shift_space(v.space, 1);
    DirectSum ds = direct_sum({t.M.space, sv, t.S->space}, {"zm:", "zv:", "s:"});
    std::vector<int> zm = inclusion_indices(ds.inclusions[0]);
    std::vector<int> zv = inclusion_indices(ds.inclusions[1]);
    std::vector<int> zs = inclusion_indices(ds.inclusions[2]);

    Matrix dm = flat_matrix(t.M.differential), dv = flat_matrix(v.differential);
    Matrix dsS = flat_matrix(t.S->differential), fm = flat_matrix(f_vm);
    Matrix diff(field, ds.total.flat_dim(), ds.total.flat_dim());
    for (int j = 0; j < t.M.dim(); ++j)
        for (int i = 0; i < t.M.dim(); ++i)
            if (!dm.at(i, j).is_zero()) diff.at(zm[i], zm[j]) = dm.at(i, j);
    for (int j = 0; j < v.dim(); ++j) {
        for (int i = 0; i < t.M.dim(); ++i)
            if (!fm.at(i, j).is_zero()) diff.at(zm[i], zv[j]) = fm.at(i, j);
        for (int i = 0; i < v.dim(); ++i)
            if (!dv.at(i, j).is_zero()) diff.at(zv[i], zv[j]) = -dv.at(i, j);
    }
    for (int j = 0; j < t.S->dim(); ++j)
        for (int i = 0; i < t.S->dim(); ++i)
            if (!dsS.at(i, j).is_zero()) diff.at(zs[i], zs[j]) = dsS.at(i, j);

    DGModule mod{t.algebra, Side::Left, ds.total,
                 graded_from_flat(ds.total, ds.total, 1, diff), {}};
    DGModule ml = t.M.left_module(), vl = v.left_module(), mr = t.M.right_module();
    auto put = [&](int i, int j, const Terms& terms, const std::vector<int>& idx) {
        Terms out;
        for (const auto& [k, c] : terms) out.emplace_back(idx[k], c);
        if (!out.empty()) mod.action[{i, j}] = out;
    };
    for (int i = 0; i < t.R->dim(); ++i) {
        bool odd = t.R->degree_of(i) % 2 != 0;
        for (int j = 0; j < t.M.dim(); ++j)
            put(t.r_idx[i], zm[j], ml.basis_action(i, j), zm);
        for (int j = 0; j < v.dim(); ++j) {
            Terms terms;
            for (const auto& [k, c] : vl.basis_action(i, j))
                terms.emplace_back(k, odd ? -c : c);
            put(t.r_idx[i], zv[j], terms, zv);
        }
    }
    for (int i = 0; i < t.M.dim(); ++i)
        for (int j = 0; j < t.S->dim(); ++j)
            put(t.m_idx[i], zs[j], mr.basis_action(j, i), zm);
    for (int i = 0; i < t.S->dim(); ++i)
        for (int j = 0; j < t.S->dim(); ++j)
            put(t.s_idx[i], zs[j], t.S->basis_product(i, j), zs);

    // reshuffle (m, s, v) -> ((m, v), s)
    Matrix iso(field, mod.dim(), w.W.dim());
    for (int i = 0; i < t.M.dim(); ++i)
        iso.at(zm[i], w.c_in_W[w.c.m_idx[i]]) = Scalar::one(field);
    for (int i = 0; i < t.S->dim(); ++i)
        iso.at(zs[i], w.c_in_W[w.c.s_idx[i]]) = Scalar::one(field);
    for (int i = 0; i < v.dim(); ++i)
        iso.at(zv[i], w.v_in_W[i]) = Scalar::one(field);
    GradedMap f = graded_from_flat(w.W.space, ds.total, 0, iso);
    rep.add("reshuffle W -> [Z;S] is a module isomorphism", "module-iso",
            is_module_chain_map(w.W, mod, f) && bijective_in_every_degree(f));

    Cone z = cone(ChainMap::make(v.complex(), t.M.complex(), f_vm));
    rep.add("Z = cone(V -> M) is exact", "exactness", is_exact(z.complex));
    return rep;
}

// ---------------------------------------------------------------------------
// P = Sigma [U;0] + W and its endomorphism algebra

struct PData {
    DGModule sigma_U0;  // Sigma [U;0]
    DGModule P;
    ModuleSum sum;      // 0 = Sigma [U;0], 1 = W
};

inline PData build_P(const TriangularDGA& t, const DGModule& u, const WData& w) {
    PData p;
    p.sigma_U0 = shift_module(embed_left(t, u), 1);
    p.sum = direct_sum_modules({p.sigma_U0, w.W}, {"u:", "w:"});
    p.P = p.sum.total;
    return p;
}

/// A block map between the summands of P, as an endomap of P.
inline GradedMap block_endo(const PData& p, int from, int to, const GradedMap& g) {
    return compose(p.sum.inclusions[to], compose(g, p.sum.projections[from]));
}

/// Psi(theta)(m, s, v) = (-1)^{|theta|} [theta(v); 0], a map W -> Sigma [U;0].
/// Flat indices of Sigma V and Sigma [U;0] match those of V and U because the
/// uniform degree shift preserves the basis enumeration order.
inline GradedMap psi_hat(const WData& w, const PData& p, const DGModule& u,
                         const GradedMap& theta) {
    FieldSpec field = u.field();
    int t = theta.degree;
    Matrix thm = flat_matrix(theta);
    Matrix out(field, u.dim(), w.W.dim());
    for (int j = 0; j < thm.cols(); ++j)
        for (int i = 0; i < u.dim(); ++i)
            if (!thm.at(i, j).is_zero())
                out.at(i, w.v_in_W[j]) = (t % 2 == 0) ? thm.at(i, j) : -thm.at(i, j);
    return graded_from_flat(w.W.space, p.sigma_U0.space, t, out);
}

/// alpha(s~)(w) = (-1)^{|s~||w|} w s~, with the right S-action of C on the
/// first summand and the right S-action of V on the suspended one.
inline GradedMap alpha_endo(const TriangularDGA& t, const WData& w, const DGBimodule& v,
                            int s_index) {
    FieldSpec field = t.field();
    int sd = t.S->degree_of(s_index);
    Vec es = flat_basis_vec(t.S->space, s_index);
    DGModule cr = w.c.bimodule.right_module();
    DGModule vr = v.right_module();
    Matrix out(field, w.W.dim(), w.W.dim());
    for (int j = 0; j < w.c.module.dim(); ++j) {
        bool flip = (sd * w.c.module.space.degree_of(j)) % 2 != 0;
        Vec img = cr.act(es, flat_basis_vec(w.c.module.space, j));
        for (int i = 0; i < w.c.module.dim(); ++i)
            if (!img[i].is_zero())
                out.at(w.c_in_W[i], w.c_in_W[j]) = flip ? -img[i] : img[i];
    }
    for (int j = 0; j < v.dim(); ++j) {
        int wd = w.W.space.degree_of(w.v_in_W[j]);
        bool flip = (sd * wd) % 2 != 0;
        Vec img = vr.act(es, flat_basis_vec(v.space, j));
        for (int i = 0; i < v.dim(); ++i)
            if (!img[i].is_zero())
                out.at(w.v_in_W[i], w.v_in_W[j]) = flip ? -img[i] : img[i];
    }
    return graded_from_flat(w.W.space, w.W.space, sd, out);
}

/// Sigma phi = (-1)^{|phi|} phi on the suspended coordinates.
inline GradedMap sigma_endo(const PData& p, const GradedMap& phi) {
    Matrix m = flat_matrix(phi);
    if (phi.degree % 2 != 0) m = m.scaled(-Scalar::one(m.field()));
    return graded_from_flat(p.sigma_U0.space, p.sigma_U0.space, phi.degree, m);
}

struct EData {
    HomComplex hp;       // Hom(P, P)
    DGAlgebra E;
    HomComplex huu_lam;  // Hom(Sigma[U;0], Sigma[U;0]) over the triangular algebra
    HomComplex hwu;      // Hom(W, Sigma[U;0])
    HomComplex huw;      // Hom(Sigma[U;0], W)
    HomComplex hww;      // Hom(W, W)
    Report report;
};

inline EData build_E(const TriangularDGA& t, const PData& p, const WData& w,
                     const HomComplex& huu_r) {
    EData e;
    e.hp = hom_complex(p.P, p.P);
    e.E = end_dga(e.hp, "End(P)");
    e.huu_lam = hom_complex(p.sigma_U0, p.sigma_U0);
    e.hwu = hom_complex(w.W, p.sigma_U0);
    e.huw = hom_complex(p.sigma_U0, w.W);
    e.hww = hom_complex(w.W, w.W);

    bool dims = true;
    std::set<int> degs;
    for (int d : e.hp.cx.space.degrees()) degs.insert(d);
    for (int d : degs)
        if (e.hp.cx.space.dim(d) != e.huu_lam.cx.space.dim(d) + e.hwu.cx.space.dim(d) +
                                         e.huw.cx.space.dim(d) + e.hww.cx.space.dim(d))
            dims = false;
    e.report.add("endomorphism dims split over the four blocks", "structure", dims);

    // corner: Hom_R(U, U) = Hom(Sigma[U;0], Sigma[U;0]) via phi -> Sigma phi
    DGAlgebra end_u = end_dga(huu_r, "End(U)");
    DGAlgebra corner = end_dga(e.huu_lam, "End(SigmaU)");
    bool ok = end_u.dim() == corner.dim();
    if (ok) {
        Matrix cols(t.field(), corner.dim(), end_u.dim());
        for (int q = 0; q < end_u.dim() && ok; ++q) {
            try {
                cols.set_column(q, e.huu_lam.coords_of(sigma_endo(p, huu_r.basis_map(q))));
            } catch (const std::invalid_argument&) {
                ok = false;
            }
        }
        if (ok) {
            GradedMap f = graded_from_flat(end_u.space, corner.space, 0, cols);
            DGAMorphism mor{&end_u, &corner, f};
            ok = check_dga_morphism(mor).ok() && bijective_in_every_degree(f);
        }
    }
    e.report.add("corner is End(U) via the suspension", "module-iso", ok);
    return e;
}

inline bool check_lower_left_exact(const EData& e) { return is_exact(e.huw.cx); }

// ---------------------------------------------------------------------------
// alpha, Psi, the tilted algebra and the corner-assembled morphism

struct AlphaData {
    DGAlgebra sop;    // S^op
    DGAlgebra end_w;  // End(W)
    GradedMap map;    // S^op -> End(W) coordinates
    Report report;
};

inline AlphaData alpha_map(const TriangularDGA& t, const WData& w, const DGBimodule& v,
                           const HomComplex& hww) {
    AlphaData a;
    a.sop = opposite(*t.S);
    a.end_w = end_dga(hww, "End(W)");
    Matrix cols(t.field(), a.end_w.dim(), t.S->dim());
    bool member = true;
    for (int si = 0; si < t.S->dim() && member; ++si) {
        try {
            cols.set_column(si, hww.coords_of(alpha_endo(t, w, v, si)));
        } catch (const std::invalid_argument&) {
            member = false;
        }
    }
    a.report.add("each alpha(s) is linear over the triangular algebra", "structure", member);
    if (member) {
        a.map = graded_from_flat(a.sop.space, a.end_w.space, 0, cols);
        DGAMorphism mor{&a.sop, &a.end_w, a.map};
        a.report.append(check_dga_morphism(mor));
        a.report.add("alpha is a quasi-isomorphism", "quasi-iso", is_dga_quasi_iso(mor));
    }
    return a;
}

/// beta = Hom(W, theta) after alpha: an isomorphism of complexes onto
/// Hom(W, C/[M;0]) -- the fixture-level cross-check on alpha.
inline Report beta_crosscheck(const TriangularDGA& t, const WData& w, const DGBimodule& v) {
    Report rep;
    HomComplex hq = hom_complex(w.W, w.quot.module);
    Matrix cols(t.field(), hq.cx.space.flat_dim(), t.S->dim());
    bool member = true;
    for (int si = 0; si < t.S->dim() && member; ++si) {
        try {
            cols.set_column(si,
                            hq.coords_of(compose(w.theta.map, alpha_endo(t, w, v, si))));
        } catch (const std::invalid_argument&) {
            member = false;
        }
    }
    rep.add("each beta(s) lands in Hom(W, C/[M;0])", "structure", member);
    if (member) {
        GradedMap f = graded_from_flat(t.S->space, hq.cx.space, 0, cols);
        bool chain = compose(hq.cx.differential, f) == compose(f, t.S->differential);
        rep.add("beta is an isomorphism of complexes", "module-iso",
                chain && bijective_in_every_degree(f));
    }
    return rep;
}

struct PsiData {
    HomComplex target;  // Hom(W, Sigma[U;0])
    GradedMap map;      // Hom_R(V, U) -> target coordinates
    Report report;
};

inline PsiData psi_map(const WData& w, const PData& p, const DGModule& u,
                       const HomComplex& hvu, const EData& e) {
    PsiData ps;
    ps.target = e.hwu;
    Matrix cols(u.field(), ps.target.cx.space.flat_dim(), hvu.cx.space.flat_dim());
    bool member = true;
    for (int j = 0; j < hvu.cx.space.flat_dim() && member; ++j) {
        try {
            cols.set_column(j, ps.target.coords_of(psi_hat(w, p, u, hvu.basis_map(j))));
        } catch (const std::invalid_argument&) {
            member = false;
        }
    }
    ps.report.add("each Psi(theta) is linear over the triangular algebra", "structure",
                  member);
    if (member) {
        ps.map = graded_from_flat(hvu.cx.space, ps.target.cx.space, 0, cols);
        ChainMap cm = ChainMap::make(hvu.cx, ps.target.cx, ps.map);
        ps.report.add("Psi is a quasi-isomorphism", "quasi-iso", is_quasi_iso(cm));
    }
    return ps;
}

struct TildeData {
    TriangularDGA tri;   // [S Hom(V,U); 0 End(U)^op]
    HomComplex hvu, huu;
    DGAlgebra end_u;
    AlgebraPtr end_u_op;
    DGBimodule hom_vu;
};

/// The tilted algebra: S in the corner, Hom(V, U) as the connecting bimodule
/// with (s theta)(v) = (-1)^{|s|(|theta|+|v|)} theta(v s) and
/// (theta phi)(v) = (-1)^{|theta||phi|} phi(theta(v)).
inline TildeData build_tilde(const AlgebraPtr& s, const DGBimodule& v, const DGModule& u,
                             const std::string& name) {
    TildeData td;
    td.hvu = hom_complex(v.left_module(), u);
    td.huu = hom_complex(u, u);
    td.end_u = end_dga(td.huu, "End(U)");
    td.end_u_op = std::make_shared<DGAlgebra>(opposite(td.end_u));

    DGBimodule hv{s, td.end_u_op, td.hvu.cx.space, td.hvu.cx.differential, {}, {}};
    DGModule vr = v.right_module();
    int n = td.hvu.cx.space.flat_dim();
    for (int p = 0; p < s->dim(); ++p) {
        int pd = s->degree_of(p);
        Vec ep = flat_basis_vec(s->space, p);
        for (int j = 0; j < n; ++j) {
            const GradedMap& th = td.hvu.basis_map(j);
            Matrix thm = flat_matrix(th);
            Matrix acted(v.field(), u.dim(), v.dim());
            for (int vi = 0; vi < v.dim(); ++vi) {
                bool flip = (pd * (th.degree + v.space.degree_of(vi))) % 2 != 0;
                Vec img = thm.apply(vr.act(ep, flat_basis_vec(v.space, vi)));
                for (int k = 0; k < u.dim(); ++k)
                    acted.at(k, vi) = flip ? -img[k] : img[k];
            }
            if (acted.is_zero()) continue;
            Vec coords = td.hvu.coords_of(
                graded_from_flat(v.space, u.space, pd + th.degree, acted));
            Terms terms;
            for (int k = 0; k < n; ++k)
                if (!coords[k].is_zero()) terms.emplace_back(k, coords[k]);
            if (!terms.empty()) hv.left_action[{p, j}] = terms;
        }
    }
    for (int q = 0; q < td.end_u.dim(); ++q) {
        const GradedMap& phi = td.huu.basis_map(q);
        for (int j = 0; j < n; ++j) {
            const GradedMap& th = td.hvu.basis_map(j);
            bool flip = (phi.degree * th.degree) % 2 != 0;
            GradedMap prod = compose(phi, th);
            if (prod.is_zero()) continue;
            Vec coords = td.hvu.coords_of(flip ? prod.scaled(-Scalar::one(v.field()))
                                               : prod);
            Terms terms;
            for (int k = 0; k < n; ++k)
                if (!coords[k].is_zero()) terms.emplace_back(k, coords[k]);
            if (!terms.empty()) hv.right_action[{q, j}] = terms;
        }
    }
    td.hom_vu = hv;
    td.tri = build_triangular(s, td.end_u_op, hv, name);
    return td;
}

struct PhiData {
    DGAlgebra tilde_op;
    GradedMap map;  // tilde^op -> E coordinates
    bool paper_sign = false;
    Report report;
};

/// The blockwise morphism tilde^op -> End(P): alpha on the S-slot, the signed
/// suspension on the End(U)-slot and Psi on the connecting slot.  The prefix
/// on the Psi block is +1 under these conventions; the displayed variant
/// (-1)^{|theta|} is kept as a fallback and the choice is recorded.
inline PhiData phi_map(const TriangularDGA& t, const WData& w, const DGBimodule& v,
                       const PData& p, const DGModule& u, const EData& e,
                       const TildeData& td) {
    PhiData ph;
    ph.tilde_op = opposite(*td.tri.algebra);
    FieldSpec field = t.field();
    const DGAlgebra& tilde = *td.tri.algebra;

    auto assemble = [&](bool paper_sign) {
        Matrix cols(field, e.E.dim(), tilde.dim());
        for (int si = 0; si < t.S->dim(); ++si)
            cols.set_column(td.tri.r_idx[si],
                            e.hp.coords_of(block_endo(p, 1, 1, alpha_endo(t, w, v, si))));
        for (int j = 0; j < td.hvu.cx.space.flat_dim(); ++j) {
            GradedMap psi = psi_hat(w, p, u, td.hvu.basis_map(j));
            if (paper_sign && psi.degree % 2 != 0) psi = psi.scaled(-Scalar::one(field));
            cols.set_column(td.tri.m_idx[j], e.hp.coords_of(block_endo(p, 1, 0, psi)));
        }
        for (int q = 0; q < td.end_u.dim(); ++q)
            cols.set_column(td.tri.s_idx[q],
                            e.hp.coords_of(block_endo(p, 0, 0, sigma_endo(p, td.huu.basis_map(q)))));
        return graded_from_flat(ph.tilde_op.space, e.E.space, 0, cols);
    };

    GradedMap f = assemble(false);
    DGAMorphism mor{&ph.tilde_op, &e.E, f};
    Report check = check_dga_morphism(mor);
    if (!check.ok()) {
        GradedMap f2 = assemble(true);
        DGAMorphism mor2{&ph.tilde_op, &e.E, f2};
        Report check2 = check_dga_morphism(mor2);
        if (!check2.ok()) throw PhiCheckFailed(check.render() + check2.render());
        ph.paper_sign = true;
        f = f2;
        check = check2;
    }
    ph.map = f;
    ph.report.append(check);
    DGAMorphism final{&ph.tilde_op, &e.E, ph.map};
    ph.report.add("blockwise morphism is a quasi-isomorphism", "quasi-iso",
                  is_dga_quasi_iso(final));
    return ph;
}

// ---------------------------------------------------------------------------
// orchestration

struct TiltResult {
    TriangularDGA tri;
    DGModule X, U;
    GradedMap u_aug;
    DGBimodule V;
    GradedMap v_aug;
    WData w;
    PData p;
    EData e;
    TildeData tilde;
    DGAlgebra tilde_op;
    GradedMap phi;
    bool phi_paper_sign = false;
    bool hypothesis_certified = false;
    Report report;
};

/// Sufficient structural witness for the generation hypothesis: X is the
/// algebra itself, or contains it as a direct summand found by a pairwise
/// search over degree-0 cycles of the two Hom complexes.
inline bool regular_summand_witness(const AlgebraPtr& r, const DGModule& x) {
    DGModule reg = regular_module(r, Side::Left);
    if (x.space == reg.space && x.differential == reg.differential && x.action == reg.action)
        return true;
    HomComplex in = hom_complex(reg, x), out = hom_complex(x, reg);
    std::vector<GradedMap> incl, proj;
    for (const HomComplex* h : {&in, &out}) {
        std::vector<GradedMap>& dst = h == &in ? incl : proj;
        if (h->cx.space.dim(0) == 0) continue;
        Matrix ker = h->cx.differential.block(0).kernel();
        for (int c = 0; c < ker.cols(); ++c) {
            Vec flat = flat_zero(h->cx.space);
            for (int i = 0; i < ker.rows(); ++i) flat[h->cx.space.flat_index(0, i)] = ker.at(i, c);
            bool nz = false;
            for (const auto& s : flat)
                if (!s.is_zero()) nz = true;
            if (nz) dst.push_back(h->realize(flat));
        }
    }
    for (const auto& pi : proj)
        for (const auto& io : incl)
            if (bijective_in_every_degree(compose(pi, io))) return true;
    return false;
}

inline TiltResult run_tilt(const TiltProblem& prob) {
    TiltResult r;
    r.tri = build_triangular(prob.R, prob.S, prob.M, "triangular");

    r.X = prob.X ? *prob.X : regular_module(prob.R, Side::Left);
    if (prob.U) {
        r.U = *prob.U;
        r.u_aug = *prob.u_aug;
    } else {
        ResolutionResult res = semifree_resolution(r.X, prob.caps);
        r.U = res.resolution.realized;
        r.u_aug = res.augmentation;
    }
    if (prob.V) {
        r.V = *prob.V;
        r.v_aug = *prob.v_aug;
    } else {
        BimoduleReplacement rep = bimodule_replacement(prob.M, prob.caps);
        r.V = rep.v;
        r.v_aug = rep.augmentation;
    }
    r.report.add("resolution of X is a quasi-isomorphism", "quasi-iso",
                 is_module_chain_map(r.U, r.X, r.u_aug) &&
                     is_quasi_iso(ChainMap::make(r.U.complex(), r.X.complex(), r.u_aug)));
    r.report.add("replacement of M is a quasi-isomorphism of bimodules", "quasi-iso",
                 is_module_chain_map(r.V.left_module(), prob.M.left_module(), r.v_aug) &&
                     is_module_chain_map(r.V.right_module(), prob.M.right_module(), r.v_aug) &&
                     is_quasi_iso(ChainMap::make(r.V.complex(), prob.M.complex(), r.v_aug)));

    r.hypothesis_certified = regular_summand_witness(prob.R, r.X);
    if (!r.hypothesis_certified)
        r.report.warn("generation hypothesis not certified", "axiom",
                      "X was not recognized as containing the algebra as a summand; "
                      "verification proceeds regardless");

    r.w = build_W(r.tri, r.V, r.v_aug);
    r.report.append(verify_W(r.tri, r.w, r.V, r.v_aug));
    r.report.append(verify_W_normal_form(r.tri, r.w, r.V, r.v_aug));

    r.p = build_P(r.tri, r.U, r.w);
    r.tilde = build_tilde(prob.S, r.V, r.U, prob.name);
    r.report.add("tilted algebra passes the DGA axioms", "axiom",
                 check_dga(*r.tilde.tri.algebra).ok());

    r.e = build_E(r.tri, r.p, r.w, r.tilde.huu);
    r.report.append(r.e.report);
    r.report.add("Hom(Sigma[U;0], W) is exact", "exactness", check_lower_left_exact(r.e));

    AlphaData a = alpha_map(r.tri, r.w, r.V, r.e.hww);
    r.report.append(a.report);
    PsiData ps = psi_map(r.w, r.p, r.U, r.tilde.hvu, r.e);
    r.report.append(ps.report);

    PhiData ph = phi_map(r.tri, r.w, r.V, r.p, r.U, r.e, r.tilde);
    r.tilde_op = ph.tilde_op;
    r.phi = ph.map;
    r.phi_paper_sign = ph.paper_sign;
    r.report.append(ph.report);
    return r;
}

// ---------------------------------------------------------------------------
// ring-case specialization: homology of the tilted algebra collapses to a
// triangular matrix ring

inline TriangularDGA direct_h0_ring(const TiltResult& r, TildeData& out_td) {
    out_td = build_tilde(r.tri.S, r.tri.M, r.X, "h0-direct");
    return out_td.tri;
}

inline Report ladkani_specialize(const TiltResult& r) {
    Report rep;
    const DGAlgebra& tilde = *r.tilde.tri.algebra;
    FieldSpec field = tilde.field();

    auto ring_like = [](const GradedSpace& sp, const GradedMap& d) {
        if (!d.is_zero()) return false;
        for (int deg : sp.degrees())
            if (deg != 0 && sp.dim(deg) > 0) return false;
        return true;
    };
    if (!ring_like(r.tri.R->space, r.tri.R->differential) ||
        !ring_like(r.tri.S->space, r.tri.S->differential))
        throw std::invalid_argument("corner algebras must be rings in degree 0");

    HomologyData huu = homology(r.tilde.huu.cx);
    for (int d : huu.homology.degrees())
        if (d != 0 && huu.homology.dim(d) > 0) throw RigidityFailed(d);
    HomologyData hvu = homology(r.tilde.hvu.cx);
    for (int d : hvu.homology.degrees())
        if (d != 0 && hvu.homology.dim(d) > 0) throw ExtNotConcentrated(d);

    if (!ring_like(r.tri.M.space, r.tri.M.differential) ||
        !ring_like(r.X.space, r.X.differential))
        throw std::invalid_argument("bimodule and X must sit in degree 0 with no differential");

    HomologyData ht = homology(tilde.complex());
    bool concentrated = true;
    for (int d : ht.homology.degrees())
        if (d != 0 && ht.homology.dim(d) > 0) concentrated = false;
    rep.add("homology of the tilted algebra sits in degree 0", "exactness", concentrated);
    if (!concentrated) return rep;

    // the directly built matrix ring [S Hom(M,X); 0 End(X)^op]
    TildeData direct;
    TriangularDGA dtri = direct_h0_ring(r, direct);
    const DGAlgebra& dring = *dtri.algebra;

    // identifications of degree-0 homology with the ring-case data
    HomologyData hv = homology(r.V.complex());
    HomologyData hu = homology(r.U.complex());
    auto reps0 = [&](const HomologyData& h, int rows) {
        auto it = h.representatives.find(0);
        return it != h.representatives.end() ? it->second : Matrix(field, rows, 0);
    };
    auto transport = [&](const HomologyData& h, const GradedMap& aug, int dim_target) {
        Matrix out(field, dim_target, h.homology.dim(0));
        Matrix reps = reps0(h, 0);
        for (int c = 0; c < reps.cols(); ++c)
            out.set_column(c, aug.block(0).apply(reps.column_vec(c)));
        return out;
    };
    Matrix FM = transport(hv, r.v_aug, r.tri.M.dim());
    Matrix GX = transport(hu, r.u_aug, r.X.dim());
    Matrix FMi = *FM.inverse(), GXi = *GX.inverse();

    auto induced0 = [&](const GradedMap& f, const HomologyData& hs, const HomologyData& htgt) {
        Matrix reps = reps0(hs, 0);
        Matrix out(field, htgt.homology.dim(0), reps.cols());
        for (int c = 0; c < reps.cols(); ++c) {
            Vec cls = htgt.class_of(0, f.block(0).apply(reps.column_vec(c)));
            for (int i = 0; i < static_cast<int>(cls.size()); ++i) out.at(i, c) = cls[i];
        }
        return out;
    };

    // degree-0 cycle of the tilted algebra -> element of the matrix ring
    auto L = [&](const Vec& z) {
        Vec out = flat_zero(dring.space);
        for (int i = 0; i < r.tri.S->dim(); ++i)
            out[dtri.r_idx[i]] = z[r.tilde.tri.r_idx[i]];
        Vec mc = flat_zero(r.tilde.hvu.cx.space);
        bool mnz = false;
        for (int j = 0; j < r.tilde.hvu.cx.space.flat_dim(); ++j) {
            mc[j] = z[r.tilde.tri.m_idx[j]];
            if (!mc[j].is_zero()) mnz = true;
        }
        if (mnz) {
            GradedMap th = r.tilde.hvu.realize(mc);
            Matrix mx = GX * induced0(th, hv, hu) * FMi;
            Vec coords = direct.hvu.coords_of(
                graded_from_flat(r.tri.M.space, r.X.space, 0, mx));
            for (int k = 0; k < static_cast<int>(coords.size()); ++k)
                if (!coords[k].is_zero()) out[dtri.m_idx[k]] = coords[k];
        }
        Vec sc = flat_zero(r.tilde.huu.cx.space);
        bool snz = false;
        for (int q = 0; q < r.tilde.huu.cx.space.flat_dim(); ++q) {
            sc[q] = z[r.tilde.tri.s_idx[q]];
            if (!sc[q].is_zero()) snz = true;
        }
        if (snz) {
            GradedMap phi = r.tilde.huu.realize(sc);
            Matrix mx = GX * induced0(phi, hu, hu) * GXi;
            Vec coords = direct.huu.coords_of(
                graded_from_flat(r.X.space, r.X.space, 0, mx));
            for (int k = 0; k < static_cast<int>(coords.size()); ++k)
                if (!coords[k].is_zero()) out[dtri.s_idx[k]] = coords[k];
        }
        return out;
    };

    // boundaries die, representatives biject, unit and products transport
    bool kills = true;
    auto bit = ht.boundaries.find(0);
    if (bit != ht.boundaries.end())
        for (int c = 0; c < bit->second.cols(); ++c) {
            GradedVec g;
            g.comps[0] = bit->second.column_vec(c);
            Vec img = L(to_flat(tilde.space, g));
            for (const auto& s : img)
                if (!s.is_zero()) kills = false;
        }
    rep.add("boundaries map to zero in the matrix ring", "structure", kills);

    Matrix reps = reps0(ht, tilde.space.dim(0));
    std::vector<Vec> rep_flat;
    Matrix lm(field, dring.dim(), reps.cols());
    for (int c = 0; c < reps.cols(); ++c) {
        GradedVec g;
        g.comps[0] = reps.column_vec(c);
        rep_flat.push_back(to_flat(tilde.space, g));
        lm.set_column(c, L(rep_flat.back()));
    }
    rep.add("degree-0 homology matches the matrix ring dimension", "module-iso",
            dring.dim() == reps.cols() && lm.rank() == reps.cols());
    rep.add("unit transports to the unit", "axiom", L(tilde.unit) == dring.unit);

    bool mult = true;
    for (std::size_t a = 0; a < rep_flat.size() && mult; ++a)
        for (std::size_t b = 0; b < rep_flat.size() && mult; ++b)
            if (L(tilde.mul(rep_flat[a], rep_flat[b])) !=
                dring.mul(lm.column_vec(static_cast<int>(a)), lm.column_vec(static_cast<int>(b))))
                mult = false;
    rep.add("products of homology classes match the matrix ring", "structure", mult);
    return rep;
}

// ---------------------------------------------------------------------------
// self-dual corner: [S DM; 0 R] is quasi-isomorphic to the X = R tilt

inline DGBimodule regular_bimodule(const AlgebraPtr& a) {
    DGBimodule out{a, a, a->space, a->differential, {}, {}};
    for (const auto& [key, terms] : a->mul_table) {
        out.left_action[{key.first, key.second}] = terms;
        out.right_action[{key.second, key.first}] = terms;
    }
    return out;
}

inline Report self_dual_corollary(const TiltProblem& prob) {
    Report rep;
    FieldSpec field = prob.R->field();
    DGBimodule v = prob.V ? *prob.V : bimodule_replacement(prob.M, prob.caps).v;
    GradedMap f_vm = prob.V ? *prob.v_aug
                            : bimodule_replacement(prob.M, prob.caps).augmentation;

    // a bimodule isomorphism DR -> R, searched among degree-0 cycles
    DGBimodule rbim = regular_bimodule(prob.R);
    DGBimodule dr = dualize(rbim);
    for (int d : prob.R->space.degrees())
        if (prob.R->space.dim(d) != dr.space.dim(d))
            throw NotSelfDual("per-degree dimensions of the dual differ");
    auto env = std::make_shared<DGAlgebra>(enveloping_algebra(prob.R, prob.R));
    DGModule m_r = bimodule_as_left_env(rbim, env);
    DGModule m_dr = bimodule_as_left_env(dr, env);
    HomComplex hdr = hom_complex(m_dr, m_r);
    std::vector<GradedMap> candidates;
    if (hdr.cx.space.dim(0) > 0) {
        Matrix ker = hdr.cx.differential.block(0).kernel();
        for (int c = 0; c < ker.cols(); ++c) {
            Vec flat = flat_zero(hdr.cx.space);
            for (int i = 0; i < ker.rows(); ++i) flat[hdr.cx.space.flat_index(0, i)] = ker.at(i, c);
            candidates.push_back(hdr.realize(flat));
        }
        std::size_t singles = candidates.size();
        for (std::size_t a = 0; a + 1 < singles; ++a)
            candidates.push_back(candidates[a] + candidates[a + 1]);
    }
    std::optional<GradedMap> rho;
    for (const auto& cand : candidates)
        if (bijective_in_every_degree(cand)) {
            rho = cand;
            break;
        }
    if (!rho) throw NotSelfDual("no invertible degree-0 cycle in the bimodule Hom");
    rep.add("bimodule isomorphism DR = R found", "module-iso", true);
    GradedMap iota = inverse_graded(*rho);  // R -> DR

    // the chain Hom(V, R) = Hom(V, DR) = D(R (x) V) = DV, arrow by arrow
    DGModule vl = v.left_module();
    DGModule reg = regular_module(prob.R, Side::Left);
    DGModule drl = dr.left_module();
    HomComplex hvr = hom_complex(vl, reg);
    HomComplex hvdr = hom_complex(vl, drl);

    Matrix step1(field, hvdr.cx.space.flat_dim(), hvr.cx.space.flat_dim());
    bool ok1 = true;
    for (int j = 0; j < hvr.cx.space.flat_dim() && ok1; ++j) {
        try {
            step1.set_column(j, hvdr.coords_of(compose(iota, hvr.basis_map(j))));
        } catch (const std::invalid_argument&) {
            ok1 = false;
        }
    }
    GradedMap s1;
    if (ok1) {
        s1 = graded_from_flat(hvr.cx.space, hvdr.cx.space, 0, step1);
        ok1 = compose(hvdr.cx.differential, s1) == compose(s1, hvr.cx.differential) &&
              bijective_in_every_degree(s1);
    }
    rep.add("postcomposition with R = DR is an isomorphism Hom(V,R) = Hom(V,DR)",
            "module-iso", ok1);
    if (!ok1) return rep;

    TensorResult tr = tensor_over_algebra(regular_module(prob.R, Side::Right), vl);
    Complex dtc = dual_complex(tr.cx);
    auto dual_index = [](const GradedSpace& dual, const GradedSpace& orig, int flat) {
        auto [d, pos] = orig.degree_pos(flat);
        std::string want = orig.label_of(flat) + "*";
        const auto& bl = dual.basis.at(-d);
        for (int p = 0; p < static_cast<int>(bl.size()); ++p)
            if (bl[p] == want) return dual.flat_index(-d, p);
        throw std::logic_error("dual label lookup failed");
    };

    // adjunction f -> (class(r (x) v) -> sign . f(v)(r)); the Koszul sign is
    // selected mechanically among the transposition candidates
    auto adjunction = [&](int variant) -> std::optional<GradedMap> {
        Matrix out(field, dtc.space.flat_dim(), hvdr.cx.space.flat_dim());
        Matrix sect = flat_matrix(tr.section);
        for (int j = 0; j < hvdr.cx.space.flat_dim(); ++j) {
            const GradedMap& f = hvdr.basis_map(j);
            int tdeg = f.degree;
            Matrix fmat = flat_matrix(f);
            for (int q = 0; q < tr.cx.space.flat_dim(); ++q) {
                Vec amb = sect.apply(flat_basis_vec(tr.cx.space, q));
                Scalar value = Scalar::zero(field);
                for (int ri = 0; ri < prob.R->dim(); ++ri)
                    for (int vi = 0; vi < v.dim(); ++vi) {
                        Scalar c = amb[tr.pair_flat(prob.R->space, v.space, ri, vi)];
                        if (c.is_zero()) continue;
                        Vec fv = fmat.apply(flat_basis_vec(v.space, vi));
                        Scalar ev = fv[dual_index(drl.space, prob.R->space, ri)];
                        if (ev.is_zero()) continue;
                        int rd = prob.R->degree_of(ri), vd = v.space.degree_of(vi);
                        int sign = 0;
                        if (variant == 1) sign = rd * tdeg;
                        if (variant == 2) sign = rd * (tdeg + vd);
                        if (variant == 3) sign = rd * vd;
                        Scalar term = c * ev;
                        value += (sign % 2 != 0) ? -term : term;
                    }
                if (!value.is_zero()) out.at(dual_index(dtc.space, tr.cx.space, q), j) = value;
            }
        }
        GradedMap g = graded_from_flat(hvdr.cx.space, dtc.space, 0, out);
        if (compose(dtc.differential, g) != compose(g, hvdr.cx.differential)) return std::nullopt;
        if (!bijective_in_every_degree(g)) return std::nullopt;
        return g;
    };
    std::optional<GradedMap> s2;
    int chosen = -1;
    for (int variant = 0; variant < 4 && !s2; ++variant) {
        s2 = adjunction(variant);
        if (s2) chosen = variant;
    }
    rep.add("adjunction Hom(V,DR) = D(R (x) V) is an isomorphism", "module-iso",
            s2.has_value(), s2 ? "sign variant " + std::to_string(chosen) : "");
    if (!s2) return rep;

    // multiplication R (x) V -> V, dualized and inverted
    Matrix mu(field, v.dim(), tr.cx.space.flat_dim());
    {
        Matrix sect = flat_matrix(tr.section);
        for (int q = 0; q < tr.cx.space.flat_dim(); ++q) {
            Vec amb = sect.apply(flat_basis_vec(tr.cx.space, q));
            Vec img = flat_zero(v.space);
            for (int ri = 0; ri < prob.R->dim(); ++ri)
                for (int vi = 0; vi < v.dim(); ++vi) {
                    Scalar c = amb[tr.pair_flat(prob.R->space, v.space, ri, vi)];
                    if (c.is_zero()) continue;
                    Vec rv = vl.act(flat_basis_vec(prob.R->space, ri),
                                    flat_basis_vec(v.space, vi));
                    for (int k = 0; k < v.dim(); ++k) img[k] += c * rv[k];
                }
            mu.set_column(q, img);
        }
    }
    GradedMap mult = graded_from_flat(tr.cx.space, v.space, 0, mu);
    bool mult_ok = compose(v.differential, mult) == compose(mult, tr.cx.differential) &&
                   bijective_in_every_degree(mult);
    rep.add("multiplication R (x) V = V is an isomorphism", "module-iso", mult_ok);
    if (!mult_ok) return rep;
    GradedMap dmu = dual_map(mult);  // DV -> D(R (x) V)

    Complex dv_cx = dual_complex(v.complex());
    GradedMap total = compose(inverse_graded(dmu), compose(*s2, s1));
    bool chain_ok = compose(dv_cx.differential, total) == compose(total, hvr.cx.differential) &&
                    bijective_in_every_degree(total);
    rep.add("composite Hom(V,R) = DV is an isomorphism of complexes", "module-iso",
            chain_ok);

    // [S DM; 0 R] -> [S DV; 0 R] via the dual of the replacement
    DGBimodule dm = dualize(prob.M);
    DGBimodule dvb = dualize(v);
    GradedMap df = dual_map(f_vm);  // DM -> DV
    TriangularDGA t1 = build_triangular(prob.S, prob.R, dm, "self-dual-lhs");
    TriangularDGA t2 = build_triangular(prob.S, prob.R, dvb, "self-dual-rhs");
    Matrix morm(field, t2.algebra->dim(), t1.algebra->dim());
    for (int i = 0; i < prob.S->dim(); ++i)
        morm.at(t2.r_idx[i], t1.r_idx[i]) = Scalar::one(field);
    for (int i = 0; i < prob.R->dim(); ++i)
        morm.at(t2.s_idx[i], t1.s_idx[i]) = Scalar::one(field);
    Matrix dfm = flat_matrix(df);
    for (int j = 0; j < dm.dim(); ++j)
        for (int i = 0; i < dvb.dim(); ++i)
            if (!dfm.at(i, j).is_zero()) morm.at(t2.m_idx[i], t1.m_idx[j]) = dfm.at(i, j);
    GradedMap mor = graded_from_flat(t1.algebra->space, t2.algebra->space, 0, morm);
    DGAMorphism dgam{t1.algebra.get(), t2.algebra.get(), mor};
    rep.add("[S DM; 0 R] -> [S DV; 0 R] is a DGA quasi-isomorphism", "quasi-iso",
            check_dga_morphism(dgam).ok() && is_dga_quasi_iso(dgam));
    return rep;
}

}  // namespace dgt
