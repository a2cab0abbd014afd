#pragma once

#include <functional>

#include "dgt/module.hpp"

namespace dgt {

// Entry layout for vectorizing degree-t graded maps src -> tgt: one slot per
// (target flat i, source flat j) with deg(i) = deg(j) + t, ordered by (j, i).
inline std::vector<std::pair<int, int>> hom_entries(const GradedSpace& src,
                                                    const GradedSpace& tgt, int t) {
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < src.flat_dim(); ++j)
        for (int i = 0; i < tgt.flat_dim(); ++i)
            if (tgt.degree_of(i) == src.degree_of(j) + t) out.emplace_back(i, j);
    return out;
}

inline Vec vectorize_map(const GradedMap& f, const std::vector<std::pair<int, int>>& entries) {
    Matrix m = flat_matrix(f);
    Vec v(entries.size(), Scalar::zero(f.source.field));
    for (std::size_t e = 0; e < entries.size(); ++e) v[e] = m.at(entries[e].first, entries[e].second);
    return v;
}

inline GradedMap devectorize_map(const GradedSpace& src, const GradedSpace& tgt, int t,
                                 const std::vector<std::pair<int, int>>& entries, const Vec& v) {
    Matrix m(src.field, tgt.flat_dim(), src.flat_dim());
    for (std::size_t e = 0; e < entries.size(); ++e) m.at(entries[e].first, entries[e].second) = v[e];
    return graded_from_flat(src, tgt, t, m);
}

/// The complex Hom_A(M, N).  Degree-t elements are graded maps of degree t
/// commuting with the A-action up to the Koszul sign; the differential is
/// d(f) = d_N f - (-1)^{|f|} f d_M.  Basis elements are labelled f{t}.{i}.
struct HomComplex {
    GradedSpace src, tgt;
    Complex cx;
    std::map<int, std::vector<GradedMap>> basis;  // hom degree -> maps

    const GradedMap& basis_map(int flat) const {
        auto [t, p] = cx.space.degree_pos(flat);
        return basis.at(t)[p];
    }

    GradedMap realize(const Vec& flat_coords) const {
        GradedMap out = GradedMap::zero(src, tgt, 0);
        bool seeded = false;
        for (int i = 0; i < cx.space.flat_dim(); ++i) {
            if (flat_coords[i].is_zero()) continue;
            GradedMap term = basis_map(i).scaled(flat_coords[i]);
            if (!seeded) {
                out = term;
                seeded = true;
            } else {
                out = out + term;
            }
        }
        if (!seeded) throw std::invalid_argument("cannot realize the zero hom element");
        return out;
    }

    /// Coordinates of a graded map in the hom basis, in flat layout.
    Vec coords_of(const GradedMap& f) const {
        int t = f.degree;
        Vec out = flat_zero(cx.space);
        if (f.is_zero()) return out;
        auto it = basis.find(t);
        if (it == basis.end()) throw std::invalid_argument("map is not in the hom complex");
        auto entries = hom_entries(src, tgt, t);
        Matrix cols(src.field, static_cast<int>(entries.size()),
                    static_cast<int>(it->second.size()));
        for (std::size_t j = 0; j < it->second.size(); ++j)
            cols.set_column(static_cast<int>(j), vectorize_map(it->second[j], entries));
        auto sol = cols.solve(vectorize_map(f, entries));
        if (!sol) throw std::invalid_argument("map is not in the hom complex");
        for (std::size_t j = 0; j < sol->size(); ++j)
            out[cx.space.flat_index(t, static_cast<int>(j))] = (*sol)[j];
        return out;
    }
};

inline HomComplex hom_complex(const DGModule& m, const DGModule& n) {
    if (m.algebra.get() != n.algebra.get() || m.side != n.side) throw SideMismatch();
    const DGAlgebra& a = *m.algebra;
    FieldSpec field = m.field();

    HomComplex hc{m.space, n.space, {}, {}};
    GradedSpace hom_space{field, {}};

    int lo = 0, hi = -1;
    if (m.dim() > 0 && n.dim() > 0) {
        auto mds = m.space.degrees(), nds = n.space.degrees();
        lo = nds.front() - mds.back();
        hi = nds.back() - mds.front();
    }

    for (int t = lo; t <= hi; ++t) {
        auto entries = hom_entries(m.space, n.space, t);
        if (entries.empty()) continue;
        // Linearity constraints, one target coordinate at a time.
        std::vector<Vec> rows;
        for (int p = 0; p < a.dim(); ++p) {
            Vec ep = flat_basis_vec(a.space, p);
            bool flip = (t * a.degree_of(p)) % 2 != 0 && m.side == Side::Left;
            for (int j = 0; j < m.dim(); ++j) {
                Vec ax = m.act(ep, flat_basis_vec(m.space, j));
                // f(a x_j) - (+-) a f(x_j) = 0 in N, per target coordinate i.
                std::map<int, Vec> row_by_target;
                auto row_of = [&](int i) -> Vec& {
                    auto it = row_by_target.find(i);
                    if (it == row_by_target.end())
                        it = row_by_target.emplace(i, Vec(entries.size(), Scalar::zero(field)))
                                 .first;
                    return it->second;
                };
                for (std::size_t e = 0; e < entries.size(); ++e) {
                    auto [i, jj] = entries[e];
                    // f(a x_j) contribution: entry (i, jj) weighted by (ax)_jj
                    if (!ax[jj].is_zero()) row_of(i)[e] += ax[jj];
                    // a f(x_j) contribution: entry (i, j) lands in coordinate
                    // act(a, e_i), spread over target coordinates.
                    if (jj == j) {
                        Vec afi = n.act(ep, flat_basis_vec(n.space, i));
                        for (int k = 0; k < n.dim(); ++k)
                            if (!afi[k].is_zero())
                                row_of(k)[e] += flip ? afi[k] : -afi[k];
                    }
                }
                for (auto& [i, row] : row_by_target) {
                    bool nonzero = false;
                    for (const auto& x : row)
                        if (!x.is_zero()) { nonzero = true; break; }
                    if (nonzero) rows.push_back(std::move(row));
                }
            }
        }
        Matrix constraints(field, static_cast<int>(rows.size()),
                           static_cast<int>(entries.size()));
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t e = 0; e < entries.size(); ++e)
                constraints.at(static_cast<int>(r), static_cast<int>(e)) = rows[r][e];
        Matrix ker = constraints.kernel();
        if (ker.cols() == 0) continue;
        std::vector<GradedMap> maps;
        std::vector<std::string> labels;
        for (int c = 0; c < ker.cols(); ++c) {
            maps.push_back(devectorize_map(m.space, n.space, t, entries, ker.column_vec(c)));
            labels.push_back("f" + std::to_string(t) + "." + std::to_string(c));
        }
        hom_space.basis[t] = labels;
        hc.basis[t] = std::move(maps);
    }

    hc.cx.space = hom_space;
    GradedMap diff = GradedMap::zero(hom_space, hom_space, 1);
    HomComplex probe = hc;  // coords_of needs src/tgt/basis only
    probe.cx.space = hom_space;
    for (const auto& [t, maps] : hc.basis) {
        if (hom_space.dim(t + 1) == 0) {
            // images must vanish; checked below through coords_of on nonzero maps
        }
        Matrix block(field, hom_space.dim(t + 1), hom_space.dim(t));
        for (std::size_t j = 0; j < maps.size(); ++j) {
            GradedMap df = compose(n.differential, maps[j]) -
                           (t % 2 == 0 ? compose(maps[j], m.differential)
                                       : -compose(maps[j], m.differential));
            if (df.is_zero()) continue;
            Vec coords = probe.coords_of(df);
            for (int i = 0; i < hom_space.dim(t + 1); ++i)
                block.at(i, static_cast<int>(j)) = coords[hom_space.flat_index(t + 1, i)];
        }
        if (!block.is_zero()) diff.blocks[t] = block;
    }
    hc.cx = Complex::make(hom_space, diff);
    return hc;
}

/// The endomorphism algebra End_A(M) with composition as product.
inline DGAlgebra end_dga(const HomComplex& hc, const std::string& name) {
    if (hc.src != hc.tgt) throw ShapeMismatch();
    DGAlgebra a;
    a.name = name;
    a.space = hc.cx.space;
    a.differential = hc.cx.differential;
    a.unit = hc.coords_of(GradedMap::identity(hc.src));
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            GradedMap prod = compose(hc.basis_map(i), hc.basis_map(j));
            if (prod.is_zero()) continue;
            Vec coords = hc.coords_of(prod);
            Terms terms;
            for (int k = 0; k < a.dim(); ++k)
                if (!coords[k].is_zero()) terms.emplace_back(k, coords[k]);
            if (!terms.empty()) a.mul_table[{i, j}] = terms;
        }
    return a;
}

/// Tensor product M (x)_A N of a right module and a left module, as a complex
/// with the quotient projection from the ambient pairwise tensor space.
struct TensorResult {
    GradedSpace ambient;  // labels "m(x)n"
    Complex cx;
    GradedMap projection;  // ambient -> quotient, degree 0
    GradedMap section;     // quotient -> ambient, degree 0

    int pair_flat(const GradedSpace& msp, const GradedSpace& nsp, int mi, int nj) const {
        int deg = msp.degree_of(mi) + nsp.degree_of(nj);
        std::string label = msp.label_of(mi) + "(x)" + nsp.label_of(nj);
        const auto& bl = ambient.basis.at(deg);
        for (int p = 0; p < static_cast<int>(bl.size()); ++p)
            if (bl[p] == label) return ambient.flat_index(deg, p);
        throw std::logic_error("tensor pair lookup failed");
    }
};

inline TensorResult tensor_over_algebra(const DGModule& m, const DGModule& n) {
    if (m.side != Side::Right || n.side != Side::Left) throw SideMismatch();
    if (m.algebra.get() != n.algebra.get()) throw SideMismatch();
    const DGAlgebra& a = *m.algebra;
    FieldSpec field = m.field();

    TensorResult tr;
    tr.ambient.field = field;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < n.dim(); ++j)
            tr.ambient.basis[m.space.degree_of(i) + n.space.degree_of(j)].push_back(
                m.space.label_of(i) + "(x)" + n.space.label_of(j));

    auto pf = [&](int i, int j) { return tr.pair_flat(m.space, n.space, i, j); };

    // Relations (m a) (x) n - m (x) (a n), per basis triple.
    std::map<int, std::vector<Vec>> rel_cols;
    for (int p = 0; p < a.dim(); ++p) {
        Vec ep = flat_basis_vec(a.space, p);
        for (int i = 0; i < m.dim(); ++i)
            for (int j = 0; j < n.dim(); ++j) {
                Vec ma = m.act(ep, flat_basis_vec(m.space, i));
                Vec an = n.act(ep, flat_basis_vec(n.space, j));
                Vec rel = flat_zero(tr.ambient);
                for (int k = 0; k < m.dim(); ++k)
                    if (!ma[k].is_zero()) rel[pf(k, j)] += ma[k];
                for (int k = 0; k < n.dim(); ++k)
                    if (!an[k].is_zero()) rel[pf(i, k)] -= an[k];
                bool nonzero = false;
                for (const auto& x : rel)
                    if (!x.is_zero()) { nonzero = true; break; }
                if (!nonzero) continue;
                int deg = a.degree_of(p) + m.space.degree_of(i) + n.space.degree_of(j);
                GradedVec gv = to_graded(tr.ambient, rel);
                rel_cols[deg].push_back(gv.comps.at(deg));
            }
    }
    std::map<int, Matrix> gens;
    for (const auto& [d, cols] : rel_cols) {
        Matrix g(field, tr.ambient.dim(d), static_cast<int>(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j) g.set_column(static_cast<int>(j), cols[j]);
        gens[d] = g;
    }
    Subspace rel = Subspace::span(tr.ambient, gens);
    auto [q, proj] = quotient(tr.ambient, rel);
    tr.projection = proj;

    // Section: each quotient label names an ambient basis element.
    tr.section = GradedMap::zero(q, tr.ambient, 0);
    for (int d : q.degrees()) {
        Matrix s(field, tr.ambient.dim(d), q.dim(d));
        for (int j = 0; j < q.dim(d); ++j) {
            const auto& label = q.basis.at(d)[j];
            const auto& amb = tr.ambient.basis.at(d);
            for (int i = 0; i < static_cast<int>(amb.size()); ++i)
                if (amb[i] == label) s.at(i, j) = Scalar::one(field);
        }
        tr.section.blocks[d] = s;
    }

    // d(m (x) n) = d(m) (x) n + (-1)^{|m|} m (x) d(n), on the ambient space.
    GradedMap amb_diff = GradedMap::zero(tr.ambient, tr.ambient, 1);
    {
        Matrix dm = flat_matrix(m.differential), dn = flat_matrix(n.differential);
        Matrix flat(field, tr.ambient.flat_dim(), tr.ambient.flat_dim());
        for (int i = 0; i < m.dim(); ++i)
            for (int j = 0; j < n.dim(); ++j) {
                int src = pf(i, j);
                for (int k = 0; k < m.dim(); ++k)
                    if (!dm.at(k, i).is_zero()) flat.at(pf(k, j), src) += dm.at(k, i);
                bool odd = m.space.degree_of(i) % 2 != 0;
                for (int k = 0; k < n.dim(); ++k)
                    if (!dn.at(k, j).is_zero())
                        flat.at(pf(i, k), src) += odd ? -dn.at(k, j) : dn.at(k, j);
            }
        amb_diff = graded_from_flat(tr.ambient, tr.ambient, 1, flat);
    }
    // The differential must preserve the relation subspace.
    for (const auto& [d, g] : rel.generators)
        for (int j = 0; j < g.cols(); ++j) {
            GradedVec v;
            v.comps[d] = g.column_vec(j);
            if (!proj.apply(amb_diff.apply(v)).is_zero())
                throw std::logic_error("tensor differential does not descend");
        }
    tr.cx = Complex::make(q, compose(proj, compose(amb_diff, tr.section)));
    return tr;
}

/// Tensor of bimodules over the shared middle algebra, with the residual
/// outer actions r.(m(x)n) = (rm)(x)n and (m(x)n).s = m(x)(ns).
inline DGBimodule tensor_bimodules(const DGBimodule& m, const DGBimodule& n) {
    if (m.right_algebra.get() != n.left_algebra.get()) throw SideMismatch();
    TensorResult tr = tensor_over_algebra(m.right_module(), n.left_module());
    DGBimodule out{m.left_algebra, n.right_algebra, tr.cx.space, tr.cx.differential, {}, {}};

    auto pf = [&](int i, int j) { return tr.pair_flat(m.space, n.space, i, j); };
    Matrix proj = flat_matrix(tr.projection), sect = flat_matrix(tr.section);

    auto install = [&](const DGModule& side_mod, bool tensor_left, ActionTable& table) {
        const DGAlgebra& alg = *side_mod.algebra;
        for (int p = 0; p < alg.dim(); ++p) {
            Vec ep = flat_basis_vec(alg.space, p);
            for (int q = 0; q < out.space.flat_dim(); ++q) {
                // lift, act on the appropriate tensor factor, project back
                Vec amb = sect.apply(flat_basis_vec(out.space, q));
                Vec image = flat_zero(tr.ambient);
                for (int i = 0; i < m.dim(); ++i)
                    for (int j = 0; j < n.dim(); ++j) {
                        Scalar c = amb[pf(i, j)];
                        if (c.is_zero()) continue;
                        if (tensor_left) {
                            Vec rm = side_mod.act(ep, flat_basis_vec(m.space, i));
                            for (int k = 0; k < m.dim(); ++k)
                                if (!rm[k].is_zero()) image[pf(k, j)] += c * rm[k];
                        } else {
                            Vec ns = side_mod.act(ep, flat_basis_vec(n.space, j));
                            for (int k = 0; k < n.dim(); ++k)
                                if (!ns[k].is_zero()) image[pf(i, k)] += c * ns[k];
                        }
                    }
                Vec res = proj.apply(image);
                Terms terms;
                for (int k = 0; k < static_cast<int>(res.size()); ++k)
                    if (!res[k].is_zero()) terms.emplace_back(k, res[k]);
                if (!terms.empty()) table[{p, q}] = terms;
            }
        }
    };
    install(m.left_module(), true, out.left_action);
    install(n.right_module(), false, out.right_action);
    return out;
}

/// Linear dual D(M) = Hom_k(M, k): D(M)^n = (M^{-n})*, labels "x*", and
/// d(phi) = -(-1)^{|phi|} phi d.  Module sides flip; the induced actions are
/// (phi.r)(x) = phi(r x) and (s.phi)(x) = phi(x s).
inline GradedSpace dual_space(const GradedSpace& s) {
    GradedSpace out{s.field, {}};
    for (const auto& [d, b] : s.basis) {
        std::vector<std::string> labels;
        for (const auto& l : b) labels.push_back(l + "*");
        if (!labels.empty()) out.basis[-d] = labels;
    }
    return out;
}

inline Complex dual_complex(const Complex& c) {
    GradedSpace ds = dual_space(c.space);
    GradedMap diff = GradedMap::zero(ds, ds, 1);
    for (const auto& [d, b] : c.differential.blocks) {
        // block at dual degree -d-1 maps (M^{d+1})* -> (M^d)*
        Matrix t = b.transposed();
        int n = -d - 1;
        diff.blocks[n] = (n % 2 == 0) ? -t : t;  // -(-1)^n t
    }
    return Complex::make(ds, diff);
}

inline DGModule dualize(const DGModule& m) {
    Complex dc = dual_complex(m.complex());
    DGModule out{m.algebra, m.side == Side::Left ? Side::Right : Side::Left, dc.space,
                 dc.differential, {}};
    // (phi . r)(x) = phi(r x); dual basis transposes the action matrix.
    for (int p = 0; p < m.algebra->dim(); ++p) {
        Vec ep = flat_basis_vec(m.algebra->space, p);
        for (int i = 0; i < m.dim(); ++i) {
            Vec ax = m.act(ep, flat_basis_vec(m.space, i));
            // contributes coefficient ax[j] to (e_j* . r_p) at e_i*
            for (int j = 0; j < m.dim(); ++j) {
                if (ax[j].is_zero()) continue;
                auto [dj, pj] = m.space.degree_pos(j);
                auto [di, pi] = m.space.degree_pos(i);
                int dual_j = out.space.flat_index(-dj, pj);
                int dual_i = out.space.flat_index(-di, pi);
                out.action[{p, dual_j}].emplace_back(dual_i, ax[j]);
            }
        }
    }
    return out;
}

inline DGBimodule dualize(const DGBimodule& b) {
    DGModule dl = dualize(b.left_module());   // right R-module
    DGModule dr = dualize(b.right_module());  // left S-module
    return DGBimodule{b.right_algebra, b.left_algebra, dl.space, dl.differential,
                      dr.action, dl.action};
}

}  // namespace dgt
