#pragma once

#include "dgt/triangular.hpp"

namespace dgt {

struct ResolutionBudgetExceeded : std::runtime_error {
    explicit ResolutionBudgetExceeded(int cap)
        : std::runtime_error("resolution not found within " + std::to_string(cap) +
                             " generators") {}
};

struct DegreeWindowExceeded : std::runtime_error {
    explicit DegreeWindowExceeded(int deg)
        : std::runtime_error("resolution generator left the degree window at degree " +
                             std::to_string(deg)) {}
};

/// Attaching datum of one semifree generator: d(g_k) = sum a_j . g_j over
/// strictly earlier generators, each a_j a flat algebra element.
using Attach = std::vector<std::pair<int, Vec>>;

struct SemifreeModule {
    AlgebraPtr algebra;
    std::vector<std::pair<std::string, int>> generators;  // label, degree
    std::vector<Attach> attach;
    DGModule realized;

    bool filtration_ok() const {
        for (std::size_t k = 0; k < attach.size(); ++k)
            for (const auto& [j, a] : attach[k])
                if (j >= static_cast<int>(k)) return false;
        return true;
    }
};

/// Builds the free layout {a_i g_k} with the attached differential.
inline SemifreeModule realize_semifree(const AlgebraPtr& alg,
                                       const std::vector<std::pair<std::string, int>>& gens,
                                       const std::vector<Attach>& attach) {
    const DGAlgebra& a = *alg;
    FieldSpec field = a.field();
    SemifreeModule out{alg, gens, attach, {}};

    GradedSpace space{field, {}};
    int ng = static_cast<int>(gens.size());
    std::map<std::pair<int, int>, std::string> labels;
    for (int k = 0; k < ng; ++k)
        for (int i = 0; i < a.dim(); ++i) {
            int deg = gens[k].second + a.degree_of(i);
            std::string label = gens[k].first + "*" + a.label_of(i);
            space.basis[deg].push_back(label);
            labels[{k, i}] = label;
        }
    space.validate_labels();
    auto flat_of = [&](int k, int i) {
        int deg = gens[k].second + a.degree_of(i);
        const auto& bl = space.basis.at(deg);
        for (int p = 0; p < static_cast<int>(bl.size()); ++p)
            if (bl[p] == labels.at({k, i})) return space.flat_index(deg, p);
        throw std::logic_error("semifree label lookup failed");
    };

    // action b.(a g) = (b a) g
    ActionTable action;
    for (int b = 0; b < a.dim(); ++b)
        for (int k = 0; k < ng; ++k)
            for (int i = 0; i < a.dim(); ++i) {
                Terms terms;
                for (const auto& [t, c] : a.basis_product(b, i))
                    terms.emplace_back(flat_of(k, t), c);
                if (!terms.empty()) action[{b, flat_of(k, i)}] = terms;
            }

    // d(a g_k) = (d a) g_k + (-1)^{|a|} a . d(g_k)
    Matrix da = flat_matrix(a.differential);
    Matrix dm(field, space.flat_dim(), space.flat_dim());
    for (int k = 0; k < ng; ++k)
        for (int i = 0; i < a.dim(); ++i) {
            int src = flat_of(k, i);
            for (int ii = 0; ii < a.dim(); ++ii)
                if (!da.at(ii, i).is_zero()) dm.at(flat_of(k, ii), src) += da.at(ii, i);
            bool odd = a.degree_of(i) % 2 != 0;
            Vec ei = flat_basis_vec(a.space, i);
            for (const auto& [j, coeff] : attach[k]) {
                Vec prod = a.mul(ei, coeff);  // a . a_j, lands on generator j
                for (int t = 0; t < a.dim(); ++t)
                    if (!prod[t].is_zero())
                        dm.at(flat_of(j, t), src) += odd ? -prod[t] : prod[t];
            }
        }

    out.realized = DGModule{alg, Side::Left, space,
                            graded_from_flat(space, space, 1, dm), action};
    return out;
}

/// The element 1.g_k of the realized space.
inline Vec generator_element(const SemifreeModule& sf, int k) {
    const DGAlgebra& a = *sf.algebra;
    Vec out = flat_zero(sf.realized.space);
    // reconstruct positions by label
    for (int i = 0; i < a.dim(); ++i) {
        if (a.unit[i].is_zero()) continue;
        std::string label = sf.generators[k].first + "*" + a.label_of(i);
        int deg = sf.generators[k].second + a.degree_of(i);
        const auto& bl = sf.realized.space.basis.at(deg);
        for (int p = 0; p < static_cast<int>(bl.size()); ++p)
            if (bl[p] == label) out[sf.realized.space.flat_index(deg, p)] = a.unit[i];
    }
    return out;
}

/// The A-linear extension of g_k -> targets[k] into m.
inline GradedMap semifree_extension(const SemifreeModule& sf, const DGModule& m,
                                    const std::vector<Vec>& targets) {
    const DGAlgebra& a = *sf.algebra;
    FieldSpec field = a.field();
    Matrix eps(field, m.dim(), sf.realized.dim());
    for (int k = 0; k < static_cast<int>(sf.generators.size()); ++k)
        for (int i = 0; i < a.dim(); ++i) {
            std::string label = sf.generators[k].first + "*" + a.label_of(i);
            int deg = sf.generators[k].second + a.degree_of(i);
            const auto& bl = sf.realized.space.basis.at(deg);
            int flat = -1;
            for (int p = 0; p < static_cast<int>(bl.size()); ++p)
                if (bl[p] == label) flat = sf.realized.space.flat_index(deg, p);
            Vec img = m.act(flat_basis_vec(a.space, i), targets[k]);
            eps.set_column(flat, img);
        }
    return graded_from_flat(sf.realized.space, m.space, 0, eps);
}

struct ResolutionResult {
    SemifreeModule resolution;
    GradedMap augmentation;  // realized -> m, degree 0, A-linear quasi-iso
    std::vector<int> generators_per_stage;
};

struct ResolutionCaps {
    int max_generators = 64;
    int degree_lo = -16;
    int degree_hi = 16;
};

/// Tries to read m itself as semifree on a subset of its basis.
inline std::optional<SemifreeModule> try_as_semifree(const DGModule& m) {
    const DGAlgebra& a = *m.algebra;
    FieldSpec field = m.field();
    struct Cand {
        Vec v;
        int degree;
        std::string label;
    };
    std::vector<Cand> chosen;
    std::map<int, Matrix> span;  // degree -> columns of the A-span so far
    int span_dim = 0;
    auto in_span = [&](int deg, const Vec& v) {
        auto it = span.find(deg);
        if (it == span.end()) {
            for (const auto& x : v)
                if (!x.is_zero()) return false;
            return true;
        }
        return it->second.solve(v).has_value();
    };
    auto add_to_span = [&](const Vec& flat_elem) {
        for (int i = 0; i < a.dim(); ++i) {
            Vec img = m.act(flat_basis_vec(a.space, i), flat_elem);
            GradedVec g = to_graded(m.space, img);
            for (auto& [d, comp] : g.comps) {
                bool nz = false;
                for (const auto& x : comp)
                    if (!x.is_zero()) nz = true;
                if (!nz) continue;
                auto it = span.find(d);
                Matrix cur = it == span.end() ? Matrix(field, m.space.dim(d), 0) : it->second;
                if (cur.solve(comp).has_value()) continue;
                Matrix wider(field, cur.rows(), cur.cols() + 1);
                for (int c = 0; c < cur.cols(); ++c) wider.set_column(c, cur.column_vec(c));
                wider.set_column(cur.cols(), comp);
                span[d] = wider.column_reduced();
                span_dim += 1;
            }
        }
    };

    Matrix dm = flat_matrix(m.differential);

    // Candidate generators: basis vectors, and sums of two basis vectors in
    // one degree.  The sums catch free modules over algebras whose unit is a
    // sum of idempotents, where no single basis vector generates a free copy.
    std::vector<Cand> pool;
    for (int j = 0; j < m.dim(); ++j)
        pool.push_back({flat_basis_vec(m.space, j), m.space.degree_of(j),
                        m.space.label_of(j)});
    for (int i = 0; i < m.dim(); ++i)
        for (int j = i + 1; j < m.dim(); ++j) {
            if (m.space.degree_of(i) != m.space.degree_of(j)) continue;
            Vec v = flat_basis_vec(m.space, i);
            Vec w = flat_basis_vec(m.space, j);
            for (std::size_t t = 0; t < v.size(); ++t) v[t] += w[t];
            pool.push_back({v, m.space.degree_of(i),
                            m.space.label_of(i) + "+" + m.space.label_of(j)});
        }

    bool progress = true;
    while (progress && span_dim < m.dim()) {
        progress = false;
        for (const Cand& cand : pool) {
            GradedVec gj = to_graded(m.space, cand.v);
            if (in_span(cand.degree, gj.comps.at(cand.degree))) continue;
            Vec dj = dm.apply(cand.v);
            GradedVec gdj = to_graded(m.space, dj);
            bool diff_ok = true;
            for (auto& [dd, comp] : gdj.comps)
                if (!in_span(dd, comp)) diff_ok = false;
            if (!diff_ok) continue;
            // trial with rollback: the candidate must generate a free copy
            auto saved_span = span;
            int before = span_dim;
            add_to_span(cand.v);
            if (span_dim - before != a.dim()) {
                span = saved_span;
                span_dim = before;
                continue;
            }
            chosen.push_back(cand);
            progress = true;
        }
    }
    if (span_dim != m.dim()) return std::nullopt;

    // attach data: solve d(g_k) over the earlier generators
    SemifreeModule sf{m.algebra, {}, {}, m};
    for (std::size_t k = 0; k < chosen.size(); ++k) {
        sf.generators.emplace_back(chosen[k].label, chosen[k].degree);
        Vec target = dm.apply(chosen[k].v);
        // columns: a_i . g_j for j < k
        int ncols = static_cast<int>(k) * a.dim();
        Matrix cols(field, m.dim(), ncols);
        for (std::size_t j = 0; j < k; ++j)
            for (int i = 0; i < a.dim(); ++i)
                cols.set_column(static_cast<int>(j) * a.dim() + i,
                                m.act(flat_basis_vec(a.space, i), chosen[j].v));
        auto sol = ncols == 0 ? std::optional<Vec>{} : cols.solve(target);
        bool target_zero = true;
        for (const auto& x : target)
            if (!x.is_zero()) target_zero = false;
        if (ncols == 0 && !target_zero) return std::nullopt;
        Attach at;
        if (!target_zero) {
            if (!sol) return std::nullopt;
            for (std::size_t j = 0; j < k; ++j) {
                Vec coeff = flat_zero(a.space);
                bool nz = false;
                for (int i = 0; i < a.dim(); ++i) {
                    coeff[i] = (*sol)[static_cast<int>(j) * a.dim() + i];
                    if (!coeff[i].is_zero()) nz = true;
                }
                if (nz) at.emplace_back(static_cast<int>(j), coeff);
            }
        }
        sf.attach.push_back(at);
    }
    return sf;
}

inline ResolutionResult semifree_resolution(const DGModule& m, const ResolutionCaps& caps = {}) {
    FieldSpec field = m.field();
    if (m.side != Side::Left) throw SideMismatch();

    if (auto fast = try_as_semifree(m)) {
        ResolutionResult out{*fast, GradedMap::identity(m.space), {}};
        return out;
    }

    std::vector<std::pair<std::string, int>> gens;
    std::vector<Attach> attach;
    std::vector<Vec> targets;  // augmentation images in m
    std::vector<int> per_stage;
    int counter = 0;

    // stage 0: one generator per homology class of m
    HomologyData hm = homology(m.complex());
    for (const auto& [d, reps] : hm.representatives) {
        if (d < caps.degree_lo || d > caps.degree_hi) throw DegreeWindowExceeded(d);
        for (int c = 0; c < reps.cols(); ++c) {
            gens.emplace_back("q" + std::to_string(counter), d);
            attach.push_back({});
            GradedVec gv;
            gv.comps[d] = reps.column_vec(c);
            targets.push_back(to_flat(m.space, gv));
            ++counter;
        }
    }
    per_stage.push_back(counter);

    while (true) {
        if (counter > caps.max_generators) throw ResolutionBudgetExceeded(caps.max_generators);
        SemifreeModule sf = realize_semifree(m.algebra, gens, attach);
        GradedMap eps = semifree_extension(sf, m, targets);
        ChainMap cm = ChainMap::make(sf.realized.complex(), m.complex(), eps);
        Cone cn = cone(cm);
        HomologyData hc = homology(cn.complex);
        if (hc.homology.total_dim() == 0) {
            if (!is_module_chain_map(sf.realized, m, eps))
                throw std::logic_error("augmentation is not module-linear");
            if (!is_quasi_iso(cm)) throw std::logic_error("exact cone but not a quasi-iso");
            ResolutionResult out{sf, eps, per_stage};
            return out;
        }

        // kill every homology class of the cone: class (x, y) with x in m,
        // y in the realized module one degree up; new generator g with
        // d(g) = y and augmentation -x
        int added = 0;
        for (const auto& [d, reps] : hc.representatives) {
            if (d < caps.degree_lo || d > caps.degree_hi) throw DegreeWindowExceeded(d);
            for (int c = 0; c < reps.cols(); ++c) {
                GradedVec w;
                w.comps[d] = reps.column_vec(c);
                // split through the cone projections
                GradedVec xm, yf;
                {
                    // inclusion: m -> cone, projection: cone -> shift(F)
                    // x = the m-part: solve incl * x = w - incl_sigma * y
                    GradedVec ypart = cn.projection.apply(w);
                    // ypart lives in (Sigma F)^d = F^{d+1}
                    yf = ypart;
                    // subtract the Sigma-part embedding to recover the m part
                    GradedVec back = cn.sum.inclusions[1].apply(ypart);
                    GradedVec diff = w;
                    for (auto& [dd, comp] : back.comps) {
                        auto it = diff.comps.find(dd);
                        if (it == diff.comps.end())
                            it = diff.comps.emplace(dd, Vec(comp.size(), Scalar::zero(field))).first;
                        for (std::size_t i = 0; i < comp.size(); ++i)
                            it->second[i] -= comp[i];
                    }
                    xm = cn.sum.projections[0].apply(diff);
                }
                if (counter >= caps.max_generators)
                    throw ResolutionBudgetExceeded(caps.max_generators);

                gens.emplace_back("q" + std::to_string(counter), d);
                // y is a flat element of F: reindex (Sigma F)^d = F^{d+1},
                // then express as sum a_j . g_j
                GradedVec yF;
                for (const auto& [dd, comp] : yf.comps) yF.comps[dd + 1] = comp;
                Vec yflat = to_flat(sf.realized.space, yF);
                Attach at;
                bool ynz = false;
                for (const auto& x : yflat)
                    if (!x.is_zero()) ynz = true;
                if (ynz) {
                    const DGAlgebra& a = *m.algebra;
                    // y lies in the module realized before this stage, so it
                    // decomposes over the generators known to sf only
                    std::size_t known = sf.generators.size();
                    int ncols = static_cast<int>(known) * a.dim();
                    Matrix cols(field, sf.realized.dim(), ncols);
                    for (std::size_t j = 0; j < known; ++j) {
                        Vec gj = generator_element(sf, static_cast<int>(j));
                        for (int i = 0; i < a.dim(); ++i)
                            cols.set_column(static_cast<int>(j) * a.dim() + i,
                                            sf.realized.act(flat_basis_vec(a.space, i), gj));
                    }
                    auto sol = cols.solve(yflat);
                    if (!sol) throw std::logic_error("cone cycle not A-decomposable");
                    for (std::size_t j = 0; j < known; ++j) {
                        Vec coeff = flat_zero(a.space);
                        bool nz = false;
                        for (int i = 0; i < a.dim(); ++i) {
                            coeff[i] = (*sol)[static_cast<int>(j) * a.dim() + i];
                            if (!coeff[i].is_zero()) nz = true;
                        }
                        if (nz) at.emplace_back(static_cast<int>(j), coeff);
                    }
                }
                attach.push_back(at);
                Vec xflat = to_flat(m.space, xm);
                for (auto& v : xflat) v = -v;
                targets.push_back(xflat);
                ++counter;
                ++added;
            }
        }
        per_stage.push_back(added);
    }
}

/// Resolves a bimodule as a left module over R (x) S^op; the restriction to
/// R stays K-projective because the enveloping algebra is free over R.
struct BimoduleReplacement {
    AlgebraPtr enveloping;
    DGBimodule v;
    GradedMap augmentation;  // v -> m, a bimodule quasi-iso
    ResolutionResult inner;
};

inline BimoduleReplacement bimodule_replacement(const DGBimodule& m,
                                                const ResolutionCaps& caps = {}) {
    auto env = std::make_shared<DGAlgebra>(enveloping_algebra(m.left_algebra, m.right_algebra));
    DGModule menv = bimodule_as_left_env(m, env);
    ResolutionResult res = semifree_resolution(menv, caps);
    DGBimodule v = left_env_as_bimodule(res.resolution.realized, m.left_algebra,
                                        m.right_algebra);
    return {env, v, res.augmentation, res};
}

/// Witness-based certificate: Hom(u, w) exact for the supplied exact modules.
inline Report kprojectivity_spot_check(const DGModule& u,
                                       const std::vector<DGModule>& witnesses) {
    Report rep;
    for (std::size_t i = 0; i < witnesses.size(); ++i) {
        HomComplex hc = hom_complex(u, witnesses[i]);
        rep.add("Hom into exact witness " + std::to_string(i) + " is exact", "exactness",
                is_exact(hc.cx));
    }
    return rep;
}

}  // namespace dgt
