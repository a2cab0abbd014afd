#pragma once

#include "dgt/algebra.hpp"

namespace dgt {

struct SideMismatch : std::runtime_error {
    SideMismatch() : std::runtime_error("module sides do not match") {}
};

enum class Side { Left, Right };

using AlgebraPtr = std::shared_ptr<const DGAlgebra>;
using ActionTable = std::map<std::pair<int, int>, Terms>;  // (alg flat, mod flat) -> terms

/// One-sided DG-module given by action structure constants.  The action key
/// is always (algebra index, module index); for right modules the entry
/// records m * a.
struct DGModule {
    AlgebraPtr algebra;
    Side side = Side::Left;
    GradedSpace space;
    GradedMap differential;  // degree +1
    ActionTable action;

    FieldSpec field() const { return space.field; }
    int dim() const { return space.flat_dim(); }
    Complex complex() const { return Complex{space, differential}; }

    Terms basis_action(int alg_i, int mod_j) const {
        auto it = action.find({alg_i, mod_j});
        return it == action.end() ? Terms{} : it->second;
    }

    /// a . m for left modules, m . a for right modules.
    Vec act(const Vec& a, const Vec& m) const {
        Vec out = flat_zero(space);
        for (int i = 0; i < algebra->dim(); ++i) {
            if (a[i].is_zero()) continue;
            for (int j = 0; j < dim(); ++j) {
                if (m[j].is_zero()) continue;
                for (const auto& [k, c] : basis_action(i, j)) out[k] += a[i] * m[j] * c;
            }
        }
        return out;
    }

    Vec diff(const Vec& m) const { return flat_matrix(differential).apply(m); }
};

/// Two-sided module; the shared complex carries a left action of R and a
/// right action of S with (r m) s = r (m s).
struct DGBimodule {
    AlgebraPtr left_algebra;
    AlgebraPtr right_algebra;
    GradedSpace space;
    GradedMap differential;
    ActionTable left_action;   // (R index, mod index) -> r . m
    ActionTable right_action;  // (S index, mod index) -> m . s

    FieldSpec field() const { return space.field; }
    int dim() const { return space.flat_dim(); }
    Complex complex() const { return Complex{space, differential}; }

    DGModule left_module() const {
        return {left_algebra, Side::Left, space, differential, left_action};
    }
    DGModule right_module() const {
        return {right_algebra, Side::Right, space, differential, right_action};
    }
};

inline Report check_module(const DGModule& m) {
    Report r;
    r.append(check_complex(m.space, m.differential));
    const DGAlgebra& a = *m.algebra;

    bool graded = true;
    std::string gw;
    for (const auto& [key, terms] : m.action)
        for (const auto& [k, c] : terms)
            if (!c.is_zero() && m.space.degree_of(k) !=
                                    a.degree_of(key.first) + m.space.degree_of(key.second)) {
                graded = false;
                gw = a.label_of(key.first) + " on " + m.space.label_of(key.second);
            }
    r.add("action is degree-homogeneous", "axiom", graded, gw);

    bool unit_ok = true;
    std::string uw;
    for (int j = 0; j < m.dim() && unit_ok; ++j) {
        Vec e = flat_basis_vec(m.space, j);
        if (m.act(a.unit, e) != e) {
            unit_ok = false;
            uw = m.space.label_of(j);
        }
    }
    r.add("unit acts as identity", "axiom", unit_ok, uw);

    bool assoc = true;
    std::string aw;
    for (int i = 0; i < a.dim() && assoc; ++i)
        for (int j = 0; j < a.dim() && assoc; ++j)
            for (int k = 0; k < m.dim() && assoc; ++k) {
                Vec ei = flat_basis_vec(a.space, i), ej = flat_basis_vec(a.space, j);
                Vec ek = flat_basis_vec(m.space, k);
                Vec lhs, rhs;
                if (m.side == Side::Left) {
                    // (ab) m = a (b m)
                    lhs = m.act(a.mul(ei, ej), ek);
                    rhs = m.act(ei, m.act(ej, ek));
                } else {
                    // m (ab) = (m a) b   with act(a, m) = m . a
                    lhs = m.act(a.mul(ei, ej), ek);
                    rhs = m.act(ej, m.act(ei, ek));
                }
                if (lhs != rhs) {
                    assoc = false;
                    aw = a.label_of(i) + "," + a.label_of(j) + " on " + m.space.label_of(k);
                }
            }
    r.add("action associativity", "axiom", assoc, aw);

    bool leibniz = true;
    std::string lw;
    for (int i = 0; i < a.dim() && leibniz; ++i)
        for (int j = 0; j < m.dim() && leibniz; ++j) {
            Vec ei = flat_basis_vec(a.space, i), ej = flat_basis_vec(m.space, j);
            Vec lhs = m.diff(m.act(ei, ej));
            Vec rhs, second;
            bool odd;
            if (m.side == Side::Left) {
                // d(a m) = d(a) m + (-1)^{|a|} a d(m)
                rhs = m.act(a.diff(ei), ej);
                second = m.act(ei, m.diff(ej));
                odd = a.degree_of(i) % 2 != 0;
            } else {
                // d(m a) = d(m) a + (-1)^{|m|} m d(a)
                rhs = m.act(ei, m.diff(ej));
                second = m.act(a.diff(ei), ej);
                odd = m.space.degree_of(j) % 2 != 0;
            }
            for (std::size_t t = 0; t < rhs.size(); ++t)
                rhs[t] += odd ? -second[t] : second[t];
            if (lhs != rhs) {
                leibniz = false;
                lw = a.label_of(i) + " on " + m.space.label_of(j);
            }
        }
    r.add("module Leibniz rule", "axiom", leibniz, lw);
    return r;
}

inline Report check_module(const DGBimodule& b) {
    Report r;
    r.append(check_module(b.left_module()));
    r.append(check_module(b.right_module()));

    DGModule lm = b.left_module(), rm = b.right_module();
    bool compat = true;
    std::string w;
    for (int i = 0; i < b.left_algebra->dim() && compat; ++i)
        for (int j = 0; j < b.right_algebra->dim() && compat; ++j)
            for (int k = 0; k < b.dim() && compat; ++k) {
                Vec r_ = flat_basis_vec(b.left_algebra->space, i);
                Vec s_ = flat_basis_vec(b.right_algebra->space, j);
                Vec m_ = flat_basis_vec(b.space, k);
                if (rm.act(s_, lm.act(r_, m_)) != lm.act(r_, rm.act(s_, m_))) {
                    compat = false;
                    w = b.left_algebra->label_of(i) + "," + b.right_algebra->label_of(j) +
                        " on " + b.space.label_of(k);
                }
            }
    r.add("(r m) s = r (m s)", "axiom", compat, w);
    return r;
}

/// A degree-0 A-linear chain map between modules over the same algebra.
inline bool is_module_chain_map(const DGModule& m, const DGModule& n, const GradedMap& f) {
    if (m.algebra.get() != n.algebra.get() || m.side != n.side) return false;
    if (f.degree != 0 || f.source != m.space || f.target != n.space) return false;
    if (compose(n.differential, f) != compose(f, m.differential)) return false;
    Matrix fm = flat_matrix(f);
    for (int i = 0; i < m.algebra->dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) {
            Vec a = flat_basis_vec(m.algebra->space, i);
            Vec x = flat_basis_vec(m.space, j);
            if (fm.apply(m.act(a, x)) != n.act(a, fm.apply(x))) return false;
        }
    return true;
}

/// The algebra as a module over itself (left regular or right regular).
inline DGModule regular_module(const AlgebraPtr& a, Side side) {
    ActionTable act;
    for (const auto& [key, terms] : a->mul_table) {
        if (side == Side::Left)
            act[{key.first, key.second}] = terms;
        else
            act[{key.second, key.first}] = terms;  // act(a, m) records m . a
    }
    return {a, side, a->space, a->differential, act};
}

/// Free left module on generators of given degrees: a direct sum of shifted
/// copies of the algebra, basis labelled g{k}*{algebra label}.
inline DGModule free_module(const AlgebraPtr& a, const std::vector<int>& generator_degrees) {
    FieldSpec field = a->field();
    GradedSpace space{field, {}};
    int ng = static_cast<int>(generator_degrees.size());
    // flat layout bookkeeping: (generator k, algebra basis i) -> label
    std::map<std::pair<int, int>, std::string> labels;
    for (int k = 0; k < ng; ++k)
        for (int i = 0; i < a->dim(); ++i) {
            int deg = generator_degrees[k] + a->degree_of(i);
            std::string label = "g" + std::to_string(k) + "*" + a->label_of(i);
            space.basis[deg].push_back(label);
            labels[{k, i}] = label;
        }
    auto flat_of = [&](int k, int i) {
        int deg = generator_degrees[k] + a->degree_of(i);
        const auto& bl = space.basis.at(deg);
        for (int p = 0; p < static_cast<int>(bl.size()); ++p)
            if (bl[p] == labels.at({k, i})) return space.flat_index(deg, p);
        throw std::logic_error("free module label lookup failed");
    };

    // d(a g) = d(a) g: generators of a plain free module are cycles.
    GradedMap diff = GradedMap::zero(space, space, 1);
    Matrix dm(field, space.flat_dim(), space.flat_dim());
    Matrix da = flat_matrix(a->differential);
    for (int k = 0; k < ng; ++k)
        for (int i = 0; i < a->dim(); ++i)
            for (int ii = 0; ii < a->dim(); ++ii)
                if (!da.at(ii, i).is_zero()) dm.at(flat_of(k, ii), flat_of(k, i)) = da.at(ii, i);
    diff = graded_from_flat(space, space, 1, dm);

    // b . (a g) = (b a) g
    ActionTable act;
    for (int b = 0; b < a->dim(); ++b)
        for (int k = 0; k < ng; ++k)
            for (int i = 0; i < a->dim(); ++i) {
                Terms out;
                for (const auto& [t, c] : a->basis_product(b, i))
                    out.emplace_back(flat_of(k, t), c);
                if (!out.empty()) act[{b, flat_of(k, i)}] = out;
            }
    return {a, Side::Left, space, diff, act};
}

/// Sigma^n of a module: degrees drop by n, the differential picks up (-1)^n,
/// and a left action picks up (-1)^{n|a|}.  Right actions are unchanged.
inline DGModule shift_module(const DGModule& m, int n) {
    DGModule out = m;
    out.space = shift_space(m.space, n);
    out.differential = GradedMap{out.space, out.space, 1, {}};
    for (const auto& [d, b] : m.differential.blocks)
        out.differential.blocks[d - n] = (n % 2 == 0) ? b : -b;
    if (m.side == Side::Left && n % 2 != 0) {
        out.action.clear();
        for (const auto& [key, terms] : m.action) {
            bool odd = m.algebra->degree_of(key.first) % 2 != 0;
            Terms t;
            for (const auto& [k, c] : terms) t.emplace_back(k, odd ? -c : c);
            out.action[key] = t;
        }
    }
    return out;
}

/// Direct sum of modules over one algebra, with inclusion/projection maps.
struct ModuleSum {
    DGModule total;
    std::vector<GradedMap> inclusions;
    std::vector<GradedMap> projections;
};

inline ModuleSum direct_sum_modules(const std::vector<DGModule>& parts,
                                    const std::vector<std::string>& prefixes = {}) {
    if (parts.empty()) throw std::invalid_argument("direct sum of nothing");
    for (const auto& p : parts) {
        if (p.algebra.get() != parts[0].algebra.get()) throw SideMismatch();
        if (p.side != parts[0].side) throw SideMismatch();
    }
    std::vector<GradedSpace> spaces;
    for (const auto& p : parts) spaces.push_back(p.space);
    DirectSum ds = direct_sum(spaces, prefixes);

    DGModule total{parts[0].algebra, parts[0].side, ds.total,
                   GradedMap::zero(ds.total, ds.total, 1), {}};
    for (std::size_t i = 0; i < parts.size(); ++i)
        total.differential = total.differential +
                             compose(ds.inclusions[i],
                                     compose(parts[i].differential, ds.projections[i]));

    for (std::size_t i = 0; i < parts.size(); ++i) {
        Matrix incl = flat_matrix(ds.inclusions[i]);
        for (const auto& [key, terms] : parts[i].action) {
            Terms out;
            for (const auto& [k, c] : terms) {
                Vec img = incl.apply(flat_basis_vec(parts[i].space, k));
                for (int t = 0; t < static_cast<int>(img.size()); ++t)
                    if (!img[t].is_zero()) out.emplace_back(t, c * img[t]);
            }
            Vec src = incl.apply(flat_basis_vec(parts[i].space, key.second));
            for (int t = 0; t < static_cast<int>(src.size()); ++t)
                if (!src[t].is_zero()) total.action[{key.first, t}] = out;
        }
    }
    return {total, ds.inclusions, ds.projections};
}

/// Mapping cone of an A-linear chain map f : X -> Y of modules, as a module.
struct ModuleCone {
    DGModule module;
    GradedMap inclusion;   // Y -> cone
    GradedMap projection;  // cone -> Sigma X coordinates
    DirectSum sum;
};

inline ModuleCone cone_module(const DGModule& x, const DGModule& y, const GradedMap& f) {
    if (!is_module_chain_map(x, y, f))
        throw std::invalid_argument("cone requires an A-linear chain map");
    DGModule sx = shift_module(x, 1);
    ModuleSum ms = direct_sum_modules({y, sx}, {"t:", "s:"});
    // connecting block: acts on Sigma X coordinates as f itself
    GradedMap fblock{sx.space, y.space, 1, {}};
    for (const auto& [m, b] : f.blocks) fblock.blocks[m - 1] = b;
    DGModule out = ms.total;
    out.differential =
        out.differential + compose(ms.inclusions[0], compose(fblock, ms.projections[1]));
    return {out, ms.inclusions[0], ms.projections[1], {ms.total.space, ms.inclusions, ms.projections}};
}

/// Wraps a one-sided module as a bimodule, the missing side acting through
/// the ground field.
inline DGBimodule with_trivial_right(const DGModule& m, const AlgebraPtr& k) {
    if (m.side != Side::Left) throw SideMismatch();
    DGBimodule out{m.algebra, k, m.space, m.differential, m.action, {}};
    for (int j = 0; j < m.dim(); ++j)
        out.right_action[{0, j}] = {{j, Scalar::one(m.field())}};
    return out;
}

inline DGBimodule with_trivial_left(const DGModule& m, const AlgebraPtr& k) {
    if (m.side != Side::Right) throw SideMismatch();
    DGBimodule out{k, m.algebra, m.space, m.differential, {}, m.action};
    for (int j = 0; j < m.dim(); ++j)
        out.left_action[{0, j}] = {{j, Scalar::one(m.field())}};
    return out;
}

/// Enveloping algebra R (x) S^op with the Koszul-signed product
/// (r (x) s)(r' (x) s') = (-1)^{|s||r'|} (r r' (x) s . s').
inline DGAlgebra enveloping_algebra(const AlgebraPtr& r, const AlgebraPtr& s) {
    if (r->field() != s->field()) throw FieldMismatch();
    DGAlgebra sop = opposite(*s);
    FieldSpec field = r->field();

    DGAlgebra env;
    env.name = r->name + "(x)" + s->name + "^op";
    env.space.field = field;
    std::map<std::pair<int, int>, std::string> labels;
    for (int i = 0; i < r->dim(); ++i)
        for (int j = 0; j < s->dim(); ++j) {
            int deg = r->degree_of(i) + s->degree_of(j);
            std::string label = r->label_of(i) + "(x)" + s->label_of(j);
            env.space.basis[deg].push_back(label);
            labels[{i, j}] = label;
        }
    auto flat_of = [&](int i, int j) {
        int deg = r->degree_of(i) + s->degree_of(j);
        const auto& bl = env.space.basis.at(deg);
        for (int p = 0; p < static_cast<int>(bl.size()); ++p)
            if (bl[p] == labels.at({i, j})) return env.space.flat_index(deg, p);
        throw std::logic_error("enveloping label lookup failed");
    };

    env.unit = flat_zero(env.space);
    for (int i = 0; i < r->dim(); ++i)
        for (int j = 0; j < s->dim(); ++j) {
            Scalar c = r->unit[i] * s->unit[j];
            if (!c.is_zero()) env.unit[flat_of(i, j)] = c;
        }

    // d(r (x) s) = d(r) (x) s + (-1)^{|r|} r (x) d(s)
    Matrix dr = flat_matrix(r->differential), dsm = flat_matrix(s->differential);
    Matrix dm(field, env.space.flat_dim(), env.space.flat_dim());
    for (int i = 0; i < r->dim(); ++i)
        for (int j = 0; j < s->dim(); ++j) {
            int src = flat_of(i, j);
            for (int ii = 0; ii < r->dim(); ++ii)
                if (!dr.at(ii, i).is_zero()) dm.at(flat_of(ii, j), src) += dr.at(ii, i);
            bool odd = r->degree_of(i) % 2 != 0;
            for (int jj = 0; jj < s->dim(); ++jj)
                if (!dsm.at(jj, j).is_zero())
                    dm.at(flat_of(i, jj), src) += odd ? -dsm.at(jj, j) : dsm.at(jj, j);
        }
    env.differential = graded_from_flat(env.space, env.space, 1, dm);

    for (int i = 0; i < r->dim(); ++i)
        for (int j = 0; j < s->dim(); ++j)
            for (int i2 = 0; i2 < r->dim(); ++i2)
                for (int j2 = 0; j2 < s->dim(); ++j2) {
                    bool flip = (s->degree_of(j) * r->degree_of(i2)) % 2 != 0;
                    Terms out;
                    for (const auto& [ri, rc] : r->basis_product(i, i2))
                        for (const auto& [sj, sc] : sop.basis_product(j, j2)) {
                            Scalar c = rc * sc;
                            out.emplace_back(flat_of(ri, sj), flip ? -c : c);
                        }
                    if (!out.empty()) env.mul_table[{flat_of(i, j), flat_of(i2, j2)}] = out;
                }
    return env;
}

/// A bimodule as a left module over the enveloping algebra:
/// (r (x) s) . m = (-1)^{|s||m|} (r m) s.
inline DGModule bimodule_as_left_env(const DGBimodule& b, const AlgebraPtr& env) {
    const DGAlgebra& r = *b.left_algebra;
    const DGAlgebra& s = *b.right_algebra;
    DGModule lm = b.left_module(), rm = b.right_module();
    DGModule out{env, Side::Left, b.space, b.differential, {}};
    for (int e = 0; e < env->dim(); ++e) {
        // recover the (r, s) pair from the label layout of enveloping_algebra
        const std::string& label = env->label_of(e);
        auto pos = label.find("(x)");
        std::string rl = label.substr(0, pos), sl = label.substr(pos + 3);
        int ri = -1, si = -1;
        for (int i = 0; i < r.dim(); ++i)
            if (r.label_of(i) == rl) ri = i;
        for (int j = 0; j < s.dim(); ++j)
            if (s.label_of(j) == sl) si = j;
        if (ri < 0 || si < 0) throw std::logic_error("enveloping label mismatch");
        for (int m = 0; m < b.dim(); ++m) {
            Vec mv = flat_basis_vec(b.space, m);
            Vec rs = rm.act(flat_basis_vec(s.space, si), lm.act(flat_basis_vec(r.space, ri), mv));
            bool flip = (s.degree_of(si) * b.space.degree_of(m)) % 2 != 0;
            Terms terms;
            for (int t = 0; t < static_cast<int>(rs.size()); ++t)
                if (!rs[t].is_zero()) terms.emplace_back(t, flip ? -rs[t] : rs[t]);
            if (!terms.empty()) out.action[{e, m}] = terms;
        }
    }
    return out;
}

/// Reads the bimodule structure back off a left module over R (x) S^op.
inline DGBimodule left_env_as_bimodule(const DGModule& m, const AlgebraPtr& r,
                                       const AlgebraPtr& s) {
    const DGAlgebra& env = *m.algebra;
    DGBimodule out{r, s, m.space, m.differential, {}, {}};
    auto env_index = [&](const std::string& rl, const std::string& sl) {
        std::string label = rl + "(x)" + sl;
        for (int e = 0; e < env.dim(); ++e)
            if (env.label_of(e) == label) return e;
        throw std::logic_error("enveloping label lookup failed");
    };
    // left action: r . m = (r (x) 1) . m -- expand 1 over the S unit
    for (int ri = 0; ri < r->dim(); ++ri)
        for (int j = 0; j < m.dim(); ++j) {
            Vec total = flat_zero(m.space);
            for (int sj = 0; sj < s->dim(); ++sj) {
                if (s->unit[sj].is_zero()) continue;
                Vec part = m.act(flat_basis_vec(env.space, env_index(r->label_of(ri), s->label_of(sj))),
                                 flat_basis_vec(m.space, j));
                for (std::size_t t = 0; t < part.size(); ++t) total[t] += s->unit[sj] * part[t];
            }
            Terms terms;
            for (int t = 0; t < static_cast<int>(total.size()); ++t)
                if (!total[t].is_zero()) terms.emplace_back(t, total[t]);
            if (!terms.empty()) out.left_action[{ri, j}] = terms;
        }
    // right action: m . s = (-1)^{|s||m|} (1 (x) s) . m
    for (int si = 0; si < s->dim(); ++si)
        for (int j = 0; j < m.dim(); ++j) {
            Vec total = flat_zero(m.space);
            for (int rj = 0; rj < r->dim(); ++rj) {
                if (r->unit[rj].is_zero()) continue;
                Vec part = m.act(flat_basis_vec(env.space, env_index(r->label_of(rj), s->label_of(si))),
                                 flat_basis_vec(m.space, j));
                for (std::size_t t = 0; t < part.size(); ++t) total[t] += r->unit[rj] * part[t];
            }
            bool flip = (s->degree_of(si) * m.space.degree_of(j)) % 2 != 0;
            Terms terms;
            for (int t = 0; t < static_cast<int>(total.size()); ++t)
                if (!total[t].is_zero()) terms.emplace_back(t, flip ? -total[t] : total[t]);
            if (!terms.empty()) out.right_action[{si, j}] = terms;
        }
    return out;
}

}  // namespace dgt
