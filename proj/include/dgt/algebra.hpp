#pragma once

#include <memory>

#include "dgt/complex.hpp"

namespace dgt {

using Terms = std::vector<std::pair<int, Scalar>>;  // sparse flat-index vector

/// Dense flat coordinates over a graded space's flat basis enumeration.
inline Vec flat_zero(const GradedSpace& s) {
    return Vec(s.flat_dim(), Scalar::zero(s.field));
}

inline Vec flat_basis_vec(const GradedSpace& s, int i) {
    Vec v = flat_zero(s);
    v[i] = Scalar::one(s.field);
    return v;
}

inline GradedVec to_graded(const GradedSpace& s, const Vec& flat) {
    GradedVec g;
    for (int i = 0; i < s.flat_dim(); ++i) {
        auto [d, p] = s.degree_pos(i);
        auto& slot = g.comps[d];
        if (slot.empty()) slot = Vec(s.dim(d), Scalar::zero(s.field));
        slot[p] = flat[i];
    }
    return g;
}

inline Vec to_flat(const GradedSpace& s, const GradedVec& g) {
    Vec flat = flat_zero(s);
    for (const auto& [d, comp] : g.comps) {
        if (s.dim(d) == 0) {
            for (const auto& x : comp)
                if (!x.is_zero()) throw ShapeMismatch();
            continue;
        }
        for (int p = 0; p < static_cast<int>(comp.size()); ++p)
            flat[s.flat_index(d, p)] = comp[p];
    }
    return flat;
}

/// The matrix of a graded map over flat enumerations.
inline Matrix flat_matrix(const GradedMap& f) {
    Matrix m(f.source.field, f.target.flat_dim(), f.source.flat_dim());
    for (const auto& [n, b] : f.blocks)
        for (int j = 0; j < b.cols(); ++j)
            for (int i = 0; i < b.rows(); ++i)
                if (!b.at(i, j).is_zero())
                    m.at(f.target.flat_index(n + f.degree, i), f.source.flat_index(n, j)) =
                        b.at(i, j);
    return m;
}

/// Rebuilds a graded map from a flat matrix; entries that would cross degrees
/// inconsistently are rejected.
inline GradedMap graded_from_flat(const GradedSpace& src, const GradedSpace& tgt, int degree,
                                  const Matrix& m) {
    GradedMap f{src, tgt, degree, {}};
    std::map<int, Matrix> blocks;
    for (int j = 0; j < m.cols(); ++j) {
        auto [sd, sp] = src.degree_pos(j);
        for (int i = 0; i < m.rows(); ++i) {
            if (m.at(i, j).is_zero()) continue;
            auto [td, tp] = tgt.degree_pos(i);
            if (td != sd + degree)
                throw std::invalid_argument("matrix entry is not degree-homogeneous");
            auto it = blocks.find(sd);
            if (it == blocks.end())
                it = blocks.emplace(sd, Matrix(src.field, tgt.dim(sd + degree), src.dim(sd)))
                         .first;
            it->second.at(tp, sp) = m.at(i, j);
        }
    }
    for (auto& [n, b] : blocks) f.blocks[n] = b;
    return f;
}

/// A DGA given by structure constants over a labelled graded basis.
struct DGAlgebra {
    std::string name;
    GradedSpace space;
    GradedMap differential;                    // degree +1
    Vec unit;                                  // flat coordinates
    std::map<std::pair<int, int>, Terms> mul_table;  // (i, j) -> terms of e_i * e_j

    FieldSpec field() const { return space.field; }
    int dim() const { return space.flat_dim(); }
    int degree_of(int i) const { return space.degree_of(i); }
    const std::string& label_of(int i) const { return space.label_of(i); }

    Complex complex() const { return Complex{space, differential}; }

    Terms basis_product(int i, int j) const {
        auto it = mul_table.find({i, j});
        return it == mul_table.end() ? Terms{} : it->second;
    }

    Vec mul(const Vec& a, const Vec& b) const {
        Vec out = flat_zero(space);
        for (int i = 0; i < dim(); ++i) {
            if (a[i].is_zero()) continue;
            for (int j = 0; j < dim(); ++j) {
                if (b[j].is_zero()) continue;
                for (const auto& [k, c] : basis_product(i, j)) out[k] += a[i] * b[j] * c;
            }
        }
        return out;
    }

    Vec diff(const Vec& a) const { return flat_matrix(differential).apply(a); }
};

/// The ground field as a one-dimensional algebra.
inline DGAlgebra unit_algebra(FieldSpec field, const std::string& name = "k") {
    DGAlgebra a;
    a.name = name;
    a.space = GradedSpace{field, {{0, {"1"}}}};
    a.differential = GradedMap::zero(a.space, a.space, 1);
    a.unit = {Scalar::one(field)};
    a.mul_table[{0, 0}] = {{0, Scalar::one(field)}};
    return a;
}

inline std::string term_witness(const DGAlgebra& a, int i, int j) {
    return a.label_of(i) + "*" + a.label_of(j);
}

/// Axiom suite: grading of products, d^2 = 0, d(1) = 0, unit laws,
/// associativity on all basis triples, Leibniz on all basis pairs.
inline Report check_dga(const DGAlgebra& a) {
    Report r;
    r.append(check_complex(a.space, a.differential));

    bool graded = true;
    std::string gw;
    for (const auto& [key, terms] : a.mul_table)
        for (const auto& [k, c] : terms)
            if (!c.is_zero() &&
                a.degree_of(k) != a.degree_of(key.first) + a.degree_of(key.second)) {
                graded = false;
                gw = term_witness(a, key.first, key.second);
            }
    r.add("products are degree-homogeneous", "axiom", graded, gw);

    r.add("d(1) = 0", "axiom", [&] {
        Vec d = a.diff(a.unit);
        for (const auto& x : d)
            if (!x.is_zero()) return false;
        return true;
    }());

    bool unit_ok = true;
    std::string uw;
    for (int i = 0; i < a.dim() && unit_ok; ++i) {
        Vec e = flat_basis_vec(a.space, i);
        if (a.mul(a.unit, e) != e || a.mul(e, a.unit) != e) {
            unit_ok = false;
            uw = a.label_of(i);
        }
    }
    r.add("unit laws", "axiom", unit_ok, uw);

    bool assoc = true;
    std::string aw;
    for (int i = 0; i < a.dim() && assoc; ++i)
        for (int j = 0; j < a.dim() && assoc; ++j)
            for (int k = 0; k < a.dim() && assoc; ++k) {
                Vec ei = flat_basis_vec(a.space, i), ej = flat_basis_vec(a.space, j),
                    ek = flat_basis_vec(a.space, k);
                if (a.mul(a.mul(ei, ej), ek) != a.mul(ei, a.mul(ej, ek))) {
                    assoc = false;
                    aw = a.label_of(i) + "*" + a.label_of(j) + "*" + a.label_of(k);
                }
            }
    r.add("associativity", "axiom", assoc, aw);

    bool leibniz = true;
    std::string lw;
    for (int i = 0; i < a.dim() && leibniz; ++i)
        for (int j = 0; j < a.dim() && leibniz; ++j) {
            Vec ei = flat_basis_vec(a.space, i), ej = flat_basis_vec(a.space, j);
            Vec lhs = a.diff(a.mul(ei, ej));
            Vec rhs = a.mul(a.diff(ei), ej);
            Vec second = a.mul(ei, a.diff(ej));
            bool odd = a.degree_of(i) % 2 != 0;
            for (std::size_t t = 0; t < rhs.size(); ++t)
                rhs[t] += odd ? -second[t] : second[t];
            if (lhs != rhs) {
                leibniz = false;
                lw = term_witness(a, i, j);
            }
        }
    r.add("Leibniz rule", "axiom", leibniz, lw);
    return r;
}

/// Opposite algebra: same complex and unit, product a.b = (-1)^{|a||b|} b a.
inline DGAlgebra opposite(const DGAlgebra& a) {
    DGAlgebra op = a;
    op.name = a.name + "^op";
    op.mul_table.clear();
    for (const auto& [key, terms] : a.mul_table) {
        auto [i, j] = key;
        bool flip = (a.degree_of(i) * a.degree_of(j)) % 2 != 0;
        Terms out;
        for (const auto& [k, c] : terms) out.emplace_back(k, flip ? -c : c);
        if (!out.empty()) op.mul_table[{j, i}] = out;
    }
    return op;
}

struct DGAMorphism {
    const DGAlgebra* source = nullptr;
    const DGAlgebra* target = nullptr;
    GradedMap map;  // degree 0
};

inline Report check_dga_morphism(const DGAMorphism& f) {
    Report r;
    const DGAlgebra& a = *f.source;
    const DGAlgebra& b = *f.target;
    Matrix fm = flat_matrix(f.map);

    r.add("sends unit to unit", "axiom", fm.apply(a.unit) == b.unit);
    r.add("chain map", "axiom",
          compose(b.differential, f.map) == compose(f.map, a.differential));

    bool multiplicative = true;
    std::string w;
    for (int i = 0; i < a.dim() && multiplicative; ++i)
        for (int j = 0; j < a.dim() && multiplicative; ++j) {
            Vec ei = flat_basis_vec(a.space, i), ej = flat_basis_vec(a.space, j);
            if (fm.apply(a.mul(ei, ej)) != b.mul(fm.apply(ei), fm.apply(ej))) {
                multiplicative = false;
                w = term_witness(a, i, j);
            }
        }
    r.add("multiplicative on basis pairs", "axiom", multiplicative, w);
    return r;
}

inline bool is_dga_quasi_iso(const DGAMorphism& f) {
    ChainMap cm = ChainMap::make(f.source->complex(), f.target->complex(), f.map);
    return is_quasi_iso(cm);
}

}  // namespace dgt
