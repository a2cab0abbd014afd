#pragma once

#include "dgt/graded.hpp"
#include "dgt/report.hpp"

namespace dgt {

/// A graded space with a degree +1 differential squaring to zero.
/// Cohomological convention throughout: H^i, Sigma shifts degrees down.
struct Complex {
    GradedSpace space;
    GradedMap differential;  // degree +1 endomap of space

    static Complex make(const GradedSpace& space, const GradedMap& diff) {
        Complex c{space, diff};
        if (diff.source != space || diff.target != space || diff.degree != 1)
            throw std::invalid_argument("differential must be a degree +1 endomap");
        if (!compose(diff, diff).is_zero())
            throw std::invalid_argument("differential does not square to zero");
        return c;
    }

    static Complex zero_diff(const GradedSpace& space) {
        return {space, GradedMap::zero(space, space, 1)};
    }

    bool operator==(const Complex& o) const {
        return space == o.space && differential == o.differential;
    }
    bool operator!=(const Complex& o) const { return !(*this == o); }
};

inline Report check_complex(const GradedSpace& space, const GradedMap& diff) {
    Report r;
    if (diff.degree != 1 || diff.source != space || diff.target != space) {
        r.add("differential shape", "axiom", false, "not a degree +1 endomap");
        return r;
    }
    GradedMap sq = compose(diff, diff);
    for (int n : space.degrees()) {
        Matrix b = sq.block(n);
        r.add("d^2 = 0 at degree " + std::to_string(n), "axiom", b.is_zero());
    }
    if (space.degrees().empty()) r.add("d^2 = 0", "axiom", true, "zero complex");
    return r;
}

inline Report check_complex(const Complex& c) {
    return check_complex(c.space, c.differential);
}

/// Degree-0 map commuting with the differentials.
struct ChainMap {
    Complex source, target;
    GradedMap map;  // degree 0

    static ChainMap make(const Complex& src, const Complex& tgt, const GradedMap& f) {
        if (f.degree != 0 || f.source != src.space || f.target != tgt.space)
            throw std::invalid_argument("chain map must be a degree 0 map of the right spaces");
        if (compose(tgt.differential, f) != compose(f, src.differential))
            throw std::invalid_argument("map does not commute with the differentials");
        return {src, tgt, f};
    }

    static ChainMap identity(const Complex& c) {
        return {c, c, GradedMap::identity(c.space)};
    }
    static ChainMap zero(const Complex& src, const Complex& tgt) {
        return {src, tgt, GradedMap::zero(src.space, tgt.space, 0)};
    }
};

inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
    return ChainMap::make(f.source, g.target, compose(g.map, f.map));
}

/// Homology with chosen cycle representatives and a class projection.
struct HomologyData {
    GradedSpace homology;
    std::map<int, Matrix> representatives;  // degree -> columns, cycles in space coords
    std::map<int, Matrix> boundaries;       // degree -> reduced boundary basis

    /// Expresses a cycle as homology-class coordinates.
    Vec class_of(int deg, const Vec& cycle) const {
        FieldSpec field = homology.field;
        int h = homology.dim(deg);
        auto bit = boundaries.find(deg);
        Matrix b = bit == boundaries.end()
                       ? Matrix(field, static_cast<int>(cycle.size()), 0)
                       : bit->second;
        auto rit = representatives.find(deg);
        Matrix reps = rit == representatives.end()
                          ? Matrix(field, static_cast<int>(cycle.size()), 0)
                          : rit->second;
        Matrix br = Matrix::hcat(b, reps);
        auto sol = br.solve(cycle);
        if (!sol) throw std::invalid_argument("vector is not a cycle");
        Vec out(h, Scalar::zero(field));
        for (int i = 0; i < h; ++i) out[i] = (*sol)[b.cols() + i];
        return out;
    }
};

inline HomologyData homology(const Complex& c) {
    HomologyData h;
    h.homology.field = c.space.field;
    for (int n : c.space.degrees()) {
        Matrix z = c.differential.block(n).kernel();
        Matrix b = c.differential.block(n - 1).image().column_reduced();
        // Extend the boundary basis to the cycle space; the added columns
        // represent the homology classes.
        Matrix ext = Matrix::hcat(b, z);
        Matrix red = ext;
        std::vector<int> pivots = red.rref();
        std::vector<Vec> reps;
        for (int p : pivots)
            if (p >= b.cols()) reps.push_back(ext.column_vec(p));
        if (b.cols() > 0) h.boundaries[n] = b;
        if (!reps.empty()) {
            h.representatives[n] =
                Matrix::from_columns(c.space.field, c.space.dim(n), reps);
            std::vector<std::string> labels;
            for (std::size_t i = 0; i < reps.size(); ++i)
                labels.push_back("h" + std::to_string(n) + "." + std::to_string(i));
            h.homology.basis[n] = labels;
        }
    }
    return h;
}

/// (Sigma^n c)^m = c^{m+n}, with the differential scaled by (-1)^n.
inline GradedSpace shift_space(const GradedSpace& s, int n) {
    GradedSpace out{s.field, {}};
    for (const auto& [d, b] : s.basis) out.basis[d - n] = b;
    return out;
}

inline Complex shift(const Complex& c, int n) {
    GradedSpace sp = shift_space(c.space, n);
    GradedMap d{sp, sp, 1, {}};
    for (const auto& [m, b] : c.differential.blocks)
        d.blocks[m - n] = (n % 2 == 0) ? b : -b;
    return Complex{sp, d};
}

/// Sigma^n f = (-1)^{n|f|} f with shifted source and target.
inline GradedMap shift_map(const GradedMap& f, int n) {
    GradedMap out{shift_space(f.source, n), shift_space(f.target, n), f.degree, {}};
    bool flip = (n * f.degree) % 2 != 0;
    for (const auto& [m, b] : f.blocks) out.blocks[m - n] = flip ? -b : b;
    return out;
}

/// Mapping cone of f : X -> Y on Y + Sigma X with differential
/// [[dY, f], [0, -dX]].
struct Cone {
    Complex complex;
    ChainMap inclusion;   // Y -> cone
    GradedMap projection; // cone -> Sigma X, degree 0
    DirectSum sum;        // summand bookkeeping: 0 = Y, 1 = Sigma X
};

inline Cone cone(const ChainMap& f) {
    Complex sx = shift(f.source, 1);
    DirectSum ds = direct_sum({f.target.space, sx.space}, {"t:", "s:"});
    GradedMap d = GradedMap::zero(ds.total, ds.total, 1);
    d = d + compose(ds.inclusions[0], compose(f.target.differential, ds.projections[0]));
    d = d + compose(ds.inclusions[1], compose(sx.differential, ds.projections[1]));
    // The connecting block acts on Sigma X coordinates as f itself.
    GradedMap fblock{sx.space, f.target.space, 1, {}};
    for (const auto& [m, b] : f.map.blocks) fblock.blocks[m - 1] = b;
    d = d + compose(ds.inclusions[0], compose(fblock, ds.projections[1]));
    Complex c = Complex::make(ds.total, d);
    ChainMap incl = ChainMap::make(f.target, c, ds.inclusions[0]);
    return Cone{c, incl, ds.projections[1], ds};
}

inline bool is_exact(const Complex& c) {
    return homology(c).homology.total_dim() == 0;
}

/// The map induced by f on homology, computed through representatives.
inline GradedMap induced_homology_map(const ChainMap& f, const HomologyData& hs,
                                      const HomologyData& ht) {
    GradedMap out{hs.homology, ht.homology, 0, {}};
    for (int n : hs.homology.degrees()) {
        auto rit = hs.representatives.find(n);
        Matrix reps = rit->second;
        Matrix block(f.map.source.field, ht.homology.dim(n), hs.homology.dim(n));
        for (int j = 0; j < reps.cols(); ++j) {
            Vec image = f.map.block(n).apply(reps.column_vec(j));
            Vec cls = ht.class_of(n, image);
            for (int i = 0; i < static_cast<int>(cls.size()); ++i) block.at(i, j) = cls[i];
        }
        out.set_block(n, block);
    }
    return out;
}

inline GradedMap induced_homology_map(const ChainMap& f) {
    return induced_homology_map(f, homology(f.source), homology(f.target));
}

inline bool bijective_in_every_degree(const GradedMap& f) {
    std::set<int> degs;
    for (int d : f.source.degrees()) degs.insert(d);
    for (int d : f.target.degrees()) degs.insert(d - f.degree);
    for (int n : degs) {
        if (f.source.dim(n) != f.target.dim(n + f.degree)) return false;
        Matrix b = f.block(n);
        if (b.rank() != b.rows()) return false;
    }
    return true;
}

/// Decided via the induced map on homology and cross-checked against the
/// exactness of the mapping cone; a disagreement is an internal fault.
inline bool is_quasi_iso(const ChainMap& f) {
    bool by_homology = bijective_in_every_degree(induced_homology_map(f));
    bool by_cone = is_exact(cone(f).complex);
    if (by_homology != by_cone)
        throw std::logic_error("quasi-isomorphism decision routes disagree");
    return by_homology;
}

}  // namespace dgt
