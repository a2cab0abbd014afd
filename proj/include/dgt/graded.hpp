#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dgt/matrix.hpp"

namespace dgt {

struct NotASubspace : std::runtime_error {
    NotASubspace() : std::runtime_error("generators are not contained in the subspace") {}
};

/// Finite-support graded vector space with labelled bases.
struct GradedSpace {
    FieldSpec field;
    std::map<int, std::vector<std::string>> basis;  // degree -> ordered labels

    int dim(int n) const {
        auto it = basis.find(n);
        return it == basis.end() ? 0 : static_cast<int>(it->second.size());
    }
    int total_dim() const {
        int t = 0;
        for (const auto& [d, b] : basis) t += static_cast<int>(b.size());
        return t;
    }
    std::vector<int> degrees() const {
        std::vector<int> ds;
        for (const auto& [d, b] : basis)
            if (!b.empty()) ds.push_back(d);
        return ds;
    }
    bool operator==(const GradedSpace& o) const {
        return field == o.field && basis == o.basis;
    }
    bool operator!=(const GradedSpace& o) const { return !(*this == o); }

    // Flat enumeration, ordered by (degree, position).
    int flat_dim() const { return total_dim(); }
    int flat_index(int deg, int pos) const {
        int idx = 0;
        for (const auto& [d, b] : basis) {
            if (d == deg) return idx + pos;
            idx += static_cast<int>(b.size());
        }
        throw std::out_of_range("degree not present in graded space");
    }
    std::pair<int, int> degree_pos(int flat) const {
        for (const auto& [d, b] : basis) {
            if (flat < static_cast<int>(b.size())) return {d, flat};
            flat -= static_cast<int>(b.size());
        }
        throw std::out_of_range("flat index out of range");
    }
    int degree_of(int flat) const { return degree_pos(flat).first; }
    const std::string& label_of(int flat) const {
        auto [d, p] = degree_pos(flat);
        return basis.at(d)[p];
    }
    void validate_labels() const {
        std::set<std::string> seen;
        for (const auto& [d, b] : basis)
            for (const auto& l : b)
                if (!seen.insert(l).second)
                    throw std::invalid_argument("duplicate basis label '" + l + "'");
    }
};

/// A graded vector: one coordinate column per degree.
struct GradedVec {
    std::map<int, Vec> comps;  // degree -> coordinates in that degree's basis

    static GradedVec zero() { return {}; }
    bool is_zero() const {
        for (const auto& [d, v] : comps)
            for (const auto& x : v)
                if (!x.is_zero()) return false;
        return true;
    }
};

/// Degree-homogeneous linear map between graded spaces, stored blockwise.
struct GradedMap {
    GradedSpace source, target;
    int degree = 0;
    std::map<int, Matrix> blocks;  // source degree n -> matrix into target degree n+degree

    static GradedMap zero(const GradedSpace& src, const GradedSpace& tgt, int deg) {
        return {src, tgt, deg, {}};
    }
    static GradedMap identity(const GradedSpace& s) {
        GradedMap f{s, s, 0, {}};
        for (const auto& [d, b] : s.basis)
            if (!b.empty()) f.blocks[d] = Matrix::identity(s.field, s.dim(d));
        return f;
    }

    Matrix block(int n) const {
        auto it = blocks.find(n);
        if (it != blocks.end()) return it->second;
        return Matrix(source.field, target.dim(n + degree), source.dim(n));
    }
    void set_block(int n, const Matrix& m) {
        if (m.rows() != target.dim(n + degree) || m.cols() != source.dim(n))
            throw ShapeMismatch();
        if (!m.is_zero()) blocks[n] = m;
    }

    bool is_zero() const {
        for (const auto& [n, b] : blocks)
            if (!b.is_zero()) return false;
        return true;
    }

    GradedMap operator+(const GradedMap& o) const {
        if (degree != o.degree || source != o.source || target != o.target)
            throw ShapeMismatch();
        GradedMap out = *this;
        for (const auto& [n, b] : o.blocks) out.set_block_add(n, b);
        return out;
    }
    GradedMap operator-() const {
        GradedMap out = *this;
        for (auto& [n, b] : out.blocks) b = -b;
        return out;
    }
    GradedMap operator-(const GradedMap& o) const { return *this + (-o); }
    GradedMap scaled(const Scalar& c) const {
        GradedMap out = *this;
        for (auto& [n, b] : out.blocks) b = b.scaled(c);
        return out;
    }

    bool operator==(const GradedMap& o) const {
        if (degree != o.degree || source != o.source || target != o.target) return false;
        std::set<int> ns;
        for (const auto& [n, b] : blocks) ns.insert(n);
        for (const auto& [n, b] : o.blocks) ns.insert(n);
        for (int n : ns)
            if (block(n) != o.block(n)) return false;
        return true;
    }
    bool operator!=(const GradedMap& o) const { return !(*this == o); }

    GradedVec apply(const GradedVec& v) const {
        GradedVec out;
        for (const auto& [n, comp] : v.comps) {
            if (source.dim(n) == 0) continue;
            Vec image = block(n).apply(comp);
            bool nonzero = false;
            for (const auto& x : image)
                if (!x.is_zero()) { nonzero = true; break; }
            if (nonzero || target.dim(n + degree) > 0) {
                auto& slot = out.comps[n + degree];
                if (slot.empty()) slot = Vec(target.dim(n + degree), Scalar::zero(source.field));
                for (std::size_t i = 0; i < image.size(); ++i) slot[i] += image[i];
            }
        }
        return out;
    }

private:
    void set_block_add(int n, const Matrix& m) {
        auto it = blocks.find(n);
        if (it == blocks.end())
            blocks[n] = m;
        else
            it->second = it->second + m;
    }
};

/// Blockwise composition g after f.  No Koszul sign: these are plain
/// homogeneous linear maps; signs live in the structures that use them.
inline GradedMap compose(const GradedMap& g, const GradedMap& f) {
    if (f.target != g.source) throw ShapeMismatch();
    GradedMap out{f.source, g.target, f.degree + g.degree, {}};
    for (const auto& [n, fb] : f.blocks) {
        Matrix gb = g.block(n + f.degree);
        Matrix prod = gb * fb;
        if (!prod.is_zero()) out.blocks[n] = prod;
    }
    return out;
}

/// Per-degree subspace of an ambient graded space, in reduced column form.
struct Subspace {
    GradedSpace ambient;
    std::map<int, Matrix> generators;  // degree -> columns, reduced

    static Subspace span(const GradedSpace& ambient, const std::map<int, Matrix>& gens) {
        Subspace s{ambient, {}};
        for (const auto& [d, m] : gens) {
            Matrix red = m.column_reduced();
            if (red.cols() > 0) s.generators[d] = red;
        }
        return s;
    }

    int dim(int n) const {
        auto it = generators.find(n);
        return it == generators.end() ? 0 : it->second.cols();
    }

    bool contains(int deg, const Vec& v) const {
        auto it = generators.find(deg);
        Matrix g = it == generators.end() ? Matrix(ambient.field, ambient.dim(deg), 0)
                                          : it->second;
        return g.solve(v).has_value();
    }

    bool contains(const Subspace& other) const {
        for (const auto& [d, m] : other.generators)
            for (int j = 0; j < m.cols(); ++j)
                if (!contains(d, m.column_vec(j))) return false;
        return true;
    }

    bool operator==(const Subspace& o) const {
        if (ambient != o.ambient) return false;
        std::set<int> ds;
        for (const auto& [d, m] : generators)
            if (m.cols() > 0) ds.insert(d);
        for (const auto& [d, m] : o.generators)
            if (m.cols() > 0) ds.insert(d);
        for (int d : ds) {
            auto a = generators.find(d);
            auto b = o.generators.find(d);
            Matrix ma = a == generators.end() ? Matrix(ambient.field, ambient.dim(d), 0)
                                              : a->second;
            Matrix mb = b == o.generators.end() ? Matrix(ambient.field, ambient.dim(d), 0)
                                                : b->second;
            if (ma != mb) return false;
        }
        return true;
    }
};

/// Per-degree kernel and image, both in reduced column form.
inline std::pair<Subspace, Subspace> kernel_image(const GradedMap& f) {
    std::map<int, Matrix> ker, im;
    for (int n : f.source.degrees()) {
        Matrix b = f.block(n);
        Matrix k = b.kernel();
        if (k.cols() > 0) ker[n] = k;
        Matrix i = b.image();
        if (i.cols() > 0) im[n + f.degree] = i;
    }
    return {Subspace::span(f.source, ker), Subspace::span(f.target, im)};
}

/// Quotient of a graded space by a subspace.  The quotient basis is labelled
/// by the ambient labels whose coordinate vectors complete the subspace to a
/// basis; the returned map is the degree-0 projection.
inline std::pair<GradedSpace, GradedMap> quotient(const GradedSpace& ambient,
                                                  const Subspace& sub) {
    if (sub.ambient != ambient) throw NotASubspace();
    GradedSpace q{ambient.field, {}};
    GradedMap proj{ambient, q, 0, {}};
    std::map<int, Matrix> proj_blocks;
    for (int n : ambient.degrees()) {
        int dim = ambient.dim(n);
        auto it = sub.generators.find(n);
        Matrix g = it == sub.generators.end() ? Matrix(ambient.field, dim, 0) : it->second;
        if (g.column_reduced().cols() != g.cols()) throw NotASubspace();
        // Pick complement coordinates among the standard basis vectors.
        Matrix ext = Matrix::hcat(g, Matrix::identity(ambient.field, dim));
        Matrix red = ext;
        std::vector<int> pivots = red.rref();
        std::vector<int> complement;
        for (int p : pivots)
            if (p >= g.cols()) complement.push_back(p - g.cols());
        std::vector<std::string> labels;
        for (int c : complement) labels.push_back(ambient.basis.at(n)[c]);
        if (!labels.empty()) q.basis[n] = labels;
        if (!complement.empty()) {
            // v = G a + E b; the projection sends v to b.
            Matrix ge(ambient.field, dim, g.cols() + static_cast<int>(complement.size()));
            for (int j = 0; j < g.cols(); ++j) ge.set_column(j, g.column_vec(j));
            for (int j = 0; j < static_cast<int>(complement.size()); ++j) {
                Vec e(dim, Scalar::zero(ambient.field));
                e[complement[j]] = Scalar::one(ambient.field);
                ge.set_column(g.cols() + j, e);
            }
            Matrix inv = *ge.inverse();
            Matrix p(ambient.field, static_cast<int>(complement.size()), dim);
            for (int i = 0; i < p.rows(); ++i)
                for (int j = 0; j < dim; ++j) p.at(i, j) = inv.at(g.cols() + i, j);
            proj_blocks[n] = p;
        }
    }
    proj.target = q;
    for (auto& [n, b] : proj_blocks) proj.blocks[n] = b;
    return {q, proj};
}

/// Direct sum of graded spaces, with the summand inclusions and projections.
struct DirectSum {
    GradedSpace total;
    std::vector<GradedMap> inclusions;
    std::vector<GradedMap> projections;
};

inline DirectSum direct_sum(const std::vector<GradedSpace>& parts,
                            const std::vector<std::string>& prefixes = {}) {
    if (parts.empty()) throw std::invalid_argument("direct sum of nothing");
    FieldSpec field = parts[0].field;
    for (const auto& p : parts)
        if (p.field != field) throw FieldMismatch();

    GradedSpace total{field, {}};
    std::vector<std::map<int, int>> offsets(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::string prefix =
            i < prefixes.size() ? prefixes[i] : std::to_string(i) + ":";
        for (const auto& [d, b] : parts[i].basis) {
            offsets[i][d] = total.dim(d);
            for (const auto& l : b) total.basis[d].push_back(prefix + l);
        }
    }
    DirectSum out{total, {}, {}};
    for (std::size_t i = 0; i < parts.size(); ++i) {
        GradedMap incl{parts[i], total, 0, {}};
        GradedMap proj{total, parts[i], 0, {}};
        for (const auto& [d, b] : parts[i].basis) {
            if (b.empty()) continue;
            int off = offsets[i][d];
            Matrix in(field, total.dim(d), parts[i].dim(d));
            Matrix pr(field, parts[i].dim(d), total.dim(d));
            for (int j = 0; j < parts[i].dim(d); ++j) {
                in.at(off + j, j) = Scalar::one(field);
                pr.at(j, off + j) = Scalar::one(field);
            }
            incl.blocks[d] = in;
            proj.blocks[d] = pr;
        }
        out.inclusions.push_back(incl);
        out.projections.push_back(proj);
    }
    return out;
}

/// Blockwise-diagonal direct sum of maps of equal degree, over the given sums
/// of their sources and targets.
inline GradedMap direct_sum_map(const std::vector<GradedMap>& maps,
                                const DirectSum& src, const DirectSum& tgt) {
    if (maps.empty()) throw std::invalid_argument("direct sum of nothing");
    int deg = maps[0].degree;
    GradedMap out = GradedMap::zero(src.total, tgt.total, deg);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (maps[i].degree != deg) throw ShapeMismatch();
        out = out + compose(tgt.inclusions[i], compose(maps[i], src.projections[i]));
    }
    return out;
}

/// Any preimage of a graded vector under f, or nullopt when unsolvable.
inline std::optional<GradedVec> solve(const GradedMap& f, const GradedVec& target) {
    GradedVec out;
    for (const auto& [n, comp] : target.comps) {
        bool nonzero = false;
        for (const auto& x : comp)
            if (!x.is_zero()) { nonzero = true; break; }
        if (!nonzero) continue;
        int src_deg = n - f.degree;
        auto sol = f.block(src_deg).solve(comp);
        if (!sol) return std::nullopt;
        out.comps[src_deg] = *sol;
    }
    return out;
}

}  // namespace dgt
