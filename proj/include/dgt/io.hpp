#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dgt/tilt.hpp"

namespace dgt {

inline ParseError parse_error(int line, const std::string& what) {
    return ParseError("parse error (line " + std::to_string(line) + "): " + what);
}

struct SemanticError : std::runtime_error {
    int line;
    SemanticError(int ln, const std::string& what)
        : std::runtime_error("semantic error (line " + std::to_string(ln) + "): " + what),
          line(ln) {}
};

struct UnresolvedReference : std::runtime_error {
    explicit UnresolvedReference(const std::string& ref)
        : std::runtime_error("unresolved reference: " + ref) {}
};

struct ProblemSection {
    std::string R, S, M, X;  // reference strings as written (NAME or file:PATH[#NAME])
    int max_generators = 64;
    int degree_lo = -16, degree_hi = 16;
};

struct SourceFile {
    std::vector<std::pair<std::string, std::string>> order;  // (kind, name)
    std::map<std::string, AlgebraPtr> algebras;
    std::map<std::string, DGModule> modules;
    std::map<std::string, DGBimodule> bimodules;
    std::map<std::string, ProblemSection> problem_sections;
    std::map<std::string, TiltProblem> problems;
};

namespace io_detail {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
        ++n;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        Line line{n, {}};
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) out.push_back(std::move(line));
    }
    return out;
}

inline int parse_int(const std::string& s, int line) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw parse_error(line, "expected an integer, got '" + s + "'");
    }
}

inline std::map<std::string, int> label_index(const GradedSpace& sp) {
    std::map<std::string, int> out;
    for (int i = 0; i < sp.flat_dim(); ++i) out[sp.label_of(i)] = i;
    return out;
}

/// COEFF LABEL [+ COEFF LABEL ...], or a lone 0.
inline std::vector<std::pair<Scalar, std::string>> parse_combo(
    const std::vector<std::string>& toks, std::size_t from, FieldSpec field, int line) {
    std::vector<std::pair<Scalar, std::string>> out;
    if (from >= toks.size()) throw parse_error(line, "missing right-hand side");
    if (toks.size() == from + 1 && toks[from] == "0") return out;
    std::size_t i = from;
    while (i < toks.size()) {
        if (i + 1 >= toks.size()) throw parse_error(line, "dangling coefficient");
        Scalar c;
        try {
            c = Scalar::parse(toks[i], field);
        } catch (const std::exception& ex) {
            throw parse_error(line, std::string("bad coefficient '") + toks[i] + "': " + ex.what());
        }
        out.emplace_back(c, toks[i + 1]);
        i += 2;
        if (i < toks.size()) {
            if (toks[i] != "+") throw parse_error(line, "expected '+' between terms");
            ++i;
        }
    }
    return out;
}

inline std::pair<std::string, std::string> split_star(const std::string& s, int line) {
    auto pos = s.find('*');
    if (pos == std::string::npos || pos == 0 || pos + 1 == s.size())
        throw parse_error(line, "expected LABEL*LABEL, got '" + s + "'");
    return {s.substr(0, pos), s.substr(pos + 1)};
}

/// Labels may themselves contain '*' (dualized bases), so try every split
/// position against the two label tables.
inline std::pair<int, int> split_known(const std::string& s,
                                       const std::map<std::string, int>& first,
                                       const std::map<std::string, int>& second, int line) {
    for (std::size_t pos = 1; pos + 1 < s.size() + 1; ++pos) {
        if (s[pos] != '*') continue;
        auto a = first.find(s.substr(0, pos));
        auto b = second.find(s.substr(pos + 1));
        if (a != first.end() && b != second.end()) return {a->second, b->second};
    }
    throw SemanticError(line, "cannot resolve '" + s + "' against the bases");
}

inline Vec combo_to_vec(const std::vector<std::pair<Scalar, std::string>>& combo,
                        const GradedSpace& sp, const std::map<std::string, int>& idx,
                        int line, const std::string& what) {
    Vec v = flat_zero(sp);
    for (const auto& [c, label] : combo) {
        auto it = idx.find(label);
        if (it == idx.end())
            throw SemanticError(line, what + " references unknown basis label '" + label + "'");
        v[it->second] += c;
    }
    return v;
}

inline Terms vec_to_terms(const Vec& v) {
    Terms out;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (!v[i].is_zero()) out.emplace_back(i, v[i]);
    return out;
}

struct RawSection {
    std::string kind, name;
    int line = 0;
    std::vector<Line> body;
};

inline std::vector<RawSection> split_sections(const std::vector<Line>& lines) {
    std::vector<RawSection> out;
    for (const auto& line : lines) {
        const std::string& t0 = line.tokens.front();
        if (t0.front() == '[') {
            std::string joined;
            for (const auto& t : line.tokens) joined += (joined.empty() ? "" : " ") + t;
            if (joined.back() != ']') throw parse_error(line.number, "unterminated section header");
            std::istringstream hs(joined.substr(1, joined.size() - 2));
            RawSection sec;
            sec.line = line.number;
            if (!(hs >> sec.kind >> sec.name))
                throw parse_error(line.number, "section header needs KIND and NAME");
            std::string extra;
            if (hs >> extra) throw parse_error(line.number, "trailing text in section header");
            if (sec.kind != "algebra" && sec.kind != "module" && sec.kind != "bimodule" &&
                sec.kind != "problem")
                throw parse_error(line.number, "unknown section kind '" + sec.kind + "'");
            out.push_back(std::move(sec));
        } else {
            if (out.empty()) throw parse_error(line.number, "directive before any section header");
            out.back().body.push_back(line);
        }
    }
    return out;
}

struct BasisBuilder {
    GradedSpace space;
    std::set<std::string> seen;

    void add(const std::string& entry, int line) {
        auto pos = entry.rfind(':');
        if (pos == std::string::npos || pos == 0 || pos + 1 == entry.size())
            throw parse_error(line, "expected LABEL:DEGREE, got '" + entry + "'");
        std::string label = entry.substr(0, pos);
        int degree = parse_int(entry.substr(pos + 1), line);
        if (!seen.insert(label).second)
            throw parse_error(line, "duplicate basis label '" + label + "'");
        space.basis[degree].push_back(label);
    }
};

inline void check_term_degrees(const GradedSpace& sp, const std::map<std::string, int>& idx,
                               const std::vector<std::pair<Scalar, std::string>>& combo,
                               int expected, int line, const std::string& what) {
    for (const auto& [c, label] : combo) {
        auto it = idx.find(label);
        if (it == idx.end())
            throw SemanticError(line, what + " references unknown basis label '" + label + "'");
        if (sp.degree_of(it->second) != expected)
            throw SemanticError(line, what + ": term '" + label + "' has degree " +
                                          std::to_string(sp.degree_of(it->second)) +
                                          ", expected " + std::to_string(expected));
    }
}

}  // namespace io_detail

inline SourceFile parse_source(const std::string& text, const std::string& origin_dir = "");

inline SourceFile parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(0, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_source(buf.str(), std::filesystem::path(path).parent_path().string());
}

namespace io_detail {

/// NAME within this file, or file:PATH[#NAME] loading another file.
template <typename Map>
const typename Map::mapped_type& resolve_ref(const Map& local, const std::string& ref,
                                             const std::string& kind, const std::string& dir,
                                             std::vector<SourceFile>& keep_alive) {
    if (ref.rfind("file:", 0) == 0) {
        std::string rest = ref.substr(5);
        std::string want;
        auto hash = rest.find('#');
        if (hash != std::string::npos) {
            want = rest.substr(hash + 1);
            rest = rest.substr(0, hash);
        }
        std::filesystem::path p(rest);
        if (p.is_relative() && !dir.empty()) p = std::filesystem::path(dir) / p;
        keep_alive.push_back(parse_file(p.string()));
        const SourceFile& sub = keep_alive.back();
        const Map* submap = nullptr;
        if constexpr (std::is_same_v<typename Map::mapped_type, AlgebraPtr>)
            submap = &sub.algebras;
        else if constexpr (std::is_same_v<typename Map::mapped_type, DGModule>)
            submap = &sub.modules;
        else
            submap = &sub.bimodules;
        if (!want.empty()) {
            auto it = submap->find(want);
            if (it == submap->end()) throw UnresolvedReference(ref);
            return it->second;
        }
        if (submap->size() != 1)
            throw UnresolvedReference(ref + " (file does not contain exactly one " + kind + ")");
        return submap->begin()->second;
    }
    auto it = local.find(ref);
    if (it == local.end()) throw UnresolvedReference(ref);
    return it->second;
}

}  // namespace io_detail

inline SourceFile parse_source(const std::string& text, const std::string& origin_dir) {
    using namespace io_detail;
    SourceFile sf;
    std::vector<RawSection> sections = split_sections(tokenize(text));
    std::set<std::string> names;
    std::optional<FieldSpec> file_field;
    std::vector<SourceFile> keep_alive;  // referenced files; objects held via shared ptrs

    auto note_field = [&](FieldSpec f, int line) {
        if (file_field && *file_field != f)
            throw SemanticError(line, "field " + f.str() + " conflicts with earlier " +
                                          file_field->str());
        file_field = f;
    };

    for (const auto& sec : sections) {
        if (!names.insert(sec.name).second)
            throw parse_error(sec.line, "duplicate section name '" + sec.name + "'");
        sf.order.emplace_back(sec.kind, sec.name);

        if (sec.kind == "problem") {
            ProblemSection ps;
            for (const auto& line : sec.body) {
                const auto& t = line.tokens;
                if (t.size() >= 3 && t[1] == "=" &&
                    (t[0] == "R" || t[0] == "S" || t[0] == "M" || t[0] == "X")) {
                    if (t.size() != 3) throw parse_error(line.number, "expected KEY = REF");
                    (t[0] == "R"   ? ps.R
                     : t[0] == "S" ? ps.S
                     : t[0] == "M" ? ps.M
                                   : ps.X) = t[2];
                } else if (t[0] == "max_generators" && t.size() == 2) {
                    ps.max_generators = parse_int(t[1], line.number);
                } else if (t[0] == "degree_window" && t.size() == 2) {
                    auto pos = t[1].find(':');
                    if (pos == std::string::npos)
                        throw parse_error(line.number, "degree_window wants LO:HI");
                    ps.degree_lo = parse_int(t[1].substr(0, pos), line.number);
                    ps.degree_hi = parse_int(t[1].substr(pos + 1), line.number);
                } else {
                    throw parse_error(line.number, "unknown problem directive '" + t[0] + "'");
                }
            }
            if (ps.R.empty() || ps.S.empty() || ps.M.empty())
                throw SemanticError(sec.line, "problem needs R, S and M");
            sf.problem_sections[sec.name] = ps;

            TiltProblem prob;
            prob.name = sec.name;
            prob.R = resolve_ref(sf.algebras, ps.R, "algebra", origin_dir, keep_alive);
            prob.S = resolve_ref(sf.algebras, ps.S, "algebra", origin_dir, keep_alive);
            prob.M = resolve_ref(sf.bimodules, ps.M, "bimodule", origin_dir, keep_alive);
            if (prob.M.left_algebra.get() != prob.R.get() ||
                prob.M.right_algebra.get() != prob.S.get())
                throw SemanticError(sec.line, "M is not a bimodule over the given R and S");
            if (!ps.X.empty()) {
                const DGModule& x = resolve_ref(sf.modules, ps.X, "module", origin_dir,
                                                keep_alive);
                if (x.algebra.get() != prob.R.get() || x.side != Side::Left)
                    throw SemanticError(sec.line, "X is not a left module over R");
                prob.X = x;
            }
            prob.caps.max_generators = ps.max_generators;
            prob.caps.degree_lo = ps.degree_lo;
            prob.caps.degree_hi = ps.degree_hi;
            sf.problems.emplace(sec.name, std::move(prob));
            continue;
        }

        // common directives for algebra / module / bimodule
        std::optional<FieldSpec> field;
        BasisBuilder basis;
        std::string over, rightover;
        std::vector<std::pair<Line, std::size_t>> combos_mul, combos_diff, combos_unit,
            combos_act, combos_ract;
        for (const auto& line : sec.body) {
            const auto& t = line.tokens;
            if (t[0] == "field") {
                if (t.size() == 2 && t[1] == "Q") field = FieldSpec::rationals();
                else if (t.size() == 3 && t[1] == "Fp")
                    field = FieldSpec::prime(parse_int(t[2], line.number));
                else throw parse_error(line.number, "field wants 'Q' or 'Fp P'");
                note_field(*field, line.number);
            } else if (t[0] == "basis") {
                if (t.size() < 2) throw parse_error(line.number, "empty basis directive");
                for (std::size_t i = 1; i < t.size(); ++i) basis.add(t[i], line.number);
            } else if (t[0] == "over" && t.size() == 2) {
                over = t[1];
            } else if (t[0] == "rightover" && t.size() == 2) {
                rightover = t[1];
            } else if (t[0] == "unit") {
                combos_unit.emplace_back(line, 1);
            } else if ((t[0] == "mul" || t[0] == "diff" || t[0] == "act" || t[0] == "ract")) {
                if (t.size() < 3 || t[2] != "=")
                    throw parse_error(line.number, t[0] + " wants 'KEY = combination'");
                (t[0] == "mul"    ? combos_mul
                 : t[0] == "diff" ? combos_diff
                 : t[0] == "act"  ? combos_act
                                  : combos_ract)
                    .emplace_back(line, 3);
            } else {
                throw parse_error(line.number, "unknown directive '" + t[0] + "'");
            }
        }

        if (sec.kind == "algebra") {
            if (!field) throw SemanticError(sec.line, "algebra needs a field directive");
            if (!over.empty() || !rightover.empty() || !combos_act.empty() || !combos_ract.empty())
                throw parse_error(sec.line, "algebra sections take no over/act directives");
            GradedSpace sp = basis.space;
            sp.field = *field;
            auto idx = label_index(sp);
            auto a = std::make_shared<DGAlgebra>();
            a->name = sec.name;
            a->space = sp;
            a->unit = flat_zero(sp);
            bool unit_seen = false;
            for (const auto& [line, from] : combos_unit) {
                auto combo = parse_combo(line.tokens, from, *field, line.number);
                check_term_degrees(sp, idx, combo, 0, line.number, "unit");
                a->unit = combo_to_vec(combo, sp, idx, line.number, "unit");
                unit_seen = true;
            }
            if (!unit_seen) throw SemanticError(sec.line, "algebra needs a unit directive");
            Matrix d(*field, sp.flat_dim(), sp.flat_dim());
            for (const auto& [line, from] : combos_diff) {
                auto it = idx.find(line.tokens[1]);
                if (it == idx.end())
                    throw SemanticError(line.number,
                                        "diff of unknown label '" + line.tokens[1] + "'");
                auto combo = parse_combo(line.tokens, from, *field, line.number);
                check_term_degrees(sp, idx, combo, sp.degree_of(it->second) + 1, line.number,
                                   "diff " + line.tokens[1]);
                d.set_column(it->second, combo_to_vec(combo, sp, idx, line.number, "diff"));
            }
            a->differential = graded_from_flat(sp, sp, 1, d);
            for (const auto& [line, from] : combos_mul) {
                auto [ia, ib] = split_known(line.tokens[1], idx, idx, line.number);
                auto combo = parse_combo(line.tokens, from, *field, line.number);
                check_term_degrees(sp, idx, combo, sp.degree_of(ia) + sp.degree_of(ib),
                                   line.number, "mul " + line.tokens[1]);
                Terms terms = vec_to_terms(combo_to_vec(combo, sp, idx, line.number, "mul"));
                if (!terms.empty()) a->mul_table[{ia, ib}] = terms;
            }
            Report axioms = check_dga(*a);
            if (!axioms.ok())
                throw SemanticError(sec.line,
                                    "algebra '" + sec.name + "' fails the axioms:\n" +
                                        axioms.render());
            sf.algebras[sec.name] = a;
            continue;
        }

        // module or bimodule
        bool is_bimodule = sec.kind == "bimodule";
        if (is_bimodule && (over.empty() || rightover.empty()))
            throw SemanticError(sec.line, "bimodule needs over and rightover");
        if (!is_bimodule && (over.empty() == rightover.empty()))
            throw SemanticError(sec.line, "module needs exactly one of over / rightover");
        AlgebraPtr left_alg, right_alg;
        if (!over.empty())
            left_alg = resolve_ref(sf.algebras, over, "algebra", origin_dir, keep_alive);
        if (!rightover.empty())
            right_alg = resolve_ref(sf.algebras, rightover, "algebra", origin_dir, keep_alive);
        FieldSpec mf = left_alg ? left_alg->field() : right_alg->field();
        if (field && *field != mf)
            throw SemanticError(sec.line, "module field conflicts with its algebra");
        note_field(mf, sec.line);
        GradedSpace sp = basis.space;
        sp.field = mf;
        auto idx = label_index(sp);
        Matrix d(mf, sp.flat_dim(), sp.flat_dim());
        for (const auto& [line, from] : combos_diff) {
            auto it = idx.find(line.tokens[1]);
            if (it == idx.end())
                throw SemanticError(line.number, "diff of unknown label '" + line.tokens[1] + "'");
            auto combo = parse_combo(line.tokens, from, mf, line.number);
            check_term_degrees(sp, idx, combo, sp.degree_of(it->second) + 1, line.number,
                               "diff " + line.tokens[1]);
            d.set_column(it->second, combo_to_vec(combo, sp, idx, line.number, "diff"));
        }
        GradedMap diff = graded_from_flat(sp, sp, 1, d);

        auto build_table = [&](const std::vector<std::pair<Line, std::size_t>>& combos,
                               const GradedSpace& alg_sp, bool alg_first) {
            ActionTable table;
            auto aidx = label_index(alg_sp);
            for (const auto& [line, from] : combos) {
                int ia, im;
                if (alg_first)
                    std::tie(ia, im) = split_known(line.tokens[1], aidx, idx, line.number);
                else
                    std::tie(im, ia) = split_known(line.tokens[1], idx, aidx, line.number);
                auto combo = parse_combo(line.tokens, from, mf, line.number);
                check_term_degrees(sp, idx, combo,
                                   alg_sp.degree_of(ia) + sp.degree_of(im), line.number,
                                   "action " + line.tokens[1]);
                Terms terms =
                    vec_to_terms(combo_to_vec(combo, sp, idx, line.number, "action"));
                if (!terms.empty()) table[{ia, im}] = terms;
            }
            return table;
        };

        if (is_bimodule) {
            if (!combos_mul.empty() || !combos_unit.empty())
                throw parse_error(sec.line, "bimodule sections take no mul/unit directives");
            DGBimodule b{left_alg, right_alg, sp, diff,
                         build_table(combos_act, left_alg->space, true),
                         build_table(combos_ract, right_alg->space, false)};
            Report axioms = check_module(b);
            if (!axioms.ok())
                throw SemanticError(sec.line, "bimodule '" + sec.name +
                                                  "' fails the axioms:\n" + axioms.render());
            sf.bimodules.emplace(sec.name, std::move(b));
        } else {
            if (!combos_mul.empty() || !combos_unit.empty())
                throw parse_error(sec.line, "module sections take no mul/unit directives");
            Side side = over.empty() ? Side::Right : Side::Left;
            AlgebraPtr alg = side == Side::Left ? left_alg : right_alg;
            if (side == Side::Left && !combos_ract.empty())
                throw SemanticError(sec.line, "left module with ract directives");
            if (side == Side::Right && !combos_act.empty())
                throw SemanticError(sec.line, "right module with act directives");
            DGModule m{alg, side, sp, diff,
                       side == Side::Left ? build_table(combos_act, alg->space, true)
                                          : build_table(combos_ract, alg->space, false)};
            Report axioms = check_module(m);
            if (!axioms.ok())
                throw SemanticError(sec.line, "module '" + sec.name + "' fails the axioms:\n" +
                                                  axioms.render());
            sf.modules.emplace(sec.name, std::move(m));
        }
    }
    return sf;
}

// ---------------------------------------------------------------------------
// canonical serialization: sections sorted by kind then name, basis by
// (degree, label), sparse entries lexicographically; byte-identical per input

namespace io_detail {

inline GradedSpace sorted_space(const GradedSpace& sp) {
    GradedSpace out;
    out.field = sp.field;
    for (const auto& [d, labels] : sp.basis) {
        auto copy = labels;
        std::sort(copy.begin(), copy.end());
        if (!copy.empty()) out.basis[d] = copy;
    }
    return out;
}

inline std::string combo_str(const GradedSpace& sp, const Vec& v) {
    std::vector<std::pair<std::string, Scalar>> terms;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (!v[i].is_zero()) terms.emplace_back(sp.label_of(i), v[i]);
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [label, c] : terms) {
        if (!out.empty()) out += " + ";
        out += c.str() + " " + label;
    }
    return out;
}

inline Vec terms_to_vec(const Terms& terms, const GradedSpace& sp) {
    Vec v = flat_zero(sp);
    for (const auto& [i, c] : terms) v[i] += c;
    return v;
}

inline void emit_basis(std::ostream& os, const GradedSpace& sp) {
    GradedSpace s = sorted_space(sp);
    for (int i = 0; i < s.flat_dim(); ++i)
        os << "basis " << s.label_of(i) << ":" << s.degree_of(i) << "\n";
}

inline void emit_field(std::ostream& os, FieldSpec f) {
    if (f.kind == FieldKind::Rationals) os << "field Q\n";
    else os << "field Fp " << f.p << "\n";
}

inline void emit_diff(std::ostream& os, const GradedSpace& sp, const GradedMap& diff) {
    std::vector<std::pair<std::string, std::string>> lines;
    Matrix d = flat_matrix(diff);
    for (int j = 0; j < sp.flat_dim(); ++j) {
        Vec col = d.column_vec(j);
        bool nz = false;
        for (const auto& c : col)
            if (!c.is_zero()) nz = true;
        if (nz) lines.emplace_back(sp.label_of(j), combo_str(sp, col));
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& [label, rhs] : lines) os << "diff " << label << " = " << rhs << "\n";
}

inline void emit_pair_table(std::ostream& os, const std::string& keyword,
                            const GradedSpace& first, const GradedSpace& second,
                            const GradedSpace& value_sp,
                            const std::map<std::pair<int, int>, Terms>& table,
                            bool swap_key) {
    std::vector<std::pair<std::string, std::string>> lines;
    for (const auto& [key, terms] : table) {
        Vec v = terms_to_vec(terms, value_sp);
        bool nz = false;
        for (const auto& c : v)
            if (!c.is_zero()) nz = true;
        if (!nz) continue;
        std::string k = swap_key
                            ? second.label_of(key.second) + "*" + first.label_of(key.first)
                            : first.label_of(key.first) + "*" + second.label_of(key.second);
        lines.emplace_back(k, combo_str(value_sp, v));
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& [k, rhs] : lines) os << keyword << " " << k << " = " << rhs << "\n";
}

}  // namespace io_detail

inline void serialize_algebra(std::ostream& os, const std::string& name, const DGAlgebra& a) {
    using namespace io_detail;
    os << "[algebra " << name << "]\n";
    emit_field(os, a.field());
    emit_basis(os, a.space);
    os << "unit " << combo_str(a.space, a.unit) << "\n";
    emit_diff(os, a.space, a.differential);
    emit_pair_table(os, "mul", a.space, a.space, a.space, a.mul_table, false);
}

inline void serialize_module(std::ostream& os, const std::string& name, const DGModule& m,
                             const std::string& algebra_name) {
    using namespace io_detail;
    os << "[module " << name << "]\n";
    os << (m.side == Side::Left ? "over " : "rightover ") << algebra_name << "\n";
    emit_basis(os, m.space);
    emit_diff(os, m.space, m.differential);
    if (m.side == Side::Left)
        emit_pair_table(os, "act", m.algebra->space, m.space, m.space, m.action, false);
    else
        emit_pair_table(os, "ract", m.algebra->space, m.space, m.space, m.action, true);
}

inline void serialize_bimodule(std::ostream& os, const std::string& name, const DGBimodule& b,
                               const std::string& left_name, const std::string& right_name) {
    using namespace io_detail;
    os << "[bimodule " << name << "]\n";
    os << "over " << left_name << "\n";
    os << "rightover " << right_name << "\n";
    emit_basis(os, b.space);
    emit_diff(os, b.space, b.differential);
    emit_pair_table(os, "act", b.left_algebra->space, b.space, b.space, b.left_action, false);
    emit_pair_table(os, "ract", b.right_algebra->space, b.space, b.space, b.right_action, true);
}

inline void serialize_problem(std::ostream& os, const std::string& name,
                              const ProblemSection& ps) {
    os << "[problem " << name << "]\n";
    os << "R = " << ps.R << "\n";
    os << "S = " << ps.S << "\n";
    os << "M = " << ps.M << "\n";
    if (!ps.X.empty()) os << "X = " << ps.X << "\n";
    os << "max_generators " << ps.max_generators << "\n";
    os << "degree_window " << ps.degree_lo << ":" << ps.degree_hi << "\n";
}

/// Serializing a space whose basis is reordered by (degree, label) still has
/// to agree with the stored index-based tables, so every table is written
/// through labels; the canonical file lists the sorted basis.
inline std::string serialize(const SourceFile& sf) {
    std::ostringstream os;
    std::vector<std::pair<std::string, std::string>> sections = sf.order;
    std::sort(sections.begin(), sections.end());
    bool first = true;
    for (const auto& [kind, name] : sections) {
        if (!first) os << "\n";
        first = false;
        if (kind == "algebra") serialize_algebra(os, name, *sf.algebras.at(name));
        else if (kind == "module") {
            const DGModule& m = sf.modules.at(name);
            serialize_module(os, name, m, m.algebra->name);
        } else if (kind == "bimodule") {
            const DGBimodule& b = sf.bimodules.at(name);
            serialize_bimodule(os, name, b, b.left_algebra->name, b.right_algebra->name);
        } else {
            serialize_problem(os, name, sf.problem_sections.at(name));
        }
    }
    return os.str();
}

/// One self-contained file for a standalone algebra.
inline std::string serialize(const DGAlgebra& a) {
    std::ostringstream os;
    serialize_algebra(os, a.name.empty() ? "A" : a.name, a);
    return os.str();
}

}  // namespace dgt
