#include "gentle/quiver.hpp"

#include "gentle/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace gentle {

int GradedQuiver::vertex_index(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return static_cast<int>(i);
    return -1;
}

int GradedQuiver::arrow_index(const std::string& name) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == name) return static_cast<int>(i);
    return -1;
}

std::vector<std::string> GentlePresentation::violations(const GradedQuiver& q,
                                                        const std::vector<std::pair<int, int>>& rels) {
    std::vector<std::string> out;
    const int nv = static_cast<int>(q.vertices.size());
    const int na = static_cast<int>(q.arrows.size());
    auto an = [&](int a) { return "'" + q.arrows[a].name + "'"; };

    if (nv == 0) {
        out.push_back("quiver has no vertices");
        return out;
    }
    if (na == 0) out.push_back("quiver has no arrows (no arcs)");

    std::vector<int> indeg(nv, 0), outdeg(nv, 0);
    for (const auto& a : q.arrows) {
        ++outdeg[a.src];
        ++indeg[a.tgt];
    }
    for (int v = 0; v < nv; ++v) {
        if (indeg[v] > 2)
            out.push_back("vertex '" + q.vertices[v] + "': in-degree " + std::to_string(indeg[v]) +
                          " exceeds 2 (in/out bound exceeded)");
        if (outdeg[v] > 2)
            out.push_back("vertex '" + q.vertices[v] + "': out-degree " + std::to_string(outdeg[v]) +
                          " exceeds 2 (in/out bound exceeded)");
    }

    std::set<std::pair<int, int>> relset;
    for (const auto& [f, g] : rels) {
        if (q.arrows[f].tgt != q.arrows[g].src)
            out.push_back("relation (" + an(f) + ", " + an(g) + "): arrows not composable");
        relset.insert({f, g});
    }

    std::vector<std::vector<int>> outs(nv), ins(nv);
    for (int a = 0; a < na; ++a) {
        outs[q.arrows[a].src].push_back(a);
        ins[q.arrows[a].tgt].push_back(a);
    }
    for (int f = 0; f < na; ++f) {
        int r_after = 0, p_after = 0, r_before = 0, p_before = 0;
        for (int g : outs[q.arrows[f].tgt]) (relset.count({f, g}) ? r_after : p_after)++;
        for (int e : ins[q.arrows[f].src]) (relset.count({e, f}) ? r_before : p_before)++;
        if (r_after > 1)
            out.push_back("arrow " + an(f) + ": " + std::to_string(r_after) +
                          " relations continue after it (unique relation continuation violated)");
        if (p_after > 1)
            out.push_back("arrow " + an(f) + ": " + std::to_string(p_after) +
                          " permitted continuations after it (unique permitted continuation violated)");
        if (r_before > 1)
            out.push_back("arrow " + an(f) + ": " + std::to_string(r_before) +
                          " relations end before it (unique relation continuation violated)");
        if (p_before > 1)
            out.push_back("arrow " + an(f) + ": " + std::to_string(p_before) +
                          " permitted arrivals before it (unique permitted continuation violated)");
    }

    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& a : q.arrows) parent[find(a.src)] = find(a.tgt);
    int comps = 0;
    for (int v = 0; v < nv; ++v) comps += find(v) == v;
    if (comps > 1) out.push_back("quiver disconnected (" + std::to_string(comps) + " components)");
    return out;
}

GentlePresentation GentlePresentation::make(Field field, GradedQuiver quiver,
                                            std::vector<std::pair<int, int>> relations) {
    if (field.p == 2) throw InputError("characteristic 2 is not supported");
    std::sort(relations.begin(), relations.end());
    relations.erase(std::unique(relations.begin(), relations.end()), relations.end());
    auto v = violations(quiver, relations);
    if (!v.empty()) throw GentleError(v);
    GentlePresentation p;
    p.field_ = field;
    p.quiver_ = std::move(quiver);
    p.relations_ = std::move(relations);
    p.build_caches();
    return p;
}

void GentlePresentation::build_caches() {
    const int nv = num_vertices(), na = num_arrows();
    in_.assign(nv, {});
    out_.assign(nv, {});
    for (int a = 0; a < na; ++a) {
        out_[arrow(a).src].push_back(a);
        in_[arrow(a).tgt].push_back(a);
    }
    rel_next_.assign(na, -1);
    perm_next_.assign(na, -1);
    rel_prev_.assign(na, -1);
    perm_prev_.assign(na, -1);
    for (int f = 0; f < na; ++f)
        for (int g : out_[arrow(f).tgt]) {
            if (is_relation(f, g)) {
                rel_next_[f] = g;
                rel_prev_[g] = f;
            } else {
                perm_next_[f] = g;
                perm_prev_[g] = f;
            }
        }
}

bool GentlePresentation::is_relation(int f, int g) const {
    return std::binary_search(relations_.begin(), relations_.end(), std::make_pair(f, g));
}

GentlePresentation GentlePresentation::with_field(Field f) const {
    return make(f, quiver_, relations_);
}

int path_source(const GentlePresentation& p, const PathWord& w) {
    return w.trivial() ? w.vertex : p.arrow(w.arrows.front()).src;
}

int path_target(const GentlePresentation& p, const PathWord& w) {
    return w.trivial() ? w.vertex : p.arrow(w.arrows.back()).tgt;
}

int path_degree(const GentlePresentation& p, const PathWord& w) {
    int d = 0;
    for (int a : w.arrows) d += p.arrow(a).deg;
    return d;
}

std::string path_text(const GentlePresentation& p, const PathWord& w) {
    if (w.trivial()) return "e_" + p.quiver().vertices[w.vertex];
    std::string s;
    for (auto it = w.arrows.rbegin(); it != w.arrows.rend(); ++it)
        s += (s.empty() ? "" : ".") + p.arrow(*it).name;
    return s;
}

bool is_permitted_word(const GentlePresentation& p, const std::vector<int>& arrows) {
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
        if (!p.composable(arrows[i], arrows[i + 1]) || p.is_relation(arrows[i], arrows[i + 1])) return false;
    return true;
}

bool is_antipath_word(const GentlePresentation& p, const std::vector<int>& arrows) {
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
        if (!p.is_relation(arrows[i], arrows[i + 1])) return false;
    return true;
}

PathWord make_path(const GentlePresentation& p, std::vector<int> arrows, int vertex) {
    PathWord w;
    w.vertex = arrows.empty() ? vertex : p.arrow(arrows.front()).src;
    w.arrows = std::move(arrows);
    for (std::size_t i = 0; i + 1 < w.arrows.size(); ++i)
        if (!p.composable(w.arrows[i], w.arrows[i + 1])) throw InputError("path is not composable");
    w.permitted = is_permitted_word(p, w.arrows);
    return w;
}

std::vector<PathWord> permitted_paths(const GentlePresentation& p, int max_len) {
    if (max_len < 0) throw InputError("max_len must be non-negative");
    std::vector<PathWord> out;
    for (int v = 0; v < p.num_vertices(); ++v) out.push_back(make_path(p, {}, v));
    std::vector<std::vector<int>> frontier;
    for (int a = 0; a < p.num_arrows(); ++a) frontier.push_back({a});
    for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
        std::vector<std::vector<int>> next;
        for (auto& w : frontier) {
            out.push_back(make_path(p, w));
            int n = p.perm_next(w.back());
            if (n >= 0) {
                auto e = w;
                e.push_back(n);
                next.push_back(std::move(e));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

static bool relation_graph_has_cycle(const GentlePresentation& p, bool relation) {
    const int na = p.num_arrows();
    for (int a = 0; a < na; ++a) {
        int x = a;
        for (int step = 0; step < na; ++step) {
            x = relation ? p.rel_next(x) : p.perm_next(x);
            if (x < 0) break;
            if (x == a) return true;
        }
    }
    return false;
}

bool has_permitted_cycle(const GentlePresentation& p) { return relation_graph_has_cycle(p, false); }
bool has_forbidden_cycle(const GentlePresentation& p) { return relation_graph_has_cycle(p, true); }

AntipathCatalog maximal_antipaths(const GentlePresentation& p, int cap) {
    if (cap < 1) throw InputError("antipath cap must be at least 1");
    AntipathCatalog cat;
    const int na = p.num_arrows();
    // The relation-successor graph has in/out degree at most one, so it is a union of chains and cycles.
    std::vector<char> on_chain(na, 0);
    for (int a = 0; a < na; ++a) {
        if (p.rel_prev(a) >= 0) continue;
        std::vector<int> w;
        int x = a;
        while (x >= 0) {
            on_chain[x] = 1;
            if (static_cast<int>(w.size()) == cap) {
                cat.cap_reached = true;
                break;
            }
            w.push_back(x);
            x = p.rel_next(x);
        }
        cat.antipaths.push_back(make_path(p, w));
    }
    for (int a = 0; a < na; ++a) {
        if (on_chain[a]) continue;
        cat.cyclic_antipaths_present = true;
        cat.cap_reached = true;
        std::vector<int> w;
        int x = a;
        for (int i = 0; i < cap; ++i) {
            w.push_back(x);
            x = p.rel_next(x);
        }
        cat.antipaths.push_back(make_path(p, w));
    }
    std::sort(cat.antipaths.begin(), cat.antipaths.end());
    return cat;
}

bool is_maximal_antipath(const GentlePresentation& p, const PathWord& w) {
    if (w.trivial() || !is_antipath_word(p, w.arrows)) return false;
    return p.rel_prev(w.arrows.front()) < 0 && p.rel_next(w.arrows.back()) < 0;
}

std::optional<PathWord> parallel_path(const GentlePresentation& p, const PathWord& antipath) {
    if (!is_maximal_antipath(p, antipath)) throw InputError("input is not a maximal antipath");
    const int s = path_source(p, antipath), t = path_target(p, antipath);
    std::vector<PathWord> found;
    const int bound = p.num_arrows();
    // The parallel path leaves s along the other side and enters t along the other side.
    for (int a : p.out_arrows(s)) {
        if (a == antipath.arrows.front()) continue;
        std::vector<int> w{a};
        while (static_cast<int>(w.size()) <= bound) {
            if (p.arrow(w.back()).tgt == t && w.back() != antipath.arrows.back()) found.push_back(make_path(p, w));
            int n = p.perm_next(w.back());
            if (n < 0) break;
            w.push_back(n);
        }
    }
    if (found.empty()) return std::nullopt;
    if (found.size() > 1) throw MathError("parallel path is not unique; gentleness invariant broken");
    return found.front();
}

static std::string dual_name(const std::string& n) {
    if (!n.empty() && n.back() == '*') return n.substr(0, n.size() - 1);
    return n + "*";
}

GentlePresentation koszul_dual(const GentlePresentation& p) {
    GradedQuiver q;
    q.vertices = p.quiver().vertices;
    for (const auto& a : p.quiver().arrows) q.arrows.push_back({dual_name(a.name), a.tgt, a.src, 1 - a.deg});
    std::vector<std::pair<int, int>> rels;
    for (int f = 0; f < p.num_arrows(); ++f)
        for (int g : p.out_arrows(p.arrow(f).tgt))
            if (!p.is_relation(f, g)) rels.push_back({g, f});
    return GentlePresentation::make(p.field(), std::move(q), std::move(rels));
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
    std::string text;
    int col = 0;
};

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*' || c == '\'';
}

std::vector<Token> lex_line(const std::string& line, int lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        int col = static_cast<int>(i) + 1;
        if (c == ':') {
            out.push_back({":", col});
            ++i;
        } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
            out.push_back({"->", col});
            i += 2;
        } else if (c == '-' || ident_char(c)) {
            std::size_t j = i + 1;
            while (j < line.size() && ident_char(line[j])) ++j;
            out.push_back({line.substr(i, j - i), col});
            i = j;
        } else {
            throw ParseError(lineno, col, std::string("unexpected character '") + c + "'");
        }
    }
    return out;
}

bool is_int(const std::string& s) {
    std::size_t i = (s.size() > 1 && s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

bool is_ident(const std::string& s) {
    if (s.empty() || s[0] == '-') return false;
    return std::all_of(s.begin(), s.end(), ident_char);
}

}  // namespace

GentlePresentation parse_presentation(const std::string& text) {
    Field field{};
    bool field_seen = false;
    GradedQuiver q;
    std::vector<std::pair<int, int>> rels;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int last_line = 1;
    while (std::getline(in, line)) {
        ++lineno;
        last_line = lineno;
        auto toks = lex_line(line, lineno);
        if (toks.empty()) continue;
        const std::string& kw = toks[0].text;
        auto expect_count = [&](std::size_t n) {
            if (toks.size() < n) {
                int col = static_cast<int>(line.size()) + 1;
                throw ParseError(lineno, col, "unexpected end of line in '" + kw + "' statement");
            }
            if (toks.size() > n) throw ParseError(lineno, toks[n].col, "unexpected token '" + toks[n].text + "'");
        };
        if (kw == "field") {
            expect_count(2);
            if (field_seen) throw ParseError(lineno, toks[0].col, "duplicate field declaration");
            try {
                field = Field::parse(toks[1].text);
            } catch (const InputError& e) {
                throw ParseError(lineno, toks[1].col, e.what());
            }
            field_seen = true;
        } else if (kw == "vertex") {
            if (toks.size() < 2) throw ParseError(lineno, static_cast<int>(line.size()) + 1, "vertex list is empty");
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (!is_ident(toks[i].text)) throw ParseError(lineno, toks[i].col, "invalid vertex identifier");
                if (q.vertex_index(toks[i].text) >= 0)
                    throw ParseError(lineno, toks[i].col, "duplicate vertex '" + toks[i].text + "'");
                q.vertices.push_back(toks[i].text);
            }
        } else if (kw == "arrow") {
            // arrow <name> : <src> -> <tgt> deg <int>
            expect_count(8);
            if (!is_ident(toks[1].text)) throw ParseError(lineno, toks[1].col, "invalid arrow name");
            if (toks[2].text != ":") throw ParseError(lineno, toks[2].col, "expected ':'");
            if (toks[4].text != "->") throw ParseError(lineno, toks[4].col, "expected '->'");
            if (toks[6].text != "deg") throw ParseError(lineno, toks[6].col, "expected 'deg'");
            if (!is_int(toks[7].text)) throw ParseError(lineno, toks[7].col, "expected integer degree");
            if (q.arrow_index(toks[1].text) >= 0)
                throw ParseError(lineno, toks[1].col, "duplicate arrow '" + toks[1].text + "'");
            int s = q.vertex_index(toks[3].text), t = q.vertex_index(toks[5].text);
            if (s < 0) throw ParseError(lineno, toks[3].col, "undeclared vertex '" + toks[3].text + "'");
            if (t < 0) throw ParseError(lineno, toks[5].col, "undeclared vertex '" + toks[5].text + "'");
            q.arrows.push_back({toks[1].text, s, t, std::stoi(toks[7].text)});
        } else if (kw == "rel") {
            expect_count(3);
            int second = q.arrow_index(toks[1].text), first = q.arrow_index(toks[2].text);
            if (second < 0) throw ParseError(lineno, toks[1].col, "undeclared arrow '" + toks[1].text + "'");
            if (first < 0) throw ParseError(lineno, toks[2].col, "undeclared arrow '" + toks[2].text + "'");
            if (std::find(rels.begin(), rels.end(), std::make_pair(first, second)) != rels.end())
                throw ParseError(lineno, toks[0].col, "duplicate relation");
            rels.push_back({first, second});
        } else {
            throw ParseError(lineno, toks[0].col, "unknown statement '" + kw + "'");
        }
    }
    if (q.vertices.empty()) throw ParseError(last_line, 1, "no vertices declared");
    return GentlePresentation::make(field, std::move(q), std::move(rels));
}

GentlePresentation load_presentation(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_presentation(ss.str());
}

std::string serialize(const GentlePresentation& p) {
    std::ostringstream os;
    os << "field " << p.field().name() << "\n";
    os << "vertex";
    for (const auto& v : p.quiver().vertices) os << " " << v;
    os << "\n";
    for (const auto& a : p.quiver().arrows)
        os << "arrow " << a.name << " : " << p.quiver().vertices[a.src] << " -> " << p.quiver().vertices[a.tgt]
           << " deg " << a.deg << "\n";
    for (const auto& [f, g] : p.relations()) os << "rel " << p.arrow(g).name << " " << p.arrow(f).name << "\n";
    return os.str();
}

}  // namespace gentle
