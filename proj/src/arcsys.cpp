#include "gentle/arcsys.hpp"

#include "gentle/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace gentle {

void ArcSystem::index() {
    where_.assign(arcs.size(), {std::make_pair(-1, -1), std::make_pair(-1, -1)});
    for (int i = 0; i < static_cast<int>(intervals.size()); ++i) {
        auto& iv = intervals[i];
        iv.degs.resize(iv.num_flows(), 0);
        for (int j = 0; j < static_cast<int>(iv.ends.size()); ++j) {
            ArcEnd e = iv.ends[j];
            if (e.arc < 0 || e.arc >= num_arcs() || (e.end != 0 && e.end != 1))
                throw InputError("interval '" + iv.name + "' references an invalid arc end");
            if (where_[e.arc][e.end].first >= 0)
                throw InputError("end " + std::to_string(e.end) + " of arc '" + arcs[e.arc] + "' appears twice");
            where_[e.arc][e.end] = {i, j};
        }
    }
    for (int a = 0; a < num_arcs(); ++a)
        for (int s = 0; s < 2; ++s)
            if (where_[a][s].first < 0)
                throw InputError("end " + std::to_string(s) + " of arc '" + arcs[a] + "' lies on no interval");
}

bool ArcSystem::has_next(ArcEnd e) const {
    auto [i, j] = where(e);
    const auto& iv = intervals[i];
    return iv.cyclic || j + 1 < static_cast<int>(iv.ends.size());
}

bool ArcSystem::has_prev(ArcEnd e) const {
    auto [i, j] = where(e);
    return intervals[i].cyclic || j > 0;
}

ArcEnd ArcSystem::next(ArcEnd e) const {
    auto [i, j] = where(e);
    const auto& iv = intervals[i];
    return iv.ends[(j + 1) % iv.ends.size()];
}

ArcEnd ArcSystem::prev(ArcEnd e) const {
    auto [i, j] = where(e);
    const auto& iv = intervals[i];
    return iv.ends[(j + iv.ends.size() - 1) % iv.ends.size()];
}

int ArcSystem::flow_deg(ArcEnd e) const {
    auto [i, j] = where(e);
    return intervals[i].degs[j];
}

int ArcSystem::arc_index(const std::string& name) const {
    for (int i = 0; i < num_arcs(); ++i)
        if (arcs[i] == name) return i;
    return -1;
}

int ArcSystem::interval_index(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(intervals.size()); ++i)
        if (intervals[i].name == name) return i;
    return -1;
}

std::string ArcSystem::flow_name(int interval, int pos) const {
    auto it = flow_names.find({interval, pos});
    if (it != flow_names.end()) return it->second;
    return intervals[interval].name + "_" + std::to_string(pos);
}

std::vector<Face> faces(const ArcSystem& a) {
    std::vector<Face> out;
    std::set<ArcEnd> seen;
    auto sigma = [&](ArcEnd e) { return ArcSystem::iota(a.next(e)); };
    // Chains start where the preceding corner is missing: x with iota(x) first on its interval.
    for (const auto& iv : a.intervals) {
        if (iv.cyclic || iv.ends.empty()) continue;
        Face f;
        ArcEnd x = ArcSystem::iota(iv.ends.front());
        while (true) {
            f.corners.push_back(x);
            seen.insert(x);
            if (!a.has_next(x)) break;
            x = sigma(x);
        }
        out.push_back(std::move(f));
    }
    for (int arc = 0; arc < a.num_arcs(); ++arc)
        for (int s = 0; s < 2; ++s) {
            ArcEnd e{arc, s};
            if (seen.count(e)) continue;
            Face f;
            f.closed = true;
            ArcEnd x = e;
            do {
                f.corners.push_back(x);
                seen.insert(x);
                x = sigma(x);
            } while (!(x == e));
            out.push_back(std::move(f));
        }
    return out;
}

GentlePresentation build_flows(const ArcSystem& a, Field field, bool check_degrees) {
    GradedQuiver q;
    q.vertices = a.arcs;
    std::map<ArcEnd, int> leaving;  // arrow leaving each end
    for (int i = 0; i < static_cast<int>(a.intervals.size()); ++i) {
        const auto& iv = a.intervals[i];
        for (int j = 0; j < iv.num_flows(); ++j) {
            ArcEnd s = iv.ends[j], t = iv.ends[(j + 1) % iv.ends.size()];
            leaving[s] = static_cast<int>(q.arrows.size());
            q.arrows.push_back({a.flow_name(i, j), s.arc, t.arc, iv.degs[j]});
        }
    }
    std::vector<std::pair<int, int>> rels;
    for (const auto& [s, f] : leaving) {
        ArcEnd t = a.next(s);
        auto it = leaving.find(ArcSystem::iota(t));
        if (it != leaving.end()) rels.push_back({f, it->second});
    }
    if (check_degrees) {
        for (const auto& face : faces(a)) {
            if (!face.closed) continue;
            const int m = static_cast<int>(face.corners.size());
            if (m < 3) throw InputError("closed face with " + std::to_string(m) + " corners: arc system is not full");
            int sum = 0;
            for (auto e : face.corners) sum += a.flow_deg(e);
            if (sum != m - 2)
                throw InputError("disk sequence of length " + std::to_string(m) + " has degree sum " +
                                 std::to_string(sum) + ", expected " + std::to_string(m - 2));
        }
    }
    return GentlePresentation::make(field, std::move(q), std::move(rels));
}

SideStructure side_structure(const GentlePresentation& p) {
    SideStructure ss;
    const int nv = p.num_vertices(), na = p.num_arrows();
    ss.src_side.assign(na, -1);
    ss.tgt_side.assign(na, -1);
    ss.in_at.assign(nv, {-1, -1});
    ss.out_at.assign(nv, {-1, -1});
    for (int v = 0; v < nv; ++v) {
        std::vector<std::pair<int, int>> groups;  // (in arrow, out arrow), -1 if absent
        for (int b : p.in_arrows(v))
            if (p.perm_next(b) >= 0) groups.push_back({b, p.perm_next(b)});
        for (int b : p.in_arrows(v))
            if (p.perm_next(b) < 0) groups.push_back({b, -1});
        for (int a : p.out_arrows(v))
            if (p.perm_prev(a) < 0) groups.push_back({-1, a});
        if (groups.size() > 2) throw MathError("vertex has more than two sides; gentleness invariant broken");
        for (int s = 0; s < static_cast<int>(groups.size()); ++s) {
            auto [b, a] = groups[s];
            if (b >= 0) {
                ss.tgt_side[b] = s;
                ss.in_at[v][s] = b;
            }
            if (a >= 0) {
                ss.src_side[a] = s;
                ss.out_at[v][s] = a;
            }
        }
    }
    return ss;
}

ArcSystem arc_system_from_presentation(const GentlePresentation& p, std::vector<std::pair<int, int>>* arrow_pos) {
    SideStructure ss = side_structure(p);
    ArcSystem a;
    a.arcs = p.quiver().vertices;
    const int nv = p.num_vertices();
    std::vector<std::array<char, 2>> used(nv, {0, 0});
    std::vector<std::pair<int, int>> pos(p.num_arrows(), {-1, -1});
    auto add_interval = [&](int v, int s, bool cyclic) {
        MarkedInterval iv;
        iv.name = "I" + std::to_string(a.intervals.size());
        iv.cyclic = cyclic;
        const int idx = static_cast<int>(a.intervals.size());
        int cv = v, cs = s;
        while (true) {
            used[cv][cs] = 1;
            iv.ends.push_back({cv, cs});
            int arr = ss.out_at[cv][cs];
            if (arr < 0) break;
            pos[arr] = {idx, static_cast<int>(iv.degs.size())};
            iv.degs.push_back(p.arrow(arr).deg);
            a.flow_names[{idx, static_cast<int>(iv.degs.size()) - 1}] = p.arrow(arr).name;
            cv = p.arrow(arr).tgt;
            cs = ss.tgt_side[arr];
            if (cv == v && cs == s) break;
        }
        a.intervals.push_back(std::move(iv));
    };
    for (int v = 0; v < nv; ++v)
        for (int s = 0; s < 2; ++s)
            if (ss.in_at[v][s] < 0) add_interval(v, s, false);
    for (int v = 0; v < nv; ++v)
        for (int s = 0; s < 2; ++s)
            if (!used[v][s]) add_interval(v, s, true);
    a.index();
    if (arrow_pos) *arrow_pos = pos;
    return a;
}

// ---------------------------------------------------------------- .arc files

namespace {

struct Scanner {
    const std::string& s;
    int line;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip();
        return i >= s.size() || s[i] == '#';
    }
    int col() const { return static_cast<int>(i) + 1; }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(line, col(), msg); }
    static bool idc(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
    std::string ident() {
        skip();
        std::size_t j = i;
        while (j < s.size() && idc(s[j])) ++j;
        if (j == i) fail("expected identifier");
        std::string r = s.substr(i, j - i);
        i = j;
        return r;
    }
    int integer() {
        skip();
        std::size_t j = i;
        if (j < s.size() && s[j] == '-') ++j;
        std::size_t k = j;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == j) fail("expected integer");
        int r = std::stoi(s.substr(i, k - i));
        i = k;
        return r;
    }
    void expect(char c) {
        skip();
        if (i >= s.size() || s[i] != c) fail(std::string("expected '") + c + "'");
        ++i;
    }
    bool peek(char c) {
        skip();
        return i < s.size() && s[i] == c;
    }
};

}  // namespace

ArcSystem parse_arc_system(const std::string& text) {
    ArcSystem a;
    struct PendingDeg {
        std::string interval;
        int pos, deg, line, col;
    };
    std::vector<PendingDeg> degs;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        Scanner sc{line, lineno};
        if (sc.done()) continue;
        int kwcol = sc.col();
        std::string kw = sc.ident();
        if (kw == "arc") {
            std::string id = sc.ident();
            if (a.arc_index(id) >= 0) throw ParseError(lineno, kwcol, "duplicate arc '" + id + "'");
            a.arcs.push_back(id);
        } else if (kw == "interval") {
            MarkedInterval iv;
            iv.name = sc.ident();
            if (a.interval_index(iv.name) >= 0)
                throw ParseError(lineno, kwcol, "duplicate interval '" + iv.name + "'");
            sc.expect(':');
            while (sc.peek('(')) {
                sc.expect('(');
                int c = sc.col();
                std::string arc = sc.ident();
                int idx = a.arc_index(arc);
                if (idx < 0) throw ParseError(lineno, c, "undeclared arc '" + arc + "'");
                sc.expect(',');
                c = sc.col();
                int end = sc.integer();
                if (end != 0 && end != 1) throw ParseError(lineno, c, "arc end must be 0 or 1");
                sc.expect(')');
                iv.ends.push_back({idx, end});
            }
            if (!sc.done()) {
                int c = sc.col();
                if (sc.ident() != "cyclic") throw ParseError(lineno, c, "unexpected token");
                iv.cyclic = true;
            }
            if (iv.ends.empty()) throw ParseError(lineno, sc.col(), "interval has no arc ends");
            a.intervals.push_back(std::move(iv));
        } else if (kw == "flowdeg") {
            PendingDeg d;
            d.col = sc.col();
            d.interval = sc.ident();
            d.pos = sc.integer();
            d.deg = sc.integer();
            d.line = lineno;
            degs.push_back(d);
        } else {
            throw ParseError(lineno, kwcol, "unknown statement '" + kw + "'");
        }
        if (!sc.done()) sc.fail("unexpected trailing input");
    }
    try {
        a.index();
    } catch (const InputError& e) {
        throw ParseError(lineno, 1, e.what());
    }
    for (const auto& d : degs) {
        int i = a.interval_index(d.interval);
        if (i < 0) throw ParseError(d.line, d.col, "unknown interval '" + d.interval + "'");
        if (d.pos < 0 || d.pos >= a.intervals[i].num_flows())
            throw ParseError(d.line, d.col, "flow position out of range");
        a.intervals[i].degs[d.pos] = d.deg;
    }
    return a;
}

ArcSystem load_arc_system(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_arc_system(ss.str());
}

std::string serialize(const ArcSystem& a) {
    std::ostringstream os;
    for (const auto& arc : a.arcs) os << "arc " << arc << "\n";
    for (const auto& iv : a.intervals) {
        os << "interval " << iv.name << ":";
        for (auto e : iv.ends) os << " (" << a.arcs[e.arc] << "," << e.end << ")";
        if (iv.cyclic) os << " cyclic";
        os << "\n";
    }
    for (const auto& iv : a.intervals)
        for (int j = 0; j < iv.num_flows(); ++j)
            if (iv.degs[j] != 0) os << "flowdeg " << iv.name << " " << j << " " << iv.degs[j] << "\n";
    return os.str();
}

}  // namespace gentle
