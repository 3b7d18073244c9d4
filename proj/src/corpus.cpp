#include "gentle/corpus.hpp"

#include "gentle/errors.hpp"
#include "gentle/fukaya.hpp"
#include "gentle/surface.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

namespace gentle {

namespace {

ArcSystem random_arc_system(std::mt19937& rng, const RandomGentleOptions& opt) {
    std::uniform_int_distribution<int> nvd(opt.min_vertices, opt.max_vertices);
    const int nv = nvd(rng);
    ArcSystem a;
    for (int v = 0; v < nv; ++v) a.arcs.push_back("v" + std::to_string(v));
    std::vector<ArcEnd> ends;
    for (int v = 0; v < nv; ++v) ends.push_back({v, 0}), ends.push_back({v, 1});
    std::shuffle(ends.begin(), ends.end(), rng);
    const int n = static_cast<int>(ends.size());
    std::uniform_int_distribution<int> kd(1, n);
    const int k = kd(rng);
    std::vector<int> gaps(n - 1);
    std::iota(gaps.begin(), gaps.end(), 1);
    std::shuffle(gaps.begin(), gaps.end(), rng);
    std::vector<int> cuts(gaps.begin(), gaps.begin() + (k - 1));
    cuts.push_back(0);
    cuts.push_back(n);
    std::sort(cuts.begin(), cuts.end());
    std::uniform_int_distribution<int> degd(opt.min_degree, opt.max_degree);
    std::bernoulli_distribution cyc(0.25);
    int flow = 0;
    for (int i = 0; i + 1 < static_cast<int>(cuts.size()); ++i) {
        MarkedInterval iv;
        iv.name = "I" + std::to_string(i);
        iv.ends.assign(ends.begin() + cuts[i], ends.begin() + cuts[i + 1]);
        iv.cyclic = opt.allow_cyclic && cyc(rng);
        for (int j = 0; j < iv.num_flows(); ++j) {
            iv.degs.push_back(degd(rng));
            a.flow_names[{i, j}] = "a" + std::to_string(flow++);
        }
        a.intervals.push_back(std::move(iv));
    }
    a.index();
    return a;
}

GentlePresentation fixture(Field f, const std::vector<std::string>& vertices,
                           const std::vector<std::tuple<std::string, int, int, int>>& arrows,
                           const std::vector<std::pair<int, int>>& rels) {
    GradedQuiver q;
    q.vertices = vertices;
    for (const auto& [name, s, t, d] : arrows) q.arrows.push_back({name, s, t, d});
    return GentlePresentation::make(f, std::move(q), rels);
}

}  // namespace

GentlePresentation random_gentle(unsigned seed, const RandomGentleOptions& opt) {
    std::mt19937 rng(seed * 2654435761u + 12345u);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        ArcSystem a = random_arc_system(rng, opt);
        try {
            GentlePresentation p = build_flows(a, opt.field, false);
            if (opt.require_smooth && !is_smooth(p)) continue;
            return p;
        } catch (const GentleError&) {
            continue;
        }
    }
    throw MathError("random gentle generator failed to produce a connected presentation");
}

RawQuiver random_quiver(unsigned seed, int max_vertices) {
    std::mt19937 rng(seed * 97u + 7u);
    RawQuiver out;
    std::bernoulli_distribution coin(0.5);
    if (coin(rng)) {
        RandomGentleOptions opt;
        opt.max_vertices = max_vertices;
        opt.allow_cyclic = true;
        opt.min_degree = -1;
        opt.max_degree = 1;
        GentlePresentation p = random_gentle(rng(), opt);
        out.quiver = p.quiver();
        out.relations = p.relations();
        std::uniform_int_distribution<int> kind(0, 3);
        switch (kind(rng)) {
            case 0:
                break;  // unperturbed
            case 1: {   // extra arrow
                std::uniform_int_distribution<int> vd(0, static_cast<int>(out.quiver.vertices.size()) - 1);
                out.quiver.arrows.push_back({"extra", vd(rng), vd(rng), 0});
                break;
            }
            case 2:  // drop a relation
                if (!out.relations.empty()) out.relations.erase(out.relations.begin() + rng() % out.relations.size());
                break;
            case 3: {  // add a relation among composable pairs
                std::vector<std::pair<int, int>> cand;
                const auto& ar = out.quiver.arrows;
                for (int f = 0; f < static_cast<int>(ar.size()); ++f)
                    for (int g = 0; g < static_cast<int>(ar.size()); ++g)
                        if (ar[f].tgt == ar[g].src &&
                            std::find(out.relations.begin(), out.relations.end(), std::make_pair(f, g)) ==
                                out.relations.end())
                            cand.push_back({f, g});
                if (!cand.empty()) out.relations.push_back(cand[rng() % cand.size()]);
                break;
            }
        }
        return out;
    }
    std::uniform_int_distribution<int> nvd(1, max_vertices);
    const int nv = nvd(rng);
    for (int v = 0; v < nv; ++v) out.quiver.vertices.push_back("v" + std::to_string(v));
    std::uniform_int_distribution<int> nad(1, 2 * nv + 1), vd(0, nv - 1);
    const int na = nad(rng);
    for (int a = 0; a < na; ++a) out.quiver.arrows.push_back({"a" + std::to_string(a), vd(rng), vd(rng), 0});
    std::bernoulli_distribution relp(0.35);
    for (int f = 0; f < na; ++f)
        for (int g = 0; g < na; ++g)
            if (out.quiver.arrows[f].tgt == out.quiver.arrows[g].src && relp(rng)) out.relations.push_back({f, g});
    return out;
}

GentlePresentation kronecker(Field f) {
    return fixture(f, {"1", "2"}, {{"a", 0, 1, 0}, {"b", 0, 1, 0}}, {});
}

GentlePresentation algebra_b(Field f) {
    return fixture(f, {"v1", "v2"}, {{"al", 0, 1, 0}, {"be", 1, 0, 1}}, {{1, 0}});
}

GentlePresentation linear_a(int n, bool with_relations, Field f) {
    std::vector<std::string> vs;
    std::vector<std::tuple<std::string, int, int, int>> as;
    std::vector<std::pair<int, int>> rels;
    for (int i = 0; i < n; ++i) vs.push_back(std::to_string(i + 1));
    for (int i = 0; i + 1 < n; ++i) as.push_back({"a" + std::to_string(i + 1), i, i + 1, 0});
    if (with_relations)
        for (int i = 0; i + 2 < n; ++i) rels.push_back({i, i + 1});
    return fixture(f, vs, as, rels);
}

GentlePresentation punctured_disk(int omega, Field f) {
    return fixture(f, {"v"}, {{"x", 0, 0, omega + 1}}, {{0, 0}});
}

GentlePresentation polynomial_loop(int degree, Field f) { return fixture(f, {"v"}, {{"t", 0, 0, degree}}, {}); }

std::vector<std::pair<std::string, GentlePresentation>> smooth_proper_corpus(int random_count, bool degree_zero) {
    std::vector<std::pair<std::string, GentlePresentation>> out;
    out.push_back({"kronecker", kronecker()});
    out.push_back({"algebra_b", algebra_b()});
    out.push_back({"a2", linear_a(2)});
    out.push_back({"a3", linear_a(3)});
    out.push_back({"a3_rel", linear_a(3, true)});
    out.push_back({"a5_rel", linear_a(5, true)});
    out.push_back({"triangle", fixture({}, {"1", "2", "3"}, {{"a", 0, 1, 0}, {"b", 1, 2, 0}, {"c", 0, 2, 0}}, {})});
    out.push_back({"square_rel", fixture({}, {"1", "2", "3", "4"},
                                         {{"a", 0, 1, 0}, {"b", 1, 2, 0}, {"c", 0, 3, 0}, {"d", 3, 2, 0}},
                                         {{0, 1}})});
    RandomGentleOptions opt;
    opt.max_vertices = 5;
    opt.require_smooth = true;
    opt.min_degree = degree_zero ? 0 : -1;
    opt.max_degree = degree_zero ? 0 : 2;
    for (int i = 0; i < random_count; ++i)
        out.push_back({"random_sp_" + std::to_string(i), random_gentle(1000u + i + (degree_zero ? 50000u : 0u), opt)});
    return out;
}

std::vector<std::pair<std::string, GentlePresentation>> general_corpus(int random_count) {
    std::vector<std::pair<std::string, GentlePresentation>> out = smooth_proper_corpus(10);
    for (int w = -2; w <= 2; ++w) out.push_back({"punctured_disk_" + std::to_string(w), punctured_disk(w)});
    out.push_back({"polynomial_loop", polynomial_loop(2)});
    RandomGentleOptions opt;
    opt.max_vertices = 7;
    opt.allow_cyclic = true;
    opt.min_degree = -2;
    opt.max_degree = 2;
    for (int i = 0; i < random_count; ++i)
        out.push_back({"random_" + std::to_string(i), random_gentle(7000u + i, opt)});
    return out;
}

GentlePresentation relabel(const GentlePresentation& p, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<int> vp(p.num_vertices()), ap(p.num_arrows());
    std::iota(vp.begin(), vp.end(), 0);
    std::iota(ap.begin(), ap.end(), 0);
    std::shuffle(vp.begin(), vp.end(), rng);
    std::shuffle(ap.begin(), ap.end(), rng);
    GradedQuiver q;
    q.vertices.resize(p.num_vertices());
    for (int v = 0; v < p.num_vertices(); ++v) q.vertices[vp[v]] = "r" + p.quiver().vertices[v];
    q.arrows.resize(p.num_arrows());
    for (int a = 0; a < p.num_arrows(); ++a) {
        const Arrow& x = p.arrow(a);
        q.arrows[ap[a]] = {"r" + x.name, vp[x.src], vp[x.tgt], x.deg};
    }
    std::vector<std::pair<int, int>> rels;
    for (auto [f, g] : p.relations()) rels.push_back({ap[f], ap[g]});
    return GentlePresentation::make(p.field(), std::move(q), std::move(rels));
}

std::vector<std::pair<GentlePresentation, GentlePresentation>> morita_pairs() {
    std::vector<std::pair<GentlePresentation, GentlePresentation>> out;
    out.push_back({kronecker(), algebra_b()});
    unsigned s = 1;
    for (const auto& [name, p] : general_corpus(30)) {
        out.push_back({p, relabel(p, s++)});
        out.push_back({p, rigidify(p).presentation});
        out.push_back({p, koszul_dual(koszul_dual(p))});
    }
    return out;
}

// ---------------------------------------------------------------- arc systems

namespace {

ArcSystem make_arcs(const std::vector<std::string>& arcs,
                    const std::vector<std::pair<std::vector<ArcEnd>, std::vector<int>>>& intervals) {
    ArcSystem a;
    a.arcs = arcs;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        MarkedInterval iv;
        iv.name = "I" + std::to_string(i);
        iv.ends = intervals[i].first;
        iv.degs = intervals[i].second;
        a.intervals.push_back(std::move(iv));
    }
    a.index();
    return a;
}

// Sets the degree of the last corner of every closed face so that the degree sum is m - 2.
void fix_face_degrees(ArcSystem& a) {
    for (const auto& face : faces(a)) {
        if (!face.closed) continue;
        const int m = static_cast<int>(face.corners.size());
        int sum = 0;
        for (int k = 0; k + 1 < m; ++k) sum += a.flow_deg(face.corners[k]);
        const auto [iv, pos] = a.where(face.corners.back());
        a.intervals[iv].degs[pos] = m - 2 - sum;
    }
}

}  // namespace

ArcSystem polygon_fan(int n, unsigned seed) {
    if (n < 3) throw InputError("a polygon needs at least three sides");
    ArcSystem a;
    for (int i = 0; i < n; ++i) a.arcs.push_back("g" + std::to_string(i));
    for (int k = 2; k <= n - 2; ++k) a.arcs.push_back("d" + std::to_string(k));
    auto diag = [&](int k) { return n + k - 2; };
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> degd(-1, 2);
    for (int i = 0; i < n; ++i) {
        MarkedInterval iv;
        iv.name = "I" + std::to_string(i);
        iv.ends.push_back({(i + n - 1) % n, 1});
        if (i == 0)
            for (int k = n - 2; k >= 2; --k) iv.ends.push_back({diag(k), 0});
        else if (i >= 2 && i <= n - 2)
            iv.ends.push_back({diag(i), 1});
        iv.ends.push_back({i, 0});
        for (int j = 0; j < iv.num_flows(); ++j) iv.degs.push_back(degd(rng));
        a.intervals.push_back(std::move(iv));
    }
    a.index();
    fix_face_degrees(a);
    return a;
}

ArcSystem triangle_disk() {
    // Arcs g0: I0-I1, g1: I1-I2, g2: I2-I0; the inner triangle is the only closed face.
    return make_arcs({"g0", "g1", "g2"},
                     {{{{2, 1}, {0, 0}}, {1}}, {{{0, 1}, {1, 0}}, {0}}, {{{1, 1}, {2, 0}}, {0}}});
}

ArcSystem square_disk(bool diagonal) {
    // Boundary arcs g_i join I_i and I_{i+1}; the diagonal d joins I0 and I2.
    if (!diagonal)
        return make_arcs({"g0", "g1", "g2", "g3"}, {{{{3, 1}, {0, 0}}, {1}},
                                                     {{{0, 1}, {1, 0}}, {1}},
                                                     {{{1, 1}, {2, 0}}, {0}},
                                                     {{{2, 1}, {3, 0}}, {0}}});
    return make_arcs({"g0", "g1", "g2", "g3", "d"}, {{{{3, 1}, {4, 0}, {0, 0}}, {1, 0}},
                                                      {{{0, 1}, {1, 0}}, {0}},
                                                      {{{1, 1}, {4, 1}, {2, 0}}, {1, 0}},
                                                      {{{2, 1}, {3, 0}}, {0}}});
}

ArcSystem cylinder_arcs() {
    // Two parallel arcs between the two boundary components, each with one marked interval.
    return make_arcs({"x", "y"}, {{{{0, 0}, {1, 0}}, {0}}, {{{0, 1}, {1, 1}}, {0}}});
}

std::vector<std::pair<std::string, ArcSystem>> arc_corpus() {
    std::vector<std::pair<std::string, ArcSystem>> out;
    out.push_back({"triangle", triangle_disk()});
    out.push_back({"square", square_disk(false)});
    out.push_back({"square_diagonal", square_disk(true)});
    out.push_back({"cylinder", cylinder_arcs()});
    // Pentagon: one closed face with five sides, degree sum 3.
    out.push_back({"pentagon", make_arcs({"g0", "g1", "g2", "g3", "g4"}, {{{{4, 1}, {0, 0}}, {1}},
                                                                         {{{0, 1}, {1, 0}}, {1}},
                                                                         {{{1, 1}, {2, 0}}, {1}},
                                                                         {{{2, 1}, {3, 0}}, {0}},
                                                                         {{{3, 1}, {4, 0}}, {0}}})});
    out.push_back({"hexagon_fan", polygon_fan(6, 3)});
    out.push_back({"heptagon_fan", polygon_fan(7, 5)});
    // Random systems with closed faces; each face's last corner degree is set so that the
    // disk-sequence degree constraint holds.
    RandomGentleOptions opt;
    opt.min_vertices = 3;
    opt.max_vertices = 6;
    opt.min_degree = -1;
    opt.max_degree = 2;
    std::mt19937 rng(4242);
    int found = 0;
    for (int attempt = 0; attempt < 20000 && found < 8; ++attempt) {
        ArcSystem a = random_arc_system(rng, opt);
        bool usable = true, any_closed = false;
        for (const auto& face : faces(a)) {
            if (!face.closed) continue;
            any_closed = true;
            const int m = static_cast<int>(face.corners.size());
            usable = usable && m >= 3 && m <= 5;
        }
        if (!usable || !any_closed) continue;
        fix_face_degrees(a);
        try {
            GentlePresentation p = build_flows(a, {}, true);
            if (has_permitted_cycle(p)) continue;
            bool truncated = false;
            immersed_disk_sequences(a, 8, &truncated);
            if (truncated) continue;
        } catch (const GentleError&) {
            continue;
        }
        out.push_back({"random_closed_" + std::to_string(found++), a});
    }
    // Formal systems from smooth and proper presentations.
    int k = 0;
    for (const auto& [name, p] : smooth_proper_corpus(6)) {
        if (name == "kronecker" || name == "algebra_b" || name == "a3_rel" || name.rfind("random_sp_", 0) == 0) {
            out.push_back({"formal_" + name, arc_system_from_presentation(p)});
            if (++k >= 6) break;
        }
    }
    return out;
}

std::vector<std::string> disk4_arc_names() { return {"g0", "g1", "g2", "g3", "d02", "d13"}; }

ArcSystem disk4_system(const std::vector<std::string>& arcs) {
    struct End {
        std::string arc;
        int end;
    };
    const std::vector<std::vector<End>> order = {{{"g3", 1}, {"d02", 0}, {"g0", 0}},
                                                 {{"g0", 1}, {"d13", 0}, {"g1", 0}},
                                                 {{"g1", 1}, {"d02", 1}, {"g2", 0}},
                                                 {{"g2", 1}, {"d13", 1}, {"g3", 0}}};
    // Flow degrees are differences of a potential on arc ends, so every arc subset is graded
    // compatibly with every other.
    auto potential = [](const End& e) { return (e.end == 0 && (e.arc == "g0" || e.arc == "g2")) ? 1 : 0; };
    const auto names = disk4_arc_names();
    for (const auto& x : arcs)
        if (std::find(names.begin(), names.end(), x) == names.end()) throw InputError("unknown disk arc " + x);
    if (std::count(arcs.begin(), arcs.end(), "d02") && std::count(arcs.begin(), arcs.end(), "d13"))
        throw InputError("the diagonals d02 and d13 cross");
    ArcSystem a;
    for (const auto& x : names)
        if (std::count(arcs.begin(), arcs.end(), x)) a.arcs.push_back(x);
    for (int i = 0; i < 4; ++i) {
        MarkedInterval iv;
        iv.name = "I" + std::to_string(i);
        std::vector<End> kept;
        for (const auto& e : order[i])
            if (std::count(arcs.begin(), arcs.end(), e.arc)) kept.push_back(e);
        if (kept.empty()) throw InputError("interval " + iv.name + " carries no arc");
        for (std::size_t k = 0; k < kept.size(); ++k) {
            const int arc = static_cast<int>(std::find(a.arcs.begin(), a.arcs.end(), kept[k].arc) - a.arcs.begin());
            iv.ends.push_back({arc, kept[k].end});
            if (k + 1 < kept.size()) iv.degs.push_back(potential(kept[k + 1]) - potential(kept[k]));
        }
        a.intervals.push_back(std::move(iv));
    }
    a.index();
    return a;
}

std::vector<std::vector<std::string>> disk4_formal_systems() {
    const auto names = disk4_arc_names();
    std::vector<std::vector<std::string>> out;
    for (unsigned mask = 0; mask < (1u << names.size()); ++mask) {
        if (std::popcount(mask) != 3) continue;
        std::vector<std::string> arcs;
        for (std::size_t k = 0; k < names.size(); ++k)
            if (mask & (1u << k)) arcs.push_back(names[k]);
        ArcSystem a;
        try {
            a = disk4_system(arcs);
        } catch (const InputError&) {
            continue;
        }
        bool closed = false;
        for (const auto& face : faces(a)) closed = closed || face.closed;
        if (!closed) out.push_back(arcs);
    }
    return out;
}

}  // namespace gentle
