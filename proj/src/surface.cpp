#include "gentle/surface.hpp"

#include "gentle/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace gentle {

namespace {

// Arc model of a presentation with arrow lookup by flow position.
struct Model {
    ArcSystem a;
    std::map<std::pair<int, int>, int> arrow_at;

    explicit Model(const GentlePresentation& p) {
        std::vector<std::pair<int, int>> pos;
        a = arc_system_from_presentation(p, &pos);
        for (int i = 0; i < static_cast<int>(pos.size()); ++i) arrow_at[pos[i]] = i;
    }
    int arrow_into(ArcEnd x) const {
        auto [i, j] = a.where(x);
        const int n = static_cast<int>(a.intervals[i].ends.size());
        return arrow_at.at({i, (j + n - 1) % n});
    }
};

std::string walk_key(const GentlePresentation& p, const BoundaryWalk& w) {
    std::string best;
    bool any = false;
    auto consider = [&](const PathWord& t) {
        for (int a : t.arrows) {
            const std::string& n = p.arrow(a).name;
            if (!any || n < best) best = n;
            any = true;
        }
    };
    for (const auto& t : w.permitted_threads) consider(t);
    for (const auto& t : w.forbidden_threads) consider(t);
    if (any) return "0" + best;
    std::string v;
    for (const auto& t : w.permitted_threads) {
        const std::string& n = p.quiver().vertices[t.vertex];
        if (v.empty() || n < v) v = n;
    }
    return "1" + v;
}

}  // namespace

std::vector<BoundaryWalk> boundary_walks(const GentlePresentation& p) {
    Model m(p);
    const ArcSystem& a = m.a;
    const int ni = static_cast<int>(a.intervals.size());
    std::vector<int> succ(ni, -1);
    std::vector<std::vector<int>> fthread(ni);
    std::vector<int> fvertex(ni, -1);
    std::set<ArcEnd> visited;

    for (int i = 0; i < ni; ++i) {
        const auto& iv = a.intervals[i];
        if (iv.cyclic) continue;
        ArcEnd x = ArcSystem::iota(iv.ends.back());
        fvertex[i] = x.arc;
        std::vector<int> followed;
        while (a.has_prev(x)) {
            visited.insert(x);
            followed.push_back(m.arrow_into(x));
            x = ArcSystem::iota(a.prev(x));
        }
        std::reverse(followed.begin(), followed.end());
        fthread[i] = std::move(followed);
        succ[i] = a.where(x).first;
    }

    auto interval_thread = [&](int i) {
        const auto& iv = a.intervals[i];
        std::vector<int> arrows;
        for (int j = 0; j < iv.num_flows(); ++j) arrows.push_back(m.arrow_at.at({i, j}));
        return make_path(p, arrows, iv.ends.front().arc);
    };

    std::vector<BoundaryWalk> walks;
    std::vector<char> done(ni, 0);
    std::vector<int> perm_count(p.num_arrows(), 0), forb_count(p.num_arrows(), 0);
    for (int i = 0; i < ni; ++i) {
        if (a.intervals[i].cyclic || done[i]) continue;
        BoundaryWalk w;
        int j = i;
        int forb_arrows = 0, perm_deg = 0, forb_deg = 0;
        do {
            done[j] = 1;
            PathWord pt = interval_thread(j);
            PathWord ft = make_path(p, fthread[j], fvertex[j]);
            for (int x : pt.arrows) perm_count[x]++, perm_deg += p.arrow(x).deg;
            for (int x : ft.arrows) forb_count[x]++, forb_deg += p.arrow(x).deg, forb_arrows++;
            w.permitted_threads.push_back(std::move(pt));
            w.forbidden_threads.push_back(std::move(ft));
            j = succ[j];
            if (j < 0 || a.intervals[j].cyclic) throw MathError("boundary walk left the linear intervals");
        } while (j != i);
        w.n = static_cast<int>(w.permitted_threads.size());
        w.d = forb_arrows + perm_deg - forb_deg;
        walks.push_back(std::move(w));
    }
    for (int i = 0; i < ni; ++i) {
        if (!a.intervals[i].cyclic) continue;
        BoundaryWalk w;
        w.kind = BoundaryWalk::Kind::PermittedCycle;
        PathWord pt = interval_thread(i);
        for (int x : pt.arrows) perm_count[x]++, w.d += p.arrow(x).deg;
        w.permitted_threads.push_back(std::move(pt));
        walks.push_back(std::move(w));
    }
    for (int arc = 0; arc < a.num_arcs(); ++arc)
        for (int s = 0; s < 2; ++s) {
            ArcEnd e{arc, s};
            if (visited.count(e) || !a.has_prev(e)) continue;
            BoundaryWalk w;
            w.kind = BoundaryWalk::Kind::ForbiddenCycle;
            std::vector<int> followed;
            ArcEnd x = e;
            do {
                visited.insert(x);
                followed.push_back(m.arrow_into(x));
                x = ArcSystem::iota(a.prev(x));
                if (!a.has_prev(x)) throw MathError("forbidden cycle left the marked intervals");
            } while (!(x == e));
            std::reverse(followed.begin(), followed.end());
            int len = 0, deg = 0;
            for (int f : followed) forb_count[f]++, len++, deg += p.arrow(f).deg;
            w.d = len - deg;
            w.forbidden_threads.push_back(make_path(p, followed));
            walks.push_back(std::move(w));
        }
    for (int x = 0; x < p.num_arrows(); ++x)
        if (perm_count[x] != 1 || forb_count[x] != 1)
            throw MathError("thread partition violated at arrow '" + p.arrow(x).name + "'");
    std::stable_sort(walks.begin(), walks.end(), [&](const BoundaryWalk& x, const BoundaryWalk& y) {
        return walk_key(p, x) < walk_key(p, y);
    });
    return walks;
}

AAGInvariant aag_invariant(const GentlePresentation& p) {
    AAGInvariant phi;
    for (const auto& w : boundary_walks(p)) phi.mult[{w.n, w.d}]++;
    return phi;
}

SurfaceInvariants surface_invariants(const GentlePresentation& p) {
    SurfaceInvariants inv;
    for (const auto& w : boundary_walks(p)) inv.components.push_back({w.n, w.winding(), w.n == 0});
    std::sort(inv.components.begin(), inv.components.end());
    const int twice_g = 2 - inv.b() - p.num_vertices() + p.num_arrows();
    if (twice_g < 0 || twice_g % 2 != 0) throw MathError("Euler characteristic gives a non-integral genus");
    inv.genus = twice_g / 2;
    return inv;
}

std::vector<BoundaryComponent> degenerating_components(const SurfaceInvariants& inv) {
    std::vector<BoundaryComponent> out;
    for (const auto& c : inv.components)
        if (c.segments == 1 && c.winding == 0) out.push_back(c);
    return out;
}

std::vector<int> nonrigid_vertices(const GentlePresentation& p) {
    std::set<int> out;
    if (p.num_vertices() < 2) return {};
    for (const auto& w : boundary_walks(p)) {
        if (w.kind != BoundaryWalk::Kind::Walk || w.n != 1 || w.winding() != 0) continue;
        const PathWord& t = w.permitted_threads.front();
        if (t.trivial()) continue;
        // The interval starts and ends on the two ends of one arc: that arc runs parallel to the
        // unmarked segment of this component.
        if (path_source(p, t) == path_target(p, t) && t.length() >= 2) out.insert(path_source(p, t));
    }
    return {out.begin(), out.end()};
}

bool is_rigid(const GentlePresentation& p) { return nonrigid_vertices(p).empty(); }

namespace {

struct EditInterval {
    std::string name;
    std::vector<ArcEnd> ends;
    std::vector<int> degs;
    std::vector<std::string> names;
    bool cyclic = false;
};

struct EditSystem {
    std::vector<std::string> arcs;
    std::vector<EditInterval> ivs;
    std::set<std::string> used_names;
    int fresh_counter = 0;

    std::string fresh() {
        std::string n;
        do n = "r" + std::to_string(++fresh_counter);
        while (used_names.count(n));
        used_names.insert(n);
        return n;
    }

    std::pair<int, int> locate(ArcEnd e) const {
        for (int i = 0; i < static_cast<int>(ivs.size()); ++i)
            for (int j = 0; j < static_cast<int>(ivs[i].ends.size()); ++j)
                if (ivs[i].ends[j] == e) return {i, j};
        throw MathError("arc end not found during exchange");
    }

    void insert_before(ArcEnd e, ArcEnd ne, int d) {
        auto [i, j] = locate(e);
        auto& iv = ivs[i];
        const int n = static_cast<int>(iv.ends.size());
        if (!iv.cyclic && j == 0) {
            iv.ends.insert(iv.ends.begin(), ne);
            iv.degs.insert(iv.degs.begin(), d);
            iv.names.insert(iv.names.begin(), fresh());
            return;
        }
        const int pj = (j + n - 1) % n;
        iv.degs[pj] -= d;  // p -> ne keeps the name of p -> e
        iv.ends.insert(iv.ends.begin() + j, ne);
        iv.degs.insert(iv.degs.begin() + j, d);
        iv.names.insert(iv.names.begin() + j, fresh());
    }

    void insert_after(ArcEnd e, ArcEnd ne, int d) {
        auto [i, j] = locate(e);
        auto& iv = ivs[i];
        const int n = static_cast<int>(iv.ends.size());
        if (!iv.cyclic && j == n - 1) {
            iv.ends.push_back(ne);
            iv.degs.push_back(d);
            iv.names.push_back(fresh());
            return;
        }
        const int g = iv.degs[j];
        iv.degs[j] = d;
        iv.names[j] = fresh();
        iv.ends.insert(iv.ends.begin() + j + 1, ne);
        iv.degs.insert(iv.degs.begin() + j + 1, g - d);
        iv.names.insert(iv.names.begin() + j + 1, fresh());
    }

    void remove(ArcEnd e) {
        auto [i, j] = locate(e);
        auto& iv = ivs[i];
        const int n = static_cast<int>(iv.ends.size());
        if (n == 1) {
            ivs.erase(ivs.begin() + i);
            return;
        }
        if (iv.cyclic) {
            const int pj = (j + n - 1) % n;
            iv.degs[pj] += iv.degs[j];
            iv.names[pj] = fresh();
            iv.ends.erase(iv.ends.begin() + j);
            iv.degs.erase(iv.degs.begin() + j);
            iv.names.erase(iv.names.begin() + j);
            return;
        }
        if (j == 0) {
            iv.degs.erase(iv.degs.begin());
            iv.names.erase(iv.names.begin());
        } else if (j == n - 1) {
            iv.degs.pop_back();
            iv.names.pop_back();
        } else {
            iv.degs[j - 1] += iv.degs[j];
            iv.names[j - 1] = fresh();
            iv.degs.erase(iv.degs.begin() + j);
            iv.names.erase(iv.names.begin() + j);
        }
        iv.ends.erase(iv.ends.begin() + j);
    }

    ArcSystem build() const {
        ArcSystem a;
        a.arcs = arcs;
        for (int i = 0; i < static_cast<int>(ivs.size()); ++i) {
            MarkedInterval m;
            m.name = "I" + std::to_string(i);
            m.ends = ivs[i].ends;
            m.degs = ivs[i].degs;
            m.cyclic = ivs[i].cyclic;
            for (int j = 0; j < static_cast<int>(ivs[i].names.size()); ++j) a.flow_names[{i, j}] = ivs[i].names[j];
            a.intervals.push_back(std::move(m));
        }
        a.index();
        return a;
    }
};

GentlePresentation exchange_segment(const GentlePresentation& p, int gamma) {
    ArcSystem a = arc_system_from_presentation(p);
    EditSystem es;
    es.arcs = a.arcs;
    for (const auto& arr : p.quiver().arrows) es.used_names.insert(arr.name);
    for (int i = 0; i < static_cast<int>(a.intervals.size()); ++i) {
        EditInterval ei;
        ei.name = a.intervals[i].name;
        ei.ends = a.intervals[i].ends;
        ei.degs = a.intervals[i].degs;
        ei.cyclic = a.intervals[i].cyclic;
        for (int j = 0; j < a.intervals[i].num_flows(); ++j) ei.names.push_back(a.flow_name(i, j));
        es.ivs.push_back(std::move(ei));
    }
    int ii = -1;
    for (int i = 0; i < static_cast<int>(a.intervals.size()); ++i) {
        const auto& iv = a.intervals[i];
        if (!iv.cyclic && iv.ends.size() >= 3 && iv.ends.front().arc == gamma && iv.ends.back().arc == gamma) ii = i;
    }
    if (ii < 0) throw MathError("exchange target is not a boundary segment");
    const ArcEnd h = a.intervals[ii].ends[0];
    const ArcEnd hp = a.intervals[ii].ends[1];
    const int fdeg = a.intervals[ii].degs[0];
    const int tmp = static_cast<int>(es.arcs.size());
    es.arcs.push_back("tmp");
    es.insert_before(ArcSystem::iota(h), {tmp, 0}, 0);
    es.insert_after(ArcSystem::iota(hp), {tmp, 1}, 1 - fdeg);
    es.remove(h);
    es.remove(ArcSystem::iota(h));
    es.arcs.pop_back();
    for (auto& iv : es.ivs)
        for (auto& e : iv.ends)
            if (e.arc == tmp) e.arc = gamma;
    return build_flows(es.build(), p.field(), false);
}

}  // namespace

RigidifyResult rigidify(const GentlePresentation& p) {
    RigidifyResult r;
    r.presentation = p;
    const int limit = 4 * (p.num_vertices() + p.num_arrows()) + 4;
    while (true) {
        auto bad = nonrigid_vertices(r.presentation);
        if (bad.empty()) break;
        if (r.exchanges >= limit) throw MathError("rigidification did not terminate");
        r.presentation = exchange_segment(r.presentation, bad.front());
        ++r.exchanges;
    }
    r.unchanged = r.exchanges == 0;
    return r;
}

IsoVerdict surfaces_isomorphic(const SurfaceInvariants& a, const SurfaceInvariants& b) {
    IsoVerdict v;
    v.equivalent = a == b;
    v.complete = !(v.equivalent && a.genus >= 1);
    return v;
}

IsoVerdict derived_equivalent(const GentlePresentation& p, const GentlePresentation& q) {
    return surfaces_isomorphic(surface_invariants(p), surface_invariants(q));
}

bool is_kronecker_surface(const SurfaceInvariants& inv) {
    return inv.genus == 0 && inv.components.size() == 2 &&
           inv.components[0] == BoundaryComponent{1, 0, false} && inv.components[1] == BoundaryComponent{1, 0, false};
}

namespace {

nlohmann::ordered_json components_json(const SurfaceInvariants& inv) {
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (const auto& c : inv.components) {
        nlohmann::ordered_json o;
        o["segments"] = c.segments;
        o["winding"] = c.winding;
        o["fully_marked"] = c.fully_marked;
        comps.push_back(o);
    }
    return comps;
}

}  // namespace

std::string surface_invariants_json(const SurfaceInvariants& inv, int indent) {
    nlohmann::ordered_json j;
    j["genus"] = inv.genus;
    j["components"] = components_json(inv);
    return j.dump(indent);
}

std::string surface_report_json(const GentlePresentation& p, int indent) {
    SurfaceInvariants inv = surface_invariants(p);
    AAGInvariant phi = aag_invariant(p);
    nlohmann::ordered_json j;
    j["genus"] = inv.genus;
    j["components"] = components_json(inv);
    nlohmann::ordered_json ph = nlohmann::ordered_json::array();
    for (const auto& [nd, m] : phi.mult) ph.push_back({nd.first, nd.second, m});
    j["phi"] = ph;
    j["rigid"] = is_rigid(p);
    return j.dump(indent);
}

SurfaceInvariants parse_surface_invariants_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    try {
        SurfaceInvariants inv;
        inv.genus = j.at("genus").get<int>();
        if (inv.genus < 0) throw InputError("genus must be non-negative");
        for (const auto& c : j.at("components")) {
            BoundaryComponent bc;
            bc.segments = c.at("segments").get<int>();
            bc.winding = c.at("winding").get<int>();
            bc.fully_marked = c.value("fully_marked", bc.segments == 0);
            if (bc.segments < 0) throw InputError("segment count must be non-negative");
            if (bc.fully_marked != (bc.segments == 0))
                throw InputError("fully_marked must hold exactly for components without segments");
            inv.components.push_back(bc);
        }
        if (inv.components.empty()) throw InputError("surface needs at least one boundary component");
        std::sort(inv.components.begin(), inv.components.end());
        int sum = 0;
        for (const auto& c : inv.components) sum += c.winding;
        if (sum != 4 - 4 * inv.genus - 2 * inv.b())
            throw InputError("winding numbers must sum to 4 - 4g - 2b (Poincare-Hopf)");
        return inv;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed surface JSON: ") + e.what());
    }
}

}  // namespace gentle
