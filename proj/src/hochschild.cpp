#include "gentle/errors.hpp"
#include "gentle/hochschild.hpp"
#include "gentle/linalg.hpp"
#include "gentle/surface.hpp"

#include <json.hpp>

#include <algorithm>

namespace gentle {

int FpBasis::count_degree(int omega) const {
    int n = 0;
    for (const auto& e : elements) n += e.omega == omega;
    return n;
}

FpBasis fp_basis(const GentlePresentation& p, int cap) {
    FpBasis out;
    const AntipathCatalog cat = maximal_antipaths(p, cap);
    out.cyclic = cat.cyclic_antipaths_present;
    out.cap_reached = cat.cap_reached;
    for (const auto& ap : cat.antipaths) {
        if (!is_maximal_antipath(p, ap)) continue;  // cyclic or cut at the cap
        auto par = parallel_path(p, ap);
        if (!par) continue;
        FpBasisElement e;
        e.p = ap;
        e.pbar = *par;
        e.arity = static_cast<int>(ap.length());
        e.omega = path_degree(p, e.pbar) - path_degree(p, e.p) + e.arity;
        out.elements.push_back(std::move(e));
    }
    return out;
}

FpBasis fp_basis_extended(const GentlePresentation& p, int cap) {
    FpBasis out = fp_basis(p, cap);
    std::vector<int> trivial_forbidden(p.num_vertices(), 0), trivial_permitted(p.num_vertices(), 0);
    std::vector<PathWord> closed_permitted;
    for (const auto& w : boundary_walks(p)) {
        if (w.kind != BoundaryWalk::Kind::Walk) continue;
        for (const auto& t : w.forbidden_threads)
            if (t.trivial()) trivial_forbidden[t.vertex]++;
        for (const auto& t : w.permitted_threads) {
            if (t.trivial()) trivial_permitted[t.vertex]++;
            else if (path_source(p, t) == path_target(p, t)) closed_permitted.push_back(t);
        }
    }
    for (const auto& t : closed_permitted) {
        const int v = path_source(p, t);
        for (int k = 0; k < trivial_forbidden[v]; ++k) {
            FpBasisElement e;
            e.p = make_path(p, {}, v);
            e.pbar = t;
            e.arity = 0;
            e.omega = path_degree(p, t);
            e.extended = true;
            out.elements.push_back(e);
        }
    }
    const AntipathCatalog cat = maximal_antipaths(p, cap);
    for (const auto& ap : cat.antipaths) {
        if (!is_maximal_antipath(p, ap)) continue;
        const int v = path_source(p, ap);
        if (path_target(p, ap) != v) continue;
        for (int k = 0; k < trivial_permitted[v]; ++k) {
            FpBasisElement e;
            e.p = ap;
            e.pbar = make_path(p, {}, v);
            e.arity = static_cast<int>(ap.length());
            e.omega = -path_degree(p, ap) + e.arity;
            e.extended = true;
            out.elements.push_back(e);
        }
    }
    return out;
}

Cochain fp_cochain(const BasisCategory& cat, const FpBasisElement& e, int cap) {
    const GentlePresentation& p = cat.presentation();
    Cochain c(cat, e.omega - 1, cap);
    const int out = cat.find(e.pbar.arrows, e.pbar.vertex >= 0 ? e.pbar.vertex : path_source(p, e.pbar));
    if (out < 0) throw std::logic_error("parallel path is not a basis element");
    CKey key;
    if (e.p.trivial()) {
        key.obj = e.p.vertex;
    } else {
        for (int a : e.p.arrows) {
            const int idx = cat.find({a});
            if (idx < 0) throw std::logic_error("arrow is not a basis element");
            key.in.push_back(idx);
        }
    }
    c.add(key, out, Scalar::one(cat.field()));
    return c;
}

std::string fp_text(const GentlePresentation& p, const FpBasisElement& e) {
    std::string in;
    if (e.p.trivial()) {
        in = path_text(p, e.p);
    } else {
        for (std::size_t i = 0; i < e.p.arrows.size(); ++i) {
            if (i) in += ", ";
            in += p.arrow(e.p.arrows[i]).name;
        }
    }
    return "(" + in + ") -> " + path_text(p, e.pbar);
}

HH1Report hh1_structure(const GentlePresentation& p, const std::string& flavor) {
    if (!flavor.empty() && flavor != "smooth" && flavor != "proper")
        throw InputError("unknown Witt flavor '" + flavor + "'");
    HH1Report r;
    const AAGInvariant phi = aag_invariant(p);
    const SurfaceInvariants inv = surface_invariants(p);
    r.phi11 = phi(1, 1);
    r.phi00 = phi(0, 0);
    r.h1_rank = 2 * inv.genus + inv.b() - 1;
    r.smooth = is_smooth(p);
    r.proper = is_proper(p);
    r.exceptional_kronecker = is_kronecker_surface(inv);
    r.fp_degree1 = fp_basis_extended(p).count_degree(1);
    r.dim_finite_part = r.fp_degree1 + r.h1_rank;
    if (r.phi00 > 0) {
        if (flavor == "smooth" || (flavor.empty() && r.smooth && !r.proper)) r.witt_flavor = "polynomial";
        else if (flavor == "proper" || (flavor.empty() && r.proper)) r.witt_flavor = "complete";
        else if (flavor.empty() && r.smooth) r.witt_flavor = "polynomial";
    }
    return r;
}

std::string hh1_json(const HH1Report& r, int indent) {
    nlohmann::ordered_json j;
    j["dim_finite_part"] = r.dim_finite_part;
    j["phi11"] = r.phi11;
    j["phi00"] = r.phi00;
    j["h1_rank"] = r.h1_rank;
    j["fp_degree1"] = r.fp_degree1;
    j["witt_flavor"] = r.witt_flavor;
    j["exceptional_kronecker"] = r.exceptional_kronecker;
    return j.dump(indent);
}

FormalityVerdict formality_check_cochains(const Cochain& mu, const std::vector<Cochain>& reps) {
    FormalityVerdict v;
    for (int i = 0; i < static_cast<int>(reps.size()); ++i)
        for (int j = 0; j < static_cast<int>(reps.size()); ++j) {
            v.pairs.push_back({i, j});
            const int cap = std::max(reps[i].max_arity(), 0) + std::max(reps[j].max_arity(), 0);
            Cochain c = cup(mu, reps[i], reps[j], std::max(cap, 2));
            if (v.ok && !c.is_zero()) {
                v.ok = false;
                v.failing_first = i;
                v.failing_second = j;
                const auto& e = *c.table().begin();
                v.failing_value = c.key_text(e.first) + " -> " + lincomb_text(mu.cat(), e.second);
            }
        }
    return v;
}

FormalityVerdict formality_check(const GentlePresentation& p, int cap) {
    const FpBasis basis = fp_basis(p, cap);
    if (basis.cyclic || !is_smooth(p)) throw ScopeError("cyclic antipaths present: the algebra is not homologically smooth");
    if (!is_proper(p)) throw ScopeError("permitted cycles present: the algebra is not proper");
    const BasisCategory cat = BasisCategory::from_presentation(p);
    int top = 2;
    for (const auto& e : basis.elements) top = std::max(top, 2 * e.arity);
    const Cochain mu = Cochain::composition(cat, top);
    std::vector<Cochain> reps;
    for (const auto& e : basis.elements) reps.push_back(fp_cochain(cat, e, top));
    return formality_check_cochains(mu, reps);
}

namespace {

// Basis of the arity-r, shifted-degree-D normalized cochains: (key, output) pairs.
std::vector<std::pair<CKey, int>> cochain_basis(const BasisCategory& cat, int r, int deg) {
    std::vector<std::pair<CKey, int>> out;
    std::vector<CKey> keys;
    if (r == 0) {
        for (int v = 0; v < cat.num_objects(); ++v) keys.push_back({v, {}});
    } else {
        for (const auto& t : cat.chains(r)) keys.push_back({-1, t});
    }
    for (const CKey& k : keys) {
        int s, t, d = 0;
        if (r == 0) {
            s = t = k.obj;
        } else {
            s = cat.elem(k.in.front()).src;
            t = cat.elem(k.in.back()).tgt;
            for (int a : k.in) d += cat.elem(a).deg;
        }
        const int want = d - r + 1 + deg;
        for (int o = 0; o < cat.size(); ++o) {
            const BasisElem& e = cat.elem(o);
            if (e.src == s && e.tgt == t && e.deg == want) out.push_back({k, o});
        }
    }
    return out;
}

// Rank of the differential from arity r, degree deg, to arity r + 1.
int differential_rank(const BasisCategory& cat, const Cochain& mu, int r, int deg) {
    if (r < 0) return 0;
    const auto src = cochain_basis(cat, r, deg);
    std::map<std::pair<CKey, int>, int> index;
    RowReducer red(cat.field());
    for (const auto& [k, o] : src) {
        Cochain f(cat, deg, r + 1);
        f.add(k, o, Scalar::one(cat.field()));
        Cochain df = differential(mu, f, r + 1);
        SparseVec row;
        for (const auto& [dk, val] : df.table()) {
            if (dk.arity() != r + 1) continue;
            for (const auto& [oi, c] : val.terms()) {
                auto key = std::make_pair(dk, oi);
                auto it = index.find(key);
                if (it == index.end()) it = index.emplace(key, static_cast<int>(index.size())).first;
                row[it->second] = c;
            }
        }
        red.add(row);
    }
    return red.rank();
}

}  // namespace

int hochschild_dimension(const BasisCategory& cat, int classical_degree, int max_arity) {
    const int deg = classical_degree - 1;
    const Cochain mu = Cochain::composition(cat, max_arity + 1);
    int total = 0;
    for (int r = 0; r <= max_arity; ++r) {
        const int dim = static_cast<int>(cochain_basis(cat, r, deg).size());
        const int z = dim - differential_rank(cat, mu, r, deg);
        const int b = differential_rank(cat, mu, r - 1, deg - 1);
        total += z - b;
    }
    return total;
}

}  // namespace gentle
