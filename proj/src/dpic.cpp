#include "gentle/dpic.hpp"

#include "gentle/errors.hpp"
#include "gentle/hochschild.hpp"

#include <json.hpp>

namespace gentle {

RescalingData rescaling_group(const GentlePresentation& p) {
    const int q0 = p.num_vertices(), q1 = p.num_arrows();
    RescalingData r;
    r.rank = q1 - q0 + 1;
    r.sequence = {1, q0, q1, r.rank};
    const SurfaceInvariants inv = surface_invariants(p);
    if (r.rank != 2 * inv.genus + inv.b() - 1)
        throw MathError("rescaling rank " + std::to_string(r.rank) + " differs from 2g + b - 1 = " +
                        std::to_string(2 * inv.genus + inv.b() - 1));
    return r;
}

GroupNode GroupNode::atom(std::string name, std::vector<std::pair<std::string, int>> params) {
    GroupNode n;
    n.kind = Kind::Atom;
    n.name = std::move(name);
    n.params = std::move(params);
    return n;
}

GroupNode GroupNode::product(std::vector<GroupNode> factors) {
    GroupNode n;
    n.kind = Kind::Product;
    n.children = std::move(factors);
    return n;
}

GroupNode GroupNode::semidirect(GroupNode normal, GroupNode acting) {
    GroupNode n;
    n.kind = Kind::Semidirect;
    n.children = {std::move(normal), std::move(acting)};
    return n;
}

namespace {

int phi_of(const SurfaceInvariants& inv, int n, int d) {
    int count = 0;
    for (const auto& c : inv.components)
        if (c.segments == n && c.segments - c.winding == d) ++count;
    return count;
}

const char* kFlavors[] = {"proper", "smooth", "smooth_and_proper", "punctured"};

void require_flavor(const std::string& flavor) {
    for (const char* f : kFlavors)
        if (flavor == f) return;
    throw InputError("unknown flavor '" + flavor + "' (expected proper, smooth, smooth_and_proper or punctured)");
}

}  // namespace

GroupDescription dpic_description(const SurfaceInvariants& inv, int characteristic, const std::string& flavor) {
    require_flavor(flavor);
    if (characteristic == 2) throw InputError("characteristic 2 is not supported");
    if (characteristic < 0) throw InputError("characteristic must be 0 or an odd prime");
    bool all_marked = !inv.components.empty();
    for (const auto& c : inv.components) all_marked = all_marked && c.fully_marked;
    if (flavor == "punctured" && !all_marked)
        throw InputError("the punctured flavor needs every boundary component fully marked");
    if (flavor != "punctured" && all_marked)
        throw InputError("every boundary component is fully marked: use the punctured flavor");

    const int rank = 2 * inv.genus + inv.b() - 1;
    GroupDescription d;
    d.surface = inv;
    const GroupNode mcg = GroupNode::atom("MCGgraded");
    const GroupNode torus = GroupNode::atom("UnitsTorus", {{"rank", rank}});
    const GroupNode additive = GroupNode::atom("AdditiveGroup", {{"dim", phi_of(inv, 1, 1)}});

    if (is_kronecker_surface(inv)) {
        if (characteristic != 0)
            throw ScopeError("the Kronecker surface is covered in characteristic 0 only");
        d.root = GroupNode::semidirect(GroupNode::atom("PGL2"), mcg);
        return d;
    }
    if (flavor == "punctured") {
        if (characteristic != 0) throw ScopeError("the punctured case is covered in characteristic 0 only");
        const GroupNode z = (inv.genus == 0 && inv.b() == 2)
                                ? GroupNode::semidirect(GroupNode::atom("UnitsTorus", {{"rank", 2}}),
                                                        GroupNode::atom("CyclicOrder2"))
                                : torus;
        d.root = GroupNode::semidirect(z, mcg);
        return d;
    }
    if (characteristic != 0) {
        if (flavor != "smooth_and_proper")
            throw ScopeError("positive characteristic is covered for smooth and proper algebras only");
        d.root = GroupNode::semidirect(GroupNode::semidirect(additive, torus), mcg);
        return d;
    }
    // Characteristic 0: smooth and proper algebras fall under the proper formula.
    const std::string aut = flavor == "smooth" ? "PolynomialAut" : "PowerSeriesAut";
    const GroupNode kernel =
        GroupNode::product({additive, GroupNode::atom(aut, {{"power", phi_of(inv, 0, 0)}})});
    d.root = GroupNode::semidirect(GroupNode::semidirect(kernel, torus), mcg);
    return d;
}

GroupDescription dpic_description(const GentlePresentation& p, int characteristic, const std::string& flavor) {
    require_flavor(flavor);
    const bool proper = is_proper(p), smooth = is_smooth(p);
    if ((flavor == "proper" || flavor == "smooth_and_proper") && !proper)
        throw InputError("flavor " + flavor + " needs a finite-dimensional algebra (no permitted cycles)");
    if ((flavor == "smooth" || flavor == "smooth_and_proper") && !smooth)
        throw InputError("flavor " + flavor + " needs a homologically smooth algebra (no forbidden cycles)");
    return dpic_description(surface_invariants(p), characteristic, flavor);
}

namespace {

nlohmann::ordered_json node_json(const GroupNode& n, const SurfaceInvariants& inv) {
    nlohmann::ordered_json j;
    switch (n.kind) {
    case GroupNode::Kind::Atom: {
        nlohmann::ordered_json a;
        a["name"] = n.name;
        for (const auto& [k, v] : n.params) a[k] = v;
        if (n.name == "MCGgraded") a["surface"] = nlohmann::ordered_json::parse(surface_invariants_json(inv));
        j["atom"] = a;
        break;
    }
    case GroupNode::Kind::Product:
    case GroupNode::Kind::Semidirect: {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& c : n.children) arr.push_back(node_json(c, inv));
        j[n.kind == GroupNode::Kind::Product ? "product" : "semidirect"] = arr;
        break;
    }
    }
    return j;
}

}  // namespace

std::string dpic_json(const GroupDescription& d, int indent) { return node_json(d.root, d.surface).dump(indent); }

bool is_kronecker_quiver(const GentlePresentation& p) {
    if (p.num_vertices() != 2 || p.num_arrows() != 2 || !p.relations().empty()) return false;
    const Arrow &a = p.arrow(0), &b = p.arrow(1);
    return a.src == b.src && a.tgt == b.tgt && a.src != a.tgt;
}

HH1Crosscheck hh1_dimension_crosscheck(const GentlePresentation& p) {
    if (!is_proper(p) || !is_smooth(p)) throw ScopeError("the cross-check needs a smooth and proper algebra");
    const SurfaceInvariants inv = surface_invariants(p);
    if (is_kronecker_quiver(p)) throw ScopeError("the Kronecker quiver is exceptional");
    HH1Crosscheck c;
    c.surface_side = aag_invariant(p)(1, 1) + 2 * inv.genus + inv.b() - 1;
    c.algebra_side = fp_basis_extended(p).count_degree(1) + rescaling_group(p).rank;
    c.pass = c.surface_side == c.algebra_side;
    return c;
}

}  // namespace gentle
