#include "fixtures.hpp"

#include "gentle/corpus.hpp"
#include "gentle/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>

using namespace gentle;

namespace fixtures {

std::string system_key(const ArcSystem& a) {
    std::vector<std::string> v = a.arcs;
    std::sort(v.begin(), v.end());
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
    return s;
}

std::vector<Diagram> reduced_strings(const FukayaCategory& F, int max_edges) {
    const BasisCategory& cat = *F.cat;
    auto head = [&](const LinComb* l) { return cat.elem(l->terms().begin()->first).arrows.front(); };
    auto tail = [&](const LinComb* l) { return cat.elem(l->terms().begin()->first).arrows.back(); };
    std::vector<Diagram> out;
    std::set<std::string> seen;
    std::function<void(const Diagram&)> grow = [&](const Diagram& X) {
        if (mc_violation(F, X)) return;
        for (int k = 1; k + 1 < static_cast<int>(X.nodes.size()); ++k) {
            const LinComb *o1 = X.edge(k, k - 1), *o2 = X.edge(k, k + 1);
            if (o1 && o2 && head(o1) == head(o2)) return;
            const LinComb *i1 = X.edge(k - 1, k), *i2 = X.edge(k + 1, k);
            if (i1 && i2 && tail(i1) == tail(i2)) return;
        }
        if (seen.insert(canonical_form(F, X)).second) out.push_back(X);
        if (static_cast<int>(X.edges.size()) >= max_edges) return;
        const int last = static_cast<int>(X.nodes.size()) - 1;
        const TwNode cur = X.nodes[last];
        for (int h = 0; h < cat.size(); ++h) {
            const BasisElem& e = cat.elem(h);
            if (e.identity) continue;
            if (e.src == cur.obj) {
                Diagram Y = X;
                Y.nodes.push_back({e.tgt, 1 + cur.shift - e.deg});
                Y.edges.push_back({last, last + 1, LinComb::basis(h, cat.field())});
                grow(Y);
            }
            if (e.tgt == cur.obj) {
                Diagram Y = X;
                Y.nodes.push_back({e.src, e.deg + cur.shift - 1});
                Y.edges.push_back({last + 1, last, LinComb::basis(h, cat.field())});
                grow(Y);
            }
        }
    };
    for (int o = 0; o < cat.num_objects(); ++o) {
        Diagram X;
        X.nodes.push_back({o, 0});
        grow(X);
    }
    return out;
}

std::vector<const Exchange*> Disk4::from(const std::string& key) const {
    std::vector<const Exchange*> out;
    for (const auto& e : exchanges)
        if (system_key(e->from.arcs) == key) out.push_back(e.get());
    return out;
}

Disk4 disk4() {
    Disk4 d;
    const auto formal = disk4_formal_systems();
    std::map<std::string, ArcSystem> sys;
    for (const auto& arcs : formal) {
        ArcSystem a = disk4_system(arcs);
        d.cats.emplace(system_key(a), build_fukaya(a));
        sys.emplace(system_key(a), std::move(a));
    }
    for (const auto& A : formal)
        for (const auto& B : formal) {
            std::set<std::string> u(A.begin(), A.end());
            u.insert(B.begin(), B.end());
            if (u.size() != A.size() + 1) continue;
            ArcSystem both;
            try {
                both = disk4_system({u.begin(), u.end()});
            } catch (const InputError&) {
                continue;  // crossing diagonals
            }
            try {
                d.exchanges.push_back(std::make_unique<Exchange>(
                    triangle_exchange(sys.at(system_key(disk4_system(A))), sys.at(system_key(disk4_system(B))), both)));
            } catch (const InputError&) {
                // no triangle in the union
            }
        }
    return d;
}

std::map<std::string, std::vector<ExchangePath>> short_paths(const Disk4& d, const std::string& key) {
    std::map<std::string, std::vector<ExchangePath>> out;
    for (const Exchange* e1 : d.from(key)) {
        const std::string n1 = e1->removed + ">" + e1->added;
        out[system_key(e1->to.arcs)].push_back({n1, {e1}});
        for (const Exchange* e2 : d.from(system_key(e1->to.arcs)))
            out[system_key(e2->to.arcs)].push_back({n1 + " " + e2->removed + ">" + e2->added, {e1, e2}});
    }
    return out;
}

}  // namespace fixtures
