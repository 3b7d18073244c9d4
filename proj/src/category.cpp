#include "gentle/category.hpp"

#include "gentle/errors.hpp"

#include <algorithm>

namespace gentle {

BasisCategory BasisCategory::from_presentation(const GentlePresentation& p) {
    if (has_permitted_cycle(p))
        throw ScopeError("presentation has a permitted cycle: hom spaces are infinite-dimensional");
    BasisCategory c;
    c.field_ = p.field();
    c.pres_ = p;
    c.objects_ = p.quiver().vertices;
    for (int v = 0; v < p.num_vertices(); ++v) {
        c.id_of_.push_back(static_cast<int>(c.elems_.size()));
        c.elems_.push_back({v, v, 0, true, "e_" + p.quiver().vertices[v], {}});
    }
    for (const auto& w : permitted_paths(p, p.num_arrows())) {
        if (w.trivial()) continue;
        BasisElem e{path_source(p, w), path_target(p, w), path_degree(p, w), false, path_text(p, w), w.arrows};
        c.by_arrows_[w.arrows] = static_cast<int>(c.elems_.size());
        c.elems_.push_back(std::move(e));
    }
    c.out_from_.assign(c.objects_.size(), {});
    for (int i = 0; i < c.size(); ++i)
        if (!c.elems_[i].identity) c.out_from_[c.elems_[i].src].push_back(i);
    return c;
}

int BasisCategory::compose(int a, int b) const {
    const auto& x = elems_[a];
    const auto& y = elems_[b];
    if (x.tgt != y.src) return -1;
    if (x.identity) return b;
    if (y.identity) return a;
    if (pres_.is_relation(x.arrows.back(), y.arrows.front())) return -1;
    std::vector<int> w = x.arrows;
    w.insert(w.end(), y.arrows.begin(), y.arrows.end());
    auto it = by_arrows_.find(w);
    return it == by_arrows_.end() ? -1 : it->second;
}

int BasisCategory::find(const std::vector<int>& arrows, int vertex) const {
    if (arrows.empty()) return vertex >= 0 && vertex < num_objects() ? id_of_[vertex] : -1;
    auto it = by_arrows_.find(arrows);
    return it == by_arrows_.end() ? -1 : it->second;
}

int BasisCategory::find_name(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (elems_[i].name == name) return i;
    return -1;
}

std::vector<int> BasisCategory::nonidentity() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (!elems_[i].identity) out.push_back(i);
    return out;
}

const std::vector<std::vector<int>>& BasisCategory::chains(int length) const {
    auto it = chain_cache_.find(length);
    if (it != chain_cache_.end()) return it->second;
    std::vector<std::vector<int>> out;
    if (length == 0) {
        out.push_back({});
    } else if (length == 1) {
        for (int i : nonidentity()) out.push_back({i});
    } else {
        for (const auto& c : chains(length - 1))
            for (int j : out_from_[elems_[c.back()].tgt]) {
                auto e = c;
                e.push_back(j);
                out.push_back(std::move(e));
            }
    }
    return chain_cache_[length] = std::move(out);
}

bool BasisCategory::has_chain(int length) const {
    if (length <= 0) return true;
    // alive[i]: a chain of the current length starts with element i.
    std::vector<char> alive(elems_.size(), 0);
    for (int i : nonidentity()) alive[i] = 1;
    for (int len = 1; len < length; ++len) {
        std::vector<char> next(elems_.size(), 0);
        bool any = false;
        for (int i : nonidentity())
            for (int j : out_from_[elems_[i].tgt])
                if (alive[j]) {
                    next[i] = 1;
                    any = true;
                    break;
                }
        if (!any) return false;
        alive.swap(next);
    }
    return std::find(alive.begin(), alive.end(), 1) != alive.end();
}

}  // namespace gentle
