#include "gentle/fukaya.hpp"

#include "gentle/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gentle {

std::map<ArcEnd, int> arrow_leaving(const ArcSystem& a) {
    std::map<ArcEnd, int> out;
    int next = 0;
    for (const auto& iv : a.intervals)
        for (int j = 0; j < iv.num_flows(); ++j) out[iv.ends[j]] = next++;
    return out;
}

namespace {

// A corner flow from `start` to `stop` along one interval; the polygon side after it runs
// along the arc from `stop` to its other end, which is the start of the next corner.
struct Corner {
    ArcEnd start, stop;
    auto operator<=>(const Corner&) const = default;
};
using Polygon = std::vector<Corner>;

void require_linear(const ArcSystem& a) {
    for (const auto& iv : a.intervals)
        if (iv.cyclic) throw InputError("interval " + iv.name + " is a fully marked boundary component");
}

std::vector<Polygon> closed_faces(const ArcSystem& a) {
    std::vector<Polygon> out;
    for (const auto& face : faces(a)) {
        if (!face.closed) continue;
        const int m = static_cast<int>(face.corners.size());
        if (m < 3) throw InputError("closed face with " + std::to_string(m) + " corners: arc system is not full");
        Polygon p;
        for (ArcEnd e : face.corners) p.push_back({e, a.next(e)});
        out.push_back(std::move(p));
    }
    return out;
}

Polygon rotated(const Polygon& p, int first) {
    Polygon r;
    for (std::size_t k = 0; k < p.size(); ++k) r.push_back(p[(first + k) % p.size()]);
    return r;
}

Polygon canonical(const Polygon& p) {
    Polygon best = p;
    for (std::size_t k = 1; k < p.size(); ++k) best = std::min(best, rotated(p, static_cast<int>(k)));
    return best;
}

DiskSequence to_sequence(const ArcSystem& a, const std::map<ArcEnd, int>& leaving, const Polygon& p) {
    DiskSequence d;
    for (const Corner& c : p) {
        std::string name;
        std::vector<int> word;
        for (ArcEnd x = c.start; !(x == c.stop); x = a.next(x)) {
            const auto [iv, pos] = a.where(x);
            word.push_back(leaving.at(x));
            name = name.empty() ? a.flow_name(iv, pos) : a.flow_name(iv, pos) + "." + name;
            d.degree_sum += a.flow_deg(x);
        }
        d.names.push_back(name);
        d.words.push_back(std::move(word));
    }
    return d;
}

std::vector<Polygon> immersed_polygons(const ArcSystem& a, int max_length, bool* truncated) {
    const std::vector<Polygon> faces_ = closed_faces(a);
    // Closed face and corner index ending at each arc end.
    std::map<ArcEnd, std::pair<int, int>> ending;
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f)
        for (int k = 0; k < static_cast<int>(faces_[f].size()); ++k) ending[faces_[f][k].stop] = {f, k};
    std::set<Polygon> seen;
    std::vector<Polygon> out, queue;
    for (const auto& f : faces_) {
        Polygon c = canonical(f);
        if (seen.insert(c).second) queue.push_back(c);
    }
    if (truncated) *truncated = false;
    while (!queue.empty()) {
        Polygon p = queue.back();
        queue.pop_back();
        out.push_back(p);
        const int m = static_cast<int>(p.size());
        for (int k = 0; k < m; ++k) {
            // Glue the closed face on the far side of the arc after corner k.
            auto it = ending.find(ArcSystem::iota(p[k].stop));
            if (it == ending.end()) continue;
            const Polygon& face = faces_[it->second.first];
            const int n = static_cast<int>(face.size());
            if (m + n - 2 > max_length) {
                if (truncated) *truncated = true;
                continue;
            }
            const Polygon P = rotated(p, (k + 1) % m);             // side after P.back()
            const Polygon F = rotated(face, (it->second.second + 1) % n);  // side after F.back()
            Polygon g;
            g.push_back({F.back().start, P.front().stop});
            for (int i = 1; i + 1 < m; ++i) g.push_back(P[i]);
            g.push_back({P.back().start, F.front().stop});
            for (int i = 1; i + 1 < n; ++i) g.push_back(F[i]);
            Polygon c = canonical(g);
            if (seen.insert(c).second) queue.push_back(c);
        }
    }
    std::sort(out.begin(), out.end(), [](const Polygon& x, const Polygon& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    return out;
}

}  // namespace

std::vector<DiskSequence> disk_sequences(const ArcSystem& a) {
    require_linear(a);
    const auto leaving = arrow_leaving(a);
    std::vector<DiskSequence> out;
    for (const auto& p : closed_faces(a)) out.push_back(to_sequence(a, leaving, p));
    return out;
}

std::vector<DiskSequence> immersed_disk_sequences(const ArcSystem& a, int max_length, bool* truncated) {
    require_linear(a);
    const auto leaving = arrow_leaving(a);
    std::vector<DiskSequence> out;
    for (const auto& p : immersed_polygons(a, max_length, truncated)) out.push_back(to_sequence(a, leaving, p));
    return out;
}

FukayaCategory build_fukaya(const ArcSystem& a, Field f, const FukayaOptions& opt) {
    FukayaCategory fc;
    fc.arcs = a;
    fc.faces = disk_sequences(a);
    fc.disks = immersed_disk_sequences(a, opt.max_disk_length, &fc.disks_truncated);
    if (fc.disks_truncated)
        throw ScopeError("immersed disks longer than " + std::to_string(opt.max_disk_length) +
                         " corners exist: the higher products are unbounded");
    fc.pres = build_flows(a, f, true);
    fc.cat = std::make_shared<BasisCategory>(BasisCategory::from_presentation(fc.pres));
    const BasisCategory& cat = *fc.cat;
    int top = 2;
    for (auto* list : {&fc.faces, &fc.disks})
        for (auto& d : *list) {
            for (const auto& w : d.words) {
                d.elems.push_back(cat.find(w));
                if (d.elems.back() < 0) throw MathError("disk corner is not a flow: " + d.names[d.elems.size() - 1]);
            }
            top = std::max(top, static_cast<int>(d.words.size()));
        }
    fc.mu = Cochain::composition(cat, std::max(top, Cochain::kDefaultCap));

    std::map<CKey, LinComb> higher;
    auto install = [&](const CKey& key, const LinComb& value) {
        auto [it, fresh] = higher.emplace(key, value);
        if (fresh) return;
        if (it->second == value) {
            ++fc.shared_tuples;
        } else {
            fc.conflicts.push_back(fc.mu.key_text(key) + " -> " + lincomb_text(cat, it->second) + " vs " +
                                   lincomb_text(cat, value));
        }
    };
    for (const auto& d : fc.disks) {
        const int m = static_cast<int>(d.elems.size());
        for (int r = 0; r < m; ++r) {
            std::vector<int> seq(m);
            for (int k = 0; k < m; ++k) seq[k] = d.elems[(r + k) % m];
            const BasisElem& first = cat.elem(seq.front());
            const BasisElem& last = cat.elem(seq.back());
            for (int x = 0; x < cat.size(); ++x) {
                const BasisElem& e = cat.elem(x);
                if (e.tgt == first.src) {
                    const int fd = cat.compose(x, seq.front());
                    if (fd >= 0) {
                        CKey key{-1, seq};
                        key.in.front() = fd;
                        const long sign = (!opt.drop_prefix_sign && (e.deg % 2 != 0)) ? -1 : 1;
                        install(key, LinComb::basis(x, cat.field(), sign));
                    }
                }
                if (e.src == last.tgt) {
                    const int dg = cat.compose(seq.back(), x);
                    if (dg >= 0) {
                        CKey key{-1, seq};
                        key.in.back() = dg;
                        install(key, LinComb::basis(x, cat.field()));
                    }
                }
            }
        }
    }
    for (const auto& [key, value] : higher) fc.mu.add(key, value);
    return fc;
}

}  // namespace gentle
