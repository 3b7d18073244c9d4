#include "gentle/strings.hpp"

#include "gentle/errors.hpp"
#include "gentle/linalg.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

namespace gentle {

// ------------------------------------------------------------------ small pieces

const LinComb* Diagram::edge(int from, int to) const {
    for (const auto& e : edges)
        if (e.from == from && e.to == to) return &e.label;
    return nullptr;
}

void Diagram::shift_by(int k) {
    for (auto& n : nodes) n.shift += k;
}

void TwMorphism::add(int i, int j, const LinComb& v) {
    if (v.is_zero()) return;
    auto it = comp.find({i, j});
    if (it == comp.end()) {
        comp.emplace(std::make_pair(i, j), v);
        return;
    }
    it->second.add(v);
    if (it->second.is_zero()) comp.erase(it);
}

namespace {

Field field_of(const FukayaCategory& F) { return F.cat->field(); }

long parity_sign(int s) { return (s % 2 == 0) ? 1 : -1; }

void axpy(SparseVec& v, const SparseVec& w, const Scalar& c) {
    for (const auto& [k, x] : w) {
        auto it = v.find(k);
        const Scalar nv = (it == v.end()) ? c * x : it->second + c * x;
        if (nv.is_zero()) {
            if (it != v.end()) v.erase(it);
        } else if (it == v.end()) {
            v.emplace(k, nv);
        } else {
            it->second = nv;
        }
    }
}

// Basis of the kernel of the linear map sending column j to images[j].
std::vector<SparseVec> kernel(const std::vector<SparseVec>& images, Field f) {
    // Each stored row has no entry at the pivot of any earlier row, so one pass in insertion
    // order reduces completely.
    std::vector<std::pair<SparseVec, SparseVec>> rows;
    std::vector<SparseVec> ker;
    for (std::size_t j = 0; j < images.size(); ++j) {
        SparseVec v = images[j];
        SparseVec comb{{static_cast<int>(j), Scalar::one(f)}};
        for (const auto& [r, c] : rows) {
            const auto piv = r.begin();
            auto it = v.find(piv->first);
            if (it == v.end()) continue;
            const Scalar t = -(it->second / piv->second);
            axpy(v, r, t);
            axpy(comb, c, t);
        }
        if (v.empty()) ker.push_back(std::move(comb));
        else rows.emplace_back(std::move(v), std::move(comb));
    }
    return ker;
}

// Coefficients c with sum c_j columns[j] = target, if any.
std::optional<std::vector<Scalar>> solve(const std::vector<SparseVec>& columns, const SparseVec& target, Field f) {
    std::vector<SparseVec> cols = columns;
    SparseVec neg;
    axpy(neg, target, Scalar(-1L, f));
    cols.push_back(neg);
    const int last = static_cast<int>(columns.size());
    for (const auto& v : kernel(cols, f)) {
        auto it = v.find(last);
        if (it == v.end()) continue;
        std::vector<Scalar> c(columns.size(), Scalar::zero(f));
        for (const auto& [k, x] : v)
            if (k != last) c[k] = x / it->second;
        return c;
    }
    return std::nullopt;
}

// Basis of Hom^k(X, Y): triples (source node, target node, basis element).
struct HomSpace {
    std::vector<std::tuple<int, int, int>> basis;
    std::map<std::tuple<int, int, int>, int> index;

    HomSpace(const FukayaCategory& F, const Diagram& X, const Diagram& Y, int k) {
        const BasisCategory& cat = *F.cat;
        for (int i = 0; i < static_cast<int>(X.nodes.size()); ++i)
            for (int j = 0; j < static_cast<int>(Y.nodes.size()); ++j)
                for (int h = 0; h < cat.size(); ++h) {
                    const BasisElem& e = cat.elem(h);
                    if (e.src != X.nodes[i].obj || e.tgt != Y.nodes[j].obj) continue;
                    if (e.deg + Y.nodes[j].shift - X.nodes[i].shift != k) continue;
                    index[{i, j, h}] = static_cast<int>(basis.size());
                    basis.emplace_back(i, j, h);
                }
    }

    int size() const { return static_cast<int>(basis.size()); }

    TwMorphism morphism(const SparseVec& v, int degree, Field f) const {
        TwMorphism m;
        m.degree = degree;
        for (const auto& [k, c] : v) {
            const auto [i, j, h] = basis[k];
            LinComb l(f);
            l.add(h, c);
            m.add(i, j, l);
        }
        return m;
    }

    SparseVec coords(const TwMorphism& m) const {
        SparseVec v;
        for (const auto& [ij, l] : m.comp)
            for (const auto& [h, c] : l.terms()) {
                auto it = index.find({ij.first, ij.second, h});
                if (it == index.end()) throw MathError("morphism component outside the hom space");
                v[it->second] = c;
            }
        return v;
    }
};

Diagram single(int obj, int shift) {
    Diagram d;
    d.nodes.push_back({obj, shift});
    return d;
}

// Deterministic small nonzero coefficients for generic combinations.
Scalar generic_coeff(int k, int attempt, Field f) {
    static const long vals[] = {1, 2, 3, 5, 7, 11, 13, 17, 19, 23};
    long v = vals[(k * 3 + attempt * 7) % 10] + attempt;
    Scalar s(v, f);
    if (s.is_zero()) s = Scalar::one(f);
    return s;
}

}  // namespace

// ------------------------------------------------------------------ mu on twisted complexes

TwMorphism tw_mu(const FukayaCategory& F, const std::vector<const Diagram*>& objs,
                 const std::vector<const TwMorphism*>& maps) {
    const int d = static_cast<int>(maps.size());
    if (static_cast<int>(objs.size()) != d + 1) throw std::logic_error("tw_mu: objects and maps do not match");
    const BasisCategory& cat = *F.cat;
    const Field f = cat.field();
    const int max_len = std::max(2, F.mu.max_arity());

    TwMorphism out;
    out.degree = 2 - d;
    for (const auto* m : maps) out.degree += m->degree;

    // Outgoing steps per stage: stage k < d offers the edges of objs[k] and the components of
    // maps[k]; the last stage offers the edges of objs[d].
    using Step = std::pair<int, const LinComb*>;
    std::vector<std::vector<std::vector<Step>>> edges_out(d + 1), maps_out(d);
    for (int k = 0; k <= d; ++k) {
        edges_out[k].resize(objs[k]->nodes.size());
        for (const auto& e : objs[k]->edges) edges_out[k][e.from].push_back({e.to, &e.label});
    }
    for (int k = 0; k < d; ++k) {
        maps_out[k].resize(objs[k]->nodes.size());
        for (const auto& [ij, l] : maps[k]->comp) maps_out[k][ij.first].push_back({ij.second, &l});
    }

    std::vector<const LinComb*> seq;
    std::vector<int> tuple;
    auto evaluate = [&](int start, int end) {
        if (seq.size() < 2) return;
        const Scalar sign(parity_sign(objs[0]->nodes[start].shift), f);
        LinComb total(f);
        std::function<void(std::size_t, Scalar)> expand = [&](std::size_t pos, Scalar c) {
            if (pos == seq.size()) {
                const LinComb v = F.mu.eval(CKey{-1, tuple});
                if (!v.is_zero()) total.add(v, c);
                return;
            }
            for (const auto& [h, x] : seq[pos]->terms()) {
                tuple.push_back(h);
                expand(pos + 1, c * x);
                tuple.pop_back();
            }
        };
        expand(0, sign);
        out.add(start, end, total);
    };

    std::function<void(int, int, int)> dfs = [&](int k, int node, int start) {
        if (k == d) evaluate(start, node);
        if (static_cast<int>(seq.size()) >= max_len) return;
        for (const auto& [to, label] : edges_out[k][node]) {
            seq.push_back(label);
            dfs(k, to, start);
            seq.pop_back();
        }
        if (k < d)
            for (const auto& [to, label] : maps_out[k][node]) {
                seq.push_back(label);
                dfs(k + 1, to, start);
                seq.pop_back();
            }
    };
    for (int s = 0; s < static_cast<int>(objs[0]->nodes.size()); ++s) dfs(0, s, s);
    return out;
}

TwMorphism tw_differential(const FukayaCategory& F, const Diagram& X, const Diagram& Y, const TwMorphism& f) {
    return tw_mu(F, {&X, &Y}, {&f});
}

TwMorphism tw_compose(const FukayaCategory& F, const Diagram& X, const Diagram& Y, const Diagram& Z,
                      const TwMorphism& f, const TwMorphism& g) {
    return tw_mu(F, {&X, &Y, &Z}, {&f, &g});
}

TwMorphism tw_identity(const FukayaCategory& F, const Diagram& X) {
    TwMorphism id;
    for (int i = 0; i < static_cast<int>(X.nodes.size()); ++i)
        id.add(i, i, LinComb::basis(F.cat->identity(X.nodes[i].obj), field_of(F), parity_sign(X.nodes[i].shift)));
    return id;
}

// ------------------------------------------------------------------ validation

std::optional<std::string> mc_violation(const FukayaCategory& F, const Diagram& X) {
    const BasisCategory& cat = *F.cat;
    const int n = static_cast<int>(X.nodes.size());
    for (const auto& node : X.nodes)
        if (node.obj < 0 || node.obj >= cat.num_objects()) return "node on an unknown object";
    std::set<std::pair<int, int>> seen;
    for (const auto& e : X.edges) {
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n || e.from == e.to) return "edge with invalid endpoints";
        if (!seen.insert({e.from, e.to}).second) return "two edges between the same nodes";
        if (e.label.is_zero()) return "zero edge label";
        for (const auto& [h, c] : e.label.terms()) {
            const BasisElem& b = cat.elem(h);
            if (b.src != X.nodes[e.from].obj || b.tgt != X.nodes[e.to].obj)
                return "label " + b.name + " does not run between the edge's objects";
            if (b.deg + X.nodes[e.to].shift - X.nodes[e.from].shift != 1)
                return "label " + b.name + " has total degree " +
                       std::to_string(b.deg + X.nodes[e.to].shift - X.nodes[e.from].shift) + ", expected 1";
        }
    }
    const TwMorphism curv = tw_mu(F, {&X}, {});
    if (!curv.is_zero()) {
        const auto& [ij, v] = *curv.comp.begin();
        return "twisted-complex equation fails from node " + std::to_string(ij.first) + " to node " +
               std::to_string(ij.second) + ": " + lincomb_text(cat, v);
    }
    return std::nullopt;
}

namespace {

// Nodes along the path, starting at the lower-numbered end; empty unless X is of type A.
std::vector<int> path_nodes(const Diagram& X) {
    const int n = static_cast<int>(X.nodes.size());
    if (n == 0 || static_cast<int>(X.edges.size()) != n - 1) return {};
    std::vector<std::vector<int>> adj(n);
    std::set<std::pair<int, int>> pairs;
    for (const auto& e : X.edges) {
        if (e.from == e.to || !pairs.insert(std::minmax(e.from, e.to)).second) return {};
        adj[e.from].push_back(e.to);
        adj[e.to].push_back(e.from);
    }
    int start = -1;
    for (int i = 0; i < n; ++i) {
        if (adj[i].size() > 2) return {};
        if (adj[i].size() <= 1 && start < 0) start = i;
    }
    if (start < 0) return {};
    std::vector<int> order{start};
    int prev = -1, cur = start;
    while (true) {
        int nxt = -1;
        for (int v : adj[cur])
            if (v != prev) nxt = v;
        if (nxt < 0) break;
        order.push_back(nxt);
        prev = cur;
        cur = nxt;
    }
    if (static_cast<int>(order.size()) != n) return {};
    return order;
}

Diagram renumbered(const Diagram& X, const std::vector<int>& order) {
    std::vector<int> pos(X.nodes.size());
    Diagram out;
    for (std::size_t k = 0; k < order.size(); ++k) {
        pos[order[k]] = static_cast<int>(k);
        out.nodes.push_back(X.nodes[order[k]]);
    }
    for (const auto& e : X.edges) out.edges.push_back({pos[e.from], pos[e.to], e.label});
    std::sort(out.edges.begin(), out.edges.end(), [](const TwEdge& a, const TwEdge& b) {
        return std::minmax(a.from, a.to) < std::minmax(b.from, b.to);
    });
    return out;
}

}  // namespace

bool is_type_a(const Diagram& X) { return !path_nodes(X).empty(); }

Diagram path_order(const Diagram& X) {
    const auto order = path_nodes(X);
    if (order.empty()) throw InputError("diagram is not of type A");
    return renumbered(X, order);
}

Diagram make_string_complex(const FukayaCategory& F, const Diagram& X) {
    if (X.nodes.empty()) throw InputError("string complex without nodes");
    if (auto why = mc_violation(F, X)) throw InputError("not a twisted complex: " + *why);
    if (!is_type_a(X)) throw InputError("diagram is not of type A");
    return path_order(X);
}

// ------------------------------------------------------------------ text form

namespace {

std::string label_text(const BasisCategory& cat, const LinComb& l) {
    if (l.size() == 1) {
        const auto& [h, c] = *l.terms().begin();
        return c.is_one() ? cat.describe(h) : c.str() + "*" + cat.describe(h);
    }
    return "{" + lincomb_text(cat, l) + "}";
}

}  // namespace

std::string string_text(const FukayaCategory& F, const Diagram& X) {
    const BasisCategory& cat = *F.cat;
    const auto order = path_nodes(X);
    if (order.empty()) throw InputError("diagram is not of type A");
    std::ostringstream os;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const TwNode& n = X.nodes[order[k]];
        if (k > 0) {
            const int a = order[k - 1], b = order[k];
            if (const LinComb* l = X.edge(a, b)) os << " -" << label_text(cat, *l) << "-> ";
            else os << " <-" << label_text(cat, *X.edge(b, a)) << "- ";
        }
        os << F.arcs.arcs[n.obj] << "[" << n.shift << "]";
    }
    return os.str();
}

Diagram parse_string(const FukayaCategory& F, const std::string& text) {
    const BasisCategory& cat = *F.cat;
    const Field f = cat.field();
    std::istringstream is(text);
    std::vector<std::string> tokens;
    for (std::string t; is >> t;) tokens.push_back(t);
    if (tokens.empty() || tokens.size() % 2 == 0) throw ParseError(1, 0, "string must alternate nodes and edges: " + text);

    Diagram X;
    std::vector<bool> explicit_shift;
    for (std::size_t k = 0; k < tokens.size(); k += 2) {
        std::string name = tokens[k];
        int shift = 0;
        bool given = false;
        if (const auto lb = name.find('['); lb != std::string::npos) {
            if (name.back() != ']') throw ParseError(1, 0, "bad node " + name);
            try {
                shift = std::stoi(name.substr(lb + 1, name.size() - lb - 2));
            } catch (const std::exception&) {
                throw ParseError(1, 0, "bad shift in " + name);
            }
            name = name.substr(0, lb);
            given = true;
        }
        const int obj = F.object(name);
        if (obj < 0) throw InputError("unknown arc " + name);
        X.nodes.push_back({obj, shift});
        explicit_shift.push_back(given);
    }
    for (std::size_t k = 1; k < tokens.size(); k += 2) {
        const std::string& t = tokens[k];
        bool forward;
        std::string body;
        if (t.size() >= 4 && t.rfind("<-", 0) == 0 && t.back() == '-') {
            forward = false;
            body = t.substr(2, t.size() - 3);
        } else if (t.size() >= 4 && t.front() == '-' && t.substr(t.size() - 2) == "->") {
            forward = true;
            body = t.substr(1, t.size() - 3);
        } else {
            throw ParseError(1, 0, "bad edge token " + t);
        }
        Scalar c = Scalar::one(f);
        if (const auto star = body.find('*'); star != std::string::npos) {
            try {
                c = Scalar(mpq_class(body.substr(0, star)), f);
            } catch (const std::exception&) {
                throw ParseError(1, 0, "bad coefficient in " + t);
            }
            body = body.substr(star + 1);
        }
        if (c.is_zero()) throw InputError("zero edge label in " + t);
        const int h = cat.find_name(body);
        if (h < 0) throw InputError("unknown flow " + body);
        const int a = static_cast<int>(k / 2), b = a + 1;
        LinComb l(f);
        l.add(h, c);
        const int deg = cat.elem(h).deg;
        if (!explicit_shift[b]) X.nodes[b].shift = forward ? 1 + X.nodes[a].shift - deg : deg + X.nodes[a].shift - 1;
        if (forward) X.edges.push_back({a, b, l});
        else X.edges.push_back({b, a, l});
    }
    return X;
}

// ------------------------------------------------------------------ cohomology

namespace {

struct HomComplex {
    HomSpace prev, cur, next;
    std::vector<SparseVec> d_cur;   // images of the degree-k basis
    std::vector<SparseVec> d_prev;  // images of the degree-(k-1) basis, in degree-k coordinates

    HomComplex(const FukayaCategory& F, const Diagram& X, const Diagram& Y, int k)
        : prev(F, X, Y, k - 1), cur(F, X, Y, k), next(F, X, Y, k + 1) {
        const Field f = field_of(F);
        for (int b = 0; b < cur.size(); ++b)
            d_cur.push_back(next.coords(tw_differential(F, X, Y, cur.morphism({{b, Scalar::one(f)}}, k, f))));
        for (int b = 0; b < prev.size(); ++b)
            d_prev.push_back(cur.coords(tw_differential(F, X, Y, prev.morphism({{b, Scalar::one(f)}}, k - 1, f))));
    }
};

}  // namespace

HomCohomology hom_cohomology(const FukayaCategory& F, const Diagram& X, const Diagram& Y, int degree) {
    const Field f = field_of(F);
    HomComplex C(F, X, Y, degree);
    HomCohomology h;
    h.degree = degree;
    h.cochains = C.cur.size();
    const auto z = kernel(C.d_cur, f);
    h.cocycles = static_cast<int>(z.size());
    RowReducer r(f);
    for (const auto& b : C.d_prev) r.add(b);
    h.boundaries = r.rank();
    for (const auto& v : z)
        if (r.add(v)) h.reps.push_back(C.cur.morphism(v, degree, f));
    return h;
}

bool is_coboundary(const FukayaCategory& F, const Diagram& X, const Diagram& Y, const TwMorphism& m) {
    HomComplex C(F, X, Y, m.degree);
    RowReducer r(field_of(F));
    for (const auto& b : C.d_prev) r.add(b);
    return r.contains(C.cur.coords(m));
}

std::vector<StringMorphism> graph_and_singleton_basis(const FukayaCategory& F, const Diagram& X, const Diagram& Y,
                                                      int degree) {
    const Field f = field_of(F);
    const BasisCategory& cat = *F.cat;
    HomComplex C(F, X, Y, degree);
    RowReducer classes(f);
    for (const auto& b : C.d_prev) classes.add(b);
    const int boundary_rank = classes.rank();
    std::vector<StringMorphism> out;
    auto offer = [&](const SparseVec& v, const std::string& kind, std::vector<std::pair<int, int>> overlap) {
        if (v.empty() || !classes.add(v)) return;
        out.push_back({kind, C.cur.morphism(v, degree, f), std::move(overlap)});
    };

    // Graph candidates: identities along a common stretch, completed by the cocycles supported
    // on the stretch and its neighbours.
    const auto px = path_nodes(X), py = path_nodes(Y);
    if (!px.empty() && !py.empty()) {
        struct Overlap {
            std::vector<std::pair<int, int>> pairs;
        };
        std::vector<Overlap> overlaps;
        const int nx = static_cast<int>(px.size()), ny = static_cast<int>(py.size());
        auto same_label = [](const LinComb* a, const LinComb* b) {
            if (!a || !b || a->size() != b->size()) return false;
            auto ia = a->terms().begin(), ib = b->terms().begin();
            if (ia == a->terms().end()) return false;
            const Scalar ratio = ib->second / ia->second;
            for (; ia != a->terms().end(); ++ia, ++ib)
                if (ia->first != ib->first || ib->second != ia->second * ratio) return false;
            return true;
        };
        for (int i0 = 0; i0 < nx; ++i0)
            for (int j0 = 0; j0 < ny; ++j0)
                for (int o : {1, -1}) {
                    std::vector<std::pair<int, int>> pairs;
                    for (int t = 0;; ++t) {
                        const int i = i0 + t, j = j0 + o * t;
                        if (i >= nx || j < 0 || j >= ny) break;
                        const TwNode& a = X.nodes[px[i]];
                        const TwNode& b = Y.nodes[py[j]];
                        if (a.obj != b.obj || b.shift - a.shift != degree) break;
                        if (t > 0) {
                            const int xa = px[i - 1], xb = px[i], ya = py[j - o], yb = py[j];
                            const bool fwd = same_label(X.edge(xa, xb), Y.edge(ya, yb));
                            const bool bwd = same_label(X.edge(xb, xa), Y.edge(yb, ya));
                            if (!fwd && !bwd) break;
                        }
                        pairs.push_back({px[i], py[j]});
                        if (o == 1 || pairs.size() > 1) overlaps.push_back({pairs});
                    }
                }
        std::sort(overlaps.begin(), overlaps.end(),
                  [](const Overlap& a, const Overlap& b) { return a.pairs.size() > b.pairs.size(); });

        auto neighbours = [](const std::vector<int>& order, const std::set<int>& inside) {
            std::set<int> out = inside;
            for (std::size_t k = 0; k < order.size(); ++k)
                if (inside.count(order[k])) {
                    if (k > 0) out.insert(order[k - 1]);
                    if (k + 1 < order.size()) out.insert(order[k + 1]);
                }
            return out;
        };
        for (const auto& ov : overlaps) {
            std::set<int> xin, yin;
            std::set<std::pair<int, int>> idpairs(ov.pairs.begin(), ov.pairs.end());
            for (const auto& [x, y] : ov.pairs) {
                xin.insert(x);
                yin.insert(y);
            }
            const auto xs = neighbours(px, xin), ys = neighbours(py, yin);
            std::vector<int> support;
            std::vector<int> id_cols;
            for (int b = 0; b < C.cur.size(); ++b) {
                const auto [i, j, h] = C.cur.basis[b];
                if (!xs.count(i) || !ys.count(j)) continue;
                if (cat.elem(h).identity && !idpairs.count({i, j})) continue;
                if (cat.elem(h).identity) id_cols.push_back(static_cast<int>(support.size()));
                support.push_back(b);
            }
            std::vector<SparseVec> images;
            for (int b : support) images.push_back(C.d_cur[b]);
            const auto ker = kernel(images, f);
            auto lift = [&](const SparseVec& v) {
                SparseVec w;
                for (const auto& [k, c] : v) w[support[k]] = c;
                return w;
            };
            auto full = [&](const SparseVec& v) {
                for (int col : id_cols)
                    if (!v.count(col)) return false;
                return true;
            };
            SparseVec chosen;
            for (const auto& v : ker)
                if (full(v)) {
                    chosen = v;
                    break;
                }
            if (chosen.empty() && !ker.empty()) {
                SparseVec sum;
                for (std::size_t k = 0; k < ker.size(); ++k) axpy(sum, ker[k], generic_coeff(static_cast<int>(k), 0, f));
                if (full(sum)) chosen = sum;
            }
            if (!chosen.empty()) offer(lift(chosen), "graph", ov.pairs);
        }
    }

    // Singletons: single components that are cocycles.
    for (int b = 0; b < C.cur.size(); ++b)
        if (C.d_cur[b].empty()) offer({{b, Scalar::one(f)}}, "singleton", {});

    // Remaining classes.
    for (const auto& v : kernel(C.d_cur, f)) offer(v, "other", {});
    (void)boundary_rank;
    return out;
}

bool tw_isomorphic(const FukayaCategory& F, const Diagram& X, const Diagram& Y, TwMorphism* fout, TwMorphism* gout) {
    const Field fld = field_of(F);
    const bool zx = is_coboundary(F, X, X, tw_identity(F, X)), zy = is_coboundary(F, Y, Y, tw_identity(F, Y));
    if (zx || zy) {
        if (fout) *fout = TwMorphism{};
        if (gout) *gout = TwMorphism{};
        return zx && zy;
    }
    const auto hxy = hom_cohomology(F, X, Y, 0);
    const auto hyx = hom_cohomology(F, Y, X, 0);
    if (hxy.reps.empty() || hyx.reps.empty() || hxy.reps.size() != hyx.reps.size()) return false;
    const TwMorphism idx = tw_identity(F, X), idy = tw_identity(F, Y);
    HomComplex Cx(F, X, X, 0), Cy(F, Y, Y, 0);

    for (int attempt = 0; attempt < 3; ++attempt) {
        TwMorphism f;
        for (std::size_t k = 0; k < hxy.reps.size(); ++k)
            for (const auto& [ij, l] : hxy.reps[k].comp)
                f.add(ij.first, ij.second, l.scaled(generic_coeff(static_cast<int>(k), attempt, fld)));
        // Solve g f = id_X modulo boundaries.
        std::vector<SparseVec> cols;
        for (const auto& g : hyx.reps) cols.push_back(Cx.cur.coords(tw_compose(F, X, Y, X, f, g)));
        for (const auto& b : Cx.d_prev) cols.push_back(b);
        const auto sol = solve(cols, Cx.cur.coords(idx), fld);
        if (!sol) continue;
        TwMorphism g;
        for (std::size_t k = 0; k < hyx.reps.size(); ++k)
            for (const auto& [ij, l] : hyx.reps[k].comp)
                if (!(*sol)[k].is_zero()) g.add(ij.first, ij.second, l.scaled((*sol)[k]));
        // f g = id_Y modulo boundaries.
        SparseVec diff = Cy.cur.coords(tw_compose(F, Y, X, Y, g, f));
        axpy(diff, Cy.cur.coords(idy), Scalar(-1L, fld));
        RowReducer r(fld);
        for (const auto& b : Cy.d_prev) r.add(b);
        if (!r.contains(diff)) continue;
        if (fout) *fout = f;
        if (gout) *gout = g;
        return true;
    }
    return false;
}

// ------------------------------------------------------------------ reduction and cones

namespace {

// Differential on the nodes of C for which id + N is a cocycle C -> C'. The equation reads
// delta' = delta - R(delta') with R built from N and strictly longer pieces of delta', so the
// iteration delta' <- delta' - mu_Tw^1(id + N) terminates.
Diagram gauge(const FukayaCategory& F, const Diagram& C, const TwMorphism& N) {
    TwMorphism phi = tw_identity(F, C);
    for (const auto& [ij, l] : N.comp) phi.add(ij.first, ij.second, l);
    Diagram Cp = C;
    const int rounds = 4 * static_cast<int>(C.nodes.size()) + 8;
    for (int it = 0; it < rounds; ++it) {
        const TwMorphism E = tw_mu(F, {&C, &Cp}, {&phi});
        if (E.is_zero()) return Cp;
        std::map<std::pair<int, int>, LinComb> edges;
        for (const auto& e : Cp.edges) edges.emplace(std::make_pair(e.from, e.to), e.label);
        for (const auto& [ij, l] : E.comp) {
            if (ij.first == ij.second) throw MathError("gauge transformation produced a loop at a node");
            auto it2 = edges.find(ij);
            const LinComb neg = l.scaled(Scalar(-1L, l.field()));
            if (it2 == edges.end()) edges.emplace(ij, neg);
            else it2->second.add(neg);
        }
        Cp.edges.clear();
        for (const auto& [ij, l] : edges)
            if (!l.is_zero()) Cp.edges.push_back({ij.first, ij.second, l});
    }
    throw MathError("gauge transformation did not converge");
}

bool is_identity_edge(const BasisCategory& cat, const TwEdge& e) {
    return e.label.size() == 1 && cat.elem(e.label.terms().begin()->first).identity;
}

}  // namespace

Reduction reduce_diagram(const FukayaCategory& F, const Diagram& X0) {
    const BasisCategory& cat = *F.cat;
    Reduction red;
    Diagram X = X0;
    while (true) {
        int pick = -1;
        for (int k = 0; k < static_cast<int>(X.edges.size()); ++k)
            if (is_identity_edge(cat, X.edges[k])) {
                pick = k;
                break;
            }
        if (pick < 0) break;
        const int p = X.edges[pick].from, q = X.edges[pick].to;
        // Gauge away the other edges into q and out of p: N(u -> p) and N(q -> w) cancel them to
        // first order, and the residuals are fed back until none is left.
        TwMorphism N;
        Diagram Y = X;
        for (int round = 0;; ++round) {
            if (round > 4 * static_cast<int>(X.nodes.size()) + 8) throw MathError("elimination did not converge");
            Y = gauge(F, X, N);
            const LinComb* pq = Y.edge(p, q);
            if (!pq || pq->size() != 1 || !cat.elem(pq->terms().begin()->first).identity)
                throw MathError("elimination lost the identity edge");
            const Scalar c = pq->terms().begin()->second;
            const Scalar t = Scalar(parity_sign(X.nodes[p].shift), c.field()) / c;
            bool clean = true;
            for (const auto& e : Y.edges) {
                if (e.to == q && e.from != p) {
                    N.add(e.from, p, e.label.scaled(t));
                    clean = false;
                } else if (e.from == p && e.to != q) {
                    N.add(q, e.to, e.label.scaled(t));
                    clean = false;
                }
            }
            if (clean) break;
        }
        for (const auto& e : Y.edges)
            if ((e.from == p || e.from == q || e.to == p || e.to == q) && !(e.from == p && e.to == q))
                throw MathError("eliminated pair is still attached to the complex");
        Diagram Z;
        std::vector<int> pos(Y.nodes.size(), -1);
        for (int i = 0; i < static_cast<int>(Y.nodes.size()); ++i) {
            if (i == p || i == q) continue;
            pos[i] = static_cast<int>(Z.nodes.size());
            Z.nodes.push_back(Y.nodes[i]);
        }
        for (const auto& e : Y.edges)
            if (pos[e.from] >= 0 && pos[e.to] >= 0) Z.edges.push_back({pos[e.from], pos[e.to], e.label});
        X = std::move(Z);
        ++red.pairs_removed;
    }
    if (auto why = mc_violation(F, X)) throw MathError("reduction left an invalid twisted complex: " + *why);

    // Connected components.
    const int n = static_cast<int>(X.nodes.size());
    std::vector<int> comp(n, -1);
    int count = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = count;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (const auto& e : X.edges) {
                int w = -1;
                if (e.from == v) w = e.to;
                if (e.to == v) w = e.from;
                if (w >= 0 && comp[w] < 0) {
                    comp[w] = count;
                    stack.push_back(w);
                }
            }
        }
        ++count;
    }
    for (int c = 0; c < count; ++c) {
        Diagram D;
        std::vector<int> pos(n, -1);
        for (int i = 0; i < n; ++i)
            if (comp[i] == c) {
                pos[i] = static_cast<int>(D.nodes.size());
                D.nodes.push_back(X.nodes[i]);
            }
        for (const auto& e : X.edges)
            if (comp[e.from] == c) D.edges.push_back({pos[e.from], pos[e.to], e.label});
        if (is_coboundary(F, D, D, tw_identity(F, D))) {
            ++red.dropped_acyclic;
            continue;
        }
        const auto order = path_nodes(D);
        red.components.push_back(order.empty() ? D : renumbered(D, order));
    }
    return red;
}

namespace {

// X shifted down by one, Y, and the components of f as connecting edges.
Diagram cone_diagram(const Diagram& X, const Diagram& Y, const TwMorphism& f) {
    Diagram C;
    const int n = static_cast<int>(X.nodes.size());
    for (auto node : X.nodes) {
        node.shift -= 1;
        C.nodes.push_back(node);
    }
    for (const auto& node : Y.nodes) C.nodes.push_back(node);
    for (const auto& e : X.edges) C.edges.push_back(e);
    for (const auto& e : Y.edges) C.edges.push_back({e.from + n, e.to + n, e.label});
    for (const auto& [ij, l] : f.comp) C.edges.push_back({ij.first, ij.second + n, l});
    return C;
}

}  // namespace

Reduction mapping_cone(const FukayaCategory& F, const Diagram& X, const Diagram& Y, const TwMorphism& f) {
    if (f.degree != 0) throw InputError("mapping cone needs a degree-0 morphism");
    if (!tw_differential(F, X, Y, f).is_zero()) throw InputError("mapping cone needs a cocycle");
    const Diagram C = cone_diagram(X, Y, f);
    if (auto why = mc_violation(F, C)) throw MathError("cone is not a twisted complex: " + *why);
    Reduction red = reduce_diagram(F, C);
    for (const auto& D : red.components)
        if (!is_type_a(D)) throw ScopeError("cone has a component that is not a string");
    return red;
}

// ------------------------------------------------------------------ comparison and transfer

namespace {

// Portable description of a basis element: "id" or the flow between two arc ends.
struct FlowKey {
    std::string arc0, arc1;
    int end0 = -1, end1 = -1;
    bool identity() const { return end0 < 0; }
    std::string str() const {
        if (identity()) return "id";
        return arc0 + ":" + std::to_string(end0) + ">" + arc1 + ":" + std::to_string(end1);
    }
};

FlowKey flow_key(const FukayaCategory& F, int h) {
    const BasisElem& e = F.cat->elem(h);
    FlowKey k;
    if (e.identity) {
        k.arc0 = k.arc1 = F.arcs.arcs[e.src];
        return k;
    }
    std::map<int, ArcEnd> start;
    for (const auto& [end, arrow] : arrow_leaving(F.arcs)) start[arrow] = end;
    const ArcEnd s = start.at(e.arrows.front());
    const ArcEnd t = F.arcs.next(start.at(e.arrows.back()));
    k.arc0 = F.arcs.arcs[s.arc];
    k.end0 = s.end;
    k.arc1 = F.arcs.arcs[t.arc];
    k.end1 = t.end;
    return k;
}

int find_flow(const FukayaCategory& G, const FlowKey& k) {
    const int a0 = G.object(k.arc0), a1 = G.object(k.arc1);
    if (a0 < 0 || a1 < 0) return -1;
    if (k.identity()) return G.cat->identity(a0);
    const auto leaving = arrow_leaving(G.arcs);
    ArcEnd x{a0, k.end0};
    const ArcEnd stop{a1, k.end1};
    std::vector<int> word;
    for (int guard = 0; !(x == stop) && guard < 4 * G.arcs.num_arcs() + 8; ++guard) {
        if (!G.arcs.has_next(x)) return -1;
        word.push_back(leaving.at(x));
        x = G.arcs.next(x);
    }
    if (!(x == stop) || word.empty()) return -1;
    return G.cat->find(word);
}

std::string label_key(const FukayaCategory& F, const LinComb& l) {
    const Scalar lead = l.terms().begin()->second;
    std::vector<std::string> parts;
    for (const auto& [h, c] : l.terms()) {
        const Scalar r = c / lead;
        parts.push_back((r.is_one() ? std::string() : r.str() + "*") + flow_key(F, h).str());
    }
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : "+") + p;
    return s;
}

}  // namespace

std::string canonical_form(const FukayaCategory& F, const Diagram& X) {
    auto order = path_nodes(X);
    if (order.empty()) throw InputError("canonical form needs a string");
    auto read = [&](const std::vector<int>& ord) {
        std::ostringstream os;
        const int s0 = X.nodes[ord.front()].shift;
        for (std::size_t k = 0; k < ord.size(); ++k) {
            if (k > 0) {
                const int a = ord[k - 1], b = ord[k];
                if (const LinComb* l = X.edge(a, b)) os << " -(" << label_key(F, *l) << ")-> ";
                else os << " <-(" << label_key(F, *X.edge(b, a)) << ")- ";
            }
            os << F.arcs.arcs[X.nodes[ord[k]].obj] << "[" << X.nodes[ord[k]].shift - s0 << "]";
        }
        return os.str();
    };
    const std::string fwd = read(order);
    std::reverse(order.begin(), order.end());
    return std::min(fwd, read(order));
}

bool string_equal(const FukayaCategory& F, const Diagram& X, const FukayaCategory& G, const Diagram& Y) {
    return canonical_form(F, X) == canonical_form(G, Y);
}

Diagram transfer(const FukayaCategory& F, const FukayaCategory& G, const Diagram& X) {
    const Field f = field_of(G);
    Diagram Y;
    for (const auto& n : X.nodes) {
        const std::string& name = F.arcs.arcs[n.obj];
        const int obj = G.object(name);
        if (obj < 0) throw InputError("arc " + name + " is not in the target arc system");
        Y.nodes.push_back({obj, n.shift});
    }
    for (const auto& e : X.edges) {
        LinComb l(f);
        for (const auto& [h, c] : e.label.terms()) {
            const FlowKey k = flow_key(F, h);
            const int g = find_flow(G, k);
            if (g < 0) throw InputError("flow " + k.str() + " has no counterpart in the target arc system");
            l.add(g, Scalar(c.value(), f));
        }
        Y.edges.push_back({e.from, e.to, l});
    }
    return Y;
}

// ------------------------------------------------------------------ base change

namespace {

std::set<std::string> arc_names(const ArcSystem& a) { return {a.arcs.begin(), a.arcs.end()}; }

void exchange_arcs(const ArcSystem& from, const ArcSystem& to, const ArcSystem& both, std::string& removed,
                   std::string& added) {
    const auto A = arc_names(from), B = arc_names(to), U = arc_names(both);
    std::vector<std::string> only_a, only_b;
    std::set_difference(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(only_a));
    std::set_difference(B.begin(), B.end(), A.begin(), A.end(), std::back_inserter(only_b));
    if (only_a.size() != 1 || only_b.size() != 1)
        throw InputError("an exchange changes exactly one arc");
    std::set<std::string> uni = A;
    uni.insert(B.begin(), B.end());
    if (uni != U) throw InputError("the joint arc system must contain exactly the arcs of both sides");
    removed = only_a.front();
    added = only_b.front();
}

}  // namespace

Exchange make_exchange(const ArcSystem& from, const ArcSystem& to, const ArcSystem& both, const Diagram& resolution,
                       Field field) {
    Exchange e;
    exchange_arcs(from, to, both, e.removed, e.added);
    e.from = build_fukaya(from, field);
    e.to = build_fukaya(to, field);
    e.both = build_fukaya(both, field);
    for (const auto* F : {&e.from, &e.to})
        if (F->mu.max_arity() > 2) throw InputError("exchanges are defined between formal arc systems");
    e.resolution = make_string_complex(e.to, resolution);
    e.resolution_both = transfer(e.to, e.both, e.resolution);
    const Diagram a = single(e.both.object(e.removed), 0);
    if (!tw_isomorphic(e.both, a, e.resolution_both, &e.iota, &e.kappa))
        throw InputError("the resolution is not isomorphic to arc " + e.removed);
    // Normalize so that kappa after iota is the identity of the single node on the chain level.
    const TwMorphism loop = tw_compose(e.both, a, e.resolution_both, a, e.iota, e.kappa);
    const LinComb* v = loop.comp.count({0, 0}) ? &loop.comp.at({0, 0}) : nullptr;
    const int id = e.both.cat->identity(e.both.object(e.removed));
    if (!v || v->size() != 1 || v->terms().begin()->first != id)
        throw MathError("isomorphism for arc " + e.removed + " is not a multiple of the identity");
    const Scalar c = v->terms().begin()->second;
    TwMorphism k;
    k.degree = 0;
    for (const auto& [ij, l] : e.kappa.comp) k.add(ij.first, ij.second, l.scaled(Scalar::one(c.field()) / c));
    e.kappa = k;
    return e;
}

Exchange triangle_exchange(const ArcSystem& from, const ArcSystem& to, const ArcSystem& both, Field field) {
    std::string removed, added;
    exchange_arcs(from, to, both, removed, added);
    const int a = both.arc_index(removed), b = both.arc_index(added);
    for (const auto& face : faces(both)) {
        if (!face.closed || face.corners.size() != 3) continue;
        std::vector<int> side;  // arc reached by corner k
        for (ArcEnd c : face.corners) side.push_back(both.next(c).arc);
        if (std::count(side.begin(), side.end(), a) != 1 || std::count(side.begin(), side.end(), b) != 1) continue;
        // Corner k runs from arc side[k-1] to arc side[k]; pick the corner x -> y avoiding a.
        for (int k = 0; k < 3; ++k) {
            const int x = side[(k + 2) % 3], y = side[k];
            if (x == a || y == a) continue;
            const ArcEnd cxy = face.corners[k];
            const ArcEnd cya = face.corners[(k + 1) % 3];
            const int dxy = both.flow_deg(cxy), dya = both.flow_deg(cya);
            const FukayaCategory B = build_fukaya(to, field);
            const auto leaving = arrow_leaving(to);
            const ArcEnd start{to.arc_index(both.arcs[cxy.arc]), cxy.end};
            const int h = B.cat->find({leaving.at(start)});
            if (h < 0) throw MathError("triangle corner is not a flow of the target system");
            Diagram R;
            R.nodes.push_back({B.object(both.arcs[x]), dxy - 1 + dya});
            R.nodes.push_back({B.object(both.arcs[y]), dya});
            R.edges.push_back({0, 1, LinComb::basis(h, B.cat->field())});
            return make_exchange(from, to, both, R, field);
        }
    }
    throw InputError("no triangle of the joint arc system contains " + removed + " and " + added);
}

namespace {

// Nodes of X listed in `keep`, renumbered in that order, with their internal edges.
Diagram induced(const Diagram& X, const std::vector<int>& keep, int shift) {
    Diagram D;
    std::vector<int> pos(X.nodes.size(), -1);
    for (int i : keep) {
        pos[i] = static_cast<int>(D.nodes.size());
        D.nodes.push_back({X.nodes[i].obj, X.nodes[i].shift + shift});
    }
    for (const auto& e : X.edges)
        if (pos[e.from] >= 0 && pos[e.to] >= 0) D.edges.push_back({pos[e.from], pos[e.to], e.label});
    return D;
}

// Replaces node n (on the removed arc) by the resolution. With Z the node and everything
// downstream of it and Q the rest, X is the cone of the edges Q[1] -> Z, and Z is the cone of
// the out-edges a[s+1] -> Z \ n. Precomposing the latter with kappa gives Z', an isomorphism
// Z -> Z' is solved for, and X' is the cone of the edges Q[1] -> Z composed with it.
Diagram substitute_node(const FukayaCategory& U, const Diagram& X, int n, const Exchange& e) {
    const int N = static_cast<int>(X.nodes.size());
    const int s = X.nodes[n].shift;
    std::vector<bool> down(N, false);
    std::vector<int> stack{n};
    down[n] = true;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const auto& ed : X.edges)
            if (ed.from == v && !down[ed.to]) {
                down[ed.to] = true;
                stack.push_back(ed.to);
            }
    }
    std::vector<int> zrest, q;
    for (int i = 0; i < N; ++i) {
        if (i == n) continue;
        (down[i] ? zrest : q).push_back(i);
    }
    const Diagram Zr = induced(X, zrest, 0);
    std::vector<int> zpos(N, -1), qpos(N, -1);
    for (std::size_t k = 0; k < zrest.size(); ++k) zpos[zrest[k]] = static_cast<int>(k) + 1;
    zpos[n] = 0;
    for (std::size_t k = 0; k < q.size(); ++k) qpos[q[k]] = static_cast<int>(k);

    // Z with n first, and Z'.
    std::vector<int> zorder{n};
    zorder.insert(zorder.end(), zrest.begin(), zrest.end());
    const Diagram Z = induced(X, zorder, 0);
    Diagram Zp;
    {
        Diagram R1 = e.resolution_both;
        R1.shift_by(s + 1);
        const Diagram A1 = single(X.nodes[n].obj, s + 1);
        TwMorphism phi;
        for (const auto& ed : X.edges)
            if (ed.from == n) phi.add(0, zpos[ed.to] - 1, ed.label);
        const TwMorphism phip = tw_mu(U, {&R1, &A1, &Zr}, {&e.kappa, &phi});
        Zp = cone_diagram(R1, Zr, phip);
    }
    if (q.empty()) return Zp;

    TwMorphism theta;
    if (!tw_isomorphic(U, Z, Zp, &theta, nullptr))
        throw MathError("no isomorphism between a subcomplex and its substitute");
    const Diagram Q1 = induced(X, q, 1);
    TwMorphism psi;
    for (const auto& ed : X.edges)
        if (qpos[ed.from] >= 0 && zpos[ed.to] >= 0) psi.add(qpos[ed.from], zpos[ed.to], ed.label);
    const TwMorphism psip = tw_mu(U, {&Q1, &Z, &Zp}, {&psi, &theta});
    return cone_diagram(Q1, Zp, psip);
}

}  // namespace

Diagram base_change_elementary(const Diagram& X0, const Exchange& e, BaseChangeTrace* trace) {
    const FukayaCategory& U = e.both;
    BaseChangeTrace local;
    BaseChangeTrace& tr = trace ? *trace : local;
    if (auto why = mc_violation(e.from, X0)) throw InputError("input is not a twisted complex: " + *why);
    Diagram X = transfer(e.from, U, X0);
    const int a = U.object(e.removed);

    while (true) {
        int n = -1;
        for (int i = 0; i < static_cast<int>(X.nodes.size()); ++i)
            if (X.nodes[i].obj == a) {
                n = i;
                break;
            }
        if (n < 0) break;
        X = substitute_node(U, X, n, e);
        ++tr.substituted;
        if (auto why = mc_violation(U, X))
            throw MathError("substituting the resolution broke the twisted-complex equation: " + *why);
    }

    Reduction red = reduce_diagram(U, X);
    tr.pairs_removed += red.pairs_removed;
    tr.dropped_acyclic += red.dropped_acyclic;
    std::vector<Diagram> kept;
    for (auto& D : red.components)
        if (!D.nodes.empty()) kept.push_back(std::move(D));
    if (kept.size() != 1)
        throw MathError("base change produced " + std::to_string(kept.size()) + " components instead of one");
    if (!is_type_a(kept.front())) throw ScopeError("base change produced a complex that is not a string");
    for (const auto& node : kept.front().nodes)
        if (node.obj == a) throw MathError("base change left a node on the removed arc");
    return path_order(transfer(U, e.to, kept.front()));
}

Diagram base_change_path(const Diagram& X0, const FukayaCategory& start, const std::vector<PathStep>& path) {
    Diagram X = X0;
    std::set<std::string> current = arc_names(start.arcs);
    for (const auto& step : path) {
        if (!step.exchange) {
            X.shift_by(step.shift);
            continue;
        }
        if (arc_names(step.exchange->from.arcs) != current)
            throw InputError("base change path: step does not start at the current arc system");
        X = base_change_elementary(X, *step.exchange);
        X.shift_by(step.shift);
        current = arc_names(step.exchange->to.arcs);
    }
    return X;
}

}  // namespace gentle
