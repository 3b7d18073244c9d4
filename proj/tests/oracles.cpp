#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

using namespace gentle;

namespace oracle {

bool is_gentle(const GradedQuiver& q, const std::vector<std::pair<int, int>>& relations) {
    const int nv = static_cast<int>(q.vertices.size());
    const int na = static_cast<int>(q.arrows.size());
    if (nv == 0 || na == 0) return false;
    for (int v = 0; v < nv; ++v) {
        int in = 0, out = 0;
        for (const auto& a : q.arrows) {
            in += a.tgt == v;
            out += a.src == v;
        }
        if (in > 2 || out > 2) return false;
    }
    const std::set<std::pair<int, int>> rel(relations.begin(), relations.end());
    for (const auto& [f, g] : rel)
        if (q.arrows[f].tgt != q.arrows[g].src) return false;
    // Two distinct continuations of one arrow may not both be relations or both be permitted.
    for (int f = 0; f < na; ++f)
        for (int g1 = 0; g1 < na; ++g1)
            for (int g2 = g1 + 1; g2 < na; ++g2) {
                const bool after = q.arrows[g1].src == q.arrows[f].tgt && q.arrows[g2].src == q.arrows[f].tgt;
                if (after && rel.count({f, g1}) == rel.count({f, g2})) return false;
                const bool before = q.arrows[g1].tgt == q.arrows[f].src && q.arrows[g2].tgt == q.arrows[f].src;
                if (before && rel.count({g1, f}) == rel.count({g2, f})) return false;
            }
    std::vector<char> seen(nv, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const auto& a : q.arrows)
            for (auto [x, y] : {std::pair{a.src, a.tgt}, std::pair{a.tgt, a.src}})
                if (x == v && !seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

int rank(std::vector<std::vector<mpq_class>> rows, int cols) {
    int r = 0;
    for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (sgn(rows[i][c]) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        for (int i = r + 1; i < static_cast<int>(rows.size()); ++i) {
            if (sgn(rows[i][c]) == 0) continue;
            const mpq_class t = rows[i][c] / rows[r][c];
            for (int j = c; j < cols; ++j) rows[i][j] -= t * rows[r][j];
        }
        ++r;
    }
    return r;
}

int compose_paths(const BasisCategory& cat, int a, int b) {
    const BasisElem& x = cat.elem(a);
    const BasisElem& y = cat.elem(b);
    if (x.tgt != y.src) return -1;
    if (x.identity) return b;
    if (y.identity) return a;
    const GentlePresentation& p = cat.presentation();
    std::vector<int> word = x.arrows;
    word.insert(word.end(), y.arrows.begin(), y.arrows.end());
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
        for (const auto& [f, g] : p.relations())
            if (word[i] == f && word[i + 1] == g) return -1;
    for (int c = 0; c < cat.size(); ++c)
        if (cat.elem(c).arrows == word) return c;
    return -1;
}

int outer_derivations(const BasisCategory& cat) {
    const int n = cat.size();
    // mult(a, b) = "b after a" as a basis index or -1.
    auto mult = [&](int a, int b) { return compose_paths(cat, a, b); };
    // Unknown D(a) = sum_c x[a][c] c, flattened to a * n + c. Leibniz on every basis pair:
    // D(mult(a,b)) - mult(D(a), b) - mult(a, D(b)) = 0, one row per output basis element.
    std::vector<std::vector<mpq_class>> rows;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::map<int, std::vector<mpq_class>> eq;  // output element -> row
            auto row = [&](int out) -> std::vector<mpq_class>& {
                auto it = eq.find(out);
                if (it == eq.end()) it = eq.emplace(out, std::vector<mpq_class>(n * n, 0)).first;
                return it->second;
            };
            const int ab = mult(a, b);
            if (ab >= 0)
                for (int c = 0; c < n; ++c) row(c)[ab * n + c] += 1;
            for (int c = 0; c < n; ++c) {
                const int cb = mult(c, b);
                if (cb >= 0) row(cb)[a * n + c] -= 1;
                const int ac = mult(a, c);
                if (ac >= 0) row(ac)[b * n + c] -= 1;
            }
            for (auto& [out, r] : eq)
                if (std::any_of(r.begin(), r.end(), [](const mpq_class& v) { return sgn(v) != 0; }))
                    rows.push_back(std::move(r));
        }
    const int der = n * n - rank(rows, n * n);
    // Inner derivations [x, -] for x in the basis, as vectors in the same coordinates.
    std::vector<std::vector<mpq_class>> inner;
    for (int x = 0; x < n; ++x) {
        std::vector<mpq_class> v(n * n, 0);
        for (int a = 0; a < n; ++a) {
            const int xa = mult(x, a), ax = mult(a, x);
            if (xa >= 0) v[a * n + xa] += 1;
            if (ax >= 0) v[a * n + ax] -= 1;
        }
        inner.push_back(std::move(v));
    }
    return der - rank(inner, n * n);
}

Cochain brace(const Cochain& f, const std::vector<const Cochain*>& args, int cap) {
    const BasisCategory& cat = f.cat();
    int deg = f.degree();
    for (const Cochain* g : args) deg += g->degree();
    Cochain out(cat, deg, cap);
    const int k = static_cast<int>(args.size());
    const Field fld = cat.field();
    for (int n = 0; n <= cap; ++n) {
        std::vector<CKey> domain;
        if (n == 0) {
            for (int v = 0; v < cat.num_objects(); ++v) domain.push_back({v, {}});
        } else {
            for (const auto& t : cat.chains(n)) domain.push_back({-1, t});
        }
        for (const CKey& dk : domain) {
            const auto& t = dk.in;
            auto obj_at = [&](int pos) {
                if (n == 0) return dk.obj;
                return pos == 0 ? cat.elem(t[0]).src : cat.elem(t[pos - 1]).tgt;
            };
            // Every placement of the k blocks: start positions and lengths.
            std::vector<std::pair<int, int>> place;  // (start, length)
            std::function<void(int, int)> rec = [&](int j, int pos) {
                if (j == k) {
                    // Slots in order, with the Koszul sign of each block passing raw inputs.
                    std::vector<LinComb> slots;
                    long eps = 0;
                    int cur = 0;
                    for (int b = 0; b < k; ++b) {
                        for (; cur < place[b].first; ++cur) slots.push_back(LinComb::basis(t[cur], fld));
                        CKey gk;
                        if (place[b].second == 0) gk.obj = obj_at(cur);
                        gk.in.assign(t.begin() + cur, t.begin() + cur + place[b].second);
                        const LinComb v = args[b]->eval(gk);
                        if (v.is_zero()) return;
                        slots.push_back(v);
                        long shifted = 0;
                        for (int i = 0; i < cur; ++i) shifted += cat.elem(t[i]).deg - 1;
                        eps += static_cast<long>(args[b]->degree()) * shifted;
                        cur += place[b].second;
                    }
                    for (; cur < n; ++cur) slots.push_back(LinComb::basis(t[cur], fld));
                    // Multilinear evaluation of f on the slots.
                    std::vector<int> key(slots.size());
                    std::function<void(std::size_t, Scalar)> ev = [&](std::size_t i, Scalar c) {
                        if (i == slots.size()) {
                            CKey fk;
                            if (key.empty()) fk.obj = obj_at(0);
                            fk.in = key;
                            const LinComb r = f.eval(fk);
                            if (!r.is_zero()) out.add(dk, r.scaled(c));
                            return;
                        }
                        for (const auto& [idx, x] : slots[i].terms()) {
                            if (i > 0 && cat.elem(key[i - 1]).tgt != cat.elem(idx).src) continue;
                            key[i] = idx;
                            ev(i + 1, c * x);
                        }
                    };
                    ev(0, Scalar(eps % 2 == 0 ? 1L : -1L, fld));
                    return;
                }
                for (int s = pos; s <= n; ++s)
                    for (int len = 0; s + len <= n; ++len) {
                        place.push_back({s, len});
                        rec(j + 1, s + len);
                        place.pop_back();
                    }
            };
            rec(0, 0);
        }
    }
    return out;
}

namespace {

// Truncated power series in x whose coefficients are polynomials in t.
using Poly = std::vector<mpq_class>;               // coefficients of t^0, t^1, ...
using TSeries = std::vector<Poly>;                 // index k: coefficient of x^k

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

void poly_add(Poly& a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

TSeries series_mul(const TSeries& a, const TSeries& b, int top) {
    TSeries r(top + 1);
    for (int i = 0; i <= top; ++i)
        for (int j = 0; i + j <= top; ++j) poly_add(r[i + j], poly_mul(a[i], b[j]));
    return r;
}

}  // namespace

std::vector<mpq_class> exp_witt(const TruncatedWitt& u) {
    const int n = u.order();
    const int top = n + 1;
    // Flow of V(y) = -sum_i c_i y^{i+1}: phi = x + int_0^t V(phi) dt, by Picard iteration.
    TSeries phi(top + 1);
    phi[1] = {1};
    for (int iter = 0; iter <= top; ++iter) {
        TSeries v(top + 1);
        TSeries power = phi;  // phi^1
        for (int i = 1; i + 1 <= top; ++i) {
            power = series_mul(power, phi, top);  // phi^{i+1}
            const mpq_class c = -u[i].value();
            if (sgn(c) == 0) continue;
            for (int k = 0; k <= top; ++k) poly_add(v[k], poly_mul(power[k], {c}));
        }
        TSeries next(top + 1);
        next[1] = {1};
        for (int k = 0; k <= top; ++k) {
            // The x^k coefficient of the flow has t-degree below k, so higher powers of t are dropped.
            const std::size_t keep = std::min<std::size_t>(v[k].size(), static_cast<std::size_t>(top));
            Poly integral(keep + 1, 0);
            for (std::size_t d = 0; d < keep; ++d) integral[d + 1] = v[k][d] / mpq_class(static_cast<long>(d + 1));
            poly_add(next[k], integral);
        }
        phi = std::move(next);
    }
    std::vector<mpq_class> out(top + 1, 0);
    for (int k = 0; k <= top; ++k)
        for (const auto& c : phi[k]) out[k] += c;  // t = 1
    return out;
}

std::vector<mpq_class> compose(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    const int top = static_cast<int>(a.size()) - 1;
    std::vector<mpq_class> out(top + 1, 0), power(top + 1, 0);
    power[0] = 1;
    for (int k = 1; k <= top; ++k) {
        std::vector<mpq_class> next(top + 1, 0);
        for (int i = 0; i <= top; ++i)
            for (int j = 0; i + j <= top; ++j) next[i + j] += power[i] * b[j];
        power = std::move(next);
        for (int i = 0; i <= top; ++i) out[i] += a[k] * power[i];
    }
    return out;
}

Cochain random_cochain(const BasisCategory& cat, int degree, int lo, int hi, unsigned seed, int cap) {
    std::mt19937 rng(seed);
    Cochain c(cat, degree, cap);
    for (int r = lo; r <= hi; ++r) {
        if (r == 0) {
            for (int v = 0; v < cat.num_objects(); ++v)
                for (int o = 0; o < cat.size(); ++o) {
                    const BasisElem& e = cat.elem(o);
                    if (e.src != v || e.tgt != v || e.deg != c.output_degree({})) continue;
                    if (rng() % 2) c.add({v, {}}, o, Scalar(static_cast<long>(rng() % 5) - 2, cat.field()));
                }
            continue;
        }
        for (const auto& t : cat.chains(r)) {
            const int d = c.output_degree(t);
            for (int o = 0; o < cat.size(); ++o) {
                const BasisElem& e = cat.elem(o);
                if (e.src != cat.elem(t.front()).src || e.tgt != cat.elem(t.back()).tgt || e.deg != d) continue;
                if (rng() % 3 == 0) c.add({-1, t}, o, Scalar(static_cast<long>(rng() % 5) - 2, cat.field()));
            }
        }
    }
    return c;
}

}  // namespace oracle
