#include "gentle/errors.hpp"
#include "gentle/hochschild.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gentle {

namespace {

int sign_of(long e) { return (e % 2 == 0) ? 1 : -1; }

// Upper bound on output arities: results above `cap` can only be nonzero if the category
// has composable chains that long.
bool loses_components(const BasisCategory& cat, long estimate, int cap) {
    return estimate > cap && cat.has_chain(cap + 1);
}

}  // namespace

// ---------------------------------------------------------------- Cochain

Cochain::Cochain(const BasisCategory& cat, int degree, int cap) : cat_(&cat), deg_(degree), cap_(cap) {
    if (cap < 0) throw InputError("arity cap must be non-negative");
}

Cochain Cochain::identity(const BasisCategory& cat, int cap) {
    Cochain c(cat, 0, cap);
    for (int a = 0; a < cat.size(); ++a) c.add({-1, {a}}, a, Scalar::one(cat.field()));
    return c;
}

Cochain Cochain::composition(const BasisCategory& cat, int cap) {
    Cochain c(cat, 1, cap);
    for (int a = 0; a < cat.size(); ++a)
        for (int b = 0; b < cat.size(); ++b) {
            const int ab = cat.compose(a, b);
            if (ab < 0) continue;
            c.add({-1, {a, b}}, ab, Scalar(sign_of(cat.elem(a).deg), cat.field()));
        }
    return c;
}

Cochain Cochain::unit(const BasisCategory& cat, int cap) {
    Cochain c(cat, -1, cap);
    for (int v = 0; v < cat.num_objects(); ++v) c.add({v, {}}, cat.identity(v), Scalar::one(cat.field()));
    return c;
}

int Cochain::output_degree(const std::vector<int>& in) const {
    int s = 0;
    for (int a : in) s += cat_->elem(a).deg;
    return s - static_cast<int>(in.size()) + 1 + deg_;
}

void Cochain::add(const CKey& key, int out, const Scalar& c) {
    if (c.is_zero()) return;
    const BasisElem& o = cat_->elem(out);
    if (key.in.empty()) {
        if (key.obj < 0 || o.src != key.obj || o.tgt != key.obj)
            throw std::logic_error("arity-0 cochain value must be an endomorphism of its object");
    } else {
        if (key.obj != -1) throw std::logic_error("cochain key of positive arity carries an object");
        for (std::size_t i = 1; i < key.in.size(); ++i)
            if (cat_->elem(key.in[i - 1]).tgt != cat_->elem(key.in[i]).src)
                throw std::logic_error("cochain input tuple is not composable");
        if (o.src != cat_->elem(key.in.front()).src || o.tgt != cat_->elem(key.in.back()).tgt)
            throw std::logic_error("cochain value has the wrong endpoints");
    }
    if (o.deg != output_degree(key.in))
        throw std::logic_error("cochain value has degree " + std::to_string(o.deg) + ", expected " +
                               std::to_string(output_degree(key.in)));
    auto it = table_.find(key);
    if (it == table_.end()) it = table_.emplace(key, LinComb(field())).first;
    it->second.add(out, c);
    if (it->second.is_zero()) table_.erase(it);
}

void Cochain::add(const CKey& key, const LinComb& value) {
    for (const auto& [idx, c] : value.terms()) add(key, idx, c);
}

LinComb Cochain::eval(const CKey& key) const {
    auto it = table_.find(key);
    return it == table_.end() ? LinComb(field()) : it->second;
}

std::set<int> Cochain::arities() const {
    std::set<int> s;
    for (const auto& [k, v] : table_) s.insert(k.arity());
    return s;
}

int Cochain::weight() const {
    int w = INT_MAX;
    for (const auto& [k, v] : table_) w = std::min(w, k.arity());
    return w;
}

int Cochain::max_arity() const {
    int m = -1;
    for (const auto& [k, v] : table_) m = std::max(m, k.arity());
    return m;
}

Cochain Cochain::scaled(const Scalar& c) const {
    Cochain r(*cat_, deg_, cap_);
    r.truncated_ = truncated_;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : table_) r.table_.emplace(k, v.scaled(c));
    return r;
}

Cochain& Cochain::operator+=(const Cochain& o) {
    if (o.is_zero()) {
        truncated_ = truncated_ || o.truncated_;
        return *this;
    }
    if (is_zero() && o.deg_ != deg_) deg_ = o.deg_;
    if (o.deg_ != deg_) throw std::logic_error("adding cochains of different degrees");
    for (const auto& [k, v] : o.table_) add(k, v);
    truncated_ = truncated_ || o.truncated_;
    cap_ = std::min(cap_, o.cap_);
    return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) { return *this += o.scaled(Scalar(-1L, field())); }

Cochain Cochain::operator+(const Cochain& o) const {
    Cochain r = *this;
    r += o;
    return r;
}

Cochain Cochain::operator-(const Cochain& o) const {
    Cochain r = *this;
    r -= o;
    return r;
}

Cochain Cochain::truncate(int n) const {
    Cochain r(*cat_, deg_, std::min(cap_, n));
    r.truncated_ = truncated_ || max_arity() > n;
    for (const auto& [k, v] : table_)
        if (k.arity() <= n) r.table_.emplace(k, v);
    return r;
}

std::string lincomb_text(const BasisCategory& cat, const LinComb& v) {
    if (v.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [idx, c] : v.terms()) {
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs = cs.substr(1);
        if (!first) s += neg ? " - " : " + ";
        else if (neg) s += "-";
        if (cs != "1") s += cs + "*";
        s += cat.describe(idx);
        first = false;
    }
    return s;
}

std::string Cochain::key_text(const CKey& key) const {
    if (key.in.empty()) return "[@" + cat_->object_name(key.obj) + "]";
    std::string s = "(";
    for (std::size_t i = 0; i < key.in.size(); ++i) {
        if (i) s += ", ";
        s += cat_->describe(key.in[i]);
    }
    return s + ")";
}

std::string Cochain::dump() const {
    std::vector<std::pair<std::pair<int, std::string>, std::string>> lines;
    for (const auto& [k, v] : table_)
        lines.push_back({{k.arity(), key_text(k)}, lincomb_text(*cat_, v)});
    std::sort(lines.begin(), lines.end());
    std::ostringstream os;
    os << "cochain degree " << deg_ << " cap " << cap_ << (truncated_ ? " truncated" : " exact") << "\n";
    for (const auto& [k, v] : lines) os << k.first << " " << k.second << " -> " << v << "\n";
    return os.str();
}

// ---------------------------------------------------------------- sign kernel

namespace {

// Adds coeff * f(slots) to out[key], expanding the slot linear combinations.
void eval_multilinear(const Cochain& f, int obj, const std::vector<LinComb>& slots, const Scalar& coeff,
                      const CKey& out_key, Cochain& out) {
    const BasisCategory& cat = f.cat();
    CKey k;
    k.obj = slots.empty() ? obj : -1;
    k.in.resize(slots.size());
    auto rec = [&](auto&& self, std::size_t i, const Scalar& c) -> void {
        if (i == slots.size()) {
            auto it = f.table().find(k);
            if (it == f.table().end()) return;
            out.add(out_key, it->second.scaled(c));
            return;
        }
        for (const auto& [idx, x] : slots[i].terms()) {
            if (i > 0 && cat.elem(k.in[i - 1]).tgt != cat.elem(idx).src) continue;
            k.in[i] = idx;
            self(self, i + 1, c * x);
        }
    };
    rec(rec, 0, coeff);
}

}  // namespace

Cochain brace(const Cochain& f, const std::vector<const Cochain*>& args, int cap) {
    const BasisCategory& cat = f.cat();
    if (cap < 0) {
        cap = f.cap();
        for (const Cochain* g : args) cap = std::min(cap, g->cap());
    }
    int deg = f.degree();
    bool trunc = f.truncated();
    for (const Cochain* g : args) {
        if (&g->cat() != &cat) throw std::logic_error("brace over different categories");
        deg += g->degree();
        trunc = trunc || g->truncated();
    }
    Cochain out(cat, deg, cap);
    const int k = static_cast<int>(args.size());
    if (k == 0) {
        Cochain r = f.truncate(cap);
        r.set_truncated(trunc || r.truncated());
        return r;
    }
    if (f.is_zero()) {
        out.set_truncated(trunc);
        return out;
    }
    for (const Cochain* g : args)
        if (g->is_zero()) {
            out.set_truncated(trunc);
            return out;
        }

    const std::set<int> af = f.arities();
    std::vector<std::set<int>> ag;
    for (const Cochain* g : args) ag.push_back(g->arities());

    // Estimate of the largest output arity.
    long max_sum = 0;
    for (const auto& s : ag) max_sum += *s.rbegin();
    const long estimate = static_cast<long>(*af.rbegin()) - k + max_sum;
    trunc = trunc || loses_components(cat, estimate, cap);

    std::vector<int> gdeg;
    for (const Cochain* g : args) gdeg.push_back(g->degree());

    // Table entries of each argument by source object. Keys through identities cannot occur
    // inside a chain of non-identity elements.
    using Entry = const std::pair<const CKey, LinComb>*;
    std::vector<std::map<int, std::vector<Entry>>> blocks(k);
    for (int j = 0; j < k; ++j)
        for (const auto& e : args[j]->table()) {
            const CKey& key = e.first;
            if (key.in.empty()) {
                blocks[j][key.obj].push_back(&e);
            } else if (std::none_of(key.in.begin(), key.in.end(), [&](int x) { return cat.elem(x).identity; })) {
                blocks[j][cat.elem(key.in.front()).src].push_back(&e);
            }
        }

    // Decompositions of output chains into raw inputs and argument blocks, built from the left;
    // only chains reachable through the arguments' tables are visited.
    const int max_slots = *af.rbegin();
    std::vector<int> chain;
    std::vector<LinComb> slots;
    long prefix = 0;  // sum of |a| - 1 over the chain so far
    auto rec = [&](auto&& self, int start, int cur, int j, long eps) -> void {
        if (j == k && af.count(static_cast<int>(slots.size()))) {
            CKey out_key;
            if (chain.empty()) out_key.obj = start;
            else out_key.in = chain;
            eval_multilinear(f, start, slots, Scalar(sign_of(eps), cat.field()), out_key, out);
        }
        if (static_cast<int>(slots.size()) >= max_slots) return;
        if (j < k) {
            if (auto it = blocks[j].find(cur); it != blocks[j].end()) {
                for (Entry e : it->second) {
                    const auto& in = e->first.in;
                    if (static_cast<int>(chain.size() + in.size()) > cap) continue;
                    const long before = prefix;
                    int end = cur;
                    for (int x : in) {
                        chain.push_back(x);
                        prefix += cat.elem(x).deg - 1;
                        end = cat.elem(x).tgt;
                    }
                    slots.push_back(e->second);
                    self(self, start, end, j + 1, eps + static_cast<long>(gdeg[j]) * before);
                    slots.pop_back();
                    chain.resize(chain.size() - in.size());
                    prefix = before;
                }
            }
        }
        if (static_cast<int>(slots.size()) + 1 + (k - j) > max_slots || static_cast<int>(chain.size()) >= cap) return;
        for (int x : cat.out_from(cur)) {
            chain.push_back(x);
            prefix += cat.elem(x).deg - 1;
            slots.push_back(LinComb::basis(x, cat.field()));
            self(self, start, cat.elem(x).tgt, j, eps);
            slots.pop_back();
            prefix -= cat.elem(x).deg - 1;
            chain.pop_back();
        }
    };
    for (int v = 0; v < cat.num_objects(); ++v) rec(rec, v, v, 0, 0);
    out.set_truncated(trunc);

    // Weight filtration: weight(f{g_1..g_k}) >= 1 + sum(weight(g_i) - 1) for inputs of weight >= 1.
    bool positive = f.weight() >= 1;
    long bound = 1;
    for (const Cochain* g : args) {
        positive = positive && g->weight() >= 1;
        bound += g->weight() - 1;
    }
    if (positive && !out.is_zero() && out.weight() < bound)
        throw std::logic_error("brace violated the weight filtration");
    return out;
}

Cochain star(const Cochain& f, const Cochain& g, int cap) { return brace(f, {&g}, cap); }

Cochain gerstenhaber(const Cochain& f, const Cochain& g, int cap) {
    Cochain a = star(f, g, cap);
    Cochain b = star(g, f, cap);
    const int s = sign_of(static_cast<long>(f.degree()) * g.degree());
    a -= b.scaled(Scalar(s, f.field()));
    return a;
}

Cochain differential(const Cochain& mu, const Cochain& f, int cap) {
    Cochain a = star(mu, f, cap);
    Cochain b = star(f, mu, cap);
    a -= b.scaled(Scalar(sign_of(f.degree()), f.field()));
    return a;
}

Cochain cup(const Cochain& mu, const Cochain& f, const Cochain& g, int cap) { return brace(mu, {&f, &g}, cap); }

// ---------------------------------------------------------------- A-infinity checks

namespace {

const std::pair<const CKey, LinComb>* lowest_entry(const Cochain& c) {
    const std::pair<const CKey, LinComb>* best = nullptr;
    for (const auto& e : c.table())
        if (!best || e.first.arity() < best->first.arity()) best = &e;
    return best;
}

}  // namespace

AinfVerdict check_ainf(const Cochain& mu) {
    AinfVerdict v;
    const int m = std::max(mu.max_arity(), 1);
    const int cap = 2 * m - 1;
    Cochain mm = brace(mu, {&mu}, cap);
    v.arities_checked = cap;
    if (const auto* e = lowest_entry(mm)) {
        v.ok = false;
        v.failing_arity = e->first.arity();
        v.failing_tuple = mm.key_text(e->first);
        v.failing_value = lincomb_text(mu.cat(), e->second);
    }
    return v;
}

bool check_unitality(const Cochain& mu, std::string* why) {
    const BasisCategory& cat = mu.cat();
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    for (int a = 0; a < cat.size(); ++a) {
        const BasisElem& e = cat.elem(a);
        const LinComb left = mu.eval({-1, {cat.identity(e.src), a}});
        const LinComb right = mu.eval({-1, {a, cat.identity(e.tgt)}});
        if (!(left == LinComb::basis(a, cat.field())))
            return fail("mu2(e, " + e.name + ") != " + e.name);
        if (!(right == LinComb::basis(a, cat.field(), sign_of(e.deg))))
            return fail("mu2(" + e.name + ", e) != (-1)^|a| " + e.name);
    }
    for (const auto& [k, v] : mu.table()) {
        if (k.arity() == 2) continue;
        for (int x : k.in)
            if (cat.elem(x).identity) return fail("higher product is nonzero on a unit: " + mu.key_text(k));
    }
    return true;
}

Cochain mc_curvature(const Cochain& mu, const Cochain& zeta, int cap) {
    if (zeta.degree() != 0) throw InputError("Maurer-Cartan element must have shifted degree 0");
    if (cap < 0) cap = std::min(mu.cap(), zeta.cap());
    Cochain sum = differential(mu, zeta, cap);
    const int m = mu.max_arity();
    std::vector<const Cochain*> args;
    for (int i = 2; i <= m; ++i) {
        args.assign(i, &zeta);
        sum += brace(mu, args, cap);
    }
    return sum;
}

McVerdict maurer_cartan_check(const Cochain& mu, const Cochain& zeta, int cap) {
    McVerdict v;
    Cochain c = mc_curvature(mu, zeta, cap);
    v.truncated = c.truncated();
    if (const auto* e = lowest_entry(c)) {
        v.ok = false;
        v.failing_tuple = c.key_text(e->first) + " -> " + lincomb_text(mu.cat(), e->second);
    }
    return v;
}

McVerdict isotopy_check(const Cochain& mu, const Cochain& fplus, int cap) {
    if (!fplus.is_zero() && fplus.weight() < 2) throw InputError("isotopy correction must have weight >= 2");
    return maurer_cartan_check(mu, fplus, cap);
}

// ---------------------------------------------------------------- isotopies

namespace {

void require_isotopy_shape(const Cochain& c) {
    if (c.degree() != 0) throw InputError("isotopy correction must have shifted degree 0");
    if (!c.is_zero() && c.weight() < 2) throw InputError("isotopy correction must have weight >= 2");
}

}  // namespace

Cochain compose_taylor(const Cochain& gplus, const Cochain& fplus, int cap) {
    require_isotopy_shape(gplus);
    require_isotopy_shape(fplus);
    const BasisCategory& cat = fplus.cat();
    if (cap < 0) cap = std::min(gplus.cap(), fplus.cap());
    Cochain out(cat, 0, cap);
    const long estimate = static_cast<long>(std::max(gplus.max_arity(), 1)) * std::max(fplus.max_arity(), 1);
    out.set_truncated(gplus.truncated() || fplus.truncated() || loses_components(cat, estimate, cap));
    for (int n = 2; n <= cap; ++n)
        for (const auto& t : cat.chains(n)) {
            const CKey dk{-1, t};
            std::vector<LinComb> slots;
            auto rec = [&](auto&& self, int pos) -> void {
                if (pos == n) {
                    if (slots.size() == 1) out.add(dk, slots[0]);
                    else eval_multilinear(gplus, -1, slots, Scalar::one(cat.field()), dk, out);
                    return;
                }
                for (int len = 1; pos + len <= n; ++len) {
                    if (len == 1) {
                        slots.push_back(LinComb::basis(t[pos], cat.field()));
                    } else {
                        LinComb v = fplus.eval({-1, std::vector<int>(t.begin() + pos, t.begin() + pos + len)});
                        if (v.is_zero()) continue;
                        slots.push_back(std::move(v));
                    }
                    self(self, pos + len);
                    slots.pop_back();
                }
            };
            rec(rec, 0);
        }
    return out;
}

Cochain compose_via_braces(const Cochain& gplus, const Cochain& fplus, int cap) {
    if (cap < 0) cap = std::min(gplus.cap(), fplus.cap());
    Cochain out = fplus.truncate(cap) + gplus.truncate(cap);
    std::vector<const Cochain*> args;
    for (int r = 1; r <= std::max(gplus.max_arity(), 0); ++r) {
        args.assign(r, &fplus);
        out += brace(gplus, args, cap);
    }
    return out;
}

Cochain inverse_isotopy(const Cochain& fplus, int cap) {
    require_isotopy_shape(fplus);
    const BasisCategory& cat = fplus.cat();
    if (cap < 0) cap = fplus.cap();
    Cochain h(cat, 0, cap);
    h.set_truncated(fplus.truncated() || (!fplus.is_zero() && !cat.chains(cap + 1).empty()));
    for (int n = 2; n <= cap; ++n)
        for (const auto& t : cat.chains(n)) {
            const CKey dk{-1, t};
            // (Id + H)(Id + F) = Id at arity n: H(t) = -[F(t) + sum over splits into 2..n-1 blocks].
            Cochain acc(cat, 0, cap);
            std::vector<LinComb> slots;
            auto rec = [&](auto&& self, int pos) -> void {
                if (pos == n) {
                    if (slots.size() == 1) acc.add(dk, slots[0]);
                    else if (static_cast<int>(slots.size()) < n)
                        eval_multilinear(h, -1, slots, Scalar::one(cat.field()), dk, acc);
                    return;
                }
                for (int len = 1; pos + len <= n; ++len) {
                    if (len == 1) {
                        slots.push_back(LinComb::basis(t[pos], cat.field()));
                    } else {
                        LinComb v = fplus.eval({-1, std::vector<int>(t.begin() + pos, t.begin() + pos + len)});
                        if (v.is_zero()) continue;
                        slots.push_back(std::move(v));
                    }
                    self(self, pos + len);
                    slots.pop_back();
                }
            };
            rec(rec, 0);
            h.add(dk, acc.eval(dk).scaled(Scalar(-1L, cat.field())));
        }
    return h;
}

Cochain compose_isotopies(const Cochain& mu, const Cochain& fplus, const Cochain& gplus, int cap) {
    if (!isotopy_check(mu, fplus, cap).ok) throw MathError("first input fails the isotopy functor equation");
    if (!isotopy_check(mu, gplus, cap).ok) throw MathError("second input fails the isotopy functor equation");
    Cochain r = compose_taylor(gplus, fplus, cap);
    if (!isotopy_check(mu, r, cap).ok) throw std::logic_error("composite fails the isotopy functor equation");
    return r;
}

Cochain exp_pre_lie(const Cochain& c, int cap) {
    if (!c.field().is_rational()) throw ScopeError("pre-Lie exponential needs characteristic 0");
    require_isotopy_shape(c);
    if (cap < 0) cap = c.cap();
    Cochain sum = c.truncate(cap);
    Cochain power = sum;
    mpq_class fact = 1;
    for (int i = 2; !power.is_zero(); ++i) {
        power = star(power, c, cap);
        fact *= i;
        sum += power.scaled(Scalar(mpq_class(1) / fact, c.field()));
        if (i > cap + 1) throw std::logic_error("pre-Lie exponential did not terminate");
    }
    return sum;
}

DgaOps<Cochain> hochschild_dga(const Cochain& mu, int cap) {
    if (cap < 0) cap = mu.cap();
    const Field f = mu.field();
    DgaOps<Cochain> ops;
    ops.mult = [mu, cap, f](const Cochain& x, const Cochain& y) {
        return brace(mu, {&x, &y}, cap).scaled(Scalar(sign_of(x.degree()), f));
    };
    ops.d = [mu, cap](const Cochain& x) { return differential(mu, x, cap); };
    ops.add = [](const Cochain& x, const Cochain& y) { return x + y; };
    ops.scale = [f](const Cochain& x, long c) { return x.scaled(Scalar(c, f)); };
    ops.is_zero = [](const Cochain& x) { return x.is_zero(); };
    ops.one = Cochain::unit(mu.cat(), cap).scaled(Scalar(-1L, f));
    ops.max_terms = cap + 2;
    return ops;
}

}  // namespace gentle
