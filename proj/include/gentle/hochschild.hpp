#pragma once

#include "gentle/category.hpp"
#include "gentle/quiver.hpp"
#include "gentle/scalar.hpp"

#include <climits>
#include <compare>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gentle {

// Input of a cochain component: a composable tuple of basis elements in traversal order.
// Arity-0 components are keyed by the object they sit at; otherwise obj is -1.
struct CKey {
    int obj = -1;
    std::vector<int> in;
    auto operator<=>(const CKey&) const = default;
    int arity() const { return static_cast<int>(in.size()); }
};

// Truncated Hochschild cochain in the shifted convention: a component on r inputs maps
// a_1 ... a_r to an output of degree sum(|a_i|) - r + 1 + degree().
// Cochains are normalized except for the strictly unital structure maps (mu and Id),
// which carry entries on identity inputs.
class Cochain {
public:
    static constexpr int kDefaultCap = 8;

    Cochain() = default;
    Cochain(const BasisCategory& cat, int degree, int cap = kDefaultCap);
    static Cochain identity(const BasisCategory& cat, int cap = kDefaultCap);
    // Binary composition with mu2(a1, a2) = (-1)^{|a1|} a2 a1.
    static Cochain composition(const BasisCategory& cat, int cap = kDefaultCap);
    // Arity-0 cochain with value e_v at every object v.
    static Cochain unit(const BasisCategory& cat, int cap = kDefaultCap);

    const BasisCategory& cat() const { return *cat_; }
    Field field() const { return cat_->field(); }
    int degree() const { return deg_; }
    int cap() const { return cap_; }
    bool truncated() const { return truncated_; }
    void set_truncated(bool t) { truncated_ = t; }

    // Expected output degree for the given input tuple (arity 0: at any object).
    int output_degree(const std::vector<int>& in) const;
    // Adds c * out to the component at key; checks degree and endpoints.
    void add(const CKey& key, int out, const Scalar& c);
    void add(const CKey& key, const LinComb& value);
    LinComb eval(const CKey& key) const;
    const std::map<CKey, LinComb>& table() const { return table_; }

    std::set<int> arities() const;
    int weight() const;  // INT_MAX for the zero cochain
    int max_arity() const;
    bool is_zero() const { return table_.empty(); }

    Cochain scaled(const Scalar& c) const;
    Cochain& operator+=(const Cochain& o);
    Cochain& operator-=(const Cochain& o);
    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    bool operator==(const Cochain& o) const { return table_ == o.table_; }
    // Cochain restricted to arities <= n.
    Cochain truncate(int n) const;

    // Sorted "(arity, inputs) -> output" lines.
    std::string dump() const;
    std::string key_text(const CKey& key) const;

private:
    const BasisCategory* cat_ = nullptr;
    int deg_ = 0;
    int cap_ = kDefaultCap;
    bool truncated_ = false;
    std::map<CKey, LinComb> table_;
};

std::string lincomb_text(const BasisCategory& cat, const LinComb& v);

// f{g_1, ..., g_k}: all order-preserving insertions of the g_j into the inputs of f,
// with sign (-1)^{sum_j |g_j| * (sum of |a|-1 over the raw inputs before g_j)}.
// Evaluated on every normalized input tuple up to `cap` (default: the smaller input cap).
Cochain brace(const Cochain& f, const std::vector<const Cochain*>& args, int cap = -1);
Cochain star(const Cochain& f, const Cochain& g, int cap = -1);
Cochain gerstenhaber(const Cochain& f, const Cochain& g, int cap = -1);
Cochain differential(const Cochain& mu, const Cochain& f, int cap = -1);
Cochain cup(const Cochain& mu, const Cochain& f, const Cochain& g, int cap = -1);

struct AinfVerdict {
    bool ok = true;
    int arities_checked = 0;  // mu * mu compared against zero for every arity up to this
    int failing_arity = -1;
    std::string failing_tuple;
    std::string failing_value;
};
// mu * mu = 0 at every arity up to 2M - 1 (M = top arity of mu), which is complete.
AinfVerdict check_ainf(const Cochain& mu);
// Strict unitality: mu2(e, a) = a, mu2(a, e) = (-1)^{|a|} a, higher components vanish on units.
bool check_unitality(const Cochain& mu, std::string* why = nullptr);

// Curvature sum_i mu_C^i(z, ..., z) with mu_C^1 = differential and mu_C^i = mu{z, ..., z}.
Cochain mc_curvature(const Cochain& mu, const Cochain& zeta, int cap = -1);
struct McVerdict {
    bool ok = true;
    std::string failing_tuple;
    bool truncated = false;
};
McVerdict maurer_cartan_check(const Cochain& mu, const Cochain& zeta, int cap = -1);
// Functor equation of Id + F for F of weight >= 2 and degree 0 (same as the MC equation).
McVerdict isotopy_check(const Cochain& mu, const Cochain& fplus, int cap = -1);

// Taylor composition (Id + G)(Id + F) - Id.
Cochain compose_taylor(const Cochain& gplus, const Cochain& fplus, int cap = -1);
// Checks both inputs against the functor equation, composes, and checks the result.
Cochain compose_isotopies(const Cochain& mu, const Cochain& fplus, const Cochain& gplus, int cap = -1);
// Brace-series form F + G + sum_{r>=1} G{F, ..., F}, used as a cross-check of compose_taylor.
Cochain compose_via_braces(const Cochain& gplus, const Cochain& fplus, int cap = -1);
// H with (Id + H)(Id + F) = Id, solved arity by arity.
Cochain inverse_isotopy(const Cochain& fplus, int cap = -1);

// exp(c) - Id = sum_{i>=1} c^i / i!, c^1 = c, c^{i+1} = c^i * c. Rationals only.
Cochain exp_pre_lie(const Cochain& c, int cap = -1);

// Gauge action x.z = (1+x) z (1+x)^{-1} - d(x) (1+x)^{-1} in a filtered dg algebra given by
// its operations; the inverse is the geometric series, which terminates by the filtration.
template <class T>
struct DgaOps {
    std::function<T(const T&, const T&)> mult;
    std::function<T(const T&)> d;
    std::function<T(const T&, const T&)> add;
    std::function<T(const T&, long)> scale;
    std::function<bool(const T&)> is_zero;
    T one;
    int max_terms = 64;
};

template <class T>
T gauge_action(const DgaOps<T>& ops, const T& x, const T& zeta) {
    // (1+x)^{-1} = sum_k (-x)^k
    T inv = ops.one;
    T power = ops.one;
    T minus_x = ops.scale(x, -1);
    for (int k = 1; k <= ops.max_terms; ++k) {
        power = ops.mult(power, minus_x);
        if (ops.is_zero(power)) break;
        inv = ops.add(inv, power);
        if (k == ops.max_terms) throw std::runtime_error("gauge action: geometric series did not terminate");
    }
    T one_plus_x = ops.add(ops.one, x);
    T conj = ops.mult(ops.mult(one_plus_x, zeta), inv);
    T corr = ops.mult(ops.d(x), inv);
    return ops.add(conj, ops.scale(corr, -1));
}

// The Hochschild dg algebra of a graded algebra: d = differential, product
// x . y = (-1)^{|x|} mu{x, y}, unit -1_A (all in the shifted convention).
DgaOps<Cochain> hochschild_dga(const Cochain& mu, int cap = -1);

// ------------------------------------------------------------------ f_p basis

struct FpBasisElement {
    PathWord p;     // maximal antipath (trivial for the endpoint-extended classes)
    PathWord pbar;  // parallel permitted path
    int omega = 0;  // cohomological degree |pbar| - |p| + l
    int arity = 0;  // l = length of p
    bool extended = false;
};

struct FpBasis {
    std::vector<FpBasisElement> elements;
    bool cyclic = false;
    bool cap_reached = false;
    int count_degree(int omega) const;
};

// Maximal antipaths of length >= 1 with a parallel permitted path.
FpBasis fp_basis(const GentlePresentation& p, int cap = 64);
// Adds the classes with a trivial endpoint: a trivial forbidden thread at v paired with a
// permitted thread from v to v, and a maximal antipath from v to v paired with a trivial
// permitted thread at v.
FpBasis fp_basis_extended(const GentlePresentation& p, int cap = 64);
// Single-component cochain alpha_1 ... alpha_l -> pbar (shifted degree omega - 1).
Cochain fp_cochain(const BasisCategory& cat, const FpBasisElement& e, int cap = Cochain::kDefaultCap);
std::string fp_text(const GentlePresentation& p, const FpBasisElement& e);

struct HH1Report {
    int dim_finite_part = 0;
    int phi11 = 0;
    int phi00 = 0;
    int h1_rank = 0;
    int fp_degree1 = 0;
    std::string witt_flavor = "none";
    bool exceptional_kronecker = false;
    bool smooth = false;
    bool proper = false;
};
// flavor: "", "smooth" or "proper" selects the Witt completion when phi(0,0) > 0.
HH1Report hh1_structure(const GentlePresentation& p, const std::string& flavor = "");
std::string hh1_json(const HH1Report& r, int indent = -1);

struct FormalityVerdict {
    bool ok = true;
    std::vector<std::pair<int, int>> pairs;  // indices into the basis, all checked
    int failing_first = -1, failing_second = -1;
    std::string failing_value;
};
FormalityVerdict formality_check_cochains(const Cochain& mu, const std::vector<Cochain>& reps);
// Throws ScopeError when cyclic antipaths are present (not smooth and proper).
FormalityVerdict formality_check(const GentlePresentation& p, int cap = 64);

// dim of classical HH^i computed from the truncated normalized complex of a graded algebra
// (product mu2 only), summing exact contributions of arities 0..max_arity.
int hochschild_dimension(const BasisCategory& cat, int classical_degree, int max_arity);

}  // namespace gentle
