// Acceptance driver: one line per criterion, exit status 0 only when every criterion passes.

#include "gentle/corpus.hpp"
#include "gentle/dpic.hpp"
#include "gentle/errors.hpp"
#include "gentle/fukaya.hpp"
#include "gentle/hochschild.hpp"
#include "gentle/lie.hpp"
#include "gentle/strings.hpp"
#include "gentle/surface.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace gentle;
using json = nlohmann::ordered_json;

namespace {

// Wall-clock limits in seconds.
constexpr double kValidationLimit = 1.0;
constexpr double kAinfLimit = 5.0;
constexpr double kLieLimit = 5.0;
constexpr double kBaseChangeLimit = 10.0;

// Sample sizes.
constexpr int kRandomQuivers = 200;
constexpr int kMaxQuiverVertices = 8;
constexpr int kMinEulerInstances = 100;
constexpr int kMinHH1Instances = 10;
constexpr int kLieOrder = 8;
constexpr int kLieSeeds = 100;
constexpr int kBraceCap = 6;
constexpr int kMaxStringEdges = 4;

struct Outcome {
    bool pass = true;
    std::string detail;
    double limit = 0;  // seconds, 0 when untimed
};

// Records the first failure and keeps the verdict.
struct Check {
    Outcome out;
    void require(bool ok, const std::string& what) {
        if (!ok && out.pass) {
            out.pass = false;
            out.detail = what;
        }
    }
};

int sign(long e) { return e % 2 == 0 ? 1 : -1; }

bool graded(const GentlePresentation& p) {
    for (int a = 0; a < p.num_arrows(); ++a)
        if (p.arrow(a).deg != 0) return true;
    return false;
}

Outcome gentle_validation() {
    Check c;
    c.out.limit = kValidationLimit;
    int gentle_count = 0;
    for (unsigned s = 0; s < static_cast<unsigned>(kRandomQuivers); ++s) {
        const RawQuiver r = random_quiver(s, kMaxQuiverVertices);
        c.require(static_cast<int>(r.quiver.vertices.size()) <= kMaxQuiverVertices, "quiver too large");
        const bool lib = GentlePresentation::violations(r.quiver, r.relations).empty();
        c.require(lib == oracle::is_gentle(r.quiver, r.relations), "verdict differs at seed " + std::to_string(s));
        gentle_count += lib;
    }
    if (c.out.pass)
        c.out.detail = std::to_string(kRandomQuivers) + " quivers, " + std::to_string(gentle_count) + " gentle";
    return c.out;
}

Outcome euler_identity() {
    Check c;
    int n = 0;
    for (const auto& [name, p] : general_corpus(120)) {
        const SurfaceInvariants s = surface_invariants(p);
        c.require(p.num_vertices() - p.num_arrows() == 2 - 2 * s.genus - s.b(), "fails on " + name);
        ++n;
    }
    c.require(n >= kMinEulerInstances, "only " + std::to_string(n) + " instances");
    if (c.out.pass) c.out.detail = std::to_string(n) + " presentations";
    return c.out;
}

Outcome example_surfaces() {
    Check c;
    for (const auto& [name, p] : {std::pair{"kronecker", kronecker()}, std::pair{"algebra B", algebra_b()}}) {
        const SurfaceInvariants s = surface_invariants(p);
        c.require(s.genus == 0 && s.b() == 2, std::string(name) + ": wrong genus or boundary count");
        for (const auto& comp : s.components)
            c.require(comp.segments == 1 && comp.winding == 0, std::string(name) + ": component is not (1, 0)");
    }
    c.require(derived_equivalent(kronecker(), algebra_b()).equivalent, "kronecker and B not equivalent");
    for (int w = -2; w <= 2; ++w) {
        const SurfaceInvariants s = surface_invariants(punctured_disk(w));
        int full = 0;
        for (const auto& comp : s.components)
            if (comp.fully_marked) full += comp.winding == w ? 1 : 100;
        c.require(full == 1, "punctured disk " + std::to_string(w) + ": fully marked component");
        for (int v = -2; v <= 2; ++v)
            if (v != w)
                c.require(!derived_equivalent(punctured_disk(w), punctured_disk(v)).equivalent,
                          "punctured disks " + std::to_string(w) + ", " + std::to_string(v) + " equivalent");
    }
    if (c.out.pass) c.out.detail = "annulus (1,0)x2 for both; 5 punctured disks pairwise distinct";
    return c.out;
}

Outcome invariance() {
    Check c;
    int n = 0, changed = 0;
    for (const auto& [name, p] : general_corpus(120)) {
        const SurfaceInvariants s = surface_invariants(p);
        const AAGInvariant phi = aag_invariant(p);
        const GentlePresentation kk = koszul_dual(koszul_dual(p));
        c.require(surface_invariants(kk) == s && aag_invariant(kk) == phi, name + ": changed by double duality");
        const RigidifyResult r = rigidify(p);
        c.require(is_rigid(r.presentation), name + ": rigidify output is not rigid");
        c.require(surface_invariants(r.presentation) == s && aag_invariant(r.presentation) == phi,
                  name + ": changed by rigidify");
        changed += !r.unchanged;
        ++n;
    }
    if (c.out.pass)
        c.out.detail = std::to_string(n) + " presentations, " + std::to_string(changed) + " rigidified";
    return c.out;
}

Outcome hh1_crosscheck() {
    Check c;
    int n = 0, oracle_n = 0;
    auto corpus = smooth_proper_corpus(40);
    for (auto& entry : smooth_proper_corpus(12, true)) corpus.push_back(entry);
    for (const auto& [name, p] : corpus) {
        if (is_kronecker_quiver(p)) continue;
        const HH1Crosscheck x = hh1_dimension_crosscheck(p);
        const int algebra = fp_basis_extended(p).count_degree(1) + p.num_arrows() - p.num_vertices() + 1;
        c.require(x.pass && x.algebra_side == algebra, name + ": surface side " + std::to_string(x.surface_side) +
                                                           ", algebra side " + std::to_string(algebra));
        ++n;
        if (!graded(p)) {
            const int der = oracle::outer_derivations(BasisCategory::from_presentation(p));
            c.require(der == algebra, name + ": Der/Inn " + std::to_string(der) + ", expected " + std::to_string(algebra));
            ++oracle_n;
        }
    }
    c.require(n >= kMinHH1Instances, "only " + std::to_string(n) + " algebras");
    if (c.out.pass)
        c.out.detail = std::to_string(n) + " algebras, " + std::to_string(oracle_n) + " against Der/Inn";
    return c.out;
}

Outcome formality() {
    Check c;
    int n = 0, pairs = 0;
    for (const auto& [name, p] : smooth_proper_corpus(40)) {
        const FormalityVerdict v = formality_check(p);
        const std::size_t k = fp_basis(p).elements.size();
        c.require(v.ok, name + ": nonzero cup product " + v.failing_value);
        c.require(v.pairs.size() == k * k, name + ": incomplete pair list");
        pairs += static_cast<int>(v.pairs.size());
        ++n;
    }
    // Negative control: representatives perturbed by non-cocycles.
    int corrupted = 0, broken = 0;
    for (const auto& [name, p] : smooth_proper_corpus(20)) {
        const FpBasis basis = fp_basis(p);
        if (basis.elements.empty()) continue;
        const BasisCategory cat = BasisCategory::from_presentation(p);
        int top = 2;
        for (const auto& e : basis.elements) top = std::max(top, 2 * e.arity);
        const Cochain mu = Cochain::composition(cat, top);
        for (unsigned seed = 1; seed <= 3; ++seed) {
            std::vector<Cochain> reps;
            bool changed = false;
            for (const auto& e : basis.elements) {
                const Cochain f = fp_cochain(cat, e, top);
                const Cochain noise = oracle::random_cochain(cat, f.degree(), 1, 2, seed, top);
                const bool cocycle = differential(mu, noise, top).is_zero();
                changed |= !cocycle;
                reps.push_back(cocycle ? f : f + noise);
            }
            if (!changed) continue;
            ++corrupted;
            broken += !formality_check_cochains(mu, reps).ok;
        }
    }
    c.require(broken > 0, "negative control never fails");
    if (c.out.pass)
        c.out.detail = std::to_string(n) + " algebras, " + std::to_string(pairs) + " pairs; control fails on " +
                       std::to_string(broken) + "/" + std::to_string(corrupted);
    return c.out;
}

Outcome ainf_certification() {
    Check c;
    c.out.limit = kAinfLimit;
    int n = 0;
    for (const auto& [name, a] : arc_corpus()) {
        const FukayaCategory fc = build_fukaya(a);
        const AinfVerdict v = check_ainf(fc.mu);
        c.require(fc.conflicts.empty(), name + ": conflicting disk contributions");
        c.require(v.ok, name + ": fails at " + v.failing_tuple);
        ++n;
    }
    c.require(n >= 5, "fewer than 5 arc systems");
    c.require(build_fukaya(triangle_disk()).mu.arities().count(3) == 1, "triangle has no mu3");
    c.require(build_fukaya(square_disk(true)).mu.arities().count(3) == 1, "square with diagonal has no mu3");
    c.require(build_fukaya(square_disk(false)).mu.arities().count(4) == 1, "square has no mu4");
    FukayaOptions flip;
    flip.drop_prefix_sign = true;
    const AinfVerdict bad = check_ainf(build_fukaya(square_disk(true), {}, flip).mu);
    c.require(!bad.ok, "sign-flip control passes");
    if (c.out.pass)
        c.out.detail = std::to_string(n) + " arc systems; sign flip fails at arity " + std::to_string(bad.failing_arity);
    return c.out;
}

Outcome lie_group_laws() {
    Check c;
    c.out.limit = kLieLimit;
    for (unsigned s = 1; s <= static_cast<unsigned>(kLieSeeds); ++s) {
        const TruncatedWitt u = random_witt(kLieOrder, s), v = random_witt(kLieOrder, s + 1000),
                            w = random_witt(kLieOrder, s + 2000);
        c.require(exp_witt(bch(u, v)) == exp_witt(u).compose(exp_witt(v)), "exp(bch) at seed " + std::to_string(s));
        c.require(bch(bch(u, v), w) == bch(u, bch(v, w)), "bch associativity at seed " + std::to_string(s));
        c.require(log_aut(exp_witt(u)) == u, "log exp at seed " + std::to_string(s));
    }
    if (c.out.pass) c.out.detail = std::to_string(kLieSeeds) + " seeds at order " + std::to_string(kLieOrder);
    return c.out;
}

Outcome brace_laws() {
    Check c;
    constexpr int cap = kBraceCap;
    int n = 0;
    for (Field f : {Field{0}, Field{5}}) {
        const BasisCategory cat = BasisCategory::from_presentation(linear_a(4, false).with_field(f));
        const Cochain mu = Cochain::composition(cat, cap);
        const Cochain id = Cochain::identity(cat, cap);
        for (unsigned s = 0; s < 6; ++s) {
            const std::string at = f.name() + " seed " + std::to_string(s);
            const int df = static_cast<int>(s % 3) - 1, dg = static_cast<int>((s + 1) % 3) - 1,
                      dh = static_cast<int>((s + 2) % 2);
            const Cochain F = oracle::random_cochain(cat, df, 1, 2, 100 + s, cap);
            const Cochain G = oracle::random_cochain(cat, dg, 0, 2, 200 + s, cap);
            const Cochain H = oracle::random_cochain(cat, dh, 1, 2, 300 + s, cap);
            auto assoc = [&](const Cochain& x, const Cochain& y, const Cochain& z) {
                return star(star(x, y, cap), z, cap) - star(x, star(y, z, cap), cap);
            };
            const Scalar swap(static_cast<long>(sign(long(dg) * dh)), f);
            c.require(assoc(F, G, H) == assoc(F, H, G).scaled(swap), "pre-Lie symmetry over " + at);
            auto br = [&](const Cochain& x, const Cochain& y) { return gerstenhaber(x, y, cap); };
            const Cochain j = br(F, br(G, H)).scaled(Scalar(static_cast<long>(sign(long(df) * dh)), f)) +
                              br(G, br(H, F)).scaled(Scalar(static_cast<long>(sign(long(dg) * df)), f)) +
                              br(H, br(F, G)).scaled(Scalar(static_cast<long>(sign(long(dh) * dg)), f));
            c.require(j.is_zero(), "graded Jacobi over " + at);
            c.require(differential(mu, differential(mu, F, cap), cap).is_zero(), "d^2 over " + at);
            c.require(star(id, F, cap) == F && star(id, G, cap) == G, "left unit over " + at);
            ++n;
        }
    }
    if (c.out.pass) c.out.detail = std::to_string(n) + " random triples over Q and F5, cap " + std::to_string(cap);
    return c.out;
}

Outcome base_change() {
    Check c;
    c.out.limit = kBaseChangeLimit;
    const fixtures::Disk4 d = fixtures::disk4();
    int strings = 0, comparisons = 0;
    for (const auto& [key, F] : d.cats) {
        const auto paths = fixtures::short_paths(d, key);
        const auto xs = fixtures::reduced_strings(F, kMaxStringEdges);
        strings += static_cast<int>(xs.size());
        for (const auto& [end, group] : paths) {
            const FukayaCategory& G = d.cats.at(end);
            for (const Diagram& X : xs) {
                std::vector<Diagram> outs;
                for (const auto& path : group) {
                    std::vector<PathStep> steps;
                    for (const Exchange* e : path.steps) steps.push_back({e, 0});
                    outs.push_back(base_change_path(X, F, steps));
                }
                // Returning to the start is compared with the input itself.
                if (end == key) outs.push_back(X);
                for (std::size_t i = 1; i < outs.size(); ++i) {
                    ++comparisons;
                    c.require(string_equal(G, outs[0], G, outs[i]),
                              key + " -> " + end + ": paths disagree on " + string_text(F, X));
                }
            }
        }
    }
    if (c.out.pass)
        c.out.detail = std::to_string(strings) + " strings, " + std::to_string(comparisons) + " path comparisons";
    return c.out;
}

Outcome mc_exponential() {
    Check c;
    int used = 0;
    const std::vector<std::pair<mpq_class, mpq_class>> params = {{2, mpq_class(-1, 3)}, {1, 1}, {mpq_class(1, 2), 3}};
    for (const auto& [name, p] : smooth_proper_corpus(40)) {
        const BasisCategory cat = BasisCategory::from_presentation(p);
        for (const auto& e : fp_basis(p).elements) {
            // Positive weight: arity at least two.
            if (e.omega != 1 || e.arity < 2) continue;
            const int cap = std::max(2 * e.arity, 4);
            const Cochain mu = Cochain::composition(cat, cap);
            const Cochain f = fp_cochain(cat, e, cap);
            c.require(isotopy_check(mu, f, cap).ok, name + ": Id + f_p is not an isotopy");
            for (const auto& [l, m] : params) {
                const Cochain a = exp_pre_lie(f.scaled(Scalar(l)), cap), b = exp_pre_lie(f.scaled(Scalar(m)), cap);
                c.require(compose_taylor(a, b, cap) == exp_pre_lie(f.scaled(Scalar(mpq_class(l + m))), cap),
                          name + ": exp is not additive");
            }
            ++used;
        }
    }
    c.require(used > 0, "no positive-weight degree-1 classes in the corpus");
    if (c.out.pass) c.out.detail = std::to_string(used) + " classes";
    return c.out;
}

Outcome dpic_fidelity() {
    Check c;
    // Kronecker surface in characteristic zero.
    const json k = json::parse(dpic_json(dpic_description(kronecker(), 0, "smooth_and_proper")));
    c.require(k["semidirect"][0]["atom"]["name"] == "PGL2" && k["semidirect"][1]["atom"]["name"] == "MCGgraded",
              "kronecker tree: " + k.dump());
    // Proper, characteristic zero: ((Ga x Aut k[[t]]) semidirect units torus) semidirect MCG.
    const GentlePresentation a3 = linear_a(3, true);
    const json pr = json::parse(dpic_json(dpic_description(a3, 0, "proper")));
    const json& inner = pr["semidirect"][0]["semidirect"];
    c.require(inner[0]["product"][0]["atom"]["name"] == "AdditiveGroup" &&
                  inner[0]["product"][1]["atom"]["name"] == "PowerSeriesAut" &&
                  inner[1]["atom"]["name"] == "UnitsTorus" &&
                  inner[1]["atom"]["rank"] == rescaling_group(a3).rank &&
                  pr["semidirect"][1]["atom"]["name"] == "MCGgraded",
              "proper tree: " + pr.dump());
    // Punctured genus 0 with two components: (torus semidirect Z/2) semidirect MCG.
    SurfaceInvariants s;
    s.genus = 0;
    s.components = {{0, 0, true}, {0, 0, true}};
    const GroupDescription pd = dpic_description(s, 0, "punctured");
    const GroupNode z2 = GroupNode::semidirect(GroupNode::atom("UnitsTorus", {{"rank", 2}}), GroupNode::atom("CyclicOrder2"));
    c.require(pd.root.kind == GroupNode::Kind::Semidirect && pd.root.children[0] == z2, "punctured (0,2) tree");
    // Morita invariance.
    int pairs = 0;
    for (const auto& [p, q] : morita_pairs()) {
        for (const char* flavor : {"proper", "smooth", "smooth_and_proper"}) {
            std::string a, b;
            try {
                a = dpic_json(dpic_description(p, 0, flavor));
            } catch (const InputError&) {
                a = "refused";
            }
            try {
                b = dpic_json(dpic_description(q, 0, flavor));
            } catch (const InputError&) {
                b = "refused";
            }
            c.require(a == b, std::string("report differs on a Morita pair, flavor ") + flavor);
        }
        ++pairs;
    }
    if (c.out.pass) c.out.detail = "three trees verbatim; " + std::to_string(pairs) + " Morita pairs";
    return c.out;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "gentle validation", gentle_validation},
        {2, "euler identity", euler_identity},
        {3, "example surfaces", example_surfaces},
        {4, "invariance", invariance},
        {5, "HH1 cross-check", hh1_crosscheck},
        {6, "formality", formality},
        {7, "A-infinity certification", ainf_certification},
        {8, "BCH and exp group laws", lie_group_laws},
        {9, "brace algebra laws", brace_laws},
        {10, "base change coherence", base_change},
        {11, "Maurer-Cartan and exponential", mc_exponential},
        {12, "DPic report fidelity", dpic_fidelity},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = cr.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.pass && o.limit > 0 && secs > o.limit) {
            o.pass = false;
            std::ostringstream ss;
            ss << "over the " << o.limit << " s limit";
            o.detail = ss.str();
        }
        failed += !o.pass;
        std::printf("%s %2d %-30s %7.3f s  %s\n", o.pass ? "PASS" : "FAIL", cr.id, cr.name, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
