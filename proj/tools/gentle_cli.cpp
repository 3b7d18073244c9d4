#include "gentle/corpus.hpp"
#include "gentle/dpic.hpp"
#include "gentle/errors.hpp"
#include "gentle/fukaya.hpp"
#include "gentle/hochschild.hpp"
#include "gentle/lie.hpp"
#include "gentle/strings.hpp"
#include "gentle/surface.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace gentle;

namespace {

// Exit statuses: 0 success or pass, 1 mathematical failure, 2 bad input.
constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;

struct Options {
    std::string field = "Q";
    int cap = 64;
    int order = 8;
    unsigned seed = 1;
    std::string flavor;
    bool json = false;
    std::vector<std::string> files;
    std::string string_text;
    std::string resolution;
    std::string both;
    bool drop_prefix_sign = false;
    int max_disk = 12;
    int samples = 10;
};

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

GentlePresentation load(const Options& o, const std::string& path) {
    GentlePresentation p = load_presentation(path);
    return p.with_field(Field::parse(o.field));
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string group_text(const GroupNode& n) {
    switch (n.kind) {
        case GroupNode::Kind::Atom: {
            std::string s = n.name;
            if (n.params.empty()) return s;
            s += "(";
            for (std::size_t i = 0; i < n.params.size(); ++i)
                s += (i ? ", " : "") + n.params[i].first + "=" + std::to_string(n.params[i].second);
            return s + ")";
        }
        case GroupNode::Kind::Product: {
            std::string s = "(";
            for (std::size_t i = 0; i < n.children.size(); ++i) s += (i ? " x " : "") + group_text(n.children[i]);
            return s + ")";
        }
        case GroupNode::Kind::Semidirect:
            return "(" + group_text(n.children[0]) + " ⋊ " + group_text(n.children[1]) + ")";
    }
    return {};
}

// ------------------------------------------------------------------ subcommands

int cmd_validate(const Options& o) {
    try {
        const GentlePresentation p = load(o, o.files.at(0));
        if (o.json) {
            emit({{"valid", true},
                  {"field", p.field().name()},
                  {"vertices", p.num_vertices()},
                  {"arrows", p.num_arrows()},
                  {"relations", p.relations().size()},
                  {"smooth", is_smooth(p)},
                  {"proper", is_proper(p)}});
        } else {
            std::cout << "valid gentle presentation over " << p.field().name() << "\n"
                      << "vertices: " << p.num_vertices() << "\n"
                      << "arrows: " << p.num_arrows() << "\n"
                      << "relations: " << p.relations().size() << "\n"
                      << "smooth: " << yes_no(is_smooth(p)) << "\n"
                      << "proper: " << yes_no(is_proper(p)) << "\n";
        }
        return kPass;
    } catch (const GentleError& e) {
        if (o.json) {
            emit({{"valid", false}, {"violations", e.violations()}});
        } else {
            std::cout << "not gentle\n";
            for (const auto& v : e.violations()) std::cout << "violation: " << v << "\n";
        }
        return kInput;
    }
}

int cmd_surface(const Options& o) {
    const GentlePresentation p = load(o, o.files.at(0));
    if (o.json) {
        std::cout << surface_report_json(p, 2) << "\n";
        return kPass;
    }
    const SurfaceInvariants inv = surface_invariants(p);
    std::cout << "genus: " << inv.genus << "\n"
              << "boundary components: " << inv.b() << "\n";
    for (const auto& c : inv.components)
        std::cout << "  segments " << c.segments << ", winding " << c.winding
                  << (c.fully_marked ? ", fully marked" : "") << "\n";
    std::cout << "kronecker surface: " << yes_no(is_kronecker_surface(inv)) << "\n";
    return kPass;
}

int cmd_phi(const Options& o) {
    const GentlePresentation p = load(o, o.files.at(0));
    const AAGInvariant phi = aag_invariant(p);
    if (o.json) {
        json arr = json::array();
        for (const auto& [nd, m] : phi.mult) arr.push_back({{"n", nd.first}, {"d", nd.second}, {"multiplicity", m}});
        emit({{"phi", arr}});
        return kPass;
    }
    for (const auto& [nd, m] : phi.mult)
        std::cout << "phi(" << nd.first << "," << nd.second << ") = " << m << "\n";
    return kPass;
}

int cmd_hh1(const Options& o) {
    const GentlePresentation p = load(o, o.files.at(0));
    const HH1Report r = hh1_structure(p, o.flavor);
    const FpBasis basis = fp_basis_extended(p, o.cap);
    if (o.json) {
        json doc = json::parse(hh1_json(r));
        json list = json::array();
        for (const auto& e : basis.elements)
            list.push_back({{"class", fp_text(p, e)}, {"degree", e.omega}, {"arity", e.arity}, {"extended", e.extended}});
        doc["fp_basis"] = list;
        emit(doc);
        return kPass;
    }
    std::cout << "dim HH1 (finite part): " << r.dim_finite_part << "\n"
              << "phi(1,1): " << r.phi11 << "\n"
              << "phi(0,0): " << r.phi00 << "\n"
              << "rescaling rank: " << r.h1_rank << "\n"
              << "degree-1 fp classes: " << r.fp_degree1 << "\n"
              << "witt part: " << r.witt_flavor << "\n";
    if (r.exceptional_kronecker) std::cout << "exceptional: kronecker surface\n";
    for (const auto& e : basis.elements)
        std::cout << "  fp " << fp_text(p, e) << "  degree " << e.omega << (e.extended ? "  (extended)" : "") << "\n";
    return kPass;
}

int cmd_formality(const Options& o) {
    const GentlePresentation p = load(o, o.files.at(0));
    const FormalityVerdict v = formality_check(p, o.cap);
    if (o.json) {
        json doc = {{"formal", v.ok}, {"pairs_checked", v.pairs.size()}};
        if (!v.ok) doc["failing_pair"] = {v.failing_first, v.failing_second}, doc["failing_value"] = v.failing_value;
        emit(doc);
    } else {
        std::cout << "cup products checked: " << v.pairs.size() << "\n";
        if (v.ok) {
            std::cout << "formality: pass (all chain-level cup products vanish)\n";
        } else {
            std::cout << "formality: FAIL at pair (" << v.failing_first << "," << v.failing_second
                      << "): " << v.failing_value << "\n";
        }
    }
    return v.ok ? kPass : kFail;
}

int cmd_dpic(const Options& o) {
    const Field f = Field::parse(o.field);
    const std::string flavor = o.flavor.empty() ? "smooth_and_proper" : o.flavor;
    const std::string& path = o.files.at(0);
    GroupDescription d;
    std::optional<RescalingData> resc;
    if (ends_with(path, ".json")) {
        d = dpic_description(parse_surface_invariants_json(read_file(path)), f.p, flavor);
    } else {
        const GentlePresentation p = load(o, path);
        d = dpic_description(p, f.p, flavor);
        resc = rescaling_group(p);
    }
    if (o.json) {
        json doc = {{"flavor", flavor}, {"characteristic", f.p}, {"group", json::parse(dpic_json(d))}};
        if (resc) doc["rescaling_rank"] = resc->rank;
        emit(doc);
        return kPass;
    }
    std::cout << "DPic: " << group_text(d.root) << "\n";
    if (resc) std::cout << "rescaling rank: " << resc->rank << "\n";
    return kPass;
}

int cmd_equiv(const Options& o) {
    const GentlePresentation a = load(o, o.files.at(0));
    const GentlePresentation b = load(o, o.files.at(1));
    const IsoVerdict v = derived_equivalent(a, b);
    if (o.json) {
        emit({{"equivalent", v.equivalent}, {"complete", v.complete}});
    } else {
        std::cout << "derived equivalent: " << yes_no(v.equivalent) << "\n"
                  << "verdict complete: " << yes_no(v.complete) << "\n";
    }
    return kPass;
}

int cmd_rigidify(const Options& o) {
    const GentlePresentation p = load(o, o.files.at(0));
    const RigidifyResult r = rigidify(p);
    const bool rigid = is_rigid(r.presentation);
    if (o.json) {
        emit({{"exchanges", r.exchanges},
              {"unchanged", r.unchanged},
              {"rigid", rigid},
              {"presentation", serialize(r.presentation)}});
    } else {
        std::cout << "# exchanges: " << r.exchanges << (r.unchanged ? " (already rigid)" : "") << "\n"
                  << serialize(r.presentation);
    }
    return rigid ? kPass : kFail;
}

int cmd_fukaya_check(const Options& o) {
    const ArcSystem a = load_arc_system(o.files.at(0));
    FukayaOptions fo;
    fo.drop_prefix_sign = o.drop_prefix_sign;
    fo.max_disk_length = o.max_disk;
    const FukayaCategory fc = build_fukaya(a, Field::parse(o.field), fo);
    const AinfVerdict v = check_ainf(fc.mu);
    std::string why;
    const bool unital = check_unitality(fc.mu, &why);
    const bool ok = v.ok && unital && fc.conflicts.empty();
    auto seq_text = [](const DiskSequence& d) {
        std::string s;
        for (const auto& n : d.names) s += (s.empty() ? "" : ", ") + n;
        return "(" + s + ")";
    };
    if (o.json) {
        json faces = json::array(), disks = json::array();
        for (const auto& d : fc.faces) faces.push_back({{"flows", d.names}, {"degree_sum", d.degree_sum}});
        for (const auto& d : fc.disks) disks.push_back({{"flows", d.names}, {"degree_sum", d.degree_sum}});
        json doc = {{"arcs", a.num_arcs()},
                    {"intervals", a.intervals.size()},
                    {"flows", fc.cat->size()},
                    {"closed_faces", faces},
                    {"immersed_disks", disks},
                    {"conflicts", fc.conflicts},
                    {"ainf", v.ok},
                    {"arities_checked", v.arities_checked},
                    {"unital", unital}};
        if (!v.ok) doc["failing_tuple"] = v.failing_tuple, doc["failing_value"] = v.failing_value;
        emit(doc);
        return ok ? kPass : kFail;
    }
    std::cout << "arcs: " << a.num_arcs() << ", intervals: " << a.intervals.size()
              << ", basis flows: " << fc.cat->size() << "\n"
              << "closed faces: " << fc.faces.size() << "\n";
    for (const auto& d : fc.faces) std::cout << "  face " << seq_text(d) << "  degree sum " << d.degree_sum << "\n";
    std::cout << "immersed disks: " << fc.disks.size() << "\n";
    for (const auto& d : fc.disks) std::cout << "  disk " << seq_text(d) << "\n";
    for (const auto& c : fc.conflicts) std::cout << "conflict: " << c << "\n";
    if (v.ok) {
        std::cout << "A-infinity: pass (mu*mu = 0 through arity " << v.arities_checked << ")\n";
    } else {
        std::cout << "A-infinity: FAIL at arity " << v.failing_arity << ": " << v.failing_tuple << " -> "
                  << v.failing_value << "\n";
    }
    std::cout << "strict unit: " << (unital ? "pass" : "FAIL " + why) << "\n";
    return ok ? kPass : kFail;
}

// An arc system argument is either a .arc file or a comma-separated list of arcs of the
// built-in disk with four marked intervals.
std::vector<std::string> split_arcs(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_basechange(const Options& o) {
    const Field f = Field::parse(o.field);
    ArcSystem from, to, both;
    const bool builtin = !ends_with(o.files.at(0), ".arc");
    if (builtin) {
        std::vector<std::string> a = split_arcs(o.files.at(0)), b = split_arcs(o.files.at(1));
        std::vector<std::string> u = a;
        for (const auto& x : b)
            if (std::find(u.begin(), u.end(), x) == u.end()) u.push_back(x);
        from = disk4_system(a);
        to = disk4_system(b);
        both = disk4_system(u);
    } else {
        if (o.both.empty()) throw InputError("--both is required when the arc systems are files");
        from = load_arc_system(o.files.at(0));
        to = load_arc_system(o.files.at(1));
        both = load_arc_system(o.both);
    }
    Exchange e;
    if (o.resolution.empty()) {
        e = triangle_exchange(from, to, both, f);
    } else {
        const FukayaCategory target = build_fukaya(to, f);
        e = make_exchange(from, to, both, parse_string(target, o.resolution), f);
    }
    const Diagram x = make_string_complex(e.from, parse_string(e.from, o.string_text));
    BaseChangeTrace trace;
    const Diagram y = base_change_elementary(x, e, &trace);
    // The output must be isomorphic to the input inside the union system.
    const bool iso = tw_isomorphic(e.both, transfer(e.from, e.both, x), transfer(e.to, e.both, y));
    const std::string out = y.nodes.empty() ? "0" : string_text(e.to, y);
    if (o.json) {
        emit({{"removed", e.removed},
              {"added", e.added},
              {"resolution", string_text(e.to, e.resolution)},
              {"input", string_text(e.from, x)},
              {"output", out},
              {"substituted", trace.substituted},
              {"pairs_removed", trace.pairs_removed},
              {"dropped_acyclic", trace.dropped_acyclic},
              {"isomorphic_in_union", iso}});
    } else {
        std::cout << "exchange: " << e.removed << " -> " << e.added << "\n"
                  << "resolution: " << e.removed << " ~ " << string_text(e.to, e.resolution) << "\n"
                  << "input: " << string_text(e.from, x) << "\n"
                  << "output: " << out << "\n"
                  << "substituted nodes: " << trace.substituted << ", pairs removed: " << trace.pairs_removed
                  << ", acyclic components dropped: " << trace.dropped_acyclic << "\n"
                  << "isomorphic in the union: " << yes_no(iso) << "\n";
    }
    return iso ? kPass : kFail;
}

int cmd_exp_demo(const Options& o) {
    if (o.order < 1) throw InputError("--order must be positive");
    int fails = 0;
    json runs = json::array();
    for (int k = 0; k < o.samples; ++k) {
        const unsigned s = o.seed + static_cast<unsigned>(k);
        const TruncatedWitt u = random_witt(o.order, 2 * s), v = random_witt(o.order, 2 * s + 1);
        const TruncatedWitt w = random_witt(o.order, 2 * s + 1000);
        const bool hom = exp_witt(bch(u, v)) == exp_witt(u).compose(exp_witt(v));
        const bool assoc = bch(bch(u, v), w) == bch(u, bch(v, w));
        const bool log_exp = log_aut(exp_witt(u)) == u;
        fails += !hom + !assoc + !log_exp;
        runs.push_back({{"seed", s}, {"homomorphism", hom}, {"associativity", assoc}, {"log_exp", log_exp}});
    }
    const bool ok = fails == 0;
    if (o.json) {
        emit({{"order", o.order}, {"samples", o.samples}, {"pass", ok}, {"runs", runs}});
    } else {
        const TruncatedWitt u = random_witt(o.order, 2 * o.seed), v = random_witt(o.order, 2 * o.seed + 1);
        std::cout << "u = " << u.str() << "\n"
                  << "v = " << v.str() << "\n"
                  << "bch(u,v) = " << bch(u, v).str() << "\n"
                  << "exp(u) = " << exp_witt(u).str() << "\n";
        int bad_hom = 0, bad_assoc = 0, bad_log = 0;
        for (const auto& r : runs) {
            bad_hom += !r["homomorphism"].get<bool>();
            bad_assoc += !r["associativity"].get<bool>();
            bad_log += !r["log_exp"].get<bool>();
        }
        auto line = [&](const char* what, int bad) {
            std::cout << what << ": " << (bad ? "FAIL" : "pass") << " (" << o.samples - bad << "/" << o.samples
                      << " samples, order " << o.order << ")\n";
        };
        line("homomorphism law exp(bch(u,v)) = exp(u) o exp(v)", bad_hom);
        line("bch associativity", bad_assoc);
        line("log(exp(u)) = u", bad_log);
    }
    return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graded gentle algebras: surfaces, Hochschild cohomology, Fukaya categories"};
    app.require_subcommand(1);
    Options o;

    auto field_opt = [&](CLI::App* c) {
        c->add_option("--field", o.field, "Ground field: Q or F<p> with p an odd prime");
    };
    auto json_opt = [&](CLI::App* c) { c->add_flag("--json", o.json, "Emit one JSON document"); };
    auto one_file = [&](CLI::App* c, const char* what) {
        c->add_option("file", o.files, what)->required()->expected(1);
    };

    auto* validate = app.add_subcommand("validate", "Check the gentle conditions of a presentation");
    auto* surface = app.add_subcommand("surface", "Surface model: genus and boundary components");
    auto* phi = app.add_subcommand("phi", "Avella-Alaminos-Geiss invariant");
    auto* hh1 = app.add_subcommand("hh1", "First Hochschild cohomology and the f_p basis");
    auto* formality = app.add_subcommand("formality", "Chain-level cup products of the f_p basis");
    auto* dpic = app.add_subcommand("dpic", "Structure of the derived Picard group");
    auto* equiv = app.add_subcommand("equiv", "Derived equivalence of two presentations");
    auto* rigid = app.add_subcommand("rigidify", "Derived-equivalent presentation without degenerating arcs");
    auto* fukaya = app.add_subcommand("fukaya", "Fukaya category of an arc system");
    auto* fcheck = fukaya->add_subcommand("check", "Face census, disk sequences and the A-infinity verdict");
    fukaya->require_subcommand(1);
    auto* basechange = app.add_subcommand("basechange", "Rewrite a string complex across an arc exchange");
    auto* expdemo = app.add_subcommand("exp-demo", "Group laws of the exponential of the positive Witt algebra");

    for (auto* c : {validate, surface, phi, hh1, formality, dpic, rigid}) {
        one_file(c, "Presentation file (.gq)");
        field_opt(c);
        json_opt(c);
    }
    dpic->get_option("file")->description("Presentation file (.gq) or surface invariants (.json)");
    for (auto* c : {hh1, formality}) c->add_option("--cap", o.cap, "Antipath enumeration cap");
    hh1->add_option("--flavor", o.flavor, "proper | smooth | smooth_and_proper");
    dpic->add_option("--flavor", o.flavor, "proper | smooth | smooth_and_proper | punctured");

    equiv->add_option("files", o.files, "Two presentation files")->required()->expected(2);
    field_opt(equiv);
    json_opt(equiv);

    one_file(fcheck, "Arc system file (.arc)");
    field_opt(fcheck);
    json_opt(fcheck);
    fcheck->add_option("--max-disk", o.max_disk, "Longest immersed disk sequence to build");
    fcheck->add_flag("--drop-prefix-sign", o.drop_prefix_sign, "Negative control: omit a Koszul sign");

    basechange->add_option("systems", o.files, "FROM TO: .arc files or arc lists of the four-interval disk")
        ->required()
        ->expected(2);
    basechange->add_option("--string", o.string_text, "String complex over FROM")->required();
    basechange->add_option("--resolution", o.resolution, "Resolution of the removed arc over TO");
    basechange->add_option("--both", o.both, "Union arc system (.arc), required for file input");
    field_opt(basechange);
    json_opt(basechange);

    expdemo->add_option("--order", o.order, "Truncation order");
    expdemo->add_option("--seed", o.seed, "First random seed");
    expdemo->add_option("--samples", o.samples, "Number of random samples");
    json_opt(expdemo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    auto fail = [&](const char* kind, const std::string& msg, int code) {
        if (o.json) {
            emit({{"error", {{"kind", kind}, {"message", msg}}}});
        }
        std::cerr << "error: " << msg << "\n";
        return code;
    };
    try {
        if (*validate) return cmd_validate(o);
        if (*surface) return cmd_surface(o);
        if (*phi) return cmd_phi(o);
        if (*hh1) return cmd_hh1(o);
        if (*formality) return cmd_formality(o);
        if (*dpic) return cmd_dpic(o);
        if (*equiv) return cmd_equiv(o);
        if (*rigid) return cmd_rigidify(o);
        if (*fcheck) return cmd_fukaya_check(o);
        if (*basechange) return cmd_basechange(o);
        if (*expdemo) return cmd_exp_demo(o);
    } catch (const ScopeError& e) {
        return fail("scope", e.what(), kInput);
    } catch (const InputError& e) {
        return fail("input", e.what(), kInput);
    } catch (const MathError& e) {
        return fail("math", e.what(), kFail);
    }
    return kInput;
}
