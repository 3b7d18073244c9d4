#pragma once

#include "gentle/fukaya.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gentle {

// One-sided twisted complex over an arc system's A-infinity category. A node is an object
// with a shift s; a basis element h from node i to node j has total degree |h| + s_j - s_i,
// and every edge label has total degree 1. On shifted objects the products carry the sign
// (-1)^{s} of the first source node, which keeps the A-infinity relations intact.
struct TwNode {
    int obj = 0;
    int shift = 0;
    bool operator==(const TwNode&) const = default;
};

struct TwEdge {
    int from = 0;
    int to = 0;
    LinComb label;
};

struct Diagram {
    std::vector<TwNode> nodes;
    std::vector<TwEdge> edges;

    // Label of the edge from -> to, or nullptr.
    const LinComb* edge(int from, int to) const;
    void shift_by(int k);
};

// Morphism of twisted complexes: components (source node, target node) -> hom element.
struct TwMorphism {
    int degree = 0;
    std::map<std::pair<int, int>, LinComb> comp;
    bool is_zero() const { return comp.empty(); }
    void add(int i, int j, const LinComb& v);
};

// ------------------------------------------------------------------ validation

// Checks edge endpoints and degrees and the twisted-complex equation sum_l mu^l(d, ..., d) = 0.
// Returns a description of the first offending path, or nullopt.
std::optional<std::string> mc_violation(const FukayaCategory& F, const Diagram& X);
bool is_type_a(const Diagram& X);
// Nodes renumbered along the path (requires type A); the first node is the lower-numbered end.
Diagram path_order(const Diagram& X);
// Validates and returns the diagram in path order. Throws InputError on failure.
Diagram make_string_complex(const FukayaCategory& F, const Diagram& X);

// Text form "g0[0] -I1_0-> g1[0] <-I2_0- g2[1]"; coefficients other than 1 print as "c*".
std::string string_text(const FukayaCategory& F, const Diagram& X);
// Parses the text form. Shifts may be omitted ("g0 -I1_0-> g1"): the first node then sits in
// shift 0 and the others follow from the edge degrees.
Diagram parse_string(const FukayaCategory& F, const std::string& text);

// ------------------------------------------------------------------ morphisms

// mu_Tw^d(phi_1, ..., phi_d) for phi_k : objs[k-1] -> objs[k] (traversal order); d = 0 gives
// the curvature of objs[0].
TwMorphism tw_mu(const FukayaCategory& F, const std::vector<const Diagram*>& objs,
                 const std::vector<const TwMorphism*>& maps);
TwMorphism tw_differential(const FukayaCategory& F, const Diagram& X, const Diagram& Y, const TwMorphism& f);
// Composite "g after f" as mu_Tw^2(f, g); this carries the Koszul sign (-1)^{|f|}.
TwMorphism tw_compose(const FukayaCategory& F, const Diagram& X, const Diagram& Y, const Diagram& Z,
                      const TwMorphism& f, const TwMorphism& g);
// Strict unit of a twisted complex: (-1)^{s} e at every node.
TwMorphism tw_identity(const FukayaCategory& F, const Diagram& X);

struct HomCohomology {
    int degree = 0;
    int cochains = 0;   // dim Hom^k
    int cocycles = 0;   // dim Z^k
    int boundaries = 0; // dim B^k
    std::vector<TwMorphism> reps;  // cocycles spanning H^k
    int dim() const { return cocycles - boundaries; }
};
HomCohomology hom_cohomology(const FukayaCategory& F, const Diagram& X, const Diagram& Y, int degree);
// Whether f lies in B^k, and whether f is a cocycle.
bool is_coboundary(const FukayaCategory& F, const Diagram& X, const Diagram& Y, const TwMorphism& f);

// Graph maps carry nonzero multiples of identities on a common stretch of the two strings
// (plus any components the cocycle equation forces next to it); singleton maps have one
// component. Every returned morphism is a cocycle; together they span H^k. Classes not reached
// by either shape are completed with general cocycles of kind "other".
struct StringMorphism {
    std::string kind;  // "graph", "singleton" or "other"
    TwMorphism map;
    std::vector<std::pair<int, int>> overlap;  // node pairs carrying identity components
};
std::vector<StringMorphism> graph_and_singleton_basis(const FukayaCategory& F, const Diagram& X,
                                                      const Diagram& Y, int degree);

// Whether X and Y are isomorphic: degree-0 cocycles f, g with g f = id_X and f g = id_Y in
// cohomology. On success fills in f and g. Two acyclic complexes are isomorphic (with f = g = 0).
bool tw_isomorphic(const FukayaCategory& F, const Diagram& X, const Diagram& Y, TwMorphism* f = nullptr,
                   TwMorphism* g = nullptr);

// ------------------------------------------------------------------ reduction and cones

struct Reduction {
    std::vector<Diagram> components;  // non-acyclic connected components after elimination
    int pairs_removed = 0;
    int dropped_acyclic = 0;  // components whose identity is a coboundary
};
// Gaussian elimination of identity-labelled edges p -> q (label c e). A change of basis id + N
// with components u -> p and q -> w detaches the pair, after which it splits off as a contractible
// summand and is dropped; over a dg category this is the familiar -(1/c) beta alpha correction
// on u -> w. The result is re-validated.
Reduction reduce_diagram(const FukayaCategory& F, const Diagram& X);

// Cone of a degree-0 cocycle f : X -> Y: X shifted down by one, Y, and f as connecting edges,
// followed by the reduction. Returns the components (empty when acyclic). Throws ScopeError
// when a component is not of type A.
Reduction mapping_cone(const FukayaCategory& F, const Diagram& X, const Diagram& Y, const TwMorphism& f);

// ------------------------------------------------------------------ comparison and transfer

// Name-based canonical form: the lexicographically smaller of the two reading directions,
// shifts relative to the first node, labels as flows between arc ends with the coefficient
// dropped (nonzero rescaling of nodes makes any nonzero coefficients equal on a path).
std::string canonical_form(const FukayaCategory& F, const Diagram& X);
bool string_equal(const FukayaCategory& F, const Diagram& X, const FukayaCategory& G, const Diagram& Y);

// Rewrites X from F into G by arc names and flows between arc ends. Throws InputError when
// an object or flow has no counterpart.
Diagram transfer(const FukayaCategory& F, const FukayaCategory& G, const Diagram& X);

// ------------------------------------------------------------------ base change

// Exchange of one arc: A and B are formal arc systems with A u B (`both`) an arc system and
// |A u B| = |A| + 1 = |B| + 1. The resolution is a 2-node string over B isomorphic to the
// removed arc in F(A u B).
struct Exchange {
    FukayaCategory from, to, both;
    std::string removed, added;
    Diagram resolution;       // over `to`
    Diagram resolution_both;  // the same string over `both`
    // Degree-0 cocycles between the removed arc (single node, shift 0) and resolution_both
    // with kappa after iota equal to the identity.
    TwMorphism iota, kappa;
};

// Builds the exchange and validates the resolution (throws InputError when invalid).
Exchange make_exchange(const ArcSystem& from, const ArcSystem& to, const ArcSystem& both, const Diagram& resolution,
                       Field field = {});
// Exchange whose resolution is read off the triangle of A u B that contains the removed and
// the added arc. Throws InputError when there is no such triangle.
Exchange triangle_exchange(const ArcSystem& from, const ArcSystem& to, const ArcSystem& both, Field field = {});

struct BaseChangeTrace {
    int substituted = 0;     // nodes replaced by the resolution
    int pairs_removed = 0;   // identity-labelled pairs eliminated
    int dropped_acyclic = 0; // components removed as acyclic
};
// Substitution of the resolution for every node on the removed arc, transport of the adjacent
// edges along the isomorphism, and reduction. X lives over e.from; the result over e.to.
Diagram base_change_elementary(const Diagram& X, const Exchange& e, BaseChangeTrace* trace = nullptr);

struct PathStep {
    const Exchange* exchange = nullptr;  // null for a pure shift
    int shift = 0;
};
// Applies the steps from left to right; consecutive exchanges must share the arc system.
Diagram base_change_path(const Diagram& X, const FukayaCategory& start, const std::vector<PathStep>& path);

}  // namespace gentle
