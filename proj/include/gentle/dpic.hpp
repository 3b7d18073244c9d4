#pragma once

#include "gentle/quiver.hpp"
#include "gentle/surface.hpp"

#include <string>
#include <vector>

namespace gentle {

// Rescaling automorphisms modulo inner ones: 1 -> k^x -> (k^x)^{Q0} -> (k^x)^{Q1} -> R -> 1
// with the diagonal as the kernel of the middle map, so rank R = |Q1| - |Q0| + 1.
struct RescalingData {
    int rank = 0;
    std::vector<int> sequence;  // ranks of the four terms: 1, |Q0|, |Q1|, rank
};
// Throws MathError when the rank differs from 2g + b - 1.
RescalingData rescaling_group(const GentlePresentation& p);

// Structural description of the derived Picard group as a tree of products, semidirect products
// (normal factor first) and named atoms. Serialized as {"product": [...]},
// {"semidirect": [normal, acting]} and {"atom": {"name": ..., parameters}}.
struct GroupNode {
    enum class Kind { Atom, Product, Semidirect };
    Kind kind = Kind::Atom;
    std::string name;  // atoms only
    std::vector<std::pair<std::string, int>> params;  // atoms only, in output order
    std::vector<GroupNode> children;

    static GroupNode atom(std::string name, std::vector<std::pair<std::string, int>> params = {});
    static GroupNode product(std::vector<GroupNode> factors);
    static GroupNode semidirect(GroupNode normal, GroupNode acting);
    bool operator==(const GroupNode&) const = default;
};

struct GroupDescription {
    GroupNode root;
    SurfaceInvariants surface;  // carried by the MCGgraded atom
};

// flavor: proper | smooth | smooth_and_proper | punctured; `characteristic` is 0 or an odd prime.
// Depends on the input only through the surface invariants (and the flavor check). Throws
// ScopeError for combinations without a known description and InputError for a flavor that the
// input does not satisfy.
GroupDescription dpic_description(const SurfaceInvariants& inv, int characteristic, const std::string& flavor);
// Same, after checking the flavor against the presentation (finite dimensionality for proper,
// no forbidden cycles for smooth).
GroupDescription dpic_description(const GentlePresentation& p, int characteristic, const std::string& flavor);
std::string dpic_json(const GroupDescription& d, int indent = -1);

// Two vertices joined by two parallel arrows, no relations (any grading).
bool is_kronecker_quiver(const GentlePresentation& p);

// phi(1,1) + 2g + b - 1 against the degree-1 f_p count plus the rescaling rank. Refuses (ScopeError)
// presentations that are not smooth and proper and the Kronecker quiver itself, whose first
// Hochschild cohomology is not of the generic shape. Other algebras on the Kronecker surface are
// accepted.
struct HH1Crosscheck {
    bool pass = false;
    int surface_side = 0;
    int algebra_side = 0;
};
HH1Crosscheck hh1_dimension_crosscheck(const GentlePresentation& p);

}  // namespace gentle
