#pragma once

#include "gentle/arcsys.hpp"
#include "gentle/quiver.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gentle {

// One boundary component read off the presentation. A walk alternates permitted threads
// (maximal permitted paths, possibly trivial) with forbidden threads (maximal antipaths,
// possibly trivial). A pure permitted or pure forbidden cycle is a fully marked component.
struct BoundaryWalk {
    enum class Kind { Walk, PermittedCycle, ForbiddenCycle };
    Kind kind = Kind::Walk;
    std::vector<PathWord> permitted_threads;
    std::vector<PathWord> forbidden_threads;
    int n = 0;  // number of permitted-thread slots (marked intervals); 0 for cycles
    int d = 0;  // graded weight
    int winding() const { return n - d; }
};

struct BoundaryComponent {
    int segments = 0;
    int winding = 0;
    bool fully_marked = false;
    auto operator<=>(const BoundaryComponent&) const = default;
};

struct SurfaceInvariants {
    int genus = 0;
    std::vector<BoundaryComponent> components;  // sorted
    int b() const { return static_cast<int>(components.size()); }
    bool operator==(const SurfaceInvariants&) const = default;
};

// Multiset of (n, d) pairs with multiplicities.
struct AAGInvariant {
    std::map<std::pair<int, int>, int> mult;
    int operator()(int n, int d) const {
        auto it = mult.find({n, d});
        return it == mult.end() ? 0 : it->second;
    }
    bool operator==(const AAGInvariant&) const = default;
};

std::vector<BoundaryWalk> boundary_walks(const GentlePresentation& p);
AAGInvariant aag_invariant(const GentlePresentation& p);
SurfaceInvariants surface_invariants(const GentlePresentation& p);
std::vector<BoundaryComponent> degenerating_components(const SurfaceInvariants& inv);

// Vertices whose arc is the boundary segment of a degenerating component.
std::vector<int> nonrigid_vertices(const GentlePresentation& p);
bool is_rigid(const GentlePresentation& p);

struct RigidifyResult {
    GentlePresentation presentation;
    int exchanges = 0;
    bool unchanged = false;  // input was already rigid (includes the punctured-disk presentations)
};
RigidifyResult rigidify(const GentlePresentation& p);

struct IsoVerdict {
    bool equivalent = false;
    bool complete = true;  // false when genus >= 1 data agree but line-field orbit invariants are not checked
};
IsoVerdict surfaces_isomorphic(const SurfaceInvariants& a, const SurfaceInvariants& b);
IsoVerdict derived_equivalent(const GentlePresentation& p, const GentlePresentation& q);

bool is_kronecker_surface(const SurfaceInvariants& inv);

// JSON document {"genus","components","phi","rigid"} with stable key order.
std::string surface_report_json(const GentlePresentation& p, int indent = -1);
std::string surface_invariants_json(const SurfaceInvariants& inv, int indent = -1);
SurfaceInvariants parse_surface_invariants_json(const std::string& text);

}  // namespace gentle
