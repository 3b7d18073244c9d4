#pragma once

#include "gentle/quiver.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gentle {

struct ArcEnd {
    int arc = -1;
    int end = 0;  // 0 or 1
    bool operator==(const ArcEnd&) const = default;
    auto operator<=>(const ArcEnd&) const = default;
};

// Ordered arc ends on one marked piece of boundary. degs[i] is the degree of the
// irreducible flow ends[i] -> ends[i+1]; a cyclic interval (fully marked boundary
// component) also carries the wrap-around flow ends.back() -> ends.front().
struct MarkedInterval {
    std::string name;
    std::vector<ArcEnd> ends;
    std::vector<int> degs;
    bool cyclic = false;

    int num_flows() const {
        if (ends.empty()) return 0;
        return cyclic ? static_cast<int>(ends.size()) : static_cast<int>(ends.size()) - 1;
    }
};

// Combinatorial graded arc system: arcs plus the order of their ends on marked intervals.
class ArcSystem {
public:
    std::vector<std::string> arcs;
    std::vector<MarkedInterval> intervals;
    // Optional arrow names per (interval, position); absent entries default to "<interval>_<pos>".
    std::map<std::pair<int, int>, std::string> flow_names;

    // Rebuilds position lookup; throws InputError if an end is missing or duplicated.
    void index();

    int num_arcs() const { return static_cast<int>(arcs.size()); }
    std::pair<int, int> where(ArcEnd e) const { return where_[e.arc][e.end]; }
    static ArcEnd iota(ArcEnd e) { return {e.arc, 1 - e.end}; }
    bool has_next(ArcEnd e) const;
    bool has_prev(ArcEnd e) const;
    ArcEnd next(ArcEnd e) const;
    ArcEnd prev(ArcEnd e) const;
    // Degree of the irreducible flow leaving e (requires has_next).
    int flow_deg(ArcEnd e) const;
    int arc_index(const std::string& name) const;
    int interval_index(const std::string& name) const;
    std::string flow_name(int interval, int pos) const;

private:
    std::vector<std::array<std::pair<int, int>, 2>> where_;
};

// Complement faces of the ribbon structure. A closed face is a cycle of corners
// e -> next(e) followed by the arc to iota(next(e)); a chain face ends on an unmarked piece.
struct Face {
    std::vector<ArcEnd> corners;  // the end at which each corner flow starts
    bool closed = false;
};

std::vector<Face> faces(const ArcSystem& a);

ArcSystem parse_arc_system(const std::string& text);
ArcSystem load_arc_system(const std::string& path);
std::string serialize(const ArcSystem& a);

// Arc system whose flows are the arrows of the presentation (one arc per vertex).
// arrow_pos[a] receives (interval, position) of arrow a.
ArcSystem arc_system_from_presentation(const GentlePresentation& p,
                                       std::vector<std::pair<int, int>>* arrow_pos = nullptr);

// Presentation with one arrow per irreducible flow. Relations are consecutive flows meeting
// an arc at different ends.
GentlePresentation build_flows(const ArcSystem& a, Field field = {}, bool check_disk_degrees = true);

// Side structure of a presentation: each vertex has two sides (v,0), (v,1); every arrow
// leaves a side of its source and enters a side of its target, and a permitted pair of
// arrows meets at the same side.
struct SideStructure {
    std::vector<int> src_side, tgt_side;              // per arrow
    std::vector<std::array<int, 2>> in_at, out_at;  // per vertex and side: arrow or -1
};
SideStructure side_structure(const GentlePresentation& p);

}  // namespace gentle
