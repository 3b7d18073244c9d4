#pragma once

#include "gentle/scalar.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gentle {

struct Arrow {
    std::string name;
    int src = 0;
    int tgt = 0;
    int deg = 0;
};

struct GradedQuiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int vertex_index(const std::string& name) const;  // -1 if absent
    int arrow_index(const std::string& name) const;   // -1 if absent
};

// Graded quiver with length-2 monomial relations satisfying the gentle conditions.
// A relation (f, g) means the path "g after f" (f traversed first) lies in the ideal.
class GentlePresentation {
public:
    GentlePresentation() = default;

    // Validates and throws GentleError listing every violated condition.
    static GentlePresentation make(Field field, GradedQuiver quiver, std::vector<std::pair<int, int>> relations);
    // Returns the list of violations without throwing (empty when gentle).
    static std::vector<std::string> violations(const GradedQuiver& quiver,
                                               const std::vector<std::pair<int, int>>& relations);

    Field field() const { return field_; }
    const GradedQuiver& quiver() const { return quiver_; }
    const std::vector<std::pair<int, int>>& relations() const { return relations_; }
    int num_vertices() const { return static_cast<int>(quiver_.vertices.size()); }
    int num_arrows() const { return static_cast<int>(quiver_.arrows.size()); }
    const Arrow& arrow(int a) const { return quiver_.arrows[a]; }

    bool is_relation(int f, int g) const;
    bool composable(int f, int g) const { return arrow(f).tgt == arrow(g).src; }
    const std::vector<int>& in_arrows(int v) const { return in_[v]; }
    const std::vector<int>& out_arrows(int v) const { return out_[v]; }
    // Unique continuation after f (g with tgt f = src g) that is a relation / is permitted, or -1.
    int rel_next(int f) const { return rel_next_[f]; }
    int perm_next(int f) const { return perm_next_[f]; }
    int rel_prev(int g) const { return rel_prev_[g]; }
    int perm_prev(int g) const { return perm_prev_[g]; }

    GentlePresentation with_field(Field f) const;

private:
    void build_caches();

    Field field_{};
    GradedQuiver quiver_;
    std::vector<std::pair<int, int>> relations_;
    std::vector<std::vector<int>> in_, out_;
    std::vector<int> rel_next_, perm_next_, rel_prev_, perm_prev_;
};

// A path stored in traversal order. A trivial path has no arrows and sits at `vertex`.
struct PathWord {
    std::vector<int> arrows;
    int vertex = -1;  // start vertex; required for trivial paths
    bool permitted = false;

    std::size_t length() const { return arrows.size(); }
    bool trivial() const { return arrows.empty(); }
    bool operator==(const PathWord& o) const { return arrows == o.arrows && vertex == o.vertex; }
    bool operator<(const PathWord& o) const {
        return vertex != o.vertex ? vertex < o.vertex : arrows < o.arrows;
    }
};

int path_source(const GentlePresentation& p, const PathWord& w);
int path_target(const GentlePresentation& p, const PathWord& w);
int path_degree(const GentlePresentation& p, const PathWord& w);
// Composition-order text, e.g. traversal a then b prints "b.a"; trivial paths print "e_<v>".
std::string path_text(const GentlePresentation& p, const PathWord& w);
PathWord make_path(const GentlePresentation& p, std::vector<int> arrows, int vertex = -1);
bool is_permitted_word(const GentlePresentation& p, const std::vector<int>& arrows);
bool is_antipath_word(const GentlePresentation& p, const std::vector<int>& arrows);

struct AntipathCatalog {
    std::vector<PathWord> antipaths;
    bool cyclic_antipaths_present = false;
    bool cap_reached = false;
};

GentlePresentation parse_presentation(const std::string& text);
GentlePresentation load_presentation(const std::string& path);
std::string serialize(const GentlePresentation& p);

std::vector<PathWord> permitted_paths(const GentlePresentation& p, int max_len);
AntipathCatalog maximal_antipaths(const GentlePresentation& p, int cap = 64);
bool is_maximal_antipath(const GentlePresentation& p, const PathWord& w);
// Unique nontrivial permitted path with the same endpoints as a maximal antipath whose first and
// last arrows both differ from those of the antipath.
std::optional<PathWord> parallel_path(const GentlePresentation& p, const PathWord& antipath);
GentlePresentation koszul_dual(const GentlePresentation& p);

// Permitted (resp. forbidden) arrow cycles: closed chains of perm_next (resp. rel_next).
bool has_permitted_cycle(const GentlePresentation& p);
bool has_forbidden_cycle(const GentlePresentation& p);
inline bool is_proper(const GentlePresentation& p) { return !has_permitted_cycle(p); }
inline bool is_smooth(const GentlePresentation& p) { return !has_forbidden_cycle(p); }

}  // namespace gentle
