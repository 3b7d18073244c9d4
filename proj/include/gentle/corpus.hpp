#pragma once

#include "gentle/arcsys.hpp"
#include "gentle/quiver.hpp"

#include <string>
#include <utility>
#include <vector>

namespace gentle {

struct RandomGentleOptions {
    int min_vertices = 1;
    int max_vertices = 6;
    int min_degree = 0;
    int max_degree = 0;
    bool allow_cyclic = false;   // permitted cycles (fully marked components)
    bool require_smooth = false;  // no forbidden cycles
    Field field{};
};

// Random connected gentle presentation, built from a random ordering of arc ends into
// marked intervals. Deterministic in the seed.
GentlePresentation random_gentle(unsigned seed, const RandomGentleOptions& opt = {});

// Random graded quiver with random length-2 relations among composable pairs; about half are
// produced from a gentle presentation and then possibly perturbed.
struct RawQuiver {
    GradedQuiver quiver;
    std::vector<std::pair<int, int>> relations;
};
RawQuiver random_quiver(unsigned seed, int max_vertices = 8);

// Named fixtures.
GentlePresentation kronecker(Field f = {});
GentlePresentation algebra_b(Field f = {});  // derived equivalent to the Kronecker quiver
GentlePresentation linear_a(int n, bool with_relations = false, Field f = {});
GentlePresentation punctured_disk(int omega, Field f = {});  // k[x]/(x^2), |x| = omega + 1
GentlePresentation polynomial_loop(int degree, Field f = {});  // k[t]

// Smooth and proper corpus: fixtures plus random presentations, deterministic.
std::vector<std::pair<std::string, GentlePresentation>> smooth_proper_corpus(int random_count = 40,
                                                                            bool degree_zero = false);
// General corpus mixing proper, smooth and neither.
std::vector<std::pair<std::string, GentlePresentation>> general_corpus(int random_count = 120);

// Pairs of different presentations with equal surface invariants.
std::vector<std::pair<GentlePresentation, GentlePresentation>> morita_pairs();

// Relabels vertices and arrows by a permutation derived from the seed.
GentlePresentation relabel(const GentlePresentation& p, unsigned seed);

// Arc systems used by the Fukaya tests.
ArcSystem triangle_disk();          // 3 intervals, 3 boundary arcs, one disk sequence
ArcSystem square_disk(bool diagonal);  // 4 intervals, 4 boundary arcs, optionally one diagonal
ArcSystem cylinder_arcs();          // two parallel arcs, formal (Kronecker)
// n-gon with boundary arcs g_i and the diagonals d_k from I0 to I_k: n - 2 triangles in a row.
// Random flow degrees, adjusted so that every triangle has degree sum 1.
ArcSystem polygon_fan(int n, unsigned seed = 1);
std::vector<std::pair<std::string, ArcSystem>> arc_corpus();

// Disk with four marked intervals I0..I3 (in boundary order), boundary arcs g_i from I_i to
// I_{i+1} and the crossing diagonals d02 and d13. Any non-crossing subset meeting every interval
// is an arc system; all of them share one grading.
std::vector<std::string> disk4_arc_names();
ArcSystem disk4_system(const std::vector<std::string>& arcs);
// The subsets of three arcs without a closed face (the formal systems of the disk).
std::vector<std::vector<std::string>> disk4_formal_systems();

}  // namespace gentle
