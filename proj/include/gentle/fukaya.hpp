#pragma once

#include "gentle/arcsys.hpp"
#include "gentle/category.hpp"
#include "gentle/hochschild.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace gentle {

// Cyclic sequence of irreducible flows around a closed face, in traversal order:
// flow k ends on the arc where flow k+1 starts, at the opposite end. A flow may be a
// composite of irreducible flows when the disk is immersed across several faces.
struct DiskSequence {
    std::vector<std::vector<int>> words;  // arrows of each flow in the flow presentation
    std::vector<int> elems;               // the same flows as basis elements (filled by build_fukaya)
    std::vector<std::string> names;
    int degree_sum = 0;
};

// Arrow index of the irreducible flow leaving each end, numbered as in build_flows.
std::map<ArcEnd, int> arrow_leaving(const ArcSystem& a);

// Disk sequences of the closed complement faces, one per face. Throws InputError when a
// closed face has fewer than three corners (the system is not full) or a cyclic interval is
// present.
std::vector<DiskSequence> disk_sequences(const ArcSystem& a);

// All disk sequences of immersed disks: closed faces glued along shared arcs, each gluing
// concatenating the two corner flows at either end of the shared arc. Sequences longer than
// max_length are not produced; `truncated` reports whether any gluing was cut off.
std::vector<DiskSequence> immersed_disk_sequences(const ArcSystem& a, int max_length = 12,
                                                  bool* truncated = nullptr);

struct FukayaOptions {
    int max_disk_length = 12;
    // Negative control: drop the Koszul sign of the products with a prefix.
    bool drop_prefix_sign = false;
};

// Minimal strictly unital A-infinity category of an arc system: mu2 is composition of flows
// and each immersed disk sequence d_1 ... d_m contributes
//   mu(f d_1, d_2, ..., d_m) = (-1)^{|f|} f   and   mu(d_1, ..., d_{m-1}, d_m g) = g
// for every rotation, where f d_1 means f followed by d_1. A tuple reached twice gets its
// value once; tuples reached with different values are listed in `conflicts`.
struct FukayaCategory {
    ArcSystem arcs;
    GentlePresentation pres;
    std::shared_ptr<const BasisCategory> cat;
    Cochain mu;
    std::vector<DiskSequence> faces;  // one per closed face
    std::vector<DiskSequence> disks;  // all immersed disk sequences
    bool disks_truncated = false;
    std::vector<std::string> conflicts;
    int shared_tuples = 0;  // tuples produced by both product shapes with equal values

    int object(const std::string& arc) const { return arcs.arc_index(arc); }
};

FukayaCategory build_fukaya(const ArcSystem& a, Field f = {}, const FukayaOptions& opt = {});

}  // namespace gentle
