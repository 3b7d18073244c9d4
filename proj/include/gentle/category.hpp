#pragma once

#include "gentle/quiver.hpp"
#include "gentle/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace gentle {

// Hom basis element of a finite graded linear category whose basis is closed under
// composition up to zero (paths of a proper gentle algebra, flows of an arc system).
struct BasisElem {
    int src = 0;
    int tgt = 0;
    int deg = 0;
    bool identity = false;
    std::string name;
    std::vector<int> arrows;  // traversal order; empty for identities
};

class BasisCategory {
public:
    static BasisCategory from_presentation(const GentlePresentation& p);

    Field field() const { return field_; }
    const GentlePresentation& presentation() const { return pres_; }
    int num_objects() const { return static_cast<int>(objects_.size()); }
    const std::string& object_name(int o) const { return objects_[o]; }
    int size() const { return static_cast<int>(elems_.size()); }
    const BasisElem& elem(int i) const { return elems_[i]; }
    int identity(int obj) const { return id_of_[obj]; }
    // Index of "b after a" (a traversed first), or -1 when the composite vanishes or is undefined.
    int compose(int a, int b) const;
    int find(const std::vector<int>& arrows, int vertex = -1) const;
    int find_name(const std::string& name) const;
    std::string describe(int i) const { return elems_[i].name; }

    // Composable chains of non-identity basis elements of the given length (traversal order).
    const std::vector<std::vector<int>>& chains(int length) const;
    std::vector<int> nonidentity() const;
    // Non-identity elements with the given source.
    const std::vector<int>& out_from(int obj) const { return out_from_[obj]; }
    // Whether a composable chain of the given length exists, without enumerating chains.
    bool has_chain(int length) const;

private:
    Field field_{};
    GentlePresentation pres_;
    std::vector<std::string> objects_;
    std::vector<BasisElem> elems_;
    std::vector<int> id_of_;
    std::map<std::vector<int>, int> by_arrows_;
    std::vector<std::vector<int>> out_from_;  // non-identity elements by source object
    mutable std::map<int, std::vector<std::vector<int>>> chain_cache_;
};

}  // namespace gentle
