#pragma once

// Enumerations over the disk with four marked intervals, shared by the unit tests and the
// acceptance driver.

#include "gentle/strings.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace fixtures {

// Sorted, comma-joined arc names: the key of an arc system of the disk.
std::string system_key(const gentle::ArcSystem& a);

// Reduced string complexes with at most `max_edges` edges, one per canonical form. An interior
// node may not have two outgoing edges starting with the same arrow or two incoming edges
// ending with the same arrow; identity labels are not used.
std::vector<gentle::Diagram> reduced_strings(const gentle::FukayaCategory& F, int max_edges);

struct Disk4 {
    std::map<std::string, gentle::FukayaCategory> cats;  // formal systems by key
    std::vector<std::unique_ptr<gentle::Exchange>> exchanges;
    // Exchanges that exist between formal systems (a triangle in the union).
    std::vector<const gentle::Exchange*> from(const std::string& key) const;
};
Disk4 disk4();

// Exchange paths of length 1 and 2 starting at `key`, grouped by their end system.
struct ExchangePath {
    std::string name;
    std::vector<const gentle::Exchange*> steps;
};
std::map<std::string, std::vector<ExchangePath>> short_paths(const Disk4& d, const std::string& key);

}  // namespace fixtures
