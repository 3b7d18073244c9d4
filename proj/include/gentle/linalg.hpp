#pragma once

#include "gentle/scalar.hpp"

#include <map>
#include <vector>

namespace gentle {

using SparseVec = std::map<int, Scalar>;

// Incremental row echelon form over a field, for exact rank and membership tests.
class RowReducer {
public:
    explicit RowReducer(Field f) : field_(f) {}

    // Reduces v against the stored pivots and returns the remainder.
    SparseVec reduce(SparseVec v) const {
        for (auto it = v.begin(); it != v.end();) {
            auto piv = pivots_.find(it->first);
            if (piv == pivots_.end()) {
                ++it;
                continue;
            }
            const Scalar c = it->second;
            const int col = it->first;
            for (const auto& [k, x] : rows_[piv->second]) {
                Scalar nv = v.count(k) ? v[k] - c * x : -(c * x);
                if (nv.is_zero()) v.erase(k);
                else v[k] = nv;
            }
            it = v.upper_bound(col);
        }
        return v;
    }

    // Adds v to the span; returns true when it was independent.
    bool add(const SparseVec& v) {
        SparseVec r = reduce(v);
        if (r.empty()) return false;
        const int col = r.begin()->first;
        const Scalar inv = r.begin()->second.inverse();
        for (auto& [k, x] : r) x = x * inv;
        // Keep rows fully reduced so that reduce() is a single pass in column order.
        for (auto& row : rows_) {
            auto it = row.find(col);
            if (it == row.end()) continue;
            const Scalar c = it->second;
            for (const auto& [k, x] : r) {
                Scalar nv = row.count(k) ? row[k] - c * x : -(c * x);
                if (nv.is_zero()) row.erase(k);
                else row[k] = nv;
            }
        }
        pivots_[col] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(r));
        return true;
    }

    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    int rank() const { return static_cast<int>(rows_.size()); }
    Field field() const { return field_; }

private:
    Field field_;
    std::vector<SparseVec> rows_;
    std::map<int, int> pivots_;
};

inline int sparse_rank(const std::vector<SparseVec>& rows, Field f) {
    RowReducer r(f);
    for (const auto& v : rows) r.add(v);
    return r.rank();
}

}  // namespace gentle
