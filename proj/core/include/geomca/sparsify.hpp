#pragma once

#include <cstddef>
#include <vector>

#include "geomca/compute.hpp"
#include "geomca/pointset.hpp"

namespace geomca {

struct CoverEntry {
    std::size_t dropped;
    std::size_t keeper;

    friend bool operator==(const CoverEntry&, const CoverEntry&) = default;
};

struct SparsifyResult {
    /// Original ids of the kept points, ascending.
    std::vector<std::size_t> kept;
    /// One entry per dropped point, ascending by `dropped`.
    std::vector<CoverEntry> cover;
    double delta = 0.0;

    friend bool operator==(const SparsifyResult&, const SparsifyResult&) = default;
};

inline constexpr const char* kSparsifyOrder = "ascending-id";

/// Greedy first-fit pass in ascending id order: a point is kept iff it is
/// farther than `delta` from every point kept before it; otherwise it is
/// covered by the first kept point within `delta`. Kept points are pairwise
/// more than `delta` apart.
SparsifyResult sparsify(const PointSet& points, double delta, const ComputeOptions& options = {});

/// The kept rows as a new PointSet (same label).
PointSet apply_sparsification(const PointSet& points, const SparsifyResult& result);

}  // namespace geomca
