#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "geomca/compute.hpp"
#include "geomca/pointset.hpp"

namespace geomca {

struct IprScores {
    double precision = 0.0;
    double recall = 0.0;
    std::size_t k = 0;
    /// Common size both sets were subsampled to.
    std::size_t balanced_size = 0;
    std::uint64_t seed = 0;
};

/// Squared distance from each point to its k-th nearest neighbour in the
/// same set, the point itself excluded. Requires points.size() > k.
std::vector<double> knn_squared_radii(const PointSet& points, std::size_t k,
                                      const ComputeOptions& options = {});

/// Fraction of `queries` lying inside at least one closed sphere
/// (centre anchors[i], squared radius squared_radii[i]).
double sphere_coverage(const PointSet& anchors, const std::vector<double>& squared_radii,
                       const PointSet& queries, const ComputeOptions& options = {});

/// Improved precision/recall on sets already of equal size.
IprScores ipr_balanced(const PointSet& r, const PointSet& e, std::size_t k,
                       const ComputeOptions& options = {});

/// Subsamples the larger set (seeded) to min(|R|, |E|) and scores. Throws
/// ValidationError if either set has at most k points.
IprScores ipr(const PointSet& r, const PointSet& e, std::size_t k, std::uint64_t seed,
              const ComputeOptions& options = {});

}  // namespace geomca
