#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "geomca/pointset.hpp"
#include "oracle.hpp"

namespace fixtures {

/// Points scattered around a handful of random blob centres, so that
/// epsilon-graphs at moderate thresholds have several non-trivial components.
inline oracle::Rows blobs(std::mt19937_64& rng, std::size_t n, std::size_t dim, std::size_t centers,
                          double spread = 1.0, double box = 6.0) {
    std::uniform_real_distribution<double> uni(-box, box);
    std::normal_distribution<double> normal(0.0, spread);
    oracle::Rows c(centers, std::vector<double>(dim));
    for (auto& row : c) for (auto& x : row) x = uni(rng);
    std::uniform_int_distribution<std::size_t> pick(0, centers - 1);
    oracle::Rows pts(n, std::vector<double>(dim));
    for (auto& row : pts) {
        const auto& center = c[pick(rng)];
        for (std::size_t d = 0; d < dim; ++d) row[d] = center[d] + normal(rng);
    }
    return pts;
}

/// A threshold at a random low quantile of the pairwise distances.
inline double pick_epsilon(std::mt19937_64& rng, const oracle::Rows& pts) {
    std::vector<double> d;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) d.push_back(oracle::naive_distance(pts[i], pts[j]));
    }
    if (d.empty()) return 1.0;
    std::sort(d.begin(), d.end());
    std::uniform_real_distribution<double> q(0.001, 0.2);
    const double v = d[static_cast<std::size_t>(q(rng) * static_cast<double>(d.size() - 1))];
    return v > 0.0 ? v * 1.0000001 : 1e-3;
}

inline geomca::PointSet to_pointset(const oracle::Rows& rows, geomca::SetLabel label) {
    return geomca::PointSet::from_rows(rows, label);
}

}  // namespace fixtures
