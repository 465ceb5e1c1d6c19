#include "geomca/ipr.hpp"

#include <algorithm>
#include <limits>

#include "geomca/errors.hpp"
#include "geomca/random.hpp"
#include "kernels.hpp"

namespace geomca {

namespace {

constexpr std::size_t kChunk = 64;

std::size_t num_chunks(std::size_t n) { return (n + kChunk - 1) / kChunk; }

}  // namespace

std::vector<double> knn_squared_radii(const PointSet& points, std::size_t k,
                                      const ComputeOptions& options) {
    const std::size_t n = points.size();
    if (k == 0) throw ValidationError("neighbourhood size k must be at least 1");
    if (n <= k) {
        throw ValidationError("k-NN radii need more than k = " + std::to_string(k) + " points, got " +
                              std::to_string(n));
    }
    std::vector<double> radii(n);
    const std::size_t dim = points.dim();
    parallel_for(num_chunks(n), options.threads, [&](std::size_t chunk) {
        std::vector<double> dists;
        dists.reserve(n - 1);
        const std::size_t hi = std::min(n, (chunk + 1) * kChunk);
        for (std::size_t i = chunk * kChunk; i < hi; ++i) {
            dists.clear();
            const double* a = points.row(i).data();
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                dists.push_back(
                    detail::squared_distance_capped(a, points.row(j).data(), dim,
                                                    std::numeric_limits<double>::infinity()));
            }
            auto kth = dists.begin() + static_cast<std::ptrdiff_t>(k - 1);
            std::nth_element(dists.begin(), kth, dists.end());
            radii[i] = *kth;
        }
    });
    return radii;
}

double sphere_coverage(const PointSet& anchors, const std::vector<double>& squared_radii,
                       const PointSet& queries, const ComputeOptions& options) {
    if (anchors.size() != squared_radii.size()) {
        throw ValidationError("one radius per anchor is required");
    }
    if (anchors.dim() != queries.dim()) throw ValidationError("anchor/query dimension mismatch");
    if (queries.empty()) throw ValidationError("coverage of an empty query set");
    const std::size_t dim = anchors.dim();
    std::vector<unsigned char> covered(queries.size(), 0);
    parallel_for(num_chunks(queries.size()), options.threads, [&](std::size_t chunk) {
        const std::size_t hi = std::min(queries.size(), (chunk + 1) * kChunk);
        for (std::size_t q = chunk * kChunk; q < hi; ++q) {
            const double* x = queries.row(q).data();
            for (std::size_t a = 0; a < anchors.size(); ++a) {
                const double s =
                    detail::squared_distance_capped(x, anchors.row(a).data(), dim, squared_radii[a]);
                if (s <= squared_radii[a]) {
                    covered[q] = 1;
                    break;
                }
            }
        }
    });
    const auto hits = static_cast<std::size_t>(std::count(covered.begin(), covered.end(), 1));
    return static_cast<double>(hits) / static_cast<double>(queries.size());
}

IprScores ipr_balanced(const PointSet& r, const PointSet& e, std::size_t k,
                       const ComputeOptions& options) {
    if (r.dim() != e.dim()) throw ValidationError("R and E dimensions differ");
    IprScores scores;
    scores.k = k;
    scores.balanced_size = std::min(r.size(), e.size());
    scores.precision = sphere_coverage(r, knn_squared_radii(r, k, options), e, options);
    scores.recall = sphere_coverage(e, knn_squared_radii(e, k, options), r, options);
    return scores;
}

IprScores ipr(const PointSet& r, const PointSet& e, std::size_t k, std::uint64_t seed,
              const ComputeOptions& options) {
    if (r.size() <= k || e.size() <= k) {
        throw ValidationError("IPR needs more than k = " + std::to_string(k) +
                              " points in each set (|R| = " + std::to_string(r.size()) +
                              ", |E| = " + std::to_string(e.size()) + ")");
    }
    const std::size_t m = std::min(r.size(), e.size());
    auto balance = [m](const PointSet& points, std::uint64_t s) {
        if (points.size() == m) return points;
        auto ids = sample_without_replacement(points.size(), m, s);
        std::sort(ids.begin(), ids.end());
        return points.subset(ids);
    };
    IprScores scores = ipr_balanced(balance(r, seed), balance(e, seed + 1), k, options);
    scores.seed = seed;
    return scores;
}

}  // namespace geomca
