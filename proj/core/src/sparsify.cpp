#include "geomca/sparsify.hpp"

#include <cmath>
#include <limits>

#include "geomca/errors.hpp"
#include "kernels.hpp"

namespace geomca {

namespace {

constexpr std::size_t kNoKeeper = std::numeric_limits<std::size_t>::max();

// Position in `kept` of the first keeper within delta of `point`, scanning
// kept[begin, end).
std::size_t first_keeper(const PointSet& points, const std::vector<std::size_t>& kept,
                         std::size_t begin, std::size_t end, std::size_t point,
                         double delta_sq) {
    const double* p = points.row(point).data();
    const std::size_t dim = points.dim();
    for (std::size_t k = begin; k < end; ++k) {
        const double s = detail::squared_distance_capped(p, points.row(kept[k]).data(), dim, delta_sq);
        if (s <= delta_sq) return k;
    }
    return kNoKeeper;
}

}  // namespace

SparsifyResult sparsify(const PointSet& points, double delta, const ComputeOptions& options) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw ValidationError("sparsification distance delta must be finite and >= 0");
    }
    SparsifyResult result;
    result.delta = delta;
    const std::size_t n = points.size();
    if (n == 0) return result;

    const double delta_sq = delta * delta;
    const unsigned threads = resolve_threads(options.threads);

    // Candidates are processed in blocks. Each block is first screened in
    // parallel against the keepers fixed before the block, then resolved
    // serially against keepers added inside the block, which reproduces
    // the sequential first-fit pass exactly.
    const std::size_t block = threads > 1 ? 1024 : n;
    std::vector<std::size_t> screened(block);
    for (std::size_t start = 0; start < n; start += block) {
        const std::size_t stop = std::min(n, start + block);
        const std::size_t fixed = result.kept.size();
        if (threads > 1 && fixed > 0) {
            const std::size_t chunk = 64;
            const std::size_t tasks = (stop - start + chunk - 1) / chunk;
            parallel_for(tasks, threads, [&](std::size_t t) {
                const std::size_t lo = start + t * chunk;
                const std::size_t hi = std::min(stop, lo + chunk);
                for (std::size_t p = lo; p < hi; ++p) {
                    screened[p - start] = first_keeper(points, result.kept, 0, fixed, p, delta_sq);
                }
            });
        } else {
            for (std::size_t p = start; p < stop; ++p) {
                screened[p - start] = fixed > 0 ? first_keeper(points, result.kept, 0, fixed, p, delta_sq)
                                                : kNoKeeper;
            }
        }

        for (std::size_t p = start; p < stop; ++p) {
            std::size_t hit = screened[p - start];
            if (hit == kNoKeeper) {
                hit = first_keeper(points, result.kept, fixed, result.kept.size(), p, delta_sq);
            }
            if (hit == kNoKeeper) {
                result.kept.push_back(p);
            } else {
                result.cover.push_back({p, result.kept[hit]});
            }
        }
    }
    return result;
}

PointSet apply_sparsification(const PointSet& points, const SparsifyResult& result) {
    return points.subset(result.kept);
}

}  // namespace geomca
