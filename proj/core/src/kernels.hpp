#pragma once

#include <cstddef>

namespace geomca::detail {

/// Same lanes and summation order as geomca::squared_distance. Stops early
/// once the partial sum exceeds `cap` and returns that partial sum; partial
/// sums never decrease, so the final value would also exceed `cap`. When the
/// true value is <= cap it is returned bit-for-bit.
inline double squared_distance_capped(const double* a, const double* b, std::size_t n,
                                      double cap) noexcept {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    while (i + 4 <= n) {
        const std::size_t stop = (n - i >= 32) ? i + 32 : i + ((n - i) / 4) * 4;
        for (; i < stop; i += 4) {
            const double d0 = a[i] - b[i];
            const double d1 = a[i + 1] - b[i + 1];
            const double d2 = a[i + 2] - b[i + 2];
            const double d3 = a[i + 3] - b[i + 3];
            s0 += d0 * d0;
            s1 += d1 * d1;
            s2 += d2 * d2;
            s3 += d3 * d3;
        }
        const double partial = (s0 + s1) + (s2 + s3);
        if (partial > cap) return partial;
    }
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s0 += d * d;
    }
    return (s0 + s1) + (s2 + s3);
}

}  // namespace geomca::detail
