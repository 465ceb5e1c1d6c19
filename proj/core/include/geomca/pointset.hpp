#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace geomca {

enum class SetLabel : std::uint8_t { Reference, Evaluation };

std::string_view to_string(SetLabel label) noexcept;

enum class Metric { Euclidean };

enum class FileFormat { Csv, Gcpc };

/// Parses "csv" or "gcpc" (case-sensitive).
FileFormat parse_file_format(std::string_view name);

/// Dense row-major n x dim block of finite doubles tagged with its role.
/// Row i has id i; ids are always 0..n-1 in storage order.
class PointSet {
public:
    PointSet() = default;

    /// Takes ownership of `coords` (size must be n * dim). Throws
    /// ValidationError on shape problems or non-finite values.
    PointSet(std::vector<double> coords, std::size_t dim, SetLabel label);

    static PointSet from_rows(const std::vector<std::vector<double>>& rows, SetLabel label);

    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return coords_.empty(); }
    SetLabel label() const noexcept { return label_; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {coords_.data() + i * dim_, dim_};
    }
    std::span<const double> coords() const noexcept { return coords_; }

    /// Rows `ids` in the given order; the result is re-indexed 0..ids.size()-1.
    PointSet subset(std::span<const std::size_t> ids) const;

    PointSet relabeled(SetLabel label) const;

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::vector<double> coords_;
    std::size_t dim_ = 0;
    SetLabel label_ = SetLabel::Reference;
};

PointSet read_csv(std::istream& in, SetLabel label);
PointSet read_gcpc(std::istream& in, SetLabel label);
PointSet load_pointset(const std::filesystem::path& path, FileFormat format, SetLabel label);

void write_csv(std::ostream& out, const PointSet& points);
/// Coordinates are narrowed to float32 as the format requires.
void write_gcpc(std::ostream& out, const PointSet& points);
void save_pointset(const std::filesystem::path& path, FileFormat format, const PointSet& points);

/// Squared Euclidean distance with a fixed summation order. Every threshold
/// test in the library (edges, sparsification, IPR spheres) compares this
/// value against a squared threshold, so decisions are bit-identical
/// whichever kernel evaluated them. Sizes are not checked.
double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

/// Euclidean distance. Throws ValidationError on a dimension mismatch.
double distance(std::span<const double> a, std::span<const double> b);

/// Nearest-rank percentile: the ceil(p/100 * n)-th smallest value (1-based),
/// with rank clamped to at least 1. `values` is reordered.
double nearest_rank_percentile(std::vector<double>& values, double p);

struct EpsilonEstimate {
    double epsilon = 0.0;
    double percentile = 0.0;
    std::size_t sample_size = 0;  // k
    std::uint64_t seed = 0;
    std::size_t num_distances = 0;  // k * k
    std::string sampler;
};

/// Draws 2k distinct rows of `reference` with `seed`, takes the k*k distances
/// between the first k and the second k draws, and returns their p-th
/// nearest-rank percentile.
EpsilonEstimate estimate_epsilon(const PointSet& reference, double percentile, std::size_t k,
                                 std::uint64_t seed);

/// Same computation with the two halves of the sample given explicitly.
EpsilonEstimate estimate_epsilon_from_indices(const PointSet& reference, double percentile,
                                              std::span<const std::size_t> first,
                                              std::span<const std::size_t> second);

}  // namespace geomca
