#include "geomca/pointset.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>

#include "geomca/errors.hpp"
#include "geomca/random.hpp"

namespace geomca {

std::string_view to_string(SetLabel label) noexcept {
    return label == SetLabel::Reference ? "R" : "E";
}

FileFormat parse_file_format(std::string_view name) {
    if (name == "csv") return FileFormat::Csv;
    if (name == "gcpc") return FileFormat::Gcpc;
    throw ValidationError("unknown point file format '" + std::string(name) +
                          "' (expected csv or gcpc)");
}

PointSet::PointSet(std::vector<double> coords, std::size_t dim, SetLabel label)
    : coords_(std::move(coords)), dim_(dim), label_(label) {
    if (dim_ == 0) throw ValidationError("point dimension must be at least 1");
    if (coords_.empty()) throw ValidationError("point set must contain at least one point");
    if (coords_.size() % dim_ != 0) {
        throw ValidationError("coordinate count " + std::to_string(coords_.size()) +
                              " is not a multiple of dimension " + std::to_string(dim_));
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (!std::isfinite(coords_[i])) {
            throw InputError(InputErrorKind::NonFinite,
                             "non-finite coordinate in row " + std::to_string(i / dim_));
        }
    }
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows, SetLabel label) {
    if (rows.empty()) throw InputError(InputErrorKind::Empty, "point set has no rows");
    const std::size_t dim = rows.front().size();
    std::vector<double> coords;
    coords.reserve(rows.size() * dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != dim) {
            throw InputError(InputErrorKind::DimensionMismatch,
                             "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                 " values, expected " + std::to_string(dim));
        }
        coords.insert(coords.end(), rows[i].begin(), rows[i].end());
    }
    return PointSet(std::move(coords), dim, label);
}

PointSet PointSet::subset(std::span<const std::size_t> ids) const {
    std::vector<double> coords;
    coords.reserve(ids.size() * dim_);
    for (const std::size_t id : ids) {
        if (id >= size()) throw ValidationError("subset id " + std::to_string(id) + " out of range");
        const auto r = row(id);
        coords.insert(coords.end(), r.begin(), r.end());
    }
    return PointSet(std::move(coords), dim_, label_);
}

PointSet PointSet::relabeled(SetLabel label) const {
    PointSet copy = *this;
    copy.label_ = label;
    return copy;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_field(std::string_view field, std::size_t line_no) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw InputError(InputErrorKind::Malformed, "line " + std::to_string(line_no) +
                                                        ": cannot parse '" + std::string(field) +
                                                        "' as a real number");
    }
    if (!std::isfinite(value)) {
        throw InputError(InputErrorKind::NonFinite,
                         "line " + std::to_string(line_no) + ": non-finite value '" +
                             std::string(field) + "'");
    }
    return value;
}

template <typename T>
T read_le(std::istream& in, const char* what) {
    std::array<unsigned char, sizeof(T)> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
        throw InputError(InputErrorKind::Truncated, std::string("GCPC file truncated in ") + what);
    }
    T value = 0;
    for (std::size_t b = 0; b < sizeof(T); ++b) value |= static_cast<T>(bytes[b]) << (8 * b);
    return value;
}

template <typename T>
void write_le(std::ostream& out, T value) {
    std::array<char, sizeof(T)> bytes{};
    for (std::size_t b = 0; b < sizeof(T); ++b) {
        bytes[b] = static_cast<char>((value >> (8 * b)) & 0xFF);
    }
    out.write(bytes.data(), bytes.size());
}

}  // namespace

PointSet read_csv(std::istream& in, SetLabel label) {
    std::vector<double> coords;
    std::size_t dim = 0;
    std::size_t line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty()) continue;
        std::size_t fields = 0;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = view.find(',', start);
            const std::size_t end = comma == std::string_view::npos ? view.size() : comma;
            coords.push_back(parse_field(view.substr(start, end - start), line_no));
            ++fields;
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (dim == 0) {
            dim = fields;
        } else if (fields != dim) {
            throw InputError(InputErrorKind::DimensionMismatch,
                             "line " + std::to_string(line_no) + " has " + std::to_string(fields) +
                                 " values, expected " + std::to_string(dim));
        }
    }
    if (coords.empty()) throw InputError(InputErrorKind::Empty, "CSV input contains no points");
    return PointSet(std::move(coords), dim, label);
}

PointSet read_gcpc(std::istream& in, SetLabel label) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (in.gcount() == 0) throw InputError(InputErrorKind::Empty, "GCPC input is empty");
    if (in.gcount() != 4 || std::memcmp(magic.data(), "GCPC", 4) != 0) {
        throw InputError(InputErrorKind::BadHeader, "missing GCPC magic bytes");
    }
    const auto version = read_le<std::uint32_t>(in, "version");
    if (version != 1) {
        throw InputError(InputErrorKind::BadHeader,
                         "unsupported GCPC version " + std::to_string(version));
    }
    const auto n = read_le<std::uint64_t>(in, "point count");
    const auto dim = read_le<std::uint64_t>(in, "dimension");
    if (n == 0) throw InputError(InputErrorKind::Empty, "GCPC file declares zero points");
    if (dim == 0) throw InputError(InputErrorKind::BadHeader, "GCPC file declares dimension 0");
    if (n > std::numeric_limits<std::uint64_t>::max() / dim / 4) {
        throw InputError(InputErrorKind::BadHeader, "GCPC header size overflows");
    }

    const std::uint64_t count = n * dim;
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 24)));
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto bits = read_le<std::uint32_t>(in, "coordinates");
        const float value = std::bit_cast<float>(bits);
        if (!std::isfinite(value)) {
            throw InputError(InputErrorKind::NonFinite,
                             "non-finite coordinate in row " + std::to_string(i / dim));
        }
        coords.push_back(static_cast<double>(value));
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw InputError(InputErrorKind::TrailingBytes, "trailing bytes after GCPC payload");
    }
    return PointSet(std::move(coords), static_cast<std::size_t>(dim), label);
}

PointSet load_pointset(const std::filesystem::path& path, FileFormat format, SetLabel label) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(InputErrorKind::FileNotFound, "cannot open '" + path.string() + "'");
    }
    try {
        return format == FileFormat::Csv ? read_csv(in, label) : read_gcpc(in, label);
    } catch (const InputError& err) {
        throw InputError(err.kind(), path.string() + ": " + err.what());
    }
}

void write_csv(std::ostream& out, const PointSet& points) {
    std::array<char, 32> buf{};
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto r = points.row(i);
        for (std::size_t d = 0; d < r.size(); ++d) {
            if (d) out << ',';
            const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), r[d]);
            out.write(buf.data(), res.ptr - buf.data());
        }
        out << '\n';
    }
}

void write_gcpc(std::ostream& out, const PointSet& points) {
    out.write("GCPC", 4);
    write_le<std::uint32_t>(out, 1);
    write_le<std::uint64_t>(out, points.size());
    write_le<std::uint64_t>(out, points.dim());
    for (const double v : points.coords()) {
        write_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    }
}

void save_pointset(const std::filesystem::path& path, FileFormat format, const PointSet& points) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ComputeError("cannot write '" + path.string() + "'");
    if (format == FileFormat::Csv) {
        write_csv(out, points);
    } else {
        write_gcpc(out, points);
    }
    if (!out) throw ComputeError("write to '" + path.string() + "' failed");
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    const std::size_t n = a.size();
    const double* pa = a.data();
    const double* pb = b.data();
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const double d0 = pa[i] - pb[i];
        const double d1 = pa[i + 1] - pb[i + 1];
        const double d2 = pa[i + 2] - pb[i + 2];
        const double d3 = pa[i + 3] - pb[i + 3];
        s0 += d0 * d0;
        s1 += d1 * d1;
        s2 += d2 * d2;
        s3 += d3 * d3;
    }
    for (; i < n; ++i) {
        const double d = pa[i] - pb[i];
        s0 += d * d;
    }
    return (s0 + s1) + (s2 + s3);
}

double distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ValidationError("distance between vectors of dimension " + std::to_string(a.size()) +
                              " and " + std::to_string(b.size()));
    }
    return std::sqrt(squared_distance(a, b));
}

double nearest_rank_percentile(std::vector<double>& values, double p) {
    if (values.empty()) throw ValidationError("percentile of an empty set");
    if (!(p > 0.0 && p <= 100.0)) throw ValidationError("percentile must lie in (0, 100]");
    const double n = static_cast<double>(values.size());
    // The small slack keeps decimal p such as 0.3 from rounding past an
    // integer rank.
    const double exact = p * n / 100.0;
    auto rank = static_cast<std::size_t>(std::ceil(exact - 1e-9 * std::max(1.0, exact)));
    rank = std::clamp<std::size_t>(rank, 1, values.size());
    auto nth = values.begin() + static_cast<std::ptrdiff_t>(rank - 1);
    std::nth_element(values.begin(), nth, values.end());
    return *nth;
}

EpsilonEstimate estimate_epsilon_from_indices(const PointSet& reference, double percentile,
                                              std::span<const std::size_t> first,
                                              std::span<const std::size_t> second) {
    if (first.empty() || first.size() != second.size()) {
        throw ValidationError("epsilon estimation needs two non-empty halves of equal size");
    }
    std::vector<double> distances;
    distances.reserve(first.size() * second.size());
    for (const std::size_t i : first) {
        for (const std::size_t j : second) {
            distances.push_back(std::sqrt(squared_distance(reference.row(i), reference.row(j))));
        }
    }
    EpsilonEstimate est;
    est.num_distances = distances.size();
    est.epsilon = nearest_rank_percentile(distances, percentile);
    est.percentile = percentile;
    est.sample_size = first.size();
    return est;
}

EpsilonEstimate estimate_epsilon(const PointSet& reference, double percentile, std::size_t k,
                                 std::uint64_t seed) {
    if (k == 0) throw ValidationError("sample size k must be at least 1");
    if (!(percentile > 0.0 && percentile <= 100.0)) {
        throw ValidationError("percentile p must lie in (0, 100]");
    }
    if (reference.size() < 2 * k) {
        throw ValidationError("epsilon estimation requires n >= 2k (n = " +
                              std::to_string(reference.size()) + ", k = " + std::to_string(k) + ")");
    }
    const auto draw = sample_without_replacement(reference.size(), 2 * k, seed);
    const std::span<const std::size_t> all(draw);
    EpsilonEstimate est =
        estimate_epsilon_from_indices(reference, percentile, all.first(k), all.subspan(k));
    est.seed = seed;
    est.sampler = kSamplerId;
    return est;
}

}  // namespace geomca
