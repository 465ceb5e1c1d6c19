#include "geomca/epsgraph.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "geomca/disjoint_set.hpp"
#include "geomca/errors.hpp"
#include "kernels.hpp"

namespace geomca {

std::string_view to_string(EdgeKind kind) noexcept {
    switch (kind) {
        case EdgeKind::RR: return "RR";
        case EdgeKind::EE: return "EE";
        case EdgeKind::Heterogeneous: return "het";
    }
    return "het";
}

EpsilonGraph::EpsilonGraph(std::vector<Vertex> vertices, std::vector<Edge> edges, double epsilon)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), epsilon_(epsilon) {
    if (vertices_.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw ValidationError("too many vertices for 32-bit vertex ids");
    }
    const auto n = static_cast<std::uint32_t>(vertices_.size());
    for (const Edge& e : edges_) {
        if (e.i >= e.j || e.j >= n) throw ValidationError("edge endpoints must satisfy i < j < n");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
    if (std::adjacent_find(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
            return a.i == b.i && a.j == b.j;
        }) != edges_.end()) {
        throw ValidationError("duplicate edge");
    }

    DisjointSet sets(n);
    for (const Edge& e : edges_) sets.unite(e.i, e.j);

    // Scanning vertices in id order makes each component's first member its
    // smallest id, independent of how the unions were applied.
    constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> slot_of_root(n, kUnset);
    std::vector<std::vector<std::uint32_t>> groups;
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t root = sets.find(v);
        if (slot_of_root[root] == kUnset) {
            slot_of_root[root] = static_cast<std::uint32_t>(groups.size());
            groups.emplace_back();
        }
        groups[slot_of_root[root]].push_back(v);
    }
    // groups are already ordered by minimum vertex id; stable sort keeps that
    // as the tie-break.
    std::stable_sort(groups.begin(), groups.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });

    components_ = std::move(groups);
    component_of_.assign(n, 0);
    for (std::size_t c = 0; c < components_.size(); ++c) {
        for (const std::uint32_t v : components_[c]) component_of_[v] = static_cast<std::uint32_t>(c);
    }
}

EdgeKind EpsilonGraph::kind(const Edge& edge) const noexcept {
    const Origin a = vertices_[edge.i].origin;
    const Origin b = vertices_[edge.j].origin;
    if (a != b) return EdgeKind::Heterogeneous;
    return a == Origin::R ? EdgeKind::RR : EdgeKind::EE;
}

std::size_t EpsilonGraph::count(Origin origin) const noexcept {
    return static_cast<std::size_t>(std::count_if(
        vertices_.begin(), vertices_.end(), [origin](const Vertex& v) { return v.origin == origin; }));
}

EpsilonGraph build_epsilon_graph(const PointSet& r, const PointSet& e, double epsilon,
                                 const ComputeOptions& options) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw ValidationError("epsilon must be a finite value > 0");
    }
    if (r.empty() || e.empty()) throw ValidationError("R and E must both contain points");
    if (r.dim() != e.dim()) {
        throw ValidationError("R has dimension " + std::to_string(r.dim()) + " but E has " +
                              std::to_string(e.dim()));
    }
    const std::size_t total = r.size() + e.size();
    if (total > std::numeric_limits<std::uint32_t>::max()) {
        throw ValidationError("R and E together exceed 2^32 - 1 points");
    }

    std::vector<Vertex> vertices;
    vertices.reserve(total);
    for (std::size_t i = 0; i < r.size(); ++i) {
        vertices.push_back({Origin::R, static_cast<std::uint32_t>(i)});
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
        vertices.push_back({Origin::E, static_cast<std::uint32_t>(i)});
    }

    const std::size_t dim = r.dim();
    std::vector<double> coords;
    coords.reserve(total * dim);
    coords.insert(coords.end(), r.coords().begin(), r.coords().end());
    coords.insert(coords.end(), e.coords().begin(), e.coords().end());

    const double eps_sq = epsilon * epsilon;
    const std::size_t tile = std::max<std::size_t>(options.tile_rows, 1);
    const std::size_t num_tiles = (total + tile - 1) / tile;
    std::vector<std::vector<Edge>> per_tile(num_tiles);
    std::atomic<std::size_t> edge_count{0};
    const std::size_t max_edges = options.max_edges;

    // Task t owns the rows of tile t and pairs them with every column tile
    // at or after it.
    parallel_for(num_tiles, options.threads, [&](std::size_t row_tile) {
        std::vector<Edge>& out = per_tile[row_tile];
        const std::size_t row_lo = row_tile * tile;
        const std::size_t row_hi = std::min(total, row_lo + tile);
        for (std::size_t col_tile = row_tile; col_tile < num_tiles; ++col_tile) {
            const std::size_t col_hi = std::min(total, (col_tile + 1) * tile);
            const std::size_t before = out.size();
            for (std::size_t i = row_lo; i < row_hi; ++i) {
                const double* a = coords.data() + i * dim;
                const std::size_t col_lo = col_tile == row_tile ? i + 1 : col_tile * tile;
                for (std::size_t j = col_lo; j < col_hi; ++j) {
                    const double s = detail::squared_distance_capped(a, coords.data() + j * dim, dim, eps_sq);
                    if (s < eps_sq) {
                        out.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                       std::sqrt(s)});
                    }
                }
            }
            const std::size_t added = out.size() - before;
            if (added > 0 && edge_count.fetch_add(added) + added > max_edges) {
                throw ComputeError("epsilon-graph exceeds the edge cap of " +
                                   std::to_string(max_edges) +
                                   " edges; lower epsilon, sparsify with a larger delta, or raise "
                                   "the cap");
            }
        }
        std::sort(out.begin(), out.end(),
                  [](const Edge& x, const Edge& y) { return x.i != y.i ? x.i < y.i : x.j < y.j; });
    });

    std::vector<Edge> edges;
    edges.reserve(edge_count.load());
    for (auto& part : per_tile) {
        edges.insert(edges.end(), part.begin(), part.end());
        std::vector<Edge>().swap(part);
    }
    return EpsilonGraph(std::move(vertices), std::move(edges), epsilon);
}

std::vector<ComponentStats> get_connected_components(const EpsilonGraph& graph) {
    std::vector<ComponentStats> stats(graph.num_components());
    const auto vertices = graph.vertices();
    for (std::size_t c = 0; c < stats.size(); ++c) {
        ComponentStats& s = stats[c];
        s.id = c;
        for (const std::uint32_t v : graph.component(c)) {
            if (vertices[v].origin == Origin::R) {
                s.members_r.push_back(vertices[v].source_id);
            } else {
                s.members_e.push_back(vertices[v].source_id);
            }
        }
        std::sort(s.members_r.begin(), s.members_r.end());
        std::sort(s.members_e.begin(), s.members_e.end());
        s.v_r = s.members_r.size();
        s.v_e = s.members_e.size();
        s.v_total = s.v_r + s.v_e;
    }
    for (const Edge& edge : graph.edges()) {
        ComponentStats& s = stats[graph.component_of(edge.i)];
        ++s.e_total;
        switch (graph.kind(edge)) {
            case EdgeKind::RR: ++s.e_rr; break;
            case EdgeKind::EE: ++s.e_ee; break;
            case EdgeKind::Heterogeneous: ++s.e_het; break;
        }
    }
    return stats;
}

ComponentStats network_stats(const EpsilonGraph& graph) {
    ComponentStats s;
    s.v_r = graph.count(Origin::R);
    s.v_e = graph.count(Origin::E);
    s.v_total = s.v_r + s.v_e;
    for (const Edge& edge : graph.edges()) {
        ++s.e_total;
        switch (graph.kind(edge)) {
            case EdgeKind::RR: ++s.e_rr; break;
            case EdgeKind::EE: ++s.e_ee; break;
            case EdgeKind::Heterogeneous: ++s.e_het; break;
        }
    }
    return s;
}

void write_edges_jsonl(std::ostream& out, const EpsilonGraph& graph) {
    std::array<char, 32> buf{};
    for (const Edge& edge : graph.edges()) {
        const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), edge.length);
        out << "{\"i\":" << edge.i << ",\"j\":" << edge.j << ",\"d\":";
        out.write(buf.data(), res.ptr - buf.data());
        out << ",\"kind\":\"" << to_string(graph.kind(edge)) << "\"}\n";
    }
}

}  // namespace geomca
