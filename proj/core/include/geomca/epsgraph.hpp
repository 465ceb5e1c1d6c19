#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "geomca/compute.hpp"
#include "geomca/pointset.hpp"

namespace geomca {

enum class Origin : std::uint8_t { R, E };

enum class EdgeKind : std::uint8_t { RR, EE, Heterogeneous };

std::string_view to_string(EdgeKind kind) noexcept;

struct Vertex {
    Origin origin;
    /// Row index inside the R or E point set the vertex came from.
    std::uint32_t source_id;

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Vertex indices are positions in EpsilonGraph::vertices(); i < j.
struct Edge {
    std::uint32_t i;
    std::uint32_t j;
    double length;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// The epsilon-graph on R u E: R's points first, then E's. An edge joins
/// every pair at distance strictly below epsilon. Components are stored in
/// canonical order: descending size, ties by ascending smallest vertex.
class EpsilonGraph {
public:
    EpsilonGraph(std::vector<Vertex> vertices, std::vector<Edge> edges, double epsilon);

    double epsilon() const noexcept { return epsilon_; }
    std::span<const Vertex> vertices() const noexcept { return vertices_; }
    /// Sorted by (i, j).
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::size_t num_components() const noexcept { return components_.size(); }
    /// Vertex indices of component c, ascending.
    std::span<const std::uint32_t> component(std::size_t c) const noexcept { return components_[c]; }
    std::uint32_t component_of(std::uint32_t vertex) const noexcept { return component_of_[vertex]; }

    EdgeKind kind(const Edge& edge) const noexcept;

    std::size_t count(Origin origin) const noexcept;

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    double epsilon_;
    std::vector<std::vector<std::uint32_t>> components_;
    std::vector<std::uint32_t> component_of_;
};

/// Streams pairwise distances tile by tile; the n x n matrix is never
/// stored. Throws ValidationError for epsilon <= 0 (or non-finite) or a
/// dimension mismatch, ComputeError when more than options.max_edges
/// edges qualify.
EpsilonGraph build_epsilon_graph(const PointSet& r, const PointSet& e, double epsilon,
                                 const ComputeOptions& options = {});

struct ComponentStats {
    std::size_t id = 0;
    std::size_t v_total = 0;
    std::size_t v_r = 0;
    std::size_t v_e = 0;
    std::size_t e_total = 0;
    std::size_t e_rr = 0;
    std::size_t e_ee = 0;
    std::size_t e_het = 0;
    /// Source ids (rows of R / rows of E), ascending.
    std::vector<std::uint32_t> members_r;
    std::vector<std::uint32_t> members_e;
};

std::vector<ComponentStats> get_connected_components(const EpsilonGraph& graph);

/// Aggregate counts of the whole graph, treated as one component.
ComponentStats network_stats(const EpsilonGraph& graph);

/// One JSON object per line: {"i":..,"j":..,"d":..,"kind":"RR"|"EE"|"het"}.
void write_edges_jsonl(std::ostream& out, const EpsilonGraph& graph);

}  // namespace geomca
