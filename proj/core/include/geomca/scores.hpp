#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geomca/compute.hpp"
#include "geomca/epsgraph.hpp"
#include "geomca/ipr.hpp"
#include "geomca/pointset.hpp"

namespace geomca {

/// 1 - |v_R - v_E| / v_total. Requires v_total >= 1.
double component_consistency(const ComponentStats& stats);

/// e_het / e_total, or 0 for an edgeless component.
double component_quality(const ComponentStats& stats) noexcept;

struct LocalScore {
    double consistency = 0.0;
    double quality = 0.0;
};

std::vector<LocalScore> local_scores(std::span<const ComponentStats> components);

struct NetworkScores {
    double consistency = 0.0;
    double quality = 0.0;
};

NetworkScores network_scores(const EpsilonGraph& graph);

struct PrecisionRecall {
    double precision = 0.0;
    double recall = 0.0;
    /// Components with consistency > eta_c and quality > eta_q.
    std::vector<std::size_t> selected;
};

/// Fraction of E (precision) and R (recall) vertices inside components that
/// strictly exceed both thresholds. Throws ValidationError for thresholds
/// outside [0, 1] or when either side has no vertices.
PrecisionRecall precision_recall(std::span<const ComponentStats> components,
                                 std::span<const LocalScore> local, double eta_c, double eta_q);

PrecisionRecall precision_recall(const EpsilonGraph& graph, std::span<const LocalScore> local,
                                 double eta_c, double eta_q);

struct GeomcaParams {
    double epsilon = 0.0;
    /// When set, R and E are sparsified separately before the graph is built.
    std::optional<double> delta;
    double eta_c = 0.0;
    double eta_q = 0.0;
    /// Provenance only; run_geomca never draws random numbers itself.
    std::optional<EpsilonEstimate> epsilon_estimate;
    std::optional<std::uint64_t> seed;
    ComputeOptions compute;
};

struct ComponentReport {
    ComponentStats stats;
    LocalScore score;
};

struct GeomcaReport {
    static constexpr const char* kVersion = "1.0";

    double epsilon = 0.0;
    std::optional<double> delta;
    double eta_c = 0.0;
    double eta_q = 0.0;
    std::optional<std::uint64_t> seed;
    std::optional<EpsilonEstimate> epsilon_estimate;

    double precision = 0.0;
    double recall = 0.0;
    NetworkScores network;

    std::size_t n_r = 0;
    std::size_t n_e = 0;
    std::size_t n_r_sparse = 0;
    std::size_t n_e_sparse = 0;
    std::size_t num_edges = 0;

    /// Canonical order, component 0 is the largest. Member ids refer to the
    /// rows of the original (unsparsified) R and E.
    std::vector<ComponentReport> components;
    std::vector<std::size_t> selected_components;

    std::optional<IprScores> ipr;
};

/// Sparsify (optional), build the graph, score every component, then the
/// network scores and precision/recall.
GeomcaReport run_geomca(const PointSet& r, const PointSet& e, const GeomcaParams& params);

}  // namespace geomca
