#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "geomca/compute.hpp"
#include "geomca/epsgraph.hpp"
#include "geomca/ipr.hpp"
#include "geomca/pointset.hpp"
#include "geomca/scores.hpp"

namespace geomca::harness {

/// Per-class train/holdout sizes of the mode-truncation setup (12 classes).
inline constexpr std::size_t kImbalancedTrain[12] = {670, 690, 395, 706, 349, 409,
                                                     295, 296, 292, 311, 258, 331};
inline constexpr std::size_t kImbalancedHoldout[12] = {666, 625, 373, 684, 429, 377,
                                                       309, 312, 310, 293, 279, 345};

/// Isotropic Gaussian classes. When `centers` is empty they are generated
/// so that every pair sits exactly `separation * stddev` apart (scaled basis
/// vectors when num_classes <= dim, seeded random directions otherwise).
struct ClusterSpec {
    std::size_t num_classes = 12;
    std::size_t dim = 12;
    double stddev = 1.0;
    /// Centre-to-centre distance in units of stddev.
    double separation = 10.0;
    std::vector<std::size_t> train_counts;
    std::vector<std::size_t> holdout_counts;
    std::vector<std::vector<double>> centers;
    std::uint64_t seed = 1;

    /// 12 classes in 12-D with the counts above multiplied by `scale`
    /// (rounded, at least 1 per class).
    static ClusterSpec imbalanced12(double scale = 1.0, std::uint64_t seed = 1);
    /// `num_classes` equally sized classes.
    static ClusterSpec uniform(std::size_t num_classes, std::size_t per_class,
                               double separation, std::uint64_t seed = 1);

    void validate() const;
};

struct LabeledPoints {
    PointSet points;
    std::vector<std::uint32_t> labels;

    /// Rows whose label is in [0, num_classes_taken).
    PointSet first_classes(std::size_t num_classes_taken) const;
    std::vector<std::size_t> rows_of_class(std::uint32_t label) const;
};

struct ClusterData {
    LabeledPoints train;
    LabeledPoints holdout;
    std::vector<std::vector<double>> centers;
};

ClusterData generate_clusters(const ClusterSpec& spec);

/// Settings shared by every experiment runner.
struct ExperimentParams {
    /// Epsilon percentile, estimated on R with eps_k/eps_seed, unless
    /// `epsilon` is given.
    double percentile = 1.0;
    std::size_t eps_k = 1000;
    std::uint64_t eps_seed = 0;
    std::optional<double> epsilon;
    /// delta = delta_factor * epsilon when set.
    std::optional<double> delta_factor;
    double eta_c = 0.0;
    double eta_q = 0.0;
    bool with_ipr = false;
    std::size_t ipr_k = 3;
    std::uint64_t subsample_seed = 0;
    std::size_t drilldown = 10;
    ComputeOptions compute;

    /// Mode-truncation settings: eps(1), delta = eps/2,
    /// eta_c = 0.75, eta_q = 0.45.
    static ExperimentParams mode_truncation_defaults();
};

struct ComponentSummary {
    std::size_t size = 0;
    std::size_t v_r = 0;
    std::size_t v_e = 0;
    double consistency = 0.0;
    double quality = 0.0;
};

struct SweepRow {
    double axis = 0.0;
    std::optional<double> axis2;

    double epsilon = 0.0;
    std::optional<double> delta;
    double eta_c = 0.0;
    double eta_q = 0.0;

    double precision = 0.0;
    double recall = 0.0;
    double network_consistency = 0.0;
    double network_quality = 0.0;

    std::size_t n_r = 0;
    std::size_t n_e = 0;
    std::size_t n_r_sparse = 0;
    std::size_t n_e_sparse = 0;
    std::size_t num_edges = 0;
    std::size_t num_components = 0;
    std::size_t num_large_components = 0;

    std::optional<IprScores> ipr;
    std::vector<ComponentSummary> top_components;

    double sparsify_ms = 0.0;
    double graph_ms = 0.0;
};

struct SweepCheck {
    std::string name;
    bool passed = false;
};

struct SweepResult {
    std::string experiment;
    std::string axis_name;
    std::string axis2_name;
    /// Sorted by (axis, axis2), strictly increasing.
    std::vector<SweepRow> rows;
    std::vector<SweepCheck> checks;
    nlohmann::json params;

    bool all_checks_passed() const noexcept;
};

/// One evaluation of R against E. `min_component_size` only feeds
/// SweepRow::num_large_components.
SweepRow evaluate_cell(const PointSet& r, const PointSet& e, double epsilon,
                       std::optional<double> delta, const ExperimentParams& params,
                       std::size_t min_component_size = 100);

double resolve_epsilon(const PointSet& r, const ExperimentParams& params);

/// R = train classes 0..6; E_t = holdout classes 0..t for t = 0..t_max.
/// With `corrupted`, each class after the first enters E_t as a random-sized
/// subset (size uniform in [1, count], seeded).
SweepResult mode_truncation(const ClusterSpec& spec, std::size_t t_max,
                            const ExperimentParams& params, bool corrupted = false);

/// Number of components with more than `min_component_size` vertices and
/// the network quality for every epsilon. R = train, E = holdout.
SweepResult separability_sweep(const ClusterSpec& spec, std::span<const double> eps_values,
                               std::size_t min_component_size = 100,
                               const ExperimentParams& params = {});

/// Precision/recall over an (eta_c, eta_q) grid on a fixed graph.
SweepResult eta_sweep(const EpsilonGraph& graph, std::span<const double> eta_c_grid,
                      std::span<const double> eta_q_grid);

/// Builds the truncation fixture's E_t (optionally corrupted) and runs
/// eta_sweep on its graph.
SweepResult eta_sweep(const ClusterSpec& spec, std::size_t t, std::span<const double> eta_grid,
                      const ExperimentParams& params, bool corrupted);

/// Grid over epsilon percentiles x delta factors (delta = factor * eps).
SweepResult delta_eps_sweep(const ClusterSpec& spec, std::span<const double> delta_factors,
                            std::span<const double> eps_percentiles,
                            const ExperimentParams& params);

/// Subsamples R and E (seeded) to each size and reruns; epsilon is fixed
/// from the full R. Rows are in increasing size.
SweepResult sample_size_sweep(const ClusterSpec& spec, std::span<const std::size_t> sizes,
                              const ExperimentParams& params);

nlohmann::json to_json(const SweepResult& result);
void write_csv(std::ostream& out, const SweepResult& result);

/// "start:stop:step" (inclusive of stop up to rounding) or a comma list.
/// Throws ValidationError on malformed input or an empty/non-increasing range.
std::vector<double> parse_range(const std::string& text);

}  // namespace geomca::harness
