#include "geomca/scores.hpp"

#include <cmath>

#include "geomca/errors.hpp"
#include "geomca/sparsify.hpp"

namespace geomca {

double component_consistency(const ComponentStats& stats) {
    if (stats.v_total == 0) throw ValidationError("consistency of an empty component");
    const std::size_t imbalance = stats.v_r > stats.v_e ? stats.v_r - stats.v_e : stats.v_e - stats.v_r;
    return 1.0 - static_cast<double>(imbalance) / static_cast<double>(stats.v_total);
}

double component_quality(const ComponentStats& stats) noexcept {
    if (stats.e_total == 0) return 0.0;
    return 1.0 - static_cast<double>(stats.e_rr + stats.e_ee) / static_cast<double>(stats.e_total);
}

std::vector<LocalScore> local_scores(std::span<const ComponentStats> components) {
    std::vector<LocalScore> out;
    out.reserve(components.size());
    for (const auto& c : components) out.push_back({component_consistency(c), component_quality(c)});
    return out;
}

NetworkScores network_scores(const EpsilonGraph& graph) {
    const ComponentStats total = network_stats(graph);
    return {component_consistency(total), component_quality(total)};
}

PrecisionRecall precision_recall(std::span<const ComponentStats> components,
                                 std::span<const LocalScore> local, double eta_c, double eta_q) {
    if (!(eta_c >= 0.0 && eta_c <= 1.0) || !(eta_q >= 0.0 && eta_q <= 1.0)) {
        throw ValidationError("thresholds eta_c and eta_q must lie in [0, 1]");
    }
    if (components.size() != local.size()) {
        throw ValidationError("one local score per component is required");
    }
    std::size_t total_r = 0;
    std::size_t total_e = 0;
    std::size_t selected_r = 0;
    std::size_t selected_e = 0;
    PrecisionRecall pr;
    for (std::size_t c = 0; c < components.size(); ++c) {
        total_r += components[c].v_r;
        total_e += components[c].v_e;
        if (local[c].consistency > eta_c && local[c].quality > eta_q) {
            selected_r += components[c].v_r;
            selected_e += components[c].v_e;
            pr.selected.push_back(c);
        }
    }
    if (total_r == 0 || total_e == 0) {
        throw ValidationError("precision and recall need at least one R and one E vertex");
    }
    pr.precision = static_cast<double>(selected_e) / static_cast<double>(total_e);
    pr.recall = static_cast<double>(selected_r) / static_cast<double>(total_r);
    return pr;
}

PrecisionRecall precision_recall(const EpsilonGraph& graph, std::span<const LocalScore> local,
                                 double eta_c, double eta_q) {
    const auto components = get_connected_components(graph);
    return precision_recall(components, local, eta_c, eta_q);
}

GeomcaReport run_geomca(const PointSet& r, const PointSet& e, const GeomcaParams& params) {
    if (!(params.eta_c >= 0.0 && params.eta_c <= 1.0) ||
        !(params.eta_q >= 0.0 && params.eta_q <= 1.0)) {
        throw ValidationError("thresholds eta_c and eta_q must lie in [0, 1]");
    }

    GeomcaReport report;
    report.epsilon = params.epsilon;
    report.delta = params.delta;
    report.eta_c = params.eta_c;
    report.eta_q = params.eta_q;
    report.seed = params.seed;
    report.epsilon_estimate = params.epsilon_estimate;
    report.n_r = r.size();
    report.n_e = e.size();

    std::vector<std::size_t> r_ids;
    std::vector<std::size_t> e_ids;
    EpsilonGraph graph = [&] {
        if (!params.delta) return build_epsilon_graph(r, e, params.epsilon, params.compute);
        const SparsifyResult rs = sparsify(r, *params.delta, params.compute);
        const SparsifyResult es = sparsify(e, *params.delta, params.compute);
        r_ids = rs.kept;
        e_ids = es.kept;
        return build_epsilon_graph(apply_sparsification(r, rs), apply_sparsification(e, es),
                                   params.epsilon, params.compute);
    }();
    report.n_r_sparse = graph.count(Origin::R);
    report.n_e_sparse = graph.count(Origin::E);
    report.num_edges = graph.edges().size();

    auto components = get_connected_components(graph);
    if (params.delta) {
        for (auto& c : components) {
            for (auto& id : c.members_r) id = static_cast<std::uint32_t>(r_ids[id]);
            for (auto& id : c.members_e) id = static_cast<std::uint32_t>(e_ids[id]);
        }
    }
    const auto local = local_scores(components);
    report.network = network_scores(graph);
    PrecisionRecall pr = precision_recall(components, local, params.eta_c, params.eta_q);
    report.precision = pr.precision;
    report.recall = pr.recall;
    report.selected_components = std::move(pr.selected);

    report.components.reserve(components.size());
    for (std::size_t c = 0; c < components.size(); ++c) {
        report.components.push_back({std::move(components[c]), local[c]});
    }
    return report;
}

}  // namespace geomca
