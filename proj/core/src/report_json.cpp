#include "geomca/report_json.hpp"

#include "geomca/random.hpp"

namespace geomca {

using nlohmann::json;

json to_json(const EpsilonEstimate& estimate) {
    return json{{"epsilon", estimate.epsilon},
                {"p", estimate.percentile},
                {"k", estimate.sample_size},
                {"seed", estimate.seed},
                {"num_distances", estimate.num_distances},
                {"sampler", estimate.sampler}};
}

json to_json(const IprScores& scores) {
    return json{{"precision", scores.precision},
                {"recall", scores.recall},
                {"k", scores.k},
                {"balanced_size", scores.balanced_size},
                {"seed", scores.seed},
                {"sampler", kSamplerId}};
}

json to_json(const SparsifyResult& result) {
    json cover = json::array();
    for (const auto& c : result.cover) cover.push_back({{"dropped", c.dropped}, {"keeper", c.keeper}});
    return json{{"delta", result.delta},
                {"order", kSparsifyOrder},
                {"kept", result.kept},
                {"cover", std::move(cover)}};
}

json to_json(const GeomcaReport& report, const ReportJsonOptions& options) {
    json params{{"epsilon", report.epsilon},
                {"delta", report.delta ? json(*report.delta) : json(nullptr)},
                {"eta_c", report.eta_c},
                {"eta_q", report.eta_q},
                {"seed", report.seed ? json(*report.seed) : json(nullptr)}};
    if (report.delta) params["sparsify_order"] = kSparsifyOrder;
    if (report.epsilon_estimate) params["epsilon_estimate"] = to_json(*report.epsilon_estimate);

    json components = json::array();
    for (const auto& c : report.components) {
        json entry{{"id", c.stats.id},
                   {"v_R", c.stats.v_r},
                   {"v_E", c.stats.v_e},
                   {"e_RR", c.stats.e_rr},
                   {"e_EE", c.stats.e_ee},
                   {"e_het", c.stats.e_het},
                   {"c", c.score.consistency},
                   {"q", c.score.quality}};
        if (options.include_members) {
            entry["members_R"] = c.stats.members_r;
            entry["members_E"] = c.stats.members_e;
        }
        components.push_back(std::move(entry));
    }

    json out{{"version", GeomcaReport::kVersion},
             {"params", std::move(params)},
             {"global",
              {{"precision", report.precision},
               {"recall", report.recall},
               {"network_consistency", report.network.consistency},
               {"network_quality", report.network.quality}}},
             {"sizes",
              {{"n_R", report.n_r},
               {"n_E", report.n_e},
               {"n_R_sparse", report.n_r_sparse},
               {"n_E_sparse", report.n_e_sparse}}},
             {"num_edges", report.num_edges},
             {"selected_components", report.selected_components},
             {"components", std::move(components)}};
    if (report.ipr) out["ipr"] = to_json(*report.ipr);
    return out;
}

}  // namespace geomca
