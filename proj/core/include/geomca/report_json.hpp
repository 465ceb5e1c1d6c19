#pragma once

#include <nlohmann/json.hpp>

#include "geomca/pointset.hpp"
#include "geomca/scores.hpp"
#include "geomca/sparsify.hpp"

namespace geomca {

struct ReportJsonOptions {
    bool include_members = false;
};

nlohmann::json to_json(const EpsilonEstimate& estimate);
nlohmann::json to_json(const IprScores& scores);
nlohmann::json to_json(const SparsifyResult& result);
nlohmann::json to_json(const GeomcaReport& report, const ReportJsonOptions& options = {});

}  // namespace geomca
