#include "geomca/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "geomca/errors.hpp"
#include "geomca/random.hpp"
#include "geomca/report_json.hpp"
#include "geomca/sparsify.hpp"

namespace geomca::harness {

using nlohmann::json;

namespace {

constexpr std::size_t kReferenceClasses = 7;

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
    return std::mt19937_64(seq);
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

std::vector<std::vector<double>> make_centers(const ClusterSpec& spec) {
    if (!spec.centers.empty()) return spec.centers;
    const double scale = spec.stddev > 0.0 ? spec.stddev : 1.0;
    const double radius = spec.separation * scale / std::sqrt(2.0);
    std::vector<std::vector<double>> centers(spec.num_classes, std::vector<double>(spec.dim, 0.0));
    if (spec.num_classes <= spec.dim) {
        for (std::size_t c = 0; c < spec.num_classes; ++c) centers[c][c] = radius;
        return centers;
    }
    auto rng = stream(spec.seed, 0xC3, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto& center : centers) {
        double norm = 0.0;
        for (auto& x : center) {
            x = normal(rng);
            norm += x * x;
        }
        norm = std::sqrt(norm);
        for (auto& x : center) x *= radius / norm;
    }
    return centers;
}

LabeledPoints sample_split(const ClusterSpec& spec, const std::vector<std::vector<double>>& centers,
                           const std::vector<std::size_t>& counts, std::uint64_t split) {
    LabeledPoints out;
    std::vector<double> coords;
    for (std::size_t c = 0; c < spec.num_classes; ++c) {
        auto rng = stream(spec.seed, split, c);
        std::normal_distribution<double> normal(0.0, 1.0);
        for (std::size_t i = 0; i < counts[c]; ++i) {
            for (std::size_t d = 0; d < spec.dim; ++d) {
                const double z = normal(rng);
                coords.push_back(centers[c][d] + spec.stddev * z);
            }
            out.labels.push_back(static_cast<std::uint32_t>(c));
        }
    }
    out.points = PointSet(std::move(coords), spec.dim, split == 0 ? SetLabel::Reference : SetLabel::Evaluation);
    return out;
}

json spec_json(const ClusterSpec& spec) {
    return json{{"num_classes", spec.num_classes},
                {"dim", spec.dim},
                {"stddev", spec.stddev},
                {"separation", spec.separation},
                {"train_counts", spec.train_counts},
                {"holdout_counts", spec.holdout_counts},
                {"seed", spec.seed}};
}

json params_json(const ExperimentParams& p) {
    return json{{"percentile", p.percentile},
                {"eps_k", p.eps_k},
                {"eps_seed", p.eps_seed},
                {"epsilon", p.epsilon ? json(*p.epsilon) : json(nullptr)},
                {"delta_factor", p.delta_factor ? json(*p.delta_factor) : json(nullptr)},
                {"eta_c", p.eta_c},
                {"eta_q", p.eta_q},
                {"with_ipr", p.with_ipr},
                {"ipr_k", p.ipr_k},
                {"subsample_seed", p.subsample_seed},
                {"sampler", kSamplerId}};
}

std::optional<double> delta_for(double epsilon, const ExperimentParams& params) {
    if (!params.delta_factor) return std::nullopt;
    return *params.delta_factor * epsilon;
}

void require_increasing(std::span<const double> values, const char* what) {
    if (values.empty()) throw ValidationError(std::string(what) + " must not be empty");
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) {
            throw ValidationError(std::string(what) + " must be strictly increasing");
        }
    }
}

PointSet sorted_subsample(const PointSet& points, std::size_t size, std::uint64_t seed) {
    auto ids = sample_without_replacement(points.size(), size, seed);
    std::sort(ids.begin(), ids.end());
    return points.subset(ids);
}

// Holdout rows of classes 0..t; with `corrupted`, classes >= 1 contribute a
// seeded random-sized subset that stays fixed across t.
PointSet truncated_evaluation_set(const LabeledPoints& holdout, std::size_t t, bool corrupted,
                                  std::uint64_t seed) {
    std::vector<std::size_t> ids;
    for (std::uint32_t c = 0; c <= t; ++c) {
        auto rows = holdout.rows_of_class(c);
        if (corrupted && c > 0 && !rows.empty()) {
            auto rng = stream(seed, 0xE7, c);
            const std::size_t keep = 1 + bounded_uniform(rng, rows.size());
            auto picks = sample_without_replacement(rows.size(), keep, seed ^ (0x9E3779B97F4A7C15ULL * (c + 1)));
            std::sort(picks.begin(), picks.end());
            for (const auto p : picks) ids.push_back(rows[p]);
        } else {
            ids.insert(ids.end(), rows.begin(), rows.end());
        }
    }
    return holdout.points.subset(ids);
}

void fill_from_graph(SweepRow& row, const EpsilonGraph& graph,
                     const std::vector<ComponentStats>& components,
                     const std::vector<LocalScore>& local, std::size_t min_component_size,
                     std::size_t drilldown) {
    row.n_r_sparse = graph.count(Origin::R);
    row.n_e_sparse = graph.count(Origin::E);
    row.num_edges = graph.edges().size();
    row.num_components = components.size();
    row.num_large_components = static_cast<std::size_t>(
        std::count_if(components.begin(), components.end(),
                      [&](const ComponentStats& c) { return c.v_total > min_component_size; }));
    const NetworkScores net = network_scores(graph);
    row.network_consistency = net.consistency;
    row.network_quality = net.quality;
    for (std::size_t c = 0; c < std::min(drilldown, components.size()); ++c) {
        row.top_components.push_back({components[c].v_total, components[c].v_r, components[c].v_e,
                                      local[c].consistency, local[c].quality});
    }
}

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

}  // namespace

ClusterSpec ClusterSpec::imbalanced12(double scale, std::uint64_t seed) {
    if (!(scale > 0.0)) throw ValidationError("count scale must be > 0");
    ClusterSpec spec;
    spec.seed = seed;
    for (std::size_t c = 0; c < 12; ++c) {
        spec.train_counts.push_back(std::max<std::size_t>(1, std::llround(kImbalancedTrain[c] * scale)));
        spec.holdout_counts.push_back(std::max<std::size_t>(1, std::llround(kImbalancedHoldout[c] * scale)));
    }
    return spec;
}

ClusterSpec ClusterSpec::uniform(std::size_t num_classes, std::size_t per_class, double separation,
                                 std::uint64_t seed) {
    ClusterSpec spec;
    spec.num_classes = num_classes;
    spec.separation = separation;
    spec.seed = seed;
    spec.train_counts.assign(num_classes, per_class);
    spec.holdout_counts.assign(num_classes, per_class);
    return spec;
}

void ClusterSpec::validate() const {
    if (num_classes == 0 || dim == 0) throw ValidationError("cluster spec needs classes and dimension");
    if (!(stddev >= 0.0) || !std::isfinite(stddev)) throw ValidationError("stddev must be >= 0");
    if (train_counts.size() != num_classes || holdout_counts.size() != num_classes) {
        throw ValidationError("one train and one holdout count per class is required");
    }
    for (std::size_t c = 0; c < num_classes; ++c) {
        if (train_counts[c] == 0 || holdout_counts[c] == 0) {
            throw ValidationError("class counts must be >= 1");
        }
    }
    if (!centers.empty()) {
        if (centers.size() != num_classes) throw ValidationError("one center per class is required");
        for (const auto& c : centers) {
            if (c.size() != dim) throw ValidationError("center dimension mismatch");
        }
        for (std::size_t a = 0; a < num_classes; ++a) {
            for (std::size_t b = a + 1; b < num_classes; ++b) {
                if (centers[a] == centers[b]) throw ValidationError("class centers must be distinct");
            }
        }
    } else if (num_classes > 1 && !(separation > 0.0)) {
        throw ValidationError("separation must be > 0");
    }
}

PointSet LabeledPoints::first_classes(std::size_t num_classes_taken) const {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < num_classes_taken) ids.push_back(i);
    }
    return points.subset(ids);
}

std::vector<std::size_t> LabeledPoints::rows_of_class(std::uint32_t label) const {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) ids.push_back(i);
    }
    return ids;
}

ClusterData generate_clusters(const ClusterSpec& spec) {
    spec.validate();
    ClusterData data;
    data.centers = make_centers(spec);
    data.train = sample_split(spec, data.centers, spec.train_counts, 0);
    data.holdout = sample_split(spec, data.centers, spec.holdout_counts, 1);
    return data;
}

ExperimentParams ExperimentParams::mode_truncation_defaults() {
    ExperimentParams p;
    p.percentile = 1.0;
    p.delta_factor = 0.5;
    p.eta_c = 0.75;
    p.eta_q = 0.45;
    return p;
}

bool SweepResult::all_checks_passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const SweepCheck& c) { return c.passed; });
}

double resolve_epsilon(const PointSet& r, const ExperimentParams& params) {
    if (params.epsilon) return *params.epsilon;
    const std::size_t k = std::min(params.eps_k, r.size() / 2);
    if (k == 0) throw ValidationError("reference set too small to estimate epsilon");
    return estimate_epsilon(r, params.percentile, k, params.eps_seed).epsilon;
}

SweepRow evaluate_cell(const PointSet& r, const PointSet& e, double epsilon,
                       std::optional<double> delta, const ExperimentParams& params,
                       std::size_t min_component_size) {
    SweepRow row;
    row.epsilon = epsilon;
    row.delta = delta;
    row.eta_c = params.eta_c;
    row.eta_q = params.eta_q;
    row.n_r = r.size();
    row.n_e = e.size();

    auto start = std::chrono::steady_clock::now();
    PointSet rs = r;
    PointSet es = e;
    if (delta) {
        rs = apply_sparsification(r, sparsify(r, *delta, params.compute));
        es = apply_sparsification(e, sparsify(e, *delta, params.compute));
    }
    row.sparsify_ms = elapsed_ms(start);

    start = std::chrono::steady_clock::now();
    const EpsilonGraph graph = build_epsilon_graph(rs, es, epsilon, params.compute);
    row.graph_ms = elapsed_ms(start);

    const auto components = get_connected_components(graph);
    const auto local = local_scores(components);
    const PrecisionRecall pr = precision_recall(components, local, params.eta_c, params.eta_q);
    row.precision = pr.precision;
    row.recall = pr.recall;
    fill_from_graph(row, graph, components, local, min_component_size, params.drilldown);

    if (params.with_ipr && r.size() > params.ipr_k && e.size() > params.ipr_k) {
        row.ipr = ipr(r, e, params.ipr_k, params.subsample_seed, params.compute);
    }
    return row;
}

SweepResult mode_truncation(const ClusterSpec& spec, std::size_t t_max,
                            const ExperimentParams& params, bool corrupted) {
    if (spec.num_classes < t_max + 1 || spec.num_classes < kReferenceClasses) {
        throw ValidationError("mode truncation needs at least max(7, t_max + 1) classes");
    }
    const ClusterData data = generate_clusters(spec);
    const PointSet r = data.train.first_classes(kReferenceClasses);
    const double epsilon = resolve_epsilon(r, params);
    const auto delta = delta_for(epsilon, params);

    SweepResult result;
    result.experiment = corrupted ? "mode-truncation-corrupted" : "mode-truncation";
    result.axis_name = "t";
    result.params = {{"spec", spec_json(spec)}, {"experiment", params_json(params)},
                     {"t_max", t_max}, {"corrupted", corrupted}, {"epsilon", epsilon}};
    for (std::size_t t = 0; t <= t_max; ++t) {
        const PointSet e = truncated_evaluation_set(data.holdout, t, corrupted, params.subsample_seed);
        SweepRow row = evaluate_cell(r, e, epsilon, delta, params);
        row.axis = static_cast<double>(t);
        result.rows.push_back(std::move(row));
    }

    bool recall_monotone = true;
    for (std::size_t t = 1; t < std::min<std::size_t>(result.rows.size(), kReferenceClasses); ++t) {
        if (result.rows[t].recall < result.rows[t - 1].recall) recall_monotone = false;
    }
    result.checks.push_back({"recall_non_decreasing_up_to_t6", recall_monotone});
    if (t_max > kReferenceClasses - 1) {
        result.checks.push_back({"precision_at_t_max_below_t6",
                                 result.rows[t_max].precision < result.rows[kReferenceClasses - 1].precision});
    }
    return result;
}

SweepResult separability_sweep(const ClusterSpec& spec, std::span<const double> eps_values,
                               std::size_t min_component_size, const ExperimentParams& params) {
    require_increasing(eps_values, "epsilon values");
    const ClusterData data = generate_clusters(spec);
    SweepResult result;
    result.experiment = "eps-sweep";
    result.axis_name = "epsilon";
    result.params = {{"spec", spec_json(spec)}, {"experiment", params_json(params)},
                     {"min_component_size", min_component_size}};
    for (const double eps : eps_values) {
        SweepRow row = evaluate_cell(data.train.points, data.holdout.points, eps,
                                     delta_for(eps, params), params, min_component_size);
        row.axis = eps;
        result.rows.push_back(std::move(row));
    }
    result.checks.push_back({"low_end_has_no_large_component", result.rows.front().num_large_components == 0});
    result.checks.push_back({"high_end_has_one_large_component", result.rows.back().num_large_components == 1});
    return result;
}

SweepResult eta_sweep(const EpsilonGraph& graph, std::span<const double> eta_c_grid,
                      std::span<const double> eta_q_grid) {
    require_increasing(eta_c_grid, "eta_c grid");
    require_increasing(eta_q_grid, "eta_q grid");
    const auto components = get_connected_components(graph);
    const auto local = local_scores(components);

    SweepResult result;
    result.experiment = "eta-sweep";
    result.axis_name = "eta_c";
    result.axis2_name = "eta_q";
    result.params = {{"epsilon", graph.epsilon()}, {"eta_c_grid", std::vector<double>(eta_c_grid.begin(), eta_c_grid.end())},
                     {"eta_q_grid", std::vector<double>(eta_q_grid.begin(), eta_q_grid.end())}};

    SweepRow base;
    base.epsilon = graph.epsilon();
    base.n_r = graph.count(Origin::R);
    base.n_e = graph.count(Origin::E);
    fill_from_graph(base, graph, components, local, 100, 0);

    for (const double ec : eta_c_grid) {
        for (const double eq : eta_q_grid) {
            const PrecisionRecall pr = precision_recall(components, local, ec, eq);
            SweepRow row = base;
            row.axis = ec;
            row.axis2 = eq;
            row.eta_c = ec;
            row.eta_q = eq;
            row.precision = pr.precision;
            row.recall = pr.recall;
            result.rows.push_back(std::move(row));
        }
    }

    const std::size_t nq = eta_q_grid.size();
    bool monotone = true;
    for (std::size_t a = 0; a < eta_c_grid.size(); ++a) {
        for (std::size_t b = 0; b < nq; ++b) {
            const SweepRow& cur = result.rows[a * nq + b];
            if (a > 0) {
                const SweepRow& prev = result.rows[(a - 1) * nq + b];
                monotone &= cur.precision <= prev.precision && cur.recall <= prev.recall;
            }
            if (b > 0) {
                const SweepRow& prev = result.rows[a * nq + b - 1];
                monotone &= cur.precision <= prev.precision && cur.recall <= prev.recall;
            }
        }
    }
    result.checks.push_back({"non_increasing_in_eta_c_and_eta_q", monotone});
    return result;
}

SweepResult eta_sweep(const ClusterSpec& spec, std::size_t t, std::span<const double> eta_grid,
                      const ExperimentParams& params, bool corrupted) {
    if (spec.num_classes < std::max(t + 1, kReferenceClasses)) {
        throw ValidationError("eta sweep needs at least max(7, t + 1) classes");
    }
    const ClusterData data = generate_clusters(spec);
    PointSet r = data.train.first_classes(kReferenceClasses);
    PointSet e = truncated_evaluation_set(data.holdout, t, corrupted, params.subsample_seed);
    const double epsilon = resolve_epsilon(r, params);
    if (const auto delta = delta_for(epsilon, params)) {
        r = apply_sparsification(r, sparsify(r, *delta, params.compute));
        e = apply_sparsification(e, sparsify(e, *delta, params.compute));
    }
    const EpsilonGraph graph = build_epsilon_graph(r, e, epsilon, params.compute);
    SweepResult result = eta_sweep(graph, eta_grid, eta_grid);
    result.params["spec"] = spec_json(spec);
    result.params["experiment"] = params_json(params);
    result.params["t"] = t;
    result.params["corrupted"] = corrupted;
    return result;
}

SweepResult delta_eps_sweep(const ClusterSpec& spec, std::span<const double> delta_factors,
                            std::span<const double> eps_percentiles,
                            const ExperimentParams& params) {
    require_increasing(delta_factors, "delta factors");
    require_increasing(eps_percentiles, "epsilon percentiles");
    for (const double f : delta_factors) {
        if (!(f > 0.0 && f <= 1.0)) throw ValidationError("delta factors must lie in (0, 1]");
    }
    const ClusterData data = generate_clusters(spec);
    const PointSet& r = data.train.points;
    const PointSet& e = data.holdout.points;

    SweepResult result;
    result.experiment = "delta-eps-sweep";
    result.axis_name = "percentile";
    result.axis2_name = "delta_factor";
    result.params = {{"spec", spec_json(spec)}, {"experiment", params_json(params)},
                     {"delta_factors", std::vector<double>(delta_factors.begin(), delta_factors.end())},
                     {"eps_percentiles", std::vector<double>(eps_percentiles.begin(), eps_percentiles.end())}};

    bool quality_law = true;
    bool smaller_delta_not_lower = true;
    for (const double p : eps_percentiles) {
        ExperimentParams cell = params;
        cell.percentile = p;
        cell.epsilon.reset();
        const double epsilon = resolve_epsilon(r, cell);
        const std::size_t first = result.rows.size();
        for (const double f : delta_factors) {
            SweepRow row = evaluate_cell(r, e, epsilon, f * epsilon, cell);
            row.axis = p;
            row.axis2 = f;
            if (f == 1.0 && row.num_edges > 0) quality_law &= row.network_quality == 1.0;
            result.rows.push_back(std::move(row));
        }
        const SweepRow& full = result.rows.back();
        if (delta_factors.back() == 1.0) {
            for (std::size_t i = first; i + 1 < result.rows.size(); ++i) {
                smaller_delta_not_lower &= result.rows[i].precision >= full.precision &&
                                           result.rows[i].recall >= full.recall &&
                                           result.rows[i].network_quality <= 1.0;
            }
        }
    }
    result.checks.push_back({"delta_equals_eps_has_quality_one", quality_law});
    result.checks.push_back({"smaller_delta_precision_recall_not_lower", smaller_delta_not_lower});
    return result;
}

SweepResult sample_size_sweep(const ClusterSpec& spec, std::span<const std::size_t> sizes,
                              const ExperimentParams& params) {
    if (sizes.empty()) throw ValidationError("sample sizes must not be empty");
    std::vector<std::size_t> ordered(sizes.begin(), sizes.end());
    std::sort(ordered.begin(), ordered.end());
    if (std::adjacent_find(ordered.begin(), ordered.end()) != ordered.end()) {
        throw ValidationError("sample sizes must be distinct");
    }
    const ClusterData data = generate_clusters(spec);
    const PointSet& r = data.train.points;
    const PointSet& e = data.holdout.points;
    if (ordered.front() == 0 || ordered.back() > std::min(r.size(), e.size())) {
        throw ValidationError("sample sizes must lie in [1, min(|R|, |E|)] = [1, " +
                              std::to_string(std::min(r.size(), e.size())) + "]");
    }
    const double epsilon = resolve_epsilon(r, params);
    const auto delta = delta_for(epsilon, params);

    SweepResult result;
    result.experiment = "size-sweep";
    result.axis_name = "size";
    result.params = {{"spec", spec_json(spec)}, {"experiment", params_json(params)},
                     {"sizes", ordered}, {"epsilon", epsilon}};
    for (const std::size_t size : ordered) {
        const PointSet rs = sorted_subsample(r, size, params.subsample_seed);
        const PointSet es = sorted_subsample(e, size, params.subsample_seed + 1);
        SweepRow row = evaluate_cell(rs, es, epsilon, delta, params);
        row.axis = static_cast<double>(size);
        result.rows.push_back(std::move(row));
    }
    return result;
}

json to_json(const SweepResult& result) {
    json rows = json::array();
    for (const SweepRow& row : result.rows) {
        json top = json::array();
        for (const auto& c : row.top_components) {
            top.push_back({{"size", c.size}, {"v_R", c.v_r}, {"v_E", c.v_e},
                           {"c", c.consistency}, {"q", c.quality},
                           {"origin", c.v_e == 0 ? "R" : (c.v_r == 0 ? "E" : "mixed")}});
        }
        json entry{{"axis", row.axis},
                   {"axis2", row.axis2 ? json(*row.axis2) : json(nullptr)},
                   {"epsilon", row.epsilon},
                   {"delta", row.delta ? json(*row.delta) : json(nullptr)},
                   {"eta_c", row.eta_c},
                   {"eta_q", row.eta_q},
                   {"precision", row.precision},
                   {"recall", row.recall},
                   {"network_consistency", row.network_consistency},
                   {"network_quality", row.network_quality},
                   {"n_R", row.n_r},
                   {"n_E", row.n_e},
                   {"n_R_sparse", row.n_r_sparse},
                   {"n_E_sparse", row.n_e_sparse},
                   {"num_edges", row.num_edges},
                   {"num_components", row.num_components},
                   {"num_large_components", row.num_large_components},
                   {"top_components", std::move(top)},
                   {"timings_ms", {{"sparsify", row.sparsify_ms}, {"graph", row.graph_ms}}}};
        if (row.ipr) entry["ipr"] = geomca::to_json(*row.ipr);
        rows.push_back(std::move(entry));
    }
    json checks = json::array();
    for (const auto& c : result.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}});
    return json{{"version", "1.0"},
                {"experiment", result.experiment},
                {"axis", result.axis_name},
                {"axis2", result.axis2_name.empty() ? json(nullptr) : json(result.axis2_name)},
                {"params", result.params},
                {"checks", std::move(checks)},
                {"rows", std::move(rows)}};
}

void write_csv(std::ostream& out, const SweepResult& result) {
    out << result.axis_name << ',' << (result.axis2_name.empty() ? "axis2" : result.axis2_name)
        << ",epsilon,delta,eta_c,eta_q,precision,recall,network_consistency,network_quality,"
           "n_R,n_E,n_R_sparse,n_E_sparse,num_edges,num_components,num_large_components,"
           "ipr_precision,ipr_recall,sparsify_ms,graph_ms\n";
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    for (const SweepRow& row : result.rows) {
        out << format_double(row.axis) << ',' << opt(row.axis2) << ',' << format_double(row.epsilon)
            << ',' << opt(row.delta) << ',' << format_double(row.eta_c) << ','
            << format_double(row.eta_q) << ',' << format_double(row.precision) << ','
            << format_double(row.recall) << ',' << format_double(row.network_consistency) << ','
            << format_double(row.network_quality) << ',' << row.n_r << ',' << row.n_e << ','
            << row.n_r_sparse << ',' << row.n_e_sparse << ',' << row.num_edges << ','
            << row.num_components << ',' << row.num_large_components << ','
            << (row.ipr ? format_double(row.ipr->precision) : "") << ','
            << (row.ipr ? format_double(row.ipr->recall) : "") << ','
            << format_double(row.sparsify_ms) << ',' << format_double(row.graph_ms) << '\n';
    }
}

std::vector<double> parse_range(const std::string& text) {
    auto parse_number = [&](std::string_view s) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
            throw ValidationError("cannot parse '" + std::string(s) + "' in range '" + text + "'");
        }
        return v;
    };

    std::vector<double> values;
    const std::string_view view(text);
    if (view.find(':') != std::string_view::npos) {
        std::vector<double> parts;
        std::size_t start = 0;
        while (true) {
            const auto colon = view.find(':', start);
            parts.push_back(parse_number(view.substr(start, colon - start)));
            if (colon == std::string_view::npos) break;
            start = colon + 1;
        }
        if (parts.size() != 3) {
            throw ValidationError("range '" + text + "' must have the form start:stop:step");
        }
        const double lo = parts[0], hi = parts[1], step = parts[2];
        if (!(step > 0.0) || hi < lo) {
            throw ValidationError("range '" + text + "' needs step > 0 and stop >= start");
        }
        const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
        if (count > 1'000'000) throw ValidationError("range '" + text + "' has too many values");
        for (std::size_t i = 0; i < count; ++i) values.push_back(lo + static_cast<double>(i) * step);
    } else {
        std::size_t start = 0;
        while (true) {
            const auto comma = view.find(',', start);
            values.push_back(parse_number(view.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }
    require_increasing(values, ("range '" + text + "'").c_str());
    return values;
}

}  // namespace geomca::harness
