#include "cli/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "geomca/errors.hpp"
#include "geomca/harness.hpp"
#include "geomca/pointset.hpp"
#include "geomca/report_json.hpp"
#include "geomca/scores.hpp"
#include "geomca/sparsify.hpp"

namespace geomca::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunConfig {
    std::string ref_path;
    std::string eval_path;
    std::string ref_format;
    std::string eval_format;

    std::optional<double> epsilon;
    std::optional<double> percentile;
    std::optional<std::size_t> eps_k;
    std::uint64_t seed = 0;

    std::optional<double> delta;
    std::optional<double> delta_factor;
    double eta_c = 0.0;
    double eta_q = 0.0;

    std::string baseline;
    std::size_t ipr_k = 3;

    std::string output;
    std::string edges_output;
    std::string points_output;
    bool emit_members = false;

    unsigned threads = 0;
    std::size_t max_edges = 500'000'000;
};

struct ExperimentConfig {
    std::string name;
    std::size_t classes = 12;
    std::size_t dim = 12;
    double stddev = 1.0;
    double separation = 10.0;
    double scale = 1.0;
    std::optional<std::size_t> per_class;
    std::uint64_t seed = 1;
    std::size_t t_max = 11;
    std::size_t t = 11;
    bool corrupted = false;
    std::string eps_range;
    std::string eta_range = "0:1:0.1";
    std::string delta_factors = "0.5,0.8,1";
    std::string percentiles = "1,5,10";
    std::string sizes;
    std::size_t min_component_size = 100;
    std::string out_dir = ".";
    std::string prefix;
};

ComputeOptions compute_options(const RunConfig& cfg) {
    ComputeOptions opts;
    opts.threads = cfg.threads;
    opts.max_edges = cfg.max_edges;
    return opts;
}

unsigned default_threads() {
    if (const char* env = std::getenv("GEOMCA_THREADS")) {
        unsigned value = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec == std::errc() && ptr == s.data() + s.size()) return value;
    }
    return 0;
}

FileFormat format_for(const std::string& path, const std::string& explicit_format) {
    if (!explicit_format.empty()) return parse_file_format(explicit_format);
    return fs::path(path).extension() == ".gcpc" ? FileFormat::Gcpc : FileFormat::Csv;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ComputeError("cannot write '" + path + "'");
    out << text;
    if (!out) throw ComputeError("write to '" + path + "' failed");
}

std::string format_number(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

void add_runtime_options(CLI::App& cmd, RunConfig& cfg) {
    cmd.add_option("--threads", cfg.threads, "Compute threads (0 = all cores; env GEOMCA_THREADS)");
}

int cmd_estimate_eps(const RunConfig& cfg, std::ostream& out) {
    const PointSet r = load_pointset(cfg.ref_path, format_for(cfg.ref_path, cfg.ref_format),
                                     SetLabel::Reference);
    const EpsilonEstimate est = estimate_epsilon(r, *cfg.percentile, *cfg.eps_k, cfg.seed);
    const std::string text = to_json(est).dump(2) + "\n";
    if (!cfg.output.empty()) write_text(cfg.output, text);
    out << text;
    return kExitOk;
}

int cmd_sparsify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const PointSet w = load_pointset(cfg.ref_path, format_for(cfg.ref_path, cfg.ref_format),
                                     SetLabel::Reference);
    double delta = 0.0;
    if (cfg.delta) {
        delta = *cfg.delta;
    } else if (cfg.delta_factor && cfg.epsilon) {
        delta = *cfg.delta_factor * *cfg.epsilon;
    } else {
        throw ValidationError("give --delta, or --delta-factor together with --epsilon");
    }
    if (cfg.epsilon && delta > *cfg.epsilon) {
        err << "warning: delta " << delta << " exceeds epsilon " << *cfg.epsilon
            << "; delta is normally chosen in [0, epsilon]\n";
    }
    const SparsifyResult res = sparsify(w, delta, compute_options(cfg));
    json j = to_json(res);
    j["n"] = w.size();
    const std::string text = j.dump(2) + "\n";
    if (!cfg.points_output.empty()) {
        save_pointset(cfg.points_output, FileFormat::Gcpc, apply_sparsification(w, res));
    }
    if (cfg.output.empty()) {
        out << text;
    } else {
        write_text(cfg.output, text);
        out << "kept " << res.kept.size() << " of " << w.size() << " points (delta = "
            << format_number(delta) << ")\n";
    }
    return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const PointSet r = load_pointset(cfg.ref_path, format_for(cfg.ref_path, cfg.ref_format),
                                     SetLabel::Reference);
    const PointSet e = load_pointset(cfg.eval_path, format_for(cfg.eval_path, cfg.eval_format),
                                     SetLabel::Evaluation);
    if (r.dim() != e.dim()) {
        throw ValidationError("reference dimension " + std::to_string(r.dim()) +
                              " differs from evaluation dimension " + std::to_string(e.dim()));
    }

    GeomcaParams params;
    params.eta_c = cfg.eta_c;
    params.eta_q = cfg.eta_q;
    params.compute = compute_options(cfg);
    if (cfg.epsilon) {
        params.epsilon = *cfg.epsilon;
    } else {
        const EpsilonEstimate est = estimate_epsilon(r, *cfg.percentile, *cfg.eps_k, cfg.seed);
        params.epsilon = est.epsilon;
        params.epsilon_estimate = est;
        params.seed = cfg.seed;
    }
    if (cfg.delta) params.delta = *cfg.delta;
    if (cfg.delta_factor) params.delta = *cfg.delta_factor * params.epsilon;
    if (params.delta && *params.delta > params.epsilon) {
        err << "warning: delta " << *params.delta << " exceeds epsilon " << params.epsilon
            << "; delta is normally chosen in [0, epsilon]\n";
    }

    GeomcaReport report = run_geomca(r, e, params);
    if (cfg.baseline == "ipr") {
        report.ipr = ipr(r, e, cfg.ipr_k, cfg.seed, params.compute);
    }
    if (!cfg.edges_output.empty()) {
        const PointSet rs = params.delta ? apply_sparsification(r, sparsify(r, *params.delta, params.compute)) : r;
        const PointSet es = params.delta ? apply_sparsification(e, sparsify(e, *params.delta, params.compute)) : e;
        std::ofstream edges(cfg.edges_output, std::ios::binary);
        if (!edges) throw ComputeError("cannot write '" + cfg.edges_output + "'");
        write_edges_jsonl(edges, build_epsilon_graph(rs, es, params.epsilon, params.compute));
    }

    const std::string text =
        to_json(report, {.include_members = cfg.emit_members}).dump(2) + "\n";
    std::ostream& global_line = cfg.output.empty() ? err : out;
    global_line << "Q_global = [precision " << format_number(report.precision) << ", recall "
                << format_number(report.recall) << ", network_consistency "
                << format_number(report.network.consistency) << ", network_quality "
                << format_number(report.network.quality) << "]\n";
    if (cfg.output.empty()) {
        out << text;
    } else {
        write_text(cfg.output, text);
    }
    return kExitOk;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> sizes;
    for (const double v : harness::parse_range(text)) {
        if (v < 1 || v != std::floor(v)) {
            throw ValidationError("sample sizes must be positive integers, got '" + text + "'");
        }
        sizes.push_back(static_cast<std::size_t>(v));
    }
    return sizes;
}

int cmd_experiment(const ExperimentConfig& xc, const RunConfig& cfg, std::ostream& out) {
    harness::ExperimentParams params;
    params.compute = compute_options(cfg);
    params.eps_seed = cfg.seed;
    params.subsample_seed = cfg.seed;
    params.eta_c = cfg.eta_c;
    params.eta_q = cfg.eta_q;
    params.with_ipr = cfg.baseline == "ipr";
    params.ipr_k = cfg.ipr_k;
    if (xc.name == "mode-truncation" || xc.name == "eta-sweep") {
        params = harness::ExperimentParams::mode_truncation_defaults();
        params.compute = compute_options(cfg);
        params.eps_seed = cfg.seed;
        params.subsample_seed = cfg.seed;
        params.with_ipr = cfg.baseline == "ipr";
        params.ipr_k = cfg.ipr_k;
        if (cfg.eta_c != 0.0) params.eta_c = cfg.eta_c;
        if (cfg.eta_q != 0.0) params.eta_q = cfg.eta_q;
    }
    if (cfg.percentile) params.percentile = *cfg.percentile;
    if (cfg.eps_k) params.eps_k = *cfg.eps_k;
    if (cfg.epsilon) params.epsilon = *cfg.epsilon;
    if (cfg.delta_factor) params.delta_factor = *cfg.delta_factor;

    harness::ClusterSpec spec;
    if (xc.per_class) {
        spec = harness::ClusterSpec::uniform(xc.classes, *xc.per_class, xc.separation, xc.seed);
    } else if (xc.classes == 12) {
        spec = harness::ClusterSpec::imbalanced12(xc.scale, xc.seed);
    } else {
        spec = harness::ClusterSpec::uniform(xc.classes, static_cast<std::size_t>(500 * xc.scale),
                                             xc.separation, xc.seed);
    }
    spec.dim = xc.dim;
    spec.stddev = xc.stddev;
    spec.separation = xc.separation;

    harness::SweepResult result;
    if (xc.name == "mode-truncation") {
        result = harness::mode_truncation(spec, std::min(xc.t_max, spec.num_classes - 1), params,
                                          xc.corrupted);
    } else if (xc.name == "eps-sweep") {
        if (xc.eps_range.empty()) throw ValidationError("eps-sweep needs --eps start:stop:step");
        const auto eps = harness::parse_range(xc.eps_range);
        result = harness::separability_sweep(spec, eps, xc.min_component_size, params);
    } else if (xc.name == "eta-sweep") {
        const auto grid = harness::parse_range(xc.eta_range);
        result = harness::eta_sweep(spec, std::min(xc.t, spec.num_classes - 1), grid, params,
                                    xc.corrupted);
    } else if (xc.name == "delta-eps-sweep") {
        const auto factors = harness::parse_range(xc.delta_factors);
        const auto percentiles = harness::parse_range(xc.percentiles);
        result = harness::delta_eps_sweep(spec, factors, percentiles, params);
    } else if (xc.name == "size-sweep") {
        const std::size_t available =
            std::min(std::accumulate(spec.train_counts.begin(), spec.train_counts.end(), std::size_t{0}),
                     std::accumulate(spec.holdout_counts.begin(), spec.holdout_counts.end(), std::size_t{0}));
        const auto sizes = xc.sizes.empty()
                               ? std::vector<std::size_t>{available / 10, available / 2, available}
                               : parse_sizes(xc.sizes);
        result = harness::sample_size_sweep(spec, sizes, params);
    } else {
        throw ValidationError("unknown experiment '" + xc.name +
                              "' (expected mode-truncation, eps-sweep, eta-sweep, "
                              "delta-eps-sweep or size-sweep)");
    }

    const fs::path dir(xc.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ComputeError("cannot create output directory '" + xc.out_dir + "'");
    const std::string stem = xc.prefix.empty() ? xc.name : xc.prefix;
    const fs::path json_path = dir / (stem + ".json");
    const fs::path csv_path = dir / (stem + ".csv");
    write_text(json_path.string(), harness::to_json(result).dump(2) + "\n");
    {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) throw ComputeError("cannot write '" + csv_path.string() + "'");
        harness::write_csv(csv, result);
    }
    out << result.experiment << ": " << result.rows.size() << " rows -> " << json_path.string()
        << ", " << csv_path.string() << "\n";
    for (const auto& check : result.checks) {
        out << "  check " << check.name << ": " << (check.passed ? "pass" : "FAIL") << "\n";
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"GeomCA: geometric evaluation of representation sets"};
    app.name("geomca");
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.threads = default_threads();
    ExperimentConfig xc;

    auto* est = app.add_subcommand("estimate-eps", "Estimate epsilon as a percentile of sampled distances in R");
    est->add_option("--ref", cfg.ref_path, "Reference point file")->required();
    est->add_option("--ref-format", cfg.ref_format, "csv or gcpc (default: from extension)");
    est->add_option("--p", cfg.percentile, "Percentile in (0, 100]")->required();
    est->add_option("--k", cfg.eps_k, "Sample size k (2k points are drawn)")->required();
    est->add_option("--seed", cfg.seed, "Sampler seed");
    est->add_option("--output,-o", cfg.output, "Also write the JSON here");

    auto* sp = app.add_subcommand("sparsify", "Greedy delta-sparsification of one point set");
    sp->add_option("--input", cfg.ref_path, "Point file")->required();
    sp->add_option("--format", cfg.ref_format, "csv or gcpc (default: from extension)");
    auto* sp_delta = sp->add_option("--delta", cfg.delta, "Absolute sparsification distance");
    auto* sp_factor = sp->add_option("--delta-factor", cfg.delta_factor, "delta as a factor of --epsilon");
    sp_delta->excludes(sp_factor);
    sp->add_option("--epsilon", cfg.epsilon, "Graph threshold (for --delta-factor and the delta > epsilon warning)");
    sp->add_option("--output,-o", cfg.output, "Write kept ids and cover map JSON here");
    sp->add_option("--write-points", cfg.points_output, "Write the kept points as GCPC");
    add_runtime_options(*sp, cfg);

    auto* ev = app.add_subcommand("evaluate", "Score an evaluation set against a reference set");
    ev->add_option("--ref", cfg.ref_path, "Reference point file")->required();
    ev->add_option("--eval", cfg.eval_path, "Evaluation point file")->required();
    ev->add_option("--ref-format", cfg.ref_format, "csv or gcpc (default: from extension)");
    ev->add_option("--eval-format", cfg.eval_format, "csv or gcpc (default: from extension)");
    auto* ev_eps = ev->add_option("--epsilon", cfg.epsilon, "Explicit distance threshold");
    auto* ev_p = ev->add_option("--p", cfg.percentile, "Estimate epsilon as this percentile");
    ev->add_option("--eps-k", cfg.eps_k, "Sample size for epsilon estimation");
    ev->add_option("--seed", cfg.seed, "Seed for epsilon estimation and IPR balancing");
    ev_eps->excludes(ev_p);
    auto* ev_delta = ev->add_option("--delta", cfg.delta, "Absolute sparsification distance");
    auto* ev_factor = ev->add_option("--delta-factor", cfg.delta_factor, "delta as a factor of epsilon, in (0, 1]");
    ev_delta->excludes(ev_factor);
    ev->add_option("--eta-c", cfg.eta_c, "Consistency threshold in [0, 1]");
    ev->add_option("--eta-q", cfg.eta_q, "Quality threshold in [0, 1]");
    ev->add_option("--baseline", cfg.baseline, "Add a baseline block (ipr)")->check(CLI::IsMember({"ipr"}));
    ev->add_option("--k", cfg.ipr_k, "IPR neighbourhood size");
    ev->add_option("--output,-o", cfg.output, "Report JSON path (default: stdout)");
    ev->add_flag("--members", cfg.emit_members, "Include member ids per component");
    ev->add_option("--edges", cfg.edges_output, "Write the edge list as JSON lines");
    ev->add_option("--max-edges", cfg.max_edges, "Abort when the graph exceeds this many edges");
    add_runtime_options(*ev, cfg);

    auto* ex = app.add_subcommand("experiment", "Run a synthetic sweep and write JSON + CSV");
    ex->add_option("name", xc.name,
                   "mode-truncation | eps-sweep | eta-sweep | delta-eps-sweep | size-sweep")
        ->required();
    ex->add_option("--classes", xc.classes, "Number of Gaussian classes");
    ex->add_option("--dim", xc.dim, "Dimension");
    ex->add_option("--stddev", xc.stddev, "Per-class standard deviation");
    ex->add_option("--separation", xc.separation, "Centre distance in units of stddev");
    ex->add_option("--scale", xc.scale, "Multiplier on the default class counts");
    ex->add_option("--per-class", xc.per_class, "Equal train/holdout count per class");
    ex->add_option("--seed", xc.seed, "Data seed");
    ex->add_option("--sample-seed", cfg.seed, "Seed for epsilon estimation and subsampling");
    ex->add_option("--t-max", xc.t_max, "Largest t for mode-truncation");
    ex->add_option("--t", xc.t, "Truncation level for eta-sweep");
    ex->add_flag("--corrupted", xc.corrupted, "Add random-sized subsets of each extra class");
    ex->add_option("--eps", xc.eps_range, "Epsilon values (start:stop:step or a,b,c)");
    ex->add_option("--etas", xc.eta_range, "Eta grid for eta-sweep");
    ex->add_option("--delta-factors", xc.delta_factors, "delta/epsilon factors for delta-eps-sweep");
    ex->add_option("--percentiles", xc.percentiles, "Epsilon percentiles for delta-eps-sweep");
    ex->add_option("--sizes", xc.sizes, "Subsample sizes for size-sweep");
    ex->add_option("--min-component-size", xc.min_component_size, "Large-component cutoff for eps-sweep");
    ex->add_option("--p", cfg.percentile, "Epsilon percentile");
    ex->add_option("--eps-k", cfg.eps_k, "Sample size for epsilon estimation");
    ex->add_option("--epsilon", cfg.epsilon, "Explicit epsilon");
    ex->add_option("--delta-factor", cfg.delta_factor, "delta as a factor of epsilon");
    ex->add_option("--eta-c", cfg.eta_c, "Consistency threshold");
    ex->add_option("--eta-q", cfg.eta_q, "Quality threshold");
    ex->add_option("--baseline", cfg.baseline, "Add IPR per row (ipr)")->check(CLI::IsMember({"ipr"}));
    ex->add_option("--k", cfg.ipr_k, "IPR neighbourhood size");
    ex->add_option("--out-dir", xc.out_dir, "Output directory");
    ex->add_option("--prefix", xc.prefix, "Output file stem (default: experiment name)");
    add_runtime_options(*ex, cfg);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
            err << sub->help();
        } else {
            err << app.help();
        }
        return kExitUsage;
    }

    try {
        if (cfg.delta_factor && !(*cfg.delta_factor > 0.0 && *cfg.delta_factor <= 1.0)) {
            throw ValidationError("--delta-factor must lie in (0, 1]");
        }
        if (*est) return cmd_estimate_eps(cfg, out);
        if (*sp) return cmd_sparsify(cfg, out, err);
        if (*ev) {
            if (cfg.epsilon.has_value() == cfg.percentile.has_value()) {
                throw ValidationError("give exactly one of --epsilon or --p (with --eps-k)");
            }
            if (cfg.percentile && !cfg.eps_k) throw ValidationError("--p requires --eps-k");
            return cmd_evaluate(cfg, out, err);
        }
        return cmd_experiment(xc, cfg, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitCompute;
    }
}

}  // namespace geomca::cli
