// Acceptance suite: one PASS/FAIL line per criterion. Optional arguments
// select criteria by number.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "geomca/epsgraph.hpp"
#include "geomca/harness.hpp"
#include "geomca/ipr.hpp"
#include "geomca/random.hpp"
#include "geomca/report_json.hpp"
#include "geomca/scores.hpp"
#include "geomca/sparsify.hpp"
#include "oracle.hpp"

using namespace geomca;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

class Expect {
public:
    void operator()(bool ok, const std::string& what) {
        if (!ok && failures_++ < 5) first_.push_back(what);
    }
    Outcome outcome(std::string summary) const {
        if (failures_ == 0) return {true, std::move(summary)};
        std::ostringstream s;
        s << failures_ << " violation(s); first: ";
        for (std::size_t i = 0; i < first_.size(); ++i) s << (i ? "; " : "") << first_[i];
        return {false, s.str()};
    }

private:
    std::size_t failures_ = 0;
    std::vector<std::string> first_;
};

bool close(double a, double b) { return std::fabs(a - b) <= 1e-12; }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::set<std::vector<std::uint32_t>> graph_partition(const EpsilonGraph& g) {
    std::set<std::vector<std::uint32_t>> parts;
    for (std::size_t c = 0; c < g.num_components(); ++c) {
        const auto members = g.component(c);
        parts.emplace(members.begin(), members.end());
    }
    return parts;
}

Outcome formula_oracle() {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> dims(1, 16), sizes(1, 100), centers(1, 5);
    std::uniform_real_distribution<double> eta(0.0, 0.95);
    Expect expect;
    std::size_t components = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto dim = static_cast<std::size_t>(dims(rng));
        const auto nc = static_cast<std::size_t>(centers(rng));
        const auto rr = fixtures::blobs(rng, static_cast<std::size_t>(sizes(rng)), dim, nc);
        const auto ee = fixtures::blobs(rng, static_cast<std::size_t>(sizes(rng)), dim, nc);
        oracle::Rows all = rr;
        all.insert(all.end(), ee.begin(), ee.end());
        GeomcaParams params;
        params.epsilon = fixtures::pick_epsilon(rng, all);
        params.eta_c = trial % 4 == 0 ? 0.0 : eta(rng);
        params.eta_q = trial % 4 == 0 ? 0.0 : eta(rng);
        const auto rep = run_geomca(fixtures::to_pointset(rr, SetLabel::Reference),
                                    fixtures::to_pointset(ee, SetLabel::Evaluation), params);
        const auto ref = oracle::geomca(rr, ee, params.epsilon, params.eta_c, params.eta_q);
        const std::string tag = "trial " + std::to_string(trial);
        if (rep.components.size() != ref.components.size()) {
            expect(false, tag + ": component count");
            continue;
        }
        for (std::size_t c = 0; c < ref.components.size(); ++c) {
            const auto& got = rep.components[c];
            const auto& want = ref.components[c];
            expect(got.stats.v_r == static_cast<std::size_t>(want.v_r) &&
                       got.stats.v_e == static_cast<std::size_t>(want.v_e) &&
                       got.stats.e_rr == static_cast<std::size_t>(want.e_rr) &&
                       got.stats.e_ee == static_cast<std::size_t>(want.e_ee) &&
                       got.stats.e_het == static_cast<std::size_t>(want.e_het),
                   tag + ": counts of component " + std::to_string(c));
            expect(close(got.score.consistency, want.c), tag + ": c of component " + std::to_string(c));
            expect(close(got.score.quality, want.q), tag + ": q of component " + std::to_string(c));
        }
        components += ref.components.size();
        expect(close(rep.network.consistency, ref.c_net), tag + ": network consistency");
        expect(close(rep.network.quality, ref.q_net), tag + ": network quality");
        expect(close(rep.precision, ref.precision), tag + ": precision");
        expect(close(rep.recall, ref.recall), tag + ": recall");
        expect(rep.num_edges == static_cast<std::size_t>(ref.edges), tag + ": edge count");
    }
    return expect.outcome("200 fixtures, " + std::to_string(components) + " components match");
}

Outcome partition_oracle() {
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<int> dims(1, 16), sizes(1, 250), centers(1, 8);
    Expect expect;
    for (int trial = 0; trial < 100; ++trial) {
        const auto dim = static_cast<std::size_t>(dims(rng));
        const auto nc = static_cast<std::size_t>(centers(rng));
        const auto rr = fixtures::blobs(rng, static_cast<std::size_t>(sizes(rng)), dim, nc);
        const auto ee = fixtures::blobs(rng, static_cast<std::size_t>(sizes(rng)), dim, nc);
        oracle::Rows all = rr;
        all.insert(all.end(), ee.begin(), ee.end());
        const double eps = fixtures::pick_epsilon(rng, all);
        const auto g = build_epsilon_graph(fixtures::to_pointset(rr, SetLabel::Reference),
                                           fixtures::to_pointset(ee, SetLabel::Evaluation), eps);
        const auto parts = graph_partition(g);
        const std::string tag = "trial " + std::to_string(trial) + " (n = " + std::to_string(all.size()) + ")";
        expect(parts == oracle::closure_partition(all, eps), tag + ": transitive closure");
        expect(parts == oracle::dbscan_min_pts_1(all, eps), tag + ": DBSCAN");
    }
    return expect.outcome("100 fixtures up to 500 points, exact set equality with closure and DBSCAN");
}

Outcome mode_truncation_trend() {
    const auto result = harness::mode_truncation(harness::ClusterSpec::imbalanced12(1.0, 1), 11,
                                                 harness::ExperimentParams::mode_truncation_defaults());
    Expect expect;
    const auto& rows = result.rows;
    for (std::size_t t = 1; t <= 6; ++t) {
        expect(rows[t].recall >= rows[t - 1].recall, "recall decreases at t = " + std::to_string(t));
    }
    expect(rows[11].precision < rows[6].precision, "precision at t = 11 not below t = 6");
    expect(rows[6].precision >= 0.9, "precision at t = 6 is " + fmt(rows[6].precision));
    expect(rows[6].recall >= 0.9, "recall at t = 6 is " + fmt(rows[6].recall));
    return expect.outcome("eps = " + fmt(rows[0].epsilon) + "; t=0 P/R " + fmt(rows[0].precision) + "/" +
                          fmt(rows[0].recall) + ", t=6 P/R " + fmt(rows[6].precision) + "/" +
                          fmt(rows[6].recall) + ", t=11 P " + fmt(rows[11].precision));
}

Outcome separability_plateau() {
    const auto spec = harness::ClusterSpec::uniform(7, 200, 20.0, 1);
    const auto eps = harness::parse_range("0.5:15.5:1");
    const auto result = harness::separability_sweep(spec, eps, 100);
    const double lo = eps.front(), hi = eps.back();
    Expect expect;
    std::string counts;
    for (const auto& row : result.rows) {
        counts += (counts.empty() ? "" : " ") + std::to_string(row.num_large_components);
        const double pos = (row.epsilon - lo) / (hi - lo);
        if (pos >= 0.2 && pos <= 0.8) {
            expect(row.num_large_components == 7, "eps " + fmt(row.epsilon) + " has " +
                                                      std::to_string(row.num_large_components));
        }
    }
    expect(result.rows.front().num_large_components == 0, "low end not 0");
    expect(result.rows.back().num_large_components == 1, "high end not 1");
    return expect.outcome("eps 0.5..15.5 counts: " + counts);
}

void check_eta_grid(const EpsilonGraph& graph, const std::string& name, Expect& expect) {
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    const auto components = get_connected_components(graph);
    const auto local = local_scores(components);
    std::vector<std::vector<PrecisionRecall>> pr(grid.size());
    for (std::size_t a = 0; a < grid.size(); ++a) {
        for (const double q : grid) pr[a].push_back(precision_recall(components, local, grid[a], q));
    }
    for (std::size_t a = 0; a < grid.size(); ++a) {
        for (std::size_t b = 0; b < grid.size(); ++b) {
            const auto& cur = pr[a][b];
            if (a > 0) {
                expect(cur.precision <= pr[a - 1][b].precision && cur.recall <= pr[a - 1][b].recall,
                       name + ": increase along eta_c at " + fmt(grid[a]));
            }
            if (b > 0) {
                expect(cur.precision <= pr[a][b - 1].precision && cur.recall <= pr[a][b - 1].recall,
                       name + ": increase along eta_q at " + fmt(grid[b]));
            }
            if (a == grid.size() - 1 || b == grid.size() - 1) {
                expect(cur.precision == 0.0 && cur.recall == 0.0, name + ": nonzero at eta = 1");
            }
        }
    }
}

Outcome eta_monotonicity() {
    Expect expect;
    std::mt19937_64 rng(505);
    std::uniform_int_distribution<int> dims(1, 10), sizes(5, 300);
    int fixtures_run = 0;
    for (int trial = 0; trial < 30; ++trial, ++fixtures_run) {
        const auto dim = static_cast<std::size_t>(dims(rng));
        const auto rr = fixtures::blobs(rng, static_cast<std::size_t>(sizes(rng)), dim, 4);
        const auto ee = fixtures::blobs(rng, static_cast<std::size_t>(sizes(rng)), dim, 4);
        oracle::Rows all = rr;
        all.insert(all.end(), ee.begin(), ee.end());
        const auto g = build_epsilon_graph(fixtures::to_pointset(rr, SetLabel::Reference),
                                           fixtures::to_pointset(ee, SetLabel::Evaluation),
                                           fixtures::pick_epsilon(rng, all));
        check_eta_grid(g, "random " + std::to_string(trial), expect);
    }
    const auto data = harness::generate_clusters(harness::ClusterSpec::imbalanced12(1.0, 1));
    const PointSet r = data.train.first_classes(7);
    const double eps = harness::resolve_epsilon(r, harness::ExperimentParams::mode_truncation_defaults());
    for (const std::size_t t : {3, 6, 11}) {
        const PointSet e = data.holdout.first_classes(t + 1);
        const auto rs = apply_sparsification(r, sparsify(r, eps / 2));
        const auto es = apply_sparsification(e, sparsify(e, eps / 2));
        check_eta_grid(build_epsilon_graph(rs, es, eps), "truncation t = " + std::to_string(t), expect);
        ++fixtures_run;
    }
    return expect.outcome(std::to_string(fixtures_run) + " fixtures, 11 x 11 grid");
}

Outcome delta_equals_epsilon_law() {
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<int> dims(1, 12), sizes(2, 300), centers(1, 5);
    Expect expect;
    std::size_t with_edges = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto dim = static_cast<std::size_t>(dims(rng));
        const auto nc = static_cast<std::size_t>(centers(rng));
        const auto rr = fixtures::blobs(rng, static_cast<std::size_t>(sizes(rng)), dim, nc);
        const auto ee = fixtures::blobs(rng, static_cast<std::size_t>(sizes(rng)), dim, nc);
        oracle::Rows all = rr;
        all.insert(all.end(), ee.begin(), ee.end());
        GeomcaParams params;
        params.epsilon = fixtures::pick_epsilon(rng, all) * 3.0;
        params.delta = params.epsilon;
        const auto rep = run_geomca(fixtures::to_pointset(rr, SetLabel::Reference),
                                    fixtures::to_pointset(ee, SetLabel::Evaluation), params);
        const std::string tag = "trial " + std::to_string(trial);
        for (const auto& comp : rep.components) {
            if (comp.stats.e_total == 0) continue;
            expect(comp.score.quality == 1.0, tag + ": component q = " + fmt(comp.score.quality));
            expect(comp.stats.e_rr == 0 && comp.stats.e_ee == 0, tag + ": homogeneous edge");
        }
        if (rep.num_edges > 0) {
            ++with_edges;
            expect(rep.network.quality == 1.0, tag + ": network q = " + fmt(rep.network.quality));
        }
    }
    return expect.outcome("50 fixtures, " + std::to_string(with_edges) + " with edges");
}

Outcome sparsification_invariants() {
    std::mt19937_64 rng(707);
    std::uniform_int_distribution<int> dims(1, 12), sizes(1, 400), centers(1, 6);
    Expect expect;
    const std::vector<double> deltas{0.0, 0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
    for (int trial = 0; trial < 100; ++trial) {
        const auto rows = fixtures::blobs(rng, static_cast<std::size_t>(sizes(rng)),
                                          static_cast<std::size_t>(dims(rng)),
                                          static_cast<std::size_t>(centers(rng)));
        const PointSet w = fixtures::to_pointset(rows, SetLabel::Reference);
        const std::string tag = "trial " + std::to_string(trial);
        std::size_t prev = rows.size();
        for (const double delta : deltas) {
            const auto res = sparsify(w, delta);
            std::vector<bool> kept(rows.size(), false);
            for (const auto k : res.kept) kept[k] = true;
            for (std::size_t a = 0; a < res.kept.size(); ++a) {
                for (std::size_t b = a + 1; b < res.kept.size(); ++b) {
                    expect(oracle::naive_distance(rows[res.kept[a]], rows[res.kept[b]]) > delta,
                           tag + ": kept pair within delta " + fmt(delta));
                }
            }
            for (const auto& c : res.cover) {
                expect(kept[c.keeper] && !kept[c.dropped], tag + ": bad cover entry");
                expect(oracle::naive_distance(rows[c.dropped], rows[c.keeper]) <= delta,
                       tag + ": dropped point beyond delta " + fmt(delta));
            }
            expect(res.kept.size() + res.cover.size() == rows.size(), tag + ": points lost");
            expect(res.kept.size() <= prev, tag + ": kept count grows at delta " + fmt(delta));
            prev = res.kept.size();
        }
    }
    return expect.outcome("100 fixtures x 8 deltas");
}

Outcome sample_size_robustness() {
    const auto spec = harness::ClusterSpec::uniform(2, 2500, 10.0, 1);
    const std::vector<std::size_t> sizes{500, 1000, 2000, 5000};
    const auto result = harness::sample_size_sweep(spec, sizes,
                                                   harness::ExperimentParams::mode_truncation_defaults());
    const auto& full = result.rows.back();
    Expect expect;
    std::string summary;
    for (const auto& row : result.rows) {
        const double dp = std::fabs(row.precision - full.precision);
        const double dr = std::fabs(row.recall - full.recall);
        summary += (summary.empty() ? "" : ", ") + fmt(row.axis) + ": dP " + fmt(dp) + " dR " + fmt(dr);
        expect(dp <= 0.15, "precision drift " + fmt(dp) + " at size " + fmt(row.axis));
        expect(dr <= 0.15, "recall drift " + fmt(dr) + " at size " + fmt(row.axis));
    }
    return expect.outcome(summary);
}

Outcome ipr_oracle() {
    std::mt19937_64 rng(909);
    std::uniform_int_distribution<int> dims(1, 16), sizes(4, 500);
    Expect expect;
    for (int trial = 0; trial < 50; ++trial) {
        const auto dim = static_cast<std::size_t>(dims(rng));
        const auto n = static_cast<std::size_t>(sizes(rng));
        const auto rr = fixtures::blobs(rng, n, dim, 3);
        const auto ee = fixtures::blobs(rng, n, dim, 3);
        const auto r = fixtures::to_pointset(rr, SetLabel::Reference);
        const auto e = fixtures::to_pointset(ee, SetLabel::Evaluation);
        ComputeOptions opts;
        opts.tile_rows = 1 + trial % 64;
        const auto got = ipr(r, e, 3, static_cast<std::uint64_t>(trial), opts);
        const auto want = oracle::ipr(rr, ee, 3);
        const std::string tag = "trial " + std::to_string(trial);
        expect(got.precision == want.precision, tag + ": precision");
        expect(got.recall == want.recall, tag + ": recall");

        const auto same = ipr(r, r.relabeled(SetLabel::Evaluation), 3, 1, opts);
        expect(same.precision == 1.0 && same.recall == 1.0, tag + ": E = R not 1");
    }
    std::uniform_int_distribution<int> big(200, 600), small(10, 150);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rr = fixtures::blobs(rng, static_cast<std::size_t>(big(rng)), 4, 2);
        const auto r = fixtures::to_pointset(rr, SetLabel::Reference);
        const auto sub = r.subset(sample_without_replacement(r.size(), static_cast<std::size_t>(small(rng)), 3));
        const auto s = ipr(r, sub.relabeled(SetLabel::Evaluation), 3, 3);
        expect(s.balanced_size == sub.size(), "balanced size");
        expect(s.precision == 1.0, "balanced E inside R: precision " + fmt(s.precision));
    }
    return expect.outcome("50 fixtures exact, E = R gives 1/1");
}

Outcome determinism() {
    const auto data = harness::generate_clusters(harness::ClusterSpec::imbalanced12(0.5, 3));
    const PointSet r = data.train.first_classes(7);
    const PointSet e = data.holdout.points;
    std::string reference;
    Expect expect;
    for (const unsigned threads : {1u, 2u, 8u, 1u, 8u}) {
        GeomcaParams params;
        params.epsilon_estimate = estimate_epsilon(r, 1.0, 500, 11);
        params.epsilon = params.epsilon_estimate->epsilon;
        params.delta = params.epsilon / 2;
        params.seed = 11;
        params.eta_c = 0.75;
        params.eta_q = 0.45;
        params.compute.threads = threads;
        params.compute.tile_rows = threads == 8 ? 37 : 256;
        GeomcaReport rep = run_geomca(r, e, params);
        rep.ipr = ipr(r, e, 3, 11, params.compute);
        const std::string text = to_json(rep, {.include_members = true}).dump();
        if (reference.empty()) {
            reference = text;
        } else {
            expect(text == reference, "report differs at " + std::to_string(threads) + " threads");
        }
    }
    return expect.outcome("5 runs (1, 2, 8, 1, 8 threads), " + std::to_string(reference.size()) +
                          " identical bytes");
}

long peak_rss_kb() {
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    return usage.ru_maxrss;
}

Outcome performance_smoke() {
    harness::ClusterSpec spec = harness::ClusterSpec::uniform(10, 500, 10.0, 5);
    spec.dim = 128;
    const auto data = harness::generate_clusters(spec);
    const PointSet& r = data.train.points;
    const PointSet& e = data.holdout.points;
    const double eps = estimate_epsilon(r, 1.0, 1000, 0).epsilon;
    const auto start = std::chrono::steady_clock::now();
    const auto graph = build_epsilon_graph(r, e, eps);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double rss_mb = static_cast<double>(peak_rss_kb()) / 1024.0;
    Expect expect;
    expect(r.size() + e.size() == 10000 && r.dim() == 128, "fixture shape");
    expect(graph.edges().size() < 1'000'000, "edge count " + std::to_string(graph.edges().size()));
    expect(seconds < 60.0, "build took " + fmt(seconds) + " s");
    expect(rss_mb < 2048.0, "peak RSS " + fmt(rss_mb) + " MB");
    return expect.outcome("10000 x 128, " + std::to_string(graph.edges().size()) + " edges, " +
                          fmt(seconds) + " s, peak RSS " + fmt(rss_mb) + " MB");
}

struct Criterion {
    int id;
    const char* name;
    double time_limit_s;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "formula oracle", 60.0, formula_oracle},
        {2, "component partition oracle", 0.0, partition_oracle},
        {3, "mode truncation trend", 120.0, mode_truncation_trend},
        {4, "separability plateau", 120.0, separability_plateau},
        {5, "eta monotonicity", 0.0, eta_monotonicity},
        {6, "delta = epsilon quality law", 0.0, delta_equals_epsilon_law},
        {7, "sparsification invariants", 0.0, sparsification_invariants},
        {8, "sample-size robustness", 120.0, sample_size_robustness},
        {9, "IPR baseline oracle", 0.0, ipr_oracle},
        {10, "determinism across thread counts", 0.0, determinism},
        {11, "performance smoke", 0.0, performance_smoke},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& ex) {
            out = {false, std::string("exception: ") + ex.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit_s > 0.0 && seconds >= c.time_limit_s) {
            out.passed = false;
            out.detail += "; exceeded " + fmt(c.time_limit_s) + " s";
        }
        failed += !out.passed;
        std::cout << (out.passed ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << " (" << fmt(seconds)
                  << " s): " << out.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
