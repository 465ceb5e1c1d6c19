#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "geomca/errors.hpp"
#include "geomca/sparsify.hpp"

using namespace geomca;

TEST_SUITE("sparsify") {

TEST_CASE("greedy pass on 1-D points") {
    const PointSet w = PointSet::from_rows({{0.0}, {0.3}, {0.7}, {1.2}}, SetLabel::Reference);
    const SparsifyResult res = sparsify(w, 0.5);
    CHECK(res.kept == std::vector<std::size_t>{0, 2});
    REQUIRE(res.cover.size() == 2);
    CHECK(res.cover[0] == CoverEntry{1, 0});
    CHECK(res.cover[1] == CoverEntry{3, 2});
    CHECK(res.delta == 0.5);
    CHECK(apply_sparsification(w, res).size() == 2);
}

TEST_CASE("delta = 0 keeps every distinct point") {
    std::mt19937_64 rng(2);
    const PointSet w = fixtures::to_pointset(fixtures::blobs(rng, 200, 4, 3), SetLabel::Evaluation);
    const SparsifyResult res = sparsify(w, 0.0);
    CHECK(res.kept.size() == w.size());
    CHECK(res.cover.empty());
}

TEST_CASE("exact duplicates are always dropped onto the first copy") {
    const PointSet w = PointSet::from_rows({{0, 0}, {0, 0}, {5, 5}}, SetLabel::Reference);
    for (double delta : {0.0, 1.0, 100.0}) {
        const auto res = sparsify(w, delta);
        REQUIRE(!res.cover.empty());
        CHECK(res.cover.front() == CoverEntry{1, 0});
    }
}

TEST_CASE("separation, coverage and monotonicity on random sets") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> dims(1, 6);
    for (int trial = 0; trial < 30; ++trial) {
        const auto rows = fixtures::blobs(rng, 300, static_cast<std::size_t>(dims(rng)), 4);
        const PointSet w = fixtures::to_pointset(rows, SetLabel::Reference);
        std::size_t prev_kept = w.size() + 1;
        for (double delta : {0.0, 0.2, 0.5, 1.0, 2.0, 4.0}) {
            const SparsifyResult res = sparsify(w, delta);
            CHECK(res.kept.size() + res.cover.size() == w.size());
            for (std::size_t a = 0; a < res.kept.size(); ++a) {
                for (std::size_t b = a + 1; b < res.kept.size(); ++b) {
                    CHECK(oracle::naive_distance(rows[res.kept[a]], rows[res.kept[b]]) > delta);
                }
            }
            for (const auto& c : res.cover) {
                CHECK(c.keeper < c.dropped);
                CHECK(oracle::naive_distance(rows[c.dropped], rows[c.keeper]) <= delta);
            }
            CHECK(res.kept.size() <= prev_kept);
            prev_kept = res.kept.size();
        }
    }
}

TEST_CASE("first-fit kept counts can grow for a slightly larger delta") {
    // p1 blocks p2 and p3 at delta 1.0; at delta 1.1 p0 drops p1 and both survive.
    const PointSet w = PointSet::from_rows({{0.0, 0.0}, {1.05, 0.0}, {2.0, 0.0}, {1.05, 0.95}},
                                           SetLabel::Reference);
    CHECK(sparsify(w, 1.0).kept == std::vector<std::size_t>{0, 1});
    CHECK(sparsify(w, 1.1).kept == std::vector<std::size_t>{0, 2, 3});
}

TEST_CASE("parallel screening reproduces the serial pass") {
    std::mt19937_64 rng(21);
    const PointSet w = fixtures::to_pointset(fixtures::blobs(rng, 5000, 3, 6, 1.5), SetLabel::Reference);
    ComputeOptions serial;
    serial.threads = 1;
    for (unsigned threads : {2u, 3u, 8u}) {
        ComputeOptions par;
        par.threads = threads;
        CHECK(sparsify(w, 0.4, par) == sparsify(w, 0.4, serial));
    }
}

TEST_CASE("negative or non-finite delta is rejected") {
    const PointSet w = PointSet::from_rows({{0}}, SetLabel::Reference);
    CHECK_THROWS_AS(sparsify(w, -0.1), ValidationError);
    CHECK_THROWS_AS(sparsify(w, std::numeric_limits<double>::infinity()), ValidationError);
}

}
