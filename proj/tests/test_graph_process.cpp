#include <cmath>
#include <map>

#include <stdexcept>
#include <doctest.h>

#include "dproc/graph_process.hpp"
#include "dproc/oracle.hpp"

using dproc::DegreeCappedGraph;
using dproc::GraphProcess;
using dproc::RunOptions;
using dproc::TrajectoryRecord;

TEST_SUITE("graph-process") {

TEST_CASE("construction") {
    GraphProcess p52(5, 2, 1);
    CHECK(p52.graph().max_edges() == 5);
    CHECK(p52.graph().unsaturated_count() == 5);
    CHECK(p52.graph().edges() == 0);
    CHECK(GraphProcess(2, 2, 1).graph().max_edges() == 2);
    CHECK(GraphProcess(3, 3, 1).graph().max_edges() == 4);
    CHECK_THROWS_AS(GraphProcess(5, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(GraphProcess(1, 2, 1), std::invalid_argument);
}

TEST_CASE("two vertices: one forced edge, then stuck") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        GraphProcess p(2, 2, seed);
        const auto edge = p.step();
        REQUIRE(edge.has_value());
        CHECK(std::min(edge->u, edge->v) == 0);
        CHECK(std::max(edge->u, edge->v) == 1);
        // Both endpoints still unsaturated, but the pair is used.
        CHECK(p.graph().unsaturated_count() == 2);
        CHECK_FALSE(p.step().has_value());
        const auto outcome = classify_final(p.graph());
        CHECK_FALSE(outcome.saturated);
        CHECK(outcome.unsaturated_degrees == std::vector<int>{1, 1});
        CHECK(outcome.final_edges == 1);
    }
}

TEST_CASE("first step is uniform over the three pairs at n=3") {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> counts;
    const std::uint64_t trials = 1'000'000;
    GraphProcess p(3, 2, 0);
    for (std::uint64_t i = 0; i < trials; ++i) {
        p.reset(dproc::trial_seed(99, i));
        const auto edge = p.step();
        REQUIRE(edge.has_value());
        ++counts[{std::min(edge->u, edge->v), std::max(edge->u, edge->v)}];
    }
    REQUIRE(counts.size() == 3);
    const double sigma = std::sqrt((1.0 / 3) * (2.0 / 3) * trials);
    for (const auto& [pair, count] : counts)
        CHECK(std::abs(static_cast<double>(count) - trials / 3.0) <= 5.0 * sigma);
}

TEST_CASE("n=3 always terminates in the triangle") {
    GraphProcess p(3, 2, 0);
    for (std::uint64_t i = 0; i < 300; ++i) {
        p.reset(dproc::trial_seed(7, i));
        const TrajectoryRecord rec = p.run();
        CHECK(rec.final_edges == 3);
        CHECK(rec.saturated);
        CHECK(rec.final_degree_counts == std::vector<std::int64_t>{0, 0, 3});
    }
}

TEST_CASE("n=4 terminal edge count matches the exact law") {
    const std::uint64_t trials = 100'000;
    std::uint64_t three = 0;
    GraphProcess p(4, 2, 0);
    for (std::uint64_t i = 0; i < trials; ++i) {
        p.reset(dproc::trial_seed(31, i));
        const TrajectoryRecord rec = p.run();
        if (rec.final_edges == 3) {
            ++three;
            CHECK_FALSE(rec.saturated);
        } else {
            CHECK(rec.final_edges == 4);
            CHECK(rec.saturated);
        }
    }
    const double p3 = 4.0 / 15.0;
    const double sigma = std::sqrt(p3 * (1 - p3) * trials);
    CHECK(std::abs(static_cast<double>(three) - p3 * trials) <= 5.0 * sigma);
}

TEST_CASE("classify_final rejects a live state and accepts a near-regular one") {
    DegreeCappedGraph empty(4, 2);
    CHECK_THROWS_AS(classify_final(empty), std::logic_error);

    // Degrees (3,3,3,3,2): a 5-cycle with two chords; only vertex 4 is
    // unsaturated, so the process is stuck and counts as saturated.
    DegreeCappedGraph g(5, 3);
    for (const auto& [u, v] : {std::pair{0u, 1u}, {1u, 2u}, {2u, 3u}, {3u, 4u}, {4u, 0u},
                               {0u, 2u}, {1u, 3u}})
        g.add_edge(u, v);
    const auto outcome = classify_final(g);
    CHECK(outcome.saturated);
    CHECK(outcome.unsaturated_degrees == std::vector<int>{2});
}

TEST_CASE("degree counts") {
    DegreeCappedGraph empty(6, 2);
    CHECK(empty.degree_counts() == std::vector<std::int64_t>{6, 0, 0});

    DegreeCappedGraph triangle(3, 2);
    triangle.add_edge(0, 1);
    triangle.add_edge(1, 2);
    triangle.add_edge(0, 2);
    CHECK(triangle.degree_counts() == std::vector<std::int64_t>{0, 0, 3});

    DegreeCappedGraph path(3, 2);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK(path.degree_counts() == std::vector<std::int64_t>{0, 2, 1});
}

TEST_CASE("edge classes") {
    // Triangle plus an isolated vertex: only vertex 3 is unsaturated.
    DegreeCappedGraph g(4, 2);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    auto counts = g.edge_class_counts();
    CHECK(counts.unsaturated_edges == 0);
    CHECK(counts.critical_edges == 0);
    CHECK(counts.critical_vertices == 1);  // the isolated vertex has degree 0

    DegreeCappedGraph disjoint(4, 2);
    disjoint.add_edge(0, 1);
    disjoint.add_edge(2, 3);
    counts = disjoint.edge_class_counts();
    CHECK(counts.unsaturated_edges == 2);
    CHECK(counts.critical_edges == 0);

    DegreeCappedGraph empty(7, 2);
    CHECK(empty.edge_class_counts().critical_vertices == 7);

    // A critical edge needs one endpoint of degree <= d-2.
    DegreeCappedGraph h(4, 3);
    h.add_edge(0, 1);
    counts = h.edge_class_counts();
    CHECK(counts.unsaturated_edges == 1);
    CHECK(counts.critical_edges == 1);
}

TEST_CASE("invariants hold along full runs") {
    for (std::uint32_t d : {2u, 3u, 5u}) {
        GraphProcess p(200, d, 0);
        for (std::uint64_t i = 0; i < 20; ++i) {
            p.reset(dproc::trial_seed(1000 + d, i));
            RunOptions opts;
            opts.check_invariants = true;
            const TrajectoryRecord rec = p.run(opts);
            CHECK(rec.violations.unsat_bounds == 0);
            p.graph().validate();
            // Stuck means the unsaturated vertices form a clique of size <= d.
            const auto& unsat = p.graph().unsaturated_vertices();
            CHECK(unsat.size() <= d);
            for (std::size_t a = 0; a < unsat.size(); ++a)
                for (std::size_t b = a + 1; b < unsat.size(); ++b)
                    CHECK(p.graph().has_edge(unsat[a], unsat[b]));
            const auto outcome = classify_final(p.graph());
            CHECK(outcome.final_edges == rec.final_edges);
        }
    }
}

TEST_CASE("identical seeds give identical trajectories") {
    GraphProcess a(100, 3, 12345);
    GraphProcess b(100, 3, 12345);
    for (;;) {
        const auto ea = a.step();
        const auto eb = b.step();
        REQUIRE(ea.has_value() == eb.has_value());
        if (!ea) break;
        CHECK(ea->u == eb->u);
        CHECK(ea->v == eb->v);
    }
    CHECK(a.graph().edges() == b.graph().edges());
}

TEST_CASE("checkpoint rows and last_below_cap") {
    {
        GraphProcess p(2, 2, 5);
        const TrajectoryRecord rec = p.run();
        REQUIRE(rec.last_below_cap.size() == 1);
        CHECK(rec.last_below_cap[0] == 0);  // after the edge, min degree is 1
    }
    {
        GraphProcess p(3, 2, 5);
        const TrajectoryRecord rec = p.run();
        CHECK(rec.last_below_cap[0] == 1);  // after two edges the path covers all
    }
    {
        GraphProcess p(50, 2, 5);
        RunOptions opts;
        opts.checkpoints_s = {0, 10, 25};
        opts.checkpoints_t = {5, 0};
        const TrajectoryRecord rec = p.run(opts);
        REQUIRE(rec.checkpoints.size() == 5);
        for (const auto& row : rec.checkpoints) {
            if (!row.reached) {
                CHECK(row.t < 5);  // only very small deficits can be unreached
                continue;
            }
            CHECK(row.s + row.t == p.graph().max_edges());
            std::int64_t total = 0, weighted = 0;
            for (std::size_t i = 0; i < row.degree_counts.size(); ++i) {
                total += row.degree_counts[i];
                weighted += static_cast<std::int64_t>(i) * row.degree_counts[i];
            }
            CHECK(total == 50);
            CHECK(weighted == 2 * row.s);
        }
    }
}

TEST_CASE("checkpoint bounds are validated") {
    GraphProcess p(10, 2, 1);
    RunOptions opts;
    opts.checkpoints_s = {11};
    CHECK_THROWS_AS(p.run(opts), std::invalid_argument);
    RunOptions opts2;
    opts2.checkpoints_t = {-1};
    CHECK_THROWS_AS(p.run(opts2), std::invalid_argument);
}

}  // TEST_SUITE
