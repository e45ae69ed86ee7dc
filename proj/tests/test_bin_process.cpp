#include <cmath>
#include <map>

#include <stdexcept>
#include <doctest.h>

#include "dproc/bin_process.hpp"
#include "dproc/oracle.hpp"

using dproc::BallEvent;
using dproc::BinMode;
using dproc::BinProcess;
using dproc::RunOptions;
using dproc::TrajectoryRecord;

namespace {

// Sum over bins of min(balls, d) recomputed from the reported Y vector:
// dn - sum_{i<d} (d-i) Y_i.
std::int64_t capped_from_y(const std::vector<std::int64_t>& y, std::uint32_t n, std::uint32_t d) {
    std::int64_t result = static_cast<std::int64_t>(n) * d;
    for (std::uint32_t i = 0; i < d; ++i) result -= (d - i) * y[i];
    return result;
}

}  // namespace

TEST_SUITE("bin-process") {

TEST_CASE("first balls classify as waiting, then pair up") {
    BinProcess p(4, 2, 1, BinMode::faithful);
    const BallEvent first = p.drop_into(2);
    CHECK(first.kind == BallEvent::Kind::waiting);
    CHECK(p.waiting_bin() == 2u);
    CHECK(p.ball_count() == 1);

    SUBCASE("same bin makes a bad pair") {
        const BallEvent second = p.drop_into(2);
        CHECK(second.kind == BallEvent::Kind::bad_pair);
        CHECK(p.bad_balls() == 2);
        CHECK(p.good_balls() == 0);
        CHECK(p.deficit() == p.graph().max_edges());
        CHECK(p.bad_in_unsaturated() == 2);
    }
    SUBCASE("distinct unused bins make a good pair and an edge") {
        const BallEvent second = p.drop_into(0);
        CHECK(second.kind == BallEvent::Kind::good_pair);
        CHECK(p.good_balls() == 2);
        CHECK(p.graph().has_edge(0, 2));
        CHECK(p.deficit() == p.graph().max_edges() - 1);
    }
}

TEST_CASE("a repeated bin pair is bad") {
    BinProcess p(4, 2, 1, BinMode::faithful);
    p.drop_into(0);
    p.drop_into(1);  // good pair, edge {0,1}
    p.drop_into(0);
    const BallEvent repeat = p.drop_into(1);
    CHECK(repeat.kind == BallEvent::Kind::bad_pair);
    CHECK(p.bad_balls() == 2);
    CHECK(p.bad_pairs_by_deficit().at(p.deficit()) == 1);
}

TEST_CASE("y counts and the occupancy edge bound") {
    BinProcess p(6, 2, 1, BinMode::faithful);
    CHECK(p.y_counts() == std::vector<std::int64_t>{6, 0, 0});
    CHECK(p.l_of_m() == 0.0);
    p.drop_into(3);
    CHECK(p.y_counts() == std::vector<std::int64_t>{5, 1, 0});

    // Random continuation: Y partitions the bins and both expressions for
    // the occupancy bound stay equal and nondecreasing.
    double last_l = 0.0;
    for (int i = 0; i < 400; ++i) {
        p.drop_ball();
        const auto y = p.y_counts();
        std::int64_t bins = 0;
        for (std::int64_t c : y) bins += c;
        CHECK(bins == 6);
        CHECK(p.capped_occupancy() == capped_from_y(y, 6, 2));
        CHECK(p.l_of_m() >= last_l);
        last_l = p.l_of_m();
        CHECK(p.good_balls() + p.bad_balls() + (p.waiting_bin() ? 1 : 0) +
                  p.unnumbered_balls() ==
              p.ball_count());
        if (p.graph().stuck()) break;
    }
}

TEST_CASE("occupancy identity carries an overflow term once bad balls stack up") {
    // Scripted trace on 3 bins, cap 2: two bad balls in bin 0, a good pair
    // {0,1}, two bad balls in bin 2, then a good pair {2,0}.
    BinProcess p(3, 2, 1, BinMode::faithful);
    p.drop_into(0);
    CHECK(p.drop_into(0).kind == BallEvent::Kind::bad_pair);
    p.drop_into(0);
    CHECK(p.drop_into(1).kind == BallEvent::Kind::good_pair);
    p.drop_into(2);
    CHECK(p.drop_into(2).kind == BallEvent::Kind::bad_pair);
    p.drop_into(2);  // waiting; bins 0 and 2 now both hold 3 balls while unsaturated

    CHECK(p.ball_count() == 7);
    CHECK(p.capped_occupancy() == 5);
    CHECK(p.bad_in_unsaturated() == 4);
    CHECK(p.unsaturated_overflow() == 2);
    const std::int64_t s = p.graph().edges();
    CHECK(s == 1);
    // Without the overflow term the identity misses by exactly that amount.
    CHECK(2 * s != p.capped_occupancy() - p.bad_in_unsaturated() - 1);
    CHECK(2 * s == p.capped_occupancy() - p.bad_in_unsaturated() - 1 + p.unsaturated_overflow());

    CHECK(p.drop_into(0).kind == BallEvent::Kind::good_pair);
    CHECK(2 * p.graph().edges() ==
          p.capped_occupancy() - p.bad_in_unsaturated() - 0 + p.unsaturated_overflow());
}

TEST_CASE("occupancy-vs-degree gap is bounded by bad balls") {
    for (BinMode mode : {BinMode::faithful, BinMode::accelerated}) {
        BinProcess p(30, 3, 17, mode);
        for (int step = 0; step < 2000; ++step) {
            if (mode == BinMode::faithful)
                p.drop_ball();
            else
                p.accelerated_step();
            const auto y = p.y_counts();
            for (std::uint32_t i = 0; i < 3; ++i)
                CHECK(std::abs(y[i] - p.graph().degree_count(i)) <= p.bad_balls() + 1);
            if (p.graph().stuck()) break;
        }
    }
}

TEST_CASE("two bins: the single edge is forced in both modes") {
    for (BinMode mode : {BinMode::faithful, BinMode::accelerated}) {
        BinProcess p(2, 2, 3, mode);
        const TrajectoryRecord rec = p.run();
        CHECK(rec.final_edges == 1);
        CHECK_FALSE(rec.saturated);
        CHECK(rec.unsaturated_degrees == std::vector<int>{1, 1});
        CHECK(*rec.final_balls == p.ball_count());
        CHECK(*rec.final_balls >= 2);
    }
}

TEST_CASE("accelerated first step cannot skip when every bin is unsaturated") {
    BinProcess p(10, 2, 5, BinMode::accelerated);
    const BallEvent ev = p.accelerated_step();
    CHECK(ev.skipped == 0);
    CHECK(p.ball_count() == 1);
}

TEST_CASE("accelerated step requires an unsaturated bin") {
    BinProcess p(3, 2, 1, BinMode::accelerated);
    p.drop_into(0);
    p.drop_into(1);
    p.drop_into(1);
    p.drop_into(2);
    p.drop_into(2);
    p.drop_into(0);  // triangle: all bins saturated
    CHECK(p.graph().edges() == 3);
    CHECK(p.graph().unsaturated_count() == 0);
    CHECK_THROWS_AS(p.accelerated_step(), std::logic_error);
}

TEST_CASE("terminal law matches the exact reference in both modes") {
    // (3,2): the triangle is forced. (4,2): 3 edges with probability 4/15.
    for (BinMode mode : {BinMode::faithful, BinMode::accelerated}) {
        BinProcess p3(3, 2, 0, mode);
        for (std::uint64_t i = 0; i < 3000; ++i) {
            p3.reset(dproc::trial_seed(400 + static_cast<int>(mode), i));
            const TrajectoryRecord rec = p3.run();
            CHECK(rec.final_edges == 3);
            CHECK(rec.saturated);
        }

        const std::uint64_t trials = 100'000;
        std::uint64_t three = 0;
        BinProcess p4(4, 2, 0, mode);
        for (std::uint64_t i = 0; i < trials; ++i) {
            p4.reset(dproc::trial_seed(500 + static_cast<int>(mode), i));
            if (p4.run().final_edges == 3) ++three;
        }
        const double target = 4.0 / 15.0;
        const double sigma = std::sqrt(target * (1 - target) * trials);
        CHECK(std::abs(static_cast<double>(three) - target * trials) <= 5.0 * sigma);
    }
}

TEST_CASE("deficit and ball checkpoints") {
    RunOptions opts;
    opts.checkpoints_t = {12, 6, 1};
    opts.checkpoints_m = {0, 25};
    opts.check_invariants = true;
    BinProcess p(40, 2, 0, BinMode::faithful);
    for (std::uint64_t i = 0; i < 200; ++i) {
        p.reset(dproc::trial_seed(777, i));
        const TrajectoryRecord rec = p.run(opts);
        CHECK(rec.violations.unsat_bounds == 0);
        CHECK(rec.violations.ball_partition == 0);
        CHECK(rec.violations.occupancy_degree_gap == 0);
        CHECK(rec.violations.edge_identity_adjusted == 0);
        CHECK(rec.violations.edge_identity_checks > 0);
        bool saw_m0 = false;
        for (const auto& row : rec.checkpoints) {
            if (row.trigger == dproc::CheckpointTrigger::ball_count) {
                if (!row.reached) continue;
                if (*row.m_last == 0) {
                    saw_m0 = true;
                    CHECK((*row.y_counts)[0] == 40);
                    CHECK(row.t == p.graph().max_edges());
                }
                continue;
            }
            if (!row.reached) continue;
            CHECK(row.s + row.t == p.graph().max_edges());
            CHECK(*row.m_first <= *row.m_last);
            std::int64_t bins = 0, total = 0, weighted = 0;
            for (std::int64_t c : *row.y_counts) bins += c;
            CHECK(bins == 40);
            for (std::size_t i2 = 0; i2 < row.degree_counts.size(); ++i2) {
                total += row.degree_counts[i2];
                weighted += static_cast<std::int64_t>(i2) * row.degree_counts[i2];
            }
            CHECK(total == 40);
            CHECK(weighted == 2 * row.s);
            // Occupancy identity with the overflow adjustment, exact.
            CHECK(2 * row.s == *row.capped_occupancy - *row.bad_in_unsat -
                                   *row.waiting_present + *row.unsat_overflow);
        }
        CHECK(saw_m0);
        CHECK(2 * [&] {
            std::int64_t pairs = 0;
            for (const auto& [t, w] : p.bad_pairs_by_deficit()) pairs += w;
            return pairs;
        }() == *rec.bad_balls_final);
    }
}

TEST_CASE("ball checkpoints require faithful mode") {
    BinProcess p(10, 2, 1, BinMode::accelerated);
    RunOptions opts;
    opts.checkpoints_m = {5};
    CHECK_THROWS_AS(p.run(opts), std::invalid_argument);
}

TEST_CASE("identical seeds give identical runs") {
    for (BinMode mode : {BinMode::faithful, BinMode::accelerated}) {
        BinProcess a(60, 3, 999, mode);
        BinProcess b(60, 3, 999, mode);
        const TrajectoryRecord ra = a.run();
        const TrajectoryRecord rb = b.run();
        CHECK(ra.final_edges == rb.final_edges);
        CHECK(*ra.final_balls == *rb.final_balls);
        CHECK(*ra.bad_balls_final == *rb.bad_balls_final);
        CHECK(ra.last_below_cap == rb.last_below_cap);
    }
}

}  // TEST_SUITE
