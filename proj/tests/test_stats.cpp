#include <array>
#include <random>
#include <vector>

#include <stdexcept>
#include <doctest.h>

#include "dproc/stats.hpp"

using namespace dproc::stats;

TEST_SUITE("stats") {

TEST_CASE("factorial moments") {
    const std::vector<std::int64_t> twos{2, 2, 2, 2};
    CHECK(factorial_moment(twos, 2) == 2.0);
    const std::vector<std::int64_t> mixed{1, 2, 3, 4};
    CHECK(factorial_moment(mixed, 1) == doctest::Approx(2.5).epsilon(1e-12));
    const std::vector<std::int64_t> ones{1, 1, 1};
    CHECK(factorial_moment(ones, 2) == 0.0);
    CHECK_THROWS_AS(factorial_moment(std::vector<std::int64_t>{}, 1), std::invalid_argument);

    EmpiricalPmf pmf;
    for (std::int64_t v : mixed) pmf.add(v);
    CHECK(pmf.factorial_moment(1) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(pmf.factorial_moment(2) == doctest::Approx((0.0 + 2 + 6 + 12) / 4.0).epsilon(1e-12));
}

TEST_CASE("tv distance basics") {
    EmpiricalPmf a, b;
    for (int i = 0; i < 10; ++i) {
        a.add(i % 2);
        b.add(i % 2);
    }
    CHECK(tv_distance(a, b) == 0.0);

    EmpiricalPmf lo, hi;
    lo.add(0, 5);
    hi.add(7, 5);
    CHECK(tv_distance(lo, hi) == 1.0);

    EmpiricalPmf half, point;
    half.add(0, 1);
    half.add(1, 1);
    point.add(0, 2);
    CHECK(tv_distance(half, point) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("tv distance symmetry and triangle inequality") {
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<int> value(0, 6);
    for (int rep = 0; rep < 50; ++rep) {
        EmpiricalPmf p, q, r;
        for (int i = 0; i < 40; ++i) {
            p.add(value(gen));
            q.add(value(gen));
            r.add(value(gen));
        }
        const double pq = tv_distance(p, q);
        CHECK(pq == doctest::Approx(tv_distance(q, p)).epsilon(1e-12));
        CHECK(pq <= tv_distance(p, r) + tv_distance(r, q) + 1e-12);
        CHECK(pq >= 0.0);
        CHECK(pq <= 1.0);
    }
}

TEST_CASE("tv distance against a table with tail") {
    EmpiricalPmf p;
    p.add(0, 1);
    p.add(1, 1);
    const std::array<double, 2> table{0.5, 0.5};
    CHECK(tv_distance(p, std::span<const double>(table), 0.0) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // Mass the table holds beyond its truncation competes with empirical
    // mass outside the table as a single term.
    const std::array<double, 1> short_table{0.5};
    CHECK(tv_distance(p, std::span<const double>(short_table), 0.5) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("wilson interval") {
    const Interval zero = wilson_interval(0, 25, 1.96);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi > 0.0);
    const Interval full = wilson_interval(25, 25, 1.96);
    CHECK(full.hi == 1.0);
    const Interval mid = wilson_interval(50, 100, 1.96);
    CHECK(mid.lo == doctest::Approx(0.404).epsilon(2e-3));
    CHECK(mid.hi == doctest::Approx(0.596).epsilon(2e-3));

    std::mt19937_64 gen(11);
    for (int rep = 0; rep < 100; ++rep) {
        const std::uint64_t trials = 1 + gen() % 1000;
        const std::uint64_t successes = gen() % (trials + 1);
        const Interval w = wilson_interval(successes, trials, 1.96);
        CHECK(w.lo >= 0.0);
        CHECK(w.hi <= 1.0);
        CHECK(w.lo <= w.hi);
        CHECK(w.contains(static_cast<double>(successes) / static_cast<double>(trials)));
    }
}

TEST_CASE("window coverage") {
    const std::vector<double> at_center{3.0, 3.0, 3.0};
    CHECK(window_coverage(at_center, 3.0, 0.0) == 1.0);
    const std::vector<double> off{1.0, 2.0};
    CHECK(window_coverage(off, 3.0, 0.0) == 0.0);
    const std::vector<double> spread{0.0, 1.0, 2.0};
    CHECK(window_coverage(spread, 1.0, 1.0) == 1.0);
    CHECK_THROWS_AS(window_coverage(spread, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("empirical pmf merge is order independent") {
    std::mt19937_64 gen(3);
    EmpiricalPmf a, b, ab, ba;
    for (int i = 0; i < 100; ++i) {
        const std::int64_t v = static_cast<std::int64_t>(gen() % 10);
        if (i % 2)
            a.add(v);
        else
            b.add(v);
    }
    ab.merge(a);
    ab.merge(b);
    ba.merge(b);
    ba.merge(a);
    CHECK(ab.total() == ba.total());
    CHECK(tv_distance(ab, ba) == 0.0);
}

}  // TEST_SUITE
