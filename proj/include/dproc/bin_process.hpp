#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dproc/graph.hpp"
#include "dproc/rng.hpp"
#include "dproc/trajectory.hpp"

namespace dproc {

enum class BinMode { faithful, accelerated };

std::string to_string(BinMode mode);

struct BallEvent {
    enum class Kind { unnumbered, waiting, good_pair, bad_pair };
    Kind kind = Kind::unnumbered;
    std::uint32_t bin_a = 0;      // bin of the ball (waiting/unnumbered) or first bin of the pair
    std::uint32_t bin_b = 0;      // second bin of the pair
    std::uint64_t skipped = 0;    // unnumbered balls skipped over (accelerated mode)
};

// Balls-in-bins process equivalent in law to the graph process: balls drop
// uniformly into n bins; a ball landing in a bin with fewer than d good balls
// is numbered, consecutive numbered balls form pairs, and a pair is good when
// its bins are distinct and that bin pair was never used by an earlier pair.
// Good pairs are the edges of the embedded graph; the waiting ball is the
// not-yet-paired numbered ball and does not count towards saturation.
class BinProcess {
public:
    BinProcess(std::uint32_t n, std::uint32_t d, std::uint64_t seed,
               BinMode mode = BinMode::accelerated);

    void reset(std::uint64_t seed);

    BinMode mode() const { return mode_; }
    const DegreeCappedGraph& graph() const { return graph_; }
    std::uint64_t seed() const { return seed_; }

    std::int64_t ball_count() const { return m_; }
    std::int64_t good_balls() const { return good_; }
    std::int64_t bad_balls() const { return bad_; }
    std::int64_t unnumbered_balls() const { return unnumbered_; }
    std::optional<std::uint32_t> waiting_bin() const { return waiting_; }
    std::int64_t bad_in_unsaturated() const { return bad_in_unsat_; }
    std::int64_t deficit() const { return graph_.deficit(); }

    // Bad pairs created at each deficit, sparse (most deficits see none).
    const std::unordered_map<std::int64_t, std::int64_t>& bad_pairs_by_deficit() const {
        return bad_pairs_by_deficit_;
    }

    // One uniformly random ball.
    BallEvent drop_ball();

    // Deterministic placement of one ball (no randomness consumed). Replay  and
    // test hook; follows exactly the same bookkeeping as drop_ball().
    BallEvent drop_into(std::uint32_t bin);

    // Skips the geometrically distributed run of balls that land in saturated
    // bins, then places one numbered ball in a uniformly random unsaturated
    // bin. The law of the numbered placements, and of the ball count at each
    // numbering, is the same as under drop_ball(). Requires an unsaturated bin.
    BallEvent accelerated_step();

    // Y_0..Y_{d-1} and, as the last entry, the number of bins with >= d balls.
    std::vector<std::int64_t> y_counts() const;

    // Sum over bins of min(balls, d): twice the occupancy-based edge bound.
    std::int64_t capped_occupancy() const { return capped_occupancy_; }
    double l_of_m() const { return 0.5 * static_cast<double>(capped_occupancy_); }

    // Sum over unsaturated bins of max(0, balls - d); nonzero only when bad
    // balls have pushed a still-unsaturated bin past d balls in total.
    std::int64_t unsaturated_overflow() const { return unsat_overflow_; }

    // Runs until no good pair can ever be added (embedded graph stuck).
    TrajectoryRecord run(const RunOptions& options = {});

private:
    BallEvent place_numbered(std::uint32_t bin);
    void land(std::uint32_t bin);
    void on_bin_saturated(std::uint32_t bin);
    std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) const {
        if (a > b) std::swap(a, b);
        return static_cast<std::uint64_t>(a) * n_ + b;
    }

    std::uint32_t n_;
    std::uint32_t d_;
    BinMode mode_;
    DegreeCappedGraph graph_;
    Rng rng_;
    std::uint64_t seed_;

    std::vector<std::uint32_t> ball_counts_;   // per-bin totals; in accelerated
                                               // mode skipped balls are counted
                                               // in m_ but not attributed to a
                                               // (saturated) bin
    std::vector<std::uint32_t> bad_in_bin_;
    std::vector<std::int64_t> y_;              // Y_0..Y_{d-1}
    std::int64_t y_at_least_d_ = 0;
    std::int64_t capped_occupancy_ = 0;
    std::int64_t unsat_overflow_ = 0;

    std::int64_t m_ = 0;
    std::int64_t good_ = 0;
    std::int64_t bad_ = 0;
    std::int64_t unnumbered_ = 0;
    std::optional<std::uint32_t> waiting_;
    std::int64_t bad_in_unsat_ = 0;

    // Bin pairs of earlier bad pairs with distinct bins. With this pairing
    // rule the first pair to occupy a distinct bin pair is always good, so
    // every key inserted here is already an edge of the embedded graph; the
    // set is kept so that the "pair of bins already used" test matches the
    // definition verbatim.
    std::unordered_set<std::uint64_t> used_bad_pairs_;
    std::unordered_map<std::int64_t, std::int64_t> bad_pairs_by_deficit_;
};

}  // namespace dproc
