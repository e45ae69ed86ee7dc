#include "dproc/bin_process.hpp"

#include <algorithm>
#include <stdexcept>

namespace dproc {

std::string to_string(BinMode mode) {
    return mode == BinMode::faithful ? "faithful" : "accelerated";
}

BinProcess::BinProcess(std::uint32_t n, std::uint32_t d, std::uint64_t seed, BinMode mode)
    : n_(n),
      d_(d),
      mode_(mode),
      graph_(n, d),
      rng_(seed),
      seed_(seed),
      ball_counts_(n),
      bad_in_bin_(n),
      y_(d) {
    reset(seed);
}

void BinProcess::reset(std::uint64_t seed) {
    graph_.reset();
    rng_.reseed(seed);
    seed_ = seed;
    std::fill(ball_counts_.begin(), ball_counts_.end(), 0u);
    std::fill(bad_in_bin_.begin(), bad_in_bin_.end(), 0u);
    std::fill(y_.begin(), y_.end(), 0);
    y_[0] = n_;
    y_at_least_d_ = 0;
    capped_occupancy_ = 0;
    unsat_overflow_ = 0;
    m_ = 0;
    good_ = 0;
    bad_ = 0;
    unnumbered_ = 0;
    waiting_.reset();
    bad_in_unsat_ = 0;
    used_bad_pairs_.clear();
    bad_pairs_by_deficit_.clear();
}

void BinProcess::land(std::uint32_t bin) {
    const std::uint32_t old_count = ball_counts_[bin]++;
    if (old_count < d_) {
        --y_[old_count];
        if (old_count + 1 < d_)
            ++y_[old_count + 1];
        else
            ++y_at_least_d_;
        ++capped_occupancy_;
    } else if (graph_.unsaturated(bin)) {
        ++unsat_overflow_;
    }
}

void BinProcess::on_bin_saturated(std::uint32_t bin) {
    bad_in_unsat_ -= bad_in_bin_[bin];
    if (ball_counts_[bin] > d_)
        unsat_overflow_ -= static_cast<std::int64_t>(ball_counts_[bin]) - d_;
}

BallEvent BinProcess::place_numbered(std::uint32_t bin) {
    land(bin);
    if (!waiting_) {
        waiting_ = bin;
        return BallEvent{BallEvent::Kind::waiting, bin, bin, 0};
    }
    const std::uint32_t u = *waiting_;
    const std::uint32_t v = bin;
    waiting_.reset();
    const bool good = u != v && !graph_.has_edge(u, v) &&
                      used_bad_pairs_.find(pair_key(u, v)) == used_bad_pairs_.end();
    if (good) {
        good_ += 2;
        graph_.add_edge(u, v);
        for (std::uint32_t w : {u, v})
            if (!graph_.unsaturated(w)) on_bin_saturated(w);
        return BallEvent{BallEvent::Kind::good_pair, u, v, 0};
    }
    bad_ += 2;
    ++bad_pairs_by_deficit_[graph_.deficit()];
    ++bad_in_bin_[u];
    ++bad_in_bin_[v];
    bad_in_unsat_ += 2;
    if (u != v) used_bad_pairs_.insert(pair_key(u, v));
    return BallEvent{BallEvent::Kind::bad_pair, u, v, 0};
}

BallEvent BinProcess::drop_into(std::uint32_t bin) {
    ++m_;
    if (!graph_.unsaturated(bin)) {
        land(bin);
        ++unnumbered_;
        return BallEvent{BallEvent::Kind::unnumbered, bin, bin, 0};
    }
    return place_numbered(bin);
}

BallEvent BinProcess::drop_ball() {
    return drop_into(static_cast<std::uint32_t>(rng_.below(n_)));
}

BallEvent BinProcess::accelerated_step() {
    const std::uint32_t unsat = graph_.unsaturated_count();
    if (unsat == 0) throw std::logic_error("accelerated_step: all bins saturated");
    // A ball is numbered with probability U/n; the run of unnumbered balls
    // before the next numbered one is geometric. One uniform variate each for
    // the skip length and the bin keeps the draw count per event fixed.
    const std::uint64_t skip =
        rng_.geometric_failures(static_cast<double>(unsat) / static_cast<double>(n_));
    m_ += static_cast<std::int64_t>(skip);
    unnumbered_ += static_cast<std::int64_t>(skip);
    const std::uint32_t bin = graph_.unsaturated_at(static_cast<std::uint32_t>(rng_.below(unsat)));
    ++m_;
    BallEvent ev = place_numbered(bin);
    ev.skipped = skip;
    return ev;
}

std::vector<std::int64_t> BinProcess::y_counts() const {
    std::vector<std::int64_t> out(y_);
    out.push_back(y_at_least_d_);
    return out;
}

namespace {

// State captured immediately before a ball drop; becomes the "last step at
// deficit t" snapshot when that ball completes a good pair.
struct DeficitStash {
    std::int64_t m = 0;
    std::int64_t s = 0;
    std::int64_t capped_occupancy = 0;
    std::int64_t bad_in_unsat = 0;
    std::int64_t unsat_overflow = 0;
    std::int64_t bad = 0;
    std::int64_t waiting_present = 0;
    // Filled only when the current deficit is an explicit checkpoint.
    std::vector<std::int64_t> y;
    std::vector<std::int64_t> degree_counts;
    EdgeClassCounts edge_classes;
};

}  // namespace

TrajectoryRecord BinProcess::run(const RunOptions& options) {
    if (!options.checkpoints_m.empty() && mode_ == BinMode::accelerated)
        throw std::invalid_argument("ball-count checkpoints require faithful mode");

    TrajectoryRecord rec;
    rec.seed = seed_;
    rec.sampler = mode_ == BinMode::faithful ? "bin-faithful" : "bin-accelerated";
    rec.n = n_;
    rec.d = d_;

    const std::int64_t cap = graph_.max_edges();
    std::vector<std::int64_t> t_targets = options.checkpoints_t;
    for (std::int64_t t : t_targets)
        if (t < 0 || t > cap) throw std::invalid_argument("deficit checkpoint out of range");
    std::sort(t_targets.begin(), t_targets.end(), std::greater<>());
    t_targets.erase(std::unique(t_targets.begin(), t_targets.end()), t_targets.end());
    std::size_t t_idx = 0;

    std::vector<std::int64_t> m_targets = options.checkpoints_m;
    std::sort(m_targets.begin(), m_targets.end());
    m_targets.erase(std::unique(m_targets.begin(), m_targets.end()), m_targets.end());
    for (std::int64_t m : m_targets)
        if (m < 0) throw std::invalid_argument("ball-count checkpoint out of range");
    std::size_t m_idx = 0;

    const std::uint32_t d = d_;
    std::vector<std::int64_t> below_cap_count(d - 1, n_);
    rec.last_below_cap.assign(below_cap_count.size(), -1);

    auto emit_m_rows_due = [&] {
        while (m_idx < m_targets.size() && m_targets[m_idx] == m_) {
            CheckpointRow row;
            row.trigger = CheckpointTrigger::ball_count;
            row.reached = true;
            row.s = graph_.edges();
            row.t = graph_.deficit();
            row.degree_counts = graph_.degree_counts();
            const EdgeClassCounts ec = graph_.edge_class_counts();
            row.unsaturated_edges = ec.unsaturated_edges;
            row.critical_edges = ec.critical_edges;
            row.m_last = m_;
            row.y_counts = y_counts();
            row.bad_balls = bad_;
            row.bad_in_unsat = bad_in_unsat_;
            row.waiting_present = waiting_ ? 1 : 0;
            row.capped_occupancy = capped_occupancy_;
            row.unsat_overflow = unsat_overflow_;
            rec.checkpoints.push_back(std::move(row));
            ++m_idx;
        }
    };
    emit_m_rows_due();

    // First-arrival ball count for the deficit currently being traversed.
    std::int64_t deficit_m_first = 0;
    bool deficit_targeted = t_idx < t_targets.size() && t_targets[t_idx] == graph_.deficit();

    DeficitStash stash;
    auto take_stash = [&](bool full) {
        stash.m = m_;
        stash.s = graph_.edges();
        stash.capped_occupancy = capped_occupancy_;
        stash.bad_in_unsat = bad_in_unsat_;
        stash.unsat_overflow = unsat_overflow_;
        stash.bad = bad_;
        stash.waiting_present = waiting_ ? 1 : 0;
        if (full) {
            stash.y = y_counts();
            stash.degree_counts = graph_.degree_counts();
            stash.edge_classes = graph_.edge_class_counts();
        }
    };

    // The identity linking edges to occupancy at the last step at a deficit:
    // 2s should equal capped_occupancy - bad_in_unsat - waiting. It fails by
    // exactly the unsaturated overflow whenever bad balls pushed a bin past d
    // total balls, so both variants are tallied.
    auto check_edge_identity = [&](std::int64_t s, std::int64_t capped, std::int64_t bad_unsat,
                                   std::int64_t waiting_present, std::int64_t overflow) {
        ++rec.violations.edge_identity_checks;
        if (2 * s != capped - bad_unsat - waiting_present) ++rec.violations.edge_identity;
        if (2 * s != capped - bad_unsat - waiting_present + overflow)
            ++rec.violations.edge_identity_adjusted;
    };

    auto emit_deficit_row = [&](std::int64_t t, const DeficitStash& snap, std::int64_t m_first) {
        CheckpointRow row;
        row.trigger = CheckpointTrigger::deficit;
        row.reached = true;
        row.s = snap.s;
        row.t = t;
        row.degree_counts = snap.degree_counts;
        row.unsaturated_edges = snap.edge_classes.unsaturated_edges;
        row.critical_edges = snap.edge_classes.critical_edges;
        row.m_first = m_first;
        row.m_last = snap.m;
        row.y_counts = snap.y;
        row.bad_balls = snap.bad;
        row.bad_in_unsat = snap.bad_in_unsat;
        row.waiting_present = snap.waiting_present;
        row.capped_occupancy = snap.capped_occupancy;
        row.unsat_overflow = snap.unsat_overflow;
        rec.checkpoints.push_back(std::move(row));
    };

    const bool check = options.check_invariants;
    bool finished = false;
    while (!finished) {
        const std::int64_t t_now = graph_.deficit();
        if (check || deficit_targeted) take_stash(deficit_targeted);

        const BallEvent ev =
            mode_ == BinMode::faithful ? drop_ball() : accelerated_step();

        if (check) {
            if (good_ + bad_ + (waiting_ ? 1 : 0) + unnumbered_ != m_)
                ++rec.violations.ball_partition;
            for (std::uint32_t i = 0; i < d; ++i)
                if (std::abs(y_[i] - graph_.degree_count(i)) > bad_ + 1)
                    ++rec.violations.occupancy_degree_gap;
        }

        if (ev.kind == BallEvent::Kind::good_pair) {
            if (check && !graph_.unsaturated_count_in_bounds()) ++rec.violations.unsat_bounds;
            // The snapshot taken before this ball is the last step at t_now.
            if (check)
                check_edge_identity(stash.s, stash.capped_occupancy, stash.bad_in_unsat,
                                    stash.waiting_present, stash.unsat_overflow);
            if (deficit_targeted) {
                emit_deficit_row(t_now, stash, deficit_m_first);
                ++t_idx;
            }
            deficit_m_first = m_;
            deficit_targeted = t_idx < t_targets.size() && t_targets[t_idx] == graph_.deficit();

            for (std::uint32_t w : {ev.bin_a, ev.bin_b}) {
                const std::uint32_t old_degree = graph_.degree(w) - 1;
                if (old_degree < below_cap_count.size() &&
                    --below_cap_count[old_degree] == 0 && rec.last_below_cap[old_degree] < 0)
                    rec.last_below_cap[old_degree] = graph_.edges() - 1;
            }

            if (graph_.stuck()) {
                // Last step overall: the snapshot is the current state and no
                // waiting ball is present.
                if (check)
                    check_edge_identity(graph_.edges(), capped_occupancy_, bad_in_unsat_, 0,
                                        unsat_overflow_);
                if (deficit_targeted) {
                    take_stash(true);
                    emit_deficit_row(graph_.deficit(), stash, deficit_m_first);
                    ++t_idx;
                }
                finished = true;
            }
        }
        if (mode_ == BinMode::faithful) emit_m_rows_due();
    }

    for (std::size_t j = 0; j < rec.last_below_cap.size(); ++j)
        if (rec.last_below_cap[j] < 0) rec.last_below_cap[j] = graph_.edges();

    for (; t_idx < t_targets.size(); ++t_idx) {
        CheckpointRow row;
        row.trigger = CheckpointTrigger::deficit;
        row.reached = false;
        row.t = t_targets[t_idx];
        row.s = cap - t_targets[t_idx];
        rec.checkpoints.push_back(std::move(row));
    }
    for (; m_idx < m_targets.size(); ++m_idx) {
        CheckpointRow row;
        row.trigger = CheckpointTrigger::ball_count;
        row.reached = false;
        row.m_last = m_targets[m_idx];
        rec.checkpoints.push_back(std::move(row));
    }

    const SaturationOutcome outcome = classify_final(graph_);
    rec.final_edges = outcome.final_edges;
    rec.saturated = outcome.saturated;
    rec.unsaturated_degrees = outcome.unsaturated_degrees;
    rec.final_degree_counts = graph_.degree_counts();
    rec.final_balls = m_;
    rec.bad_balls_final = bad_;
    return rec;
}

}  // namespace dproc
