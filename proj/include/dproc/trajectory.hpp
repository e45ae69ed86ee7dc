#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dproc {

// What triggered a checkpoint row.
enum class CheckpointTrigger { edge_count, deficit, ball_count };

std::string to_string(CheckpointTrigger t);

struct CheckpointRow {
    CheckpointTrigger trigger = CheckpointTrigger::edge_count;
    bool reached = false;          // false mirrors "first time at this point = never"
    std::int64_t s = -1;           // edges at the row
    std::int64_t t = -1;           // deficit at the row
    std::vector<std::int64_t> degree_counts;  // D_0..D_d
    std::int64_t unsaturated_edges = 0;
    std::int64_t critical_edges = 0;

    // Bin-process only (left empty by the direct graph sampler).
    std::optional<std::int64_t> m_first;            // balls when this deficit was first reached
    std::optional<std::int64_t> m_last;             // balls at the last step at this deficit
    std::optional<std::vector<std::int64_t>> y_counts;  // Y_0..Y_{d-1}, Y_{>=d}
    std::optional<std::int64_t> bad_balls;          // bad balls so far
    std::optional<std::int64_t> bad_in_unsat;       // bad balls currently in unsaturated bins
    std::optional<std::int64_t> waiting_present;    // 1 if a waiting ball exists, else 0
    std::optional<std::int64_t> capped_occupancy;   // sum over bins of min(balls, d) = 2*L
    std::optional<std::int64_t> unsat_overflow;     // sum over unsaturated bins of (balls - d)+
};

// Tallies of invariant checks performed during a run. A violation is counted,
// not thrown, so that statistical sweeps can report totals.
struct ViolationCounters {
    std::int64_t unsat_bounds = 0;       // 2t/d <= U <= 2t+1 failed
    std::int64_t occupancy_degree_gap = 0;  // |Y_i - D_i| <= bad_balls + 1 failed
    std::int64_t ball_partition = 0;     // good+bad+waiting+unnumbered != m
    std::int64_t edge_identity = 0;      // 2s == capped_occupancy - bad_in_unsat - waiting failed
    std::int64_t edge_identity_adjusted = 0;  // same with the unsat_overflow term added back
    std::int64_t edge_identity_checks = 0;

    void merge(const ViolationCounters& o) {
        unsat_bounds += o.unsat_bounds;
        occupancy_degree_gap += o.occupancy_degree_gap;
        ball_partition += o.ball_partition;
        edge_identity += o.edge_identity;
        edge_identity_adjusted += o.edge_identity_adjusted;
        edge_identity_checks += o.edge_identity_checks;
    }
    std::int64_t total() const {
        return unsat_bounds + occupancy_degree_gap + ball_partition + edge_identity;
    }
};

struct TrajectoryRecord {
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    std::string sampler;  // "graph" | "bin-faithful" | "bin-accelerated"
    std::uint32_t n = 0;
    std::uint32_t d = 0;

    std::int64_t final_edges = 0;
    bool saturated = false;
    std::vector<int> unsaturated_degrees;
    std::vector<std::int64_t> final_degree_counts;

    // last_below_cap[j] = last edge count s at which some vertex had degree <= j,
    // for j = 0..d-2. The minimum degree never decreases, so this is well defined.
    std::vector<std::int64_t> last_below_cap;

    std::vector<CheckpointRow> checkpoints;

    // Bin-process only.
    std::optional<std::int64_t> final_balls;       // m at termination
    std::optional<std::int64_t> bad_balls_final;   // total bad balls at termination

    // Filled for small instances where the exact distribution over labeled
    // final graphs is available for comparison.
    std::optional<std::vector<std::pair<std::uint32_t, std::uint32_t>>> final_edge_list;

    ViolationCounters violations;
};

struct RunOptions {
    std::vector<std::int64_t> checkpoints_s;  // edge counts, ascending
    std::vector<std::int64_t> checkpoints_t;  // deficits, will be visited descending
    std::vector<std::int64_t> checkpoints_m;  // ball counts (bin process only), ascending
    bool check_invariants = false;            // per-step checks + per-deficit identity checks
};

}  // namespace dproc
