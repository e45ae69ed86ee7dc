#include "dproc/graph_process.hpp"

#include <algorithm>
#include <stdexcept>

namespace dproc {

std::string to_string(CheckpointTrigger t) {
    switch (t) {
        case CheckpointTrigger::edge_count: return "s";
        case CheckpointTrigger::deficit: return "t";
        case CheckpointTrigger::ball_count: return "m";
    }
    return "?";
}

std::optional<AddedEdge> GraphProcess::step() {
    const std::uint32_t d = graph_.degree_cap();
    const std::uint32_t u_count = graph_.unsaturated_count();
    if (u_count > d) {
        // Rejection over ordered pairs of unsaturated vertices. Each vertex is
        // adjacent to at most d-1 unsaturated ones, so the rejection
        // probability is at most d/U and the loop terminates quickly.
        for (;;) {
            const std::uint32_t i = static_cast<std::uint32_t>(rng_.below(u_count));
            const std::uint32_t j = static_cast<std::uint32_t>(rng_.below(u_count));
            if (i == j) continue;
            const std::uint32_t u = graph_.unsaturated_at(i);
            const std::uint32_t v = graph_.unsaturated_at(j);
            if (graph_.has_edge(u, v)) continue;
            graph_.add_edge(u, v);
            return AddedEdge{u, v};
        }
    }
    // Small unsaturated set: enumerate the allowed pairs outright. This is
    // also the only point where getting stuck can be detected.
    const auto pairs = graph_.allowed_pairs();
    if (pairs.empty()) return std::nullopt;
    const auto& [u, v] = pairs[rng_.below(pairs.size())];
    graph_.add_edge(u, v);
    return AddedEdge{u, v};
}

namespace {

struct Target {
    std::int64_t s;
    CheckpointTrigger trigger;
    std::int64_t t;  // requested deficit (for trigger == deficit)
};

std::vector<Target> make_targets(const DegreeCappedGraph& g, const RunOptions& options) {
    std::vector<Target> targets;
    const std::int64_t cap = g.max_edges();
    for (std::int64_t s : options.checkpoints_s) {
        if (s < 0 || s > cap) throw std::invalid_argument("edge-count checkpoint out of range");
        targets.push_back({s, CheckpointTrigger::edge_count, cap - s});
    }
    for (std::int64_t t : options.checkpoints_t) {
        if (t < 0 || t > cap) throw std::invalid_argument("deficit checkpoint out of range");
        targets.push_back({cap - t, CheckpointTrigger::deficit, t});
    }
    std::sort(targets.begin(), targets.end(), [](const Target& a, const Target& b) {
        if (a.s != b.s) return a.s < b.s;
        return a.trigger < b.trigger;
    });
    return targets;
}

CheckpointRow graph_row(const DegreeCappedGraph& g, const Target& target) {
    CheckpointRow row;
    row.trigger = target.trigger;
    row.reached = true;
    row.s = g.edges();
    row.t = g.deficit();
    row.degree_counts = g.degree_counts();
    const EdgeClassCounts ec = g.edge_class_counts();
    row.unsaturated_edges = ec.unsaturated_edges;
    row.critical_edges = ec.critical_edges;
    return row;
}

}  // namespace

TrajectoryRecord GraphProcess::run(const RunOptions& options) {
    if (!options.checkpoints_m.empty())
        throw std::invalid_argument("ball-count checkpoints require the bin process");

    TrajectoryRecord rec;
    rec.seed = seed_;
    rec.sampler = "graph";
    rec.n = graph_.vertex_count();
    rec.d = graph_.degree_cap();

    std::vector<Target> targets = make_targets(graph_, options);
    std::size_t next_target = 0;
    auto record_due_rows = [&] {
        while (next_target < targets.size() && targets[next_target].s == graph_.edges())
            rec.checkpoints.push_back(graph_row(graph_, targets[next_target++]));
    };
    record_due_rows();

    const std::uint32_t d = graph_.degree_cap();
    // below_cap_count[j] = number of vertices of degree <= j, for j <= d-2.
    std::vector<std::int64_t> below_cap_count(d >= 2 ? d - 1 : 0, graph_.vertex_count());
    rec.last_below_cap.assign(below_cap_count.size(), -1);

    for (;;) {
        const std::optional<AddedEdge> added = step();
        if (!added) break;
        if (options.check_invariants && !graph_.unsaturated_count_in_bounds())
            ++rec.violations.unsat_bounds;
        for (std::uint32_t w : {added->u, added->v}) {
            const std::uint32_t old_degree = graph_.degree(w) - 1;
            if (old_degree < below_cap_count.size() &&
                --below_cap_count[old_degree] == 0 && rec.last_below_cap[old_degree] < 0)
                rec.last_below_cap[old_degree] = graph_.edges() - 1;
        }
        record_due_rows();
    }

    if (options.check_invariants && !graph_.unsaturated_count_in_bounds())
        ++rec.violations.unsat_bounds;

    for (std::size_t j = 0; j < rec.last_below_cap.size(); ++j)
        if (rec.last_below_cap[j] < 0) rec.last_below_cap[j] = graph_.edges();

    // Deficits below the final one were never reached; flag their rows.
    for (; next_target < targets.size(); ++next_target) {
        CheckpointRow row;
        row.trigger = targets[next_target].trigger;
        row.reached = false;
        row.s = targets[next_target].s;
        row.t = targets[next_target].t;
        rec.checkpoints.push_back(row);
    }

    const SaturationOutcome outcome = classify_final(graph_);
    rec.final_edges = outcome.final_edges;
    rec.saturated = outcome.saturated;
    rec.unsaturated_degrees = outcome.unsaturated_degrees;
    rec.final_degree_counts = graph_.degree_counts();
    return rec;
}

}  // namespace dproc
