#pragma once

#include <cstdint>
#include <optional>

#include "dproc/graph.hpp"
#include "dproc/rng.hpp"
#include "dproc/trajectory.hpp"

namespace dproc {

struct AddedEdge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
};

// The random process P(d,n): starting from the empty graph on n vertices,
// repeatedly add an edge chosen uniformly at random among all pairs that are
// not yet edges and whose endpoints both have degree < d, until none exists.
class GraphProcess {
public:
    GraphProcess(std::uint32_t n, std::uint32_t d, std::uint64_t seed)
        : graph_(n, d), rng_(seed), seed_(seed) {}

    void reset(std::uint64_t seed) {
        graph_.reset();
        rng_.reseed(seed);
        seed_ = seed;
    }

    const DegreeCappedGraph& graph() const { return graph_; }
    std::uint64_t seed() const { return seed_; }

    // One step. Returns the added edge, or nullopt when the process is stuck
    // (the state is then left unchanged). The pair is exactly uniform over
    // the allowed set.
    std::optional<AddedEdge> step();

    // Runs to the stuck state, recording checkpoint rows and the final outcome.
    TrajectoryRecord run(const RunOptions& options = {});

private:
    DegreeCappedGraph graph_;
    Rng rng_;
    std::uint64_t seed_;
};

}  // namespace dproc
