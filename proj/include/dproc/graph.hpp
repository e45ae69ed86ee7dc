#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dproc {

struct EdgeClassCounts {
    std::int64_t unsaturated_edges = 0;  // both endpoints have degree < d
    std::int64_t critical_edges = 0;     // one endpoint unsaturated, the other of degree <= d-2
    std::int64_t critical_vertices = 0;  // vertices of degree <= d-2
};

struct SaturationOutcome {
    bool saturated = false;
    std::vector<int> unsaturated_degrees;  // final degrees < d, ascending
    std::int64_t final_edges = 0;
};

// Simple labeled graph whose vertex degrees never exceed the cap d.
// Maintains the set of unsaturated vertices (degree < d) with O(1) uniform
// indexing and removal, plus per-degree vertex counts.
//
// Used both by the direct edge sampler and as the graph embedded in the
// balls-in-bins process (vertex degree == good balls in the bin).
class DegreeCappedGraph {
public:
    DegreeCappedGraph(std::uint32_t n, std::uint32_t d);

    void reset();

    std::uint32_t vertex_count() const { return n_; }
    std::uint32_t degree_cap() const { return d_; }
    std::int64_t edges() const { return s_; }
    std::int64_t max_edges() const { return max_edges_; }  // floor(d*n/2)
    std::int64_t deficit() const { return max_edges_ - s_; }

    std::uint32_t degree(std::uint32_t v) const { return degrees_[v]; }
    bool unsaturated(std::uint32_t v) const { return degrees_[v] < d_; }

    std::uint32_t unsaturated_count() const {
        return static_cast<std::uint32_t>(unsat_.size());
    }
    std::uint32_t unsaturated_at(std::uint32_t slot) const { return unsat_[slot]; }
    const std::vector<std::uint32_t>& unsaturated_vertices() const { return unsat_; }

    bool has_edge(std::uint32_t u, std::uint32_t v) const {
        if (degrees_[u] > degrees_[v]) std::swap(u, v);
        const std::uint32_t* nb = &adjacency_[static_cast<std::size_t>(u) * d_];
        for (std::uint32_t i = 0; i < degrees_[u]; ++i)
            if (nb[i] == v) return true;
        return false;
    }

    // Adds {u,v}; both endpoints must be distinct, unsaturated and non-adjacent.
    void add_edge(std::uint32_t u, std::uint32_t v);

    // D_0..D_d of the current graph.
    std::vector<std::int64_t> degree_counts() const {
        return std::vector<std::int64_t>(degree_count_.begin(), degree_count_.end());
    }
    std::int64_t degree_count(std::uint32_t i) const { return degree_count_[i]; }

    EdgeClassCounts edge_class_counts() const;

    // All addable pairs {u,v}: both unsaturated and not yet adjacent.
    // O(U^2); intended for small unsaturated sets and for tests.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> allowed_pairs() const;

    // True when no pair can be added. Only performs the exhaustive pair scan
    // once the unsaturated set has size <= d: a larger unsaturated set cannot
    // form a clique under the degree cap, so some pair is always addable.
    bool stuck() const;

    // Bounds tied to the deficit t: 2t/d <= U <= 2t+1 (U <= 1 once t = 0).
    bool unsaturated_count_in_bounds() const {
        const std::int64_t t = deficit();
        const std::int64_t u = unsaturated_count();
        if (t == 0) return u <= 1;
        return 2 * t <= static_cast<std::int64_t>(d_) * u && u <= 2 * t + 1;
    }

    // Full consistency scan (degree sums, cap, index integrity, symmetry).
    // Test/debug helper; throws std::logic_error on the first inconsistency.
    void validate() const;

    const std::uint32_t* neighbors(std::uint32_t v) const {
        return &adjacency_[static_cast<std::size_t>(v) * d_];
    }

private:
    void remove_from_unsat(std::uint32_t v);

    std::uint32_t n_;
    std::uint32_t d_;
    std::int64_t max_edges_;
    std::int64_t s_ = 0;
    std::vector<std::uint32_t> adjacency_;   // n*d slots, first degree(v) used
    std::vector<std::uint16_t> degrees_;
    std::vector<std::uint32_t> unsat_;       // vertices with degree < d
    std::vector<std::uint32_t> unsat_pos_;   // position in unsat_, or npos
    std::vector<std::int64_t> degree_count_; // D_0..D_d
    static constexpr std::uint32_t npos = 0xFFFFFFFFu;
};

// Saturation test for a stuck graph: at most one vertex of degree d-1 and
// every other vertex of degree d. Throws if the graph is not stuck.
SaturationOutcome classify_final(const DegreeCappedGraph& g);

}  // namespace dproc
