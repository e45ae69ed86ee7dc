#include "dproc/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace dproc {

DegreeCappedGraph::DegreeCappedGraph(std::uint32_t n, std::uint32_t d)
    : n_(n),
      d_(d),
      max_edges_(static_cast<std::int64_t>(d) * n / 2),
      adjacency_(static_cast<std::size_t>(n) * d),
      degrees_(n),
      unsat_(n),
      unsat_pos_(n),
      degree_count_(d + 1) {
    if (n < 2) throw std::invalid_argument("vertex count must be at least 2");
    if (d < 2) throw std::invalid_argument("degree cap must be at least 2");
    reset();
}

void DegreeCappedGraph::reset() {
    s_ = 0;
    std::fill(degrees_.begin(), degrees_.end(), 0);
    unsat_.resize(n_);
    std::iota(unsat_.begin(), unsat_.end(), 0u);
    std::iota(unsat_pos_.begin(), unsat_pos_.end(), 0u);
    std::fill(degree_count_.begin(), degree_count_.end(), 0);
    degree_count_[0] = n_;
}

void DegreeCappedGraph::remove_from_unsat(std::uint32_t v) {
    const std::uint32_t pos = unsat_pos_[v];
    const std::uint32_t last = unsat_.back();
    unsat_[pos] = last;
    unsat_pos_[last] = pos;
    unsat_.pop_back();
    unsat_pos_[v] = npos;
}

void DegreeCappedGraph::add_edge(std::uint32_t u, std::uint32_t v) {
    if (u == v) throw std::logic_error("self-loop");
    if (degrees_[u] >= d_ || degrees_[v] >= d_) throw std::logic_error("endpoint saturated");
    if (has_edge(u, v)) throw std::logic_error("edge already present");
    adjacency_[static_cast<std::size_t>(u) * d_ + degrees_[u]] = v;
    adjacency_[static_cast<std::size_t>(v) * d_ + degrees_[v]] = u;
    for (std::uint32_t w : {u, v}) {
        const std::uint32_t g = degrees_[w]++;
        --degree_count_[g];
        ++degree_count_[g + 1];
        if (g + 1 == d_) remove_from_unsat(w);
    }
    ++s_;
}

EdgeClassCounts DegreeCappedGraph::edge_class_counts() const {
    EdgeClassCounts out;
    out.critical_vertices = 0;
    for (std::uint32_t i = 0; i + 1 < d_; ++i) out.critical_vertices += degree_count_[i];
    // Unsaturated and critical edges have both endpoints unsaturated
    // (a critical endpoint, degree <= d-2, is unsaturated in particular),
    // so scanning the unsaturated set covers them all.
    for (std::uint32_t u : unsat_) {
        const std::uint32_t* nb = neighbors(u);
        for (std::uint32_t i = 0; i < degrees_[u]; ++i) {
            const std::uint32_t v = nb[i];
            if (v < u || !unsaturated(v)) continue;  // count each edge once
            ++out.unsaturated_edges;
            if (degrees_[u] + 1u < d_ || degrees_[v] + 1u < d_) ++out.critical_edges;
        }
    }
    return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> DegreeCappedGraph::allowed_pairs() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::size_t i = 0; i < unsat_.size(); ++i)
        for (std::size_t j = i + 1; j < unsat_.size(); ++j) {
            const std::uint32_t u = unsat_[i], v = unsat_[j];
            if (!has_edge(u, v)) out.emplace_back(std::min(u, v), std::max(u, v));
        }
    return out;
}

bool DegreeCappedGraph::stuck() const {
    if (unsat_.size() > d_) return false;
    return allowed_pairs().empty();
}

void DegreeCappedGraph::validate() const {
    std::int64_t degree_sum = 0;
    std::vector<std::int64_t> counts(d_ + 1, 0);
    for (std::uint32_t v = 0; v < n_; ++v) {
        if (degrees_[v] > d_) throw std::logic_error("degree cap exceeded");
        degree_sum += degrees_[v];
        ++counts[degrees_[v]];
        const bool listed = unsat_pos_[v] != npos;
        if (listed != (degrees_[v] < d_)) throw std::logic_error("unsaturated index out of sync");
        if (listed && unsat_[unsat_pos_[v]] != v) throw std::logic_error("unsaturated position wrong");
        for (std::uint32_t i = 0; i < degrees_[v]; ++i) {
            const std::uint32_t w = neighbors(v)[i];
            if (w == v) throw std::logic_error("self-loop stored");
            if (!has_edge(w, v)) throw std::logic_error("adjacency not symmetric");
            for (std::uint32_t j = i + 1; j < degrees_[v]; ++j)
                if (neighbors(v)[j] == w) throw std::logic_error("repeated edge");
        }
    }
    if (degree_sum != 2 * s_) throw std::logic_error("degree sum != 2s");
    if (counts != degree_count_) throw std::logic_error("degree counts out of sync");
    if (s_ > max_edges_) throw std::logic_error("edge count above cap");
    if (!unsaturated_count_in_bounds()) throw std::logic_error("unsaturated count out of bounds");
}

SaturationOutcome classify_final(const DegreeCappedGraph& g) {
    if (!g.stuck()) throw std::logic_error("classify_final requires a stuck graph");
    SaturationOutcome out;
    out.final_edges = g.edges();
    for (std::uint32_t v : g.unsaturated_vertices())
        out.unsaturated_degrees.push_back(static_cast<int>(g.degree(v)));
    std::sort(out.unsaturated_degrees.begin(), out.unsaturated_degrees.end());
    const std::size_t k = out.unsaturated_degrees.size();
    out.saturated =
        k == 0 || (k == 1 && out.unsaturated_degrees[0] == static_cast<int>(g.degree_cap()) - 1);
    return out;
}

}  // namespace dproc
