#include "dproc/oracle.hpp"

#include <bit>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace dproc::oracle {

namespace {

// Bit mask of all pair slots involving vertex v.
std::vector<EdgeMask> vertex_masks(std::uint32_t n) {
    std::vector<EdgeMask> vm(n, 0);
    for (std::uint32_t v = 1; v < n; ++v)
        for (std::uint32_t u = 0; u < v; ++u) {
            const EdgeMask bit = EdgeMask{1} << pair_index(u, v);
            vm[u] |= bit;
            vm[v] |= bit;
        }
    return vm;
}

void require_supported(std::uint32_t n, std::uint32_t d) {
    if (n < 2 || d < 2) throw std::invalid_argument("oracle requires n >= 2 and d >= 2");
    if (n > max_oracle_vertices)
        throw ResourceBudgetError("oracle supports at most 11 labeled vertices");
}

struct Expansion {
    std::vector<std::uint32_t> allowed_bits;  // pair indices addable from this state
};

// Enumerates the addable pairs of one state.
void expand(EdgeMask mask, std::uint32_t n, std::uint32_t d, const std::vector<EdgeMask>& vm,
            Expansion& out) {
    out.allowed_bits.clear();
    int deg[max_oracle_vertices];
    for (std::uint32_t v = 0; v < n; ++v) deg[v] = std::popcount(mask & vm[v]);
    for (std::uint32_t v = 1; v < n; ++v) {
        if (deg[v] >= static_cast<int>(d)) continue;
        for (std::uint32_t u = 0; u < v; ++u) {
            if (deg[u] >= static_cast<int>(d)) continue;
            const std::uint32_t bit = pair_index(u, v);
            if (!(mask >> bit & 1)) out.allowed_bits.push_back(bit);
        }
    }
}

using Layer = std::unordered_map<EdgeMask, Rational>;

// Walks the trajectory tree layer by layer (one layer per edge count),
// merging the masses of trajectories that reach the same labeled graph.
// visit_layer is called before expanding each layer; terminal masses are
// accumulated into `terminals` when a state has no addable pair.
template <typename LayerVisitor>
void run_layers(std::uint32_t n, std::uint32_t d, std::size_t state_budget,
                std::int64_t max_layer, LayerVisitor&& visit_layer, Layer* terminals) {
    const std::vector<EdgeMask> vm = vertex_masks(n);
    std::size_t states_expanded = 0;
    Layer current;
    current.emplace(EdgeMask{0}, Rational(1));
    Expansion expansion;
    for (std::int64_t s = 0; !current.empty() && s <= max_layer; ++s) {
        visit_layer(s, current);
        if (s == max_layer) break;
        Layer next;
        for (const auto& [mask, mass] : current) {
            if (++states_expanded > state_budget)
                throw ResourceBudgetError("oracle state budget exceeded");
            expand(mask, n, d, vm, expansion);
            if (expansion.allowed_bits.empty()) {
                if (terminals) (*terminals)[mask] += mass;
                continue;
            }
            const Rational share =
                mass / static_cast<unsigned long>(expansion.allowed_bits.size());
            for (std::uint32_t bit : expansion.allowed_bits)
                next[mask | (EdgeMask{1} << bit)] += share;
        }
        current = std::move(next);
    }
}

}  // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> mask_edges(EdgeMask mask, std::uint32_t n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t v = 1; v < n; ++v)
        for (std::uint32_t u = 0; u < v; ++u)
            if (mask >> pair_index(u, v) & 1) edges.emplace_back(u, v);
    return edges;
}

std::vector<int> mask_degrees(EdgeMask mask, std::uint32_t n) {
    const std::vector<EdgeMask> vm = vertex_masks(n);
    std::vector<int> deg(n);
    for (std::uint32_t v = 0; v < n; ++v) deg[v] = std::popcount(mask & vm[v]);
    return deg;
}

bool mask_stuck(EdgeMask mask, std::uint32_t n, std::uint32_t d) {
    const std::vector<EdgeMask> vm = vertex_masks(n);
    Expansion e;
    expand(mask, n, d, vm, e);
    return e.allowed_bits.empty();
}

bool mask_saturated(EdgeMask mask, std::uint32_t n, std::uint32_t d) {
    std::uint32_t below = 0, at_minus_one = 0;
    for (int deg : mask_degrees(mask, n)) {
        if (deg < static_cast<int>(d)) {
            ++below;
            if (deg == static_cast<int>(d) - 1) ++at_minus_one;
        }
    }
    return below == 0 || (below == 1 && at_minus_one == 1);
}

Rational ExactDistribution::total_mass() const {
    Rational total = 0;
    for (const auto& [mask, mass] : entries) total += mass;
    return total;
}

ExactDistribution exact_outcome_distribution(std::uint32_t n, std::uint32_t d,
                                             std::size_t state_budget) {
    require_supported(n, d);
    ExactDistribution dist;
    dist.n = n;
    dist.d = d;
    Layer terminals;
    // One layer past the edge cap so that every layer, including the last
    // possible one, is expanded and its stuck states collected.
    const std::int64_t cap = static_cast<std::int64_t>(d) * n / 2;
    run_layers(n, d, state_budget, cap + 1, [](std::int64_t, const Layer&) {}, &terminals);
    dist.entries.insert(terminals.begin(), terminals.end());
    return dist;
}

Rational exact_nonsaturation_probability(std::uint32_t n, std::uint32_t d,
                                         std::size_t state_budget) {
    const ExactDistribution dist = exact_outcome_distribution(n, d, state_budget);
    Rational p = 0;
    for (const auto& [mask, mass] : dist.entries)
        if (!mask_saturated(mask, n, d)) p += mass;
    return p;
}

DegreeCountDistribution exact_degree_count_distribution(std::uint32_t n, std::uint32_t d,
                                                        std::int64_t s,
                                                        std::size_t state_budget) {
    require_supported(n, d);
    const std::int64_t cap = static_cast<std::int64_t>(d) * n / 2;
    if (s < 0 || s > cap) throw std::invalid_argument("edge count out of range");
    DegreeCountDistribution result;
    result.n = n;
    result.d = d;
    result.at_edges = s;
    result.reach_probability = 0;
    std::map<std::vector<int>, Rational> raw;
    run_layers(
        n, d, state_budget, s,
        [&](std::int64_t layer, const Layer& states) {
            if (layer != s) return;
            for (const auto& [mask, mass] : states) {
                std::vector<int> counts(d + 1, 0);
                for (int deg : mask_degrees(mask, n)) ++counts[deg];
                raw[counts] += mass;
                result.reach_probability += mass;
            }
        },
        nullptr);
    if (result.reach_probability != 0)
        for (auto& [counts, mass] : raw)
            result.entries.emplace(counts, mass / result.reach_probability);
    return result;
}

std::string rational_string(const Rational& value) {
    return value.str();
}

double rational_double(const Rational& value) {
    return static_cast<double>(value);
}

std::string to_json(const ExactDistribution& dist, int indent) {
    nlohmann::json doc;
    doc["n"] = dist.n;
    doc["d"] = dist.d;
    doc["kind"] = dist.at_edges ? "at_edges" : "terminal";
    if (dist.at_edges) doc["s"] = *dist.at_edges;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [mask, mass] : dist.entries) {
        nlohmann::json entry;
        entry["edges"] = mask_edges(mask, dist.n);
        entry["probability"] = {
            {"num", boost::multiprecision::numerator(mass).str()},
            {"den", boost::multiprecision::denominator(mass).str()},
        };
        entry["value"] = rational_double(mass);
        if (!dist.at_edges) entry["saturated"] = mask_saturated(mask, dist.n, dist.d);
        entries.push_back(std::move(entry));
    }
    doc["entries"] = std::move(entries);
    return doc.dump(indent);
}

}  // namespace dproc::oracle
