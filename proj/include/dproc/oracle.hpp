#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dproc::oracle {

using Rational = boost::multiprecision::cpp_rational;

// Labeled graphs on up to 11 vertices fit one 64-bit mask with one bit per
// unordered pair. The oracle works directly on these masks and shares no code
// with the samplers it is used to check.
using EdgeMask = std::uint64_t;

constexpr std::uint32_t max_oracle_vertices = 11;

inline std::uint32_t pair_index(std::uint32_t u, std::uint32_t v) {
    if (u > v) std::swap(u, v);
    return v * (v - 1) / 2 + u;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> mask_edges(EdgeMask mask, std::uint32_t n);
std::vector<int> mask_degrees(EdgeMask mask, std::uint32_t n);

struct ResourceBudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact probability mass over labeled graph states of the process, computed
// by enumerating every trajectory with rational arithmetic. Masses sum to
// exactly one.
struct ExactDistribution {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::optional<std::int64_t> at_edges;  // nullopt: distribution over final graphs
    std::map<EdgeMask, Rational> entries;

    Rational total_mass() const;
};

// Exact law of the degree-count vector (D_0..D_d) after s edges, conditioned
// on the process reaching s edges, plus the exact probability of reaching s.
struct DegreeCountDistribution {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::int64_t at_edges = 0;
    Rational reach_probability;
    std::map<std::vector<int>, Rational> entries;  // conditional masses
};

// Enumerates the whole trajectory tree of the process on n vertices with
// degree cap d. Throws ResourceBudgetError if more than state_budget distinct
// labeled states would be expanded (d=2 with n <= 7 is always well inside).
ExactDistribution exact_outcome_distribution(std::uint32_t n, std::uint32_t d,
                                             std::size_t state_budget = 10'000'000);

Rational exact_nonsaturation_probability(std::uint32_t n, std::uint32_t d,
                                         std::size_t state_budget = 10'000'000);

DegreeCountDistribution exact_degree_count_distribution(std::uint32_t n, std::uint32_t d,
                                                        std::int64_t s,
                                                        std::size_t state_budget = 10'000'000);

// True when no further edge can be added to the labeled graph.
bool mask_stuck(EdgeMask mask, std::uint32_t n, std::uint32_t d);

// Final-graph saturation: at most one vertex of degree d-1, all others d.
bool mask_saturated(EdgeMask mask, std::uint32_t n, std::uint32_t d);

std::string rational_string(const Rational& value);
double rational_double(const Rational& value);

// JSON document with edge lists and exact probabilities as num/den strings.
std::string to_json(const ExactDistribution& dist, int indent = -1);

}  // namespace dproc::oracle
