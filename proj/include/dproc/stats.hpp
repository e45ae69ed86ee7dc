#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace dproc::stats {

// Integer-valued empirical distribution built from streamed counts. Two
// accumulators merge associatively, so partial results from parallel workers
// combine into the same totals regardless of scheduling.
class EmpiricalPmf {
public:
    void add(std::int64_t value, std::uint64_t count = 1) {
        counts_[value] += count;
        total_ += count;
    }
    void merge(const EmpiricalPmf& other) {
        for (const auto& [v, c] : other.counts_) counts_[v] += c;
        total_ += other.total_;
    }
    std::uint64_t total() const { return total_; }
    const std::map<std::int64_t, std::uint64_t>& counts() const { return counts_; }
    double probability(std::int64_t value) const {
        const auto it = counts_.find(value);
        return it == counts_.end() || total_ == 0
                   ? 0.0
                   : static_cast<double>(it->second) / static_cast<double>(total_);
    }

    // Mean of the k-fold falling factorial value*(value-1)*...*(value-k+1).
    double factorial_moment(std::uint32_t k) const;

private:
    std::map<std::int64_t, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

// Mean of [x]_k over the samples; k = 1 gives the arithmetic mean.
double factorial_moment(std::span<const std::int64_t> samples, std::uint32_t k);

// Half the L1 distance between two empirical pmfs over the union support.
double tv_distance(const EmpiricalPmf& p, const EmpiricalPmf& q);

// Same against an analytic pmf given as a table for values 0..table.size()-1
// plus the truncated tail mass, which enters as one extra term.
double tv_distance(const EmpiricalPmf& p, std::span<const double> table, double tail_mass);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x) const { return lo <= x && x <= hi; }
};

// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z);

// Fraction of samples within [center - halfwidth, center + halfwidth].
double window_coverage(std::span<const double> samples, double center, double halfwidth);

}  // namespace dproc::stats
