#include "dproc/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace dproc::stats {

namespace {

double falling(double x, std::uint32_t k) {
    double product = 1.0;
    for (std::uint32_t i = 0; i < k; ++i) product *= x - i;
    return product;
}

}  // namespace

double EmpiricalPmf::factorial_moment(std::uint32_t k) const {
    if (total_ == 0) throw std::invalid_argument("factorial_moment of empty distribution");
    double sum = 0.0;
    for (const auto& [value, count] : counts_)
        sum += falling(static_cast<double>(value), k) * static_cast<double>(count);
    return sum / static_cast<double>(total_);
}

double factorial_moment(std::span<const std::int64_t> samples, std::uint32_t k) {
    if (samples.empty()) throw std::invalid_argument("factorial_moment of empty sample");
    double sum = 0.0;
    for (std::int64_t v : samples) sum += falling(static_cast<double>(v), k);
    return sum / static_cast<double>(samples.size());
}

double tv_distance(const EmpiricalPmf& p, const EmpiricalPmf& q) {
    double l1 = 0.0;
    auto ip = p.counts().begin();
    auto iq = q.counts().begin();
    while (ip != p.counts().end() || iq != q.counts().end()) {
        if (iq == q.counts().end() || (ip != p.counts().end() && ip->first < iq->first)) {
            l1 += p.probability(ip->first);
            ++ip;
        } else if (ip == p.counts().end() || iq->first < ip->first) {
            l1 += q.probability(iq->first);
            ++iq;
        } else {
            l1 += std::abs(p.probability(ip->first) - q.probability(iq->first));
            ++ip;
            ++iq;
        }
    }
    return 0.5 * l1;
}

double tv_distance(const EmpiricalPmf& p, std::span<const double> table, double tail_mass) {
    double l1 = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i)
        l1 += std::abs(p.probability(static_cast<std::int64_t>(i)) - table[i]);
    // Empirical mass outside the table competes against the truncated tail,
    // folded into a single term.
    double outside = 0.0;
    for (const auto& [value, count] : p.counts())
        if (value < 0 || value >= static_cast<std::int64_t>(table.size()))
            outside += static_cast<double>(count) / static_cast<double>(p.total());
    l1 += std::abs(outside - tail_mass);
    return 0.5 * l1;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("wilson_interval with zero trials");
    if (successes > trials) throw std::invalid_argument("successes above trials");
    if (z <= 0) throw std::invalid_argument("z must be positive");
    const double nt = static_cast<double>(trials);
    const double p_hat = static_cast<double>(successes) / nt;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nt;
    const double center = (p_hat + z2 / (2.0 * nt)) / denom;
    const double half =
        z * std::sqrt(p_hat * (1.0 - p_hat) / nt + z2 / (4.0 * nt * nt)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double window_coverage(std::span<const double> samples, double center, double halfwidth) {
    if (halfwidth < 0) throw std::invalid_argument("window halfwidth must be >= 0");
    if (samples.empty()) return 0.0;
    std::size_t inside = 0;
    for (double v : samples)
        if (center - halfwidth <= v && v <= center + halfwidth) ++inside;
    return static_cast<double>(inside) / static_cast<double>(samples.size());
}

}  // namespace dproc::stats
