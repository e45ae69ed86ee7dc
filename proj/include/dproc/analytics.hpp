#pragma once

#include <cstdint>
#include <vector>

namespace dproc {

// Closed-form predictions for the process on n vertices with degree cap d.
// With mu = x/n, the occupancy of a given bin after x balls is asymptotically
// Poisson(mu), which drives every quantity here. Stateless and re-entrant.
class AnalyticModel {
public:
    AnalyticModel(std::uint32_t n, std::uint32_t d);

    std::uint32_t n() const { return n_; }
    std::uint32_t d() const { return d_; }
    double log_n() const { return log_n_; }

    // Expected number of bins holding exactly i balls after x of them:
    // n * mu^i * exp(-mu) / i!, evaluated in log space for large mu.
    double beta(double x, std::uint32_t i) const;

    // Predicted edge count after x balls: dn/2 - (1/2) sum_{i<d} (d-i) beta_i(x).
    // Strictly increasing from 0 towards dn/2.
    double ell(double x) const;

    // Expected number of unsaturated bins after x balls; also 2n * ell'(x).
    double tau(double x) const;

    // Inverse of ell: the ball count at which the predicted edge count is s.
    // Requires 0 <= s < dn/2; bracketed by doubling, then bisected until
    // |ell(x) - s| <= max(1e-9 * dn/2, 1e-9).
    double ell_inverse(double s) const;

    // Asymptotic mean of the number of degree-j vertices at deficit t:
    // 2 * [d-1]_{d-1-j} * t / (log n)^{d-1-j}, for 0 <= j <= d-2.
    double late_degree_rate(std::uint32_t j, double t) const;

    static double falling_factorial(double x, std::uint32_t k);
    static double poisson_pmf(double lambda, std::uint32_t i);

    // Poisson(lambda) with all mass at values >= d collapsed onto d. The top
    // atom is computed by complement, never by summing the infinite tail.
    double truncated_poisson_pmf(double lambda, std::uint32_t i) const;

    // Poisson pmf truncated where the remaining tail mass drops below
    // tail_eps; the discarded mass is returned separately so a total
    // variation distance can treat it as a single extra term.
    static std::pair<std::vector<double>, double> poisson_pmf_table(double lambda,
                                                                    double tail_eps = 1e-12);

private:
    std::uint32_t n_;
    std::uint32_t d_;
    double log_n_;
};

}  // namespace dproc
