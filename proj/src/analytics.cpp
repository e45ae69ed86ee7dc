#include "dproc/analytics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dproc {

AnalyticModel::AnalyticModel(std::uint32_t n, std::uint32_t d)
    : n_(n), d_(d), log_n_(std::log(static_cast<double>(n))) {
    if (n < 3) throw std::invalid_argument("model requires n >= 3");
    if (d < 2) throw std::invalid_argument("model requires d >= 2");
}

double AnalyticModel::beta(double x, std::uint32_t i) const {
    if (x < 0) throw std::invalid_argument("beta: negative ball count");
    const double mu = x / static_cast<double>(n_);
    if (mu == 0.0) return i == 0 ? static_cast<double>(n_) : 0.0;
    if (mu <= 700.0) {
        double p = std::exp(-mu);
        for (std::uint32_t k = 1; k <= i; ++k) p *= mu / k;
        return n_ * p;
    }
    // exp(-mu) underflows; stay in log space and return a clean zero below
    // the representable range.
    const double log_value = std::log(static_cast<double>(n_)) + i * std::log(mu) - mu -
                             std::lgamma(static_cast<double>(i) + 1.0);
    if (log_value < std::log(std::numeric_limits<double>::min())) return 0.0;
    return std::exp(log_value);
}

double AnalyticModel::ell(double x) const {
    double deficit_mass = 0.0;
    for (std::uint32_t i = 0; i < d_; ++i) deficit_mass += (d_ - i) * beta(x, i);
    return 0.5 * (static_cast<double>(d_) * n_ - deficit_mass);
}

double AnalyticModel::tau(double x) const {
    double total = 0.0;
    for (std::uint32_t i = 0; i < d_; ++i) total += beta(x, i);
    return total;
}

double AnalyticModel::ell_inverse(double s) const {
    const double cap = 0.5 * static_cast<double>(d_) * n_;
    if (s < 0.0 || s >= cap) throw std::invalid_argument("ell_inverse: target out of [0, dn/2)");
    const double tolerance = std::max(1e-9 * cap, 1e-9);
    double lo = 0.0;
    double hi = static_cast<double>(n_);
    while (ell(hi) < s) {
        lo = hi;
        hi *= 2.0;
    }
    double mid = lo;
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double value = ell(mid);
        if (std::abs(value - s) <= tolerance) return mid;
        if (value < s)
            lo = mid;
        else
            hi = mid;
    }
    return mid;
}

double AnalyticModel::late_degree_rate(std::uint32_t j, double t) const {
    if (d_ < 2 || j > d_ - 2) throw std::invalid_argument("late_degree_rate: j out of [0, d-2]");
    const std::uint32_t k = d_ - 1 - j;
    return 2.0 * falling_factorial(static_cast<double>(d_) - 1.0, k) * t / std::pow(log_n_, k);
}

double AnalyticModel::falling_factorial(double x, std::uint32_t k) {
    double product = 1.0;
    for (std::uint32_t i = 0; i < k; ++i) product *= x - i;
    return product;
}

double AnalyticModel::poisson_pmf(double lambda, std::uint32_t i) {
    if (lambda < 0) throw std::invalid_argument("poisson_pmf: negative rate");
    if (lambda == 0.0) return i == 0 ? 1.0 : 0.0;
    const double log_value =
        i * std::log(lambda) - lambda - std::lgamma(static_cast<double>(i) + 1.0);
    return std::exp(log_value);
}

double AnalyticModel::truncated_poisson_pmf(double lambda, std::uint32_t i) const {
    if (i > d_) throw std::invalid_argument("truncated_poisson_pmf: value above d");
    if (i < d_) return poisson_pmf(lambda, i);
    double below = 0.0;
    for (std::uint32_t k = 0; k < d_; ++k) below += poisson_pmf(lambda, k);
    return std::max(0.0, 1.0 - below);
}

std::pair<std::vector<double>, double> AnalyticModel::poisson_pmf_table(double lambda,
                                                                        double tail_eps) {
    std::vector<double> pmf;
    double cumulative = 0.0;
    std::uint32_t i = 0;
    while (1.0 - cumulative >= tail_eps) {
        const double p = poisson_pmf(lambda, i);
        pmf.push_back(p);
        cumulative += p;
        ++i;
        if (i > 10'000'000) break;  // unreachable for sane rates
    }
    return {std::move(pmf), std::max(0.0, 1.0 - cumulative)};
}

}  // namespace dproc
