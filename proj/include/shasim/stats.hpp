#ifndef SHASIM_STATS_HPP_
#define SHASIM_STATS_HPP_

#include <functional>
#include <vector>

namespace shasim {

// ============================================================================
// Small statistics toolbox: Kolmogorov-Smirnov tests and binomial confidence
// intervals used by the Monte Carlo estimators and equivalence checks.
// ============================================================================

struct KsResult {
    double statistic = 0.0;  // sup distance D
    double p_value = 1.0;
    long n_effective = 0;

    bool reject(double alpha) const { return p_value < alpha; }
};

// Asymptotic Kolmogorov distribution complement Q(lambda) = P(D > lambda).
double kolmogorov_q(double lambda);

// One-sample test of samples against an analytic CDF. Samples need not be
// sorted.
KsResult ks_test_one_sample(std::vector<double> samples,
                            const std::function<double(double)>& cdf);

// Two-sample test.
KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b);

// Sup distance between two CDFs evaluated on a uniform grid over [lo, hi].
// Returns the distance and the grid point attaining it.
struct GridDistance {
    double distance = 0.0;
    double at = 0.0;
};
GridDistance cdf_sup_distance(const std::function<double(double)>& f,
                              const std::function<double(double)>& g, double lo, double hi,
                              int grid_points = 4001);

// Wilson score interval for a binomial proportion.
struct WilsonInterval {
    double center = 0.0;
    double half_width = 0.0;

    double lo() const { return center - half_width; }
    double hi() const { return center + half_width; }
    bool contains(double p) const { return p >= lo() && p <= hi(); }
};
WilsonInterval wilson_interval(long successes, long trials, double confidence);

// Standard normal quantile (Acklam's rational approximation, ~1e-9 accurate).
double normal_quantile(double p);

}  // namespace shasim

#endif  // SHASIM_STATS_HPP_
