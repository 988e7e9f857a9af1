#include "shasim/stats.hpp"

#include <algorithm>
#include <cmath>

#include "shasim/errors.hpp"

namespace shasim {

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

// Stephens' small-sample correction for the asymptotic distribution.
double ks_p_from_d(double d, double n_eff) {
    double sqrt_n = std::sqrt(n_eff);
    double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    return kolmogorov_q(lambda);
}

}  // namespace

KsResult ks_test_one_sample(std::vector<double> samples,
                            const std::function<double(double)>& cdf) {
    if (samples.empty()) throw InvalidParameter("ks_test: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        d = std::max(d, f - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
    }
    KsResult r;
    r.statistic = d;
    r.n_effective = static_cast<long>(samples.size());
    r.p_value = ks_p_from_d(d, n);
    return r;
}

KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw InvalidParameter("ks_test: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        double fa = static_cast<double>(i) / static_cast<double>(a.size());
        double fb = static_cast<double>(j) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    double na = static_cast<double>(a.size());
    double nb = static_cast<double>(b.size());
    double n_eff = na * nb / (na + nb);
    KsResult r;
    r.statistic = d;
    r.n_effective = static_cast<long>(n_eff);
    r.p_value = ks_p_from_d(d, n_eff);
    return r;
}

GridDistance cdf_sup_distance(const std::function<double(double)>& f,
                              const std::function<double(double)>& g, double lo, double hi,
                              int grid_points) {
    GridDistance out;
    out.at = lo;
    for (int i = 0; i < grid_points; ++i) {
        double x = lo + (hi - lo) * i / (grid_points - 1);
        double diff = std::abs(f(x) - g(x));
        if (diff > out.distance) {
            out.distance = diff;
            out.at = x;
        }
    }
    return out;
}

WilsonInterval wilson_interval(long successes, long trials, double confidence) {
    if (trials <= 0) throw InvalidParameter("wilson_interval: no trials");
    double z = normal_quantile(0.5 + confidence / 2.0);
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    WilsonInterval w;
    w.center = (p + z2 / (2.0 * n)) / denom;
    w.half_width = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // Clip into [0,1].
    double lo = std::max(0.0, w.lo());
    double hi = std::min(1.0, w.hi());
    w.center = 0.5 * (lo + hi);
    w.half_width = 0.5 * (hi - lo);
    return w;
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("normal_quantile: p outside (0,1)");
    // Acklam's coefficients.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace shasim
