#include "shasim/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "shasim/errors.hpp"
#include "shasim/quadrature.hpp"

namespace shasim {

namespace {
constexpr double kTailMass = 1e-10;
}

double Distribution::truncation_point() const {
    Interval s = support();
    if (s.hi != kInf) return s.hi;
    return quantile(1.0 - kTailMass);
}

// ---------------------------------------------------------------------------
// Uniform
// ---------------------------------------------------------------------------

UniformDist::UniformDist(double a, double b) : a_(a), b_(b) {
    if (!(a < b) || std::isnan(a) || std::isinf(a) || std::isinf(b)) {
        throw InvalidParameter("uniform(a,b) requires finite a < b, got a=" +
                               std::to_string(a) + " b=" + std::to_string(b));
    }
}

double UniformDist::cdf(double x) const {
    if (x <= a_) return 0.0;
    if (x >= b_) return 1.0;
    return (x - a_) / (b_ - a_);
}

double UniformDist::pdf(double x) const {
    return (x >= a_ && x <= b_) ? 1.0 / (b_ - a_) : 0.0;
}

double UniformDist::quantile(double p) const { return a_ + p * (b_ - a_); }

std::string UniformDist::describe() const {
    std::ostringstream oss;
    oss << "uniform(" << a_ << ", " << b_ << ")";
    return oss.str();
}

// ---------------------------------------------------------------------------
// Exponential
// ---------------------------------------------------------------------------

ExponentialDist::ExponentialDist(double rate) : rate_(rate) {
    if (!(rate > 0.0) || std::isinf(rate)) {
        throw InvalidParameter("exp(rate) requires rate > 0, got " + std::to_string(rate));
    }
}

double ExponentialDist::cdf(double x) const {
    return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x);
}

double ExponentialDist::pdf(double x) const {
    return x < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x);
}

double ExponentialDist::quantile(double p) const { return -std::log1p(-p) / rate_; }

std::string ExponentialDist::describe() const {
    std::ostringstream oss;
    oss << "exp(" << rate_ << ")";
    return oss.str();
}

// ---------------------------------------------------------------------------
// Dirac mixture
// ---------------------------------------------------------------------------

DiracMixtureDist::DiracMixtureDist(std::vector<double> points, std::vector<double> weights) {
    if (points.empty() || points.size() != weights.size()) {
        throw InvalidParameter("dirac mixture: need matching nonempty points/weights");
    }
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw InvalidParameter("dirac mixture: negative weight");
        total += w;
    }
    if (total <= 0.0) throw InvalidParameter("dirac mixture: zero total weight");
    for (std::size_t i : order) {
        points_.push_back(points[i]);
        weights_.push_back(weights[i] / total);
    }
}

double DiracMixtureDist::cdf(double x) const {
    double c = 0.0;
    for (std::size_t i = 0; i < points_.size() && points_[i] <= x; ++i) c += weights_[i];
    return c;
}

double DiracMixtureDist::pdf(double) const {
    throw InvalidParameter("dirac mixture has no density");
}

double DiracMixtureDist::quantile(double p) const {
    double c = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        c += weights_[i];
        if (p <= c) return points_[i];
    }
    return points_.back();
}

Interval DiracMixtureDist::support() const {
    return Interval::closed(points_.front(), points_.back());
}

std::string DiracMixtureDist::describe() const {
    std::ostringstream oss;
    oss << "dirac(";
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (i) oss << ", ";
        oss << points_[i] << ":" << weights_[i];
    }
    oss << ")";
    return oss.str();
}

// ---------------------------------------------------------------------------
// Shift-conditioning
// ---------------------------------------------------------------------------

ShiftConditionedDist::ShiftConditionedDist(DistPtr base, double elapsed)
    : base_(std::move(base)), elapsed_(elapsed) {
    if (elapsed_ < 0.0) throw InvalidParameter("shift_condition: negative elapsed time");
    cdf_at_elapsed_ = base_->cdf(elapsed_);
    if (cdf_at_elapsed_ >= 1.0) {
        throw ExhaustedSupport("shift_condition: no probability mass beyond elapsed=" +
                               std::to_string(elapsed_));
    }
}

double ShiftConditionedDist::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    double c = (base_->cdf(elapsed_ + x) - cdf_at_elapsed_) / (1.0 - cdf_at_elapsed_);
    return std::clamp(c, 0.0, 1.0);
}

double ShiftConditionedDist::pdf(double x) const {
    if (x < 0.0) return 0.0;
    return base_->pdf(elapsed_ + x) / (1.0 - cdf_at_elapsed_);
}

double ShiftConditionedDist::quantile(double p) const {
    double q = base_->quantile(cdf_at_elapsed_ + p * (1.0 - cdf_at_elapsed_)) - elapsed_;
    return q < 0.0 ? 0.0 : q;
}

Interval ShiftConditionedDist::support() const {
    Interval s = base_->support();
    double hi = s.hi == kInf ? kInf : std::max(0.0, s.hi - elapsed_);
    return Interval{0.0, hi, false, s.hi == kInf};
}

std::string ShiftConditionedDist::describe() const {
    std::ostringstream oss;
    oss << "shift(" << base_->describe() << ", " << elapsed_ << ")";
    return oss.str();
}

// ---------------------------------------------------------------------------
// Minimum of a family
// ---------------------------------------------------------------------------

MinOfDist::MinOfDist(std::vector<DistPtr> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw InvalidParameter("min_of: empty family");
    for (const auto& p : parts_) {
        if (!p->continuous()) throw InvalidParameter("min_of: all members must be continuous");
    }
}

double MinOfDist::cdf(double x) const {
    double survive = 1.0;
    for (const auto& p : parts_) survive *= 1.0 - p->cdf(x);
    return 1.0 - survive;
}

double MinOfDist::pdf(double x) const {
    double total = 0.0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        double term = parts_[i]->pdf(x);
        if (term == 0.0) continue;
        for (std::size_t j = 0; j < parts_.size(); ++j) {
            if (j != i) term *= 1.0 - parts_[j]->cdf(x);
        }
        total += term;
    }
    return total;
}

double MinOfDist::quantile(double p) const {
    // Bisection on the CDF; supports start at the smallest member support.
    Interval s = support();
    double lo = s.lo;
    double hi = s.hi;
    if (hi == kInf) {
        hi = std::max(lo + 1.0, 1.0);
        while (cdf(hi) < p && hi < 1e300) hi *= 2.0;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        double m = 0.5 * (lo + hi);
        if (cdf(m) < p) {
            lo = m;
        } else {
            hi = m;
        }
    }
    return 0.5 * (lo + hi);
}

double MinOfDist::sample(Rng& rng) const {
    double m = parts_[0]->sample(rng);
    for (std::size_t i = 1; i < parts_.size(); ++i) m = std::min(m, parts_[i]->sample(rng));
    return m;
}

Interval MinOfDist::support() const {
    double lo = kInf, hi = kInf;
    bool hi_open = true;
    for (const auto& p : parts_) {
        Interval s = p->support();
        lo = std::min(lo, s.lo);
        if (s.hi < hi) {
            hi = s.hi;
            hi_open = s.hi_open;
        }
    }
    return Interval{lo, hi, false, hi_open};
}

std::string MinOfDist::describe() const {
    std::ostringstream oss;
    oss << "min(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) oss << ", ";
        oss << parts_[i]->describe();
    }
    oss << ")";
    return oss.str();
}

// ---------------------------------------------------------------------------
// Combinators
// ---------------------------------------------------------------------------

DistPtr min_of(std::vector<DistPtr> dists) {
    if (dists.empty()) throw InvalidParameter("min_of: empty family");
    if (dists.size() == 1) return dists.front();
    return std::make_shared<MinOfDist>(std::move(dists));
}

DistPtr shift_condition(DistPtr base, double elapsed) {
    return std::make_shared<ShiftConditionedDist>(std::move(base), elapsed);
}

double prob_is_min(std::size_t index, const std::vector<DistPtr>& dists, double abs_tol) {
    if (index >= dists.size()) throw InvalidParameter("prob_is_min: index out of range");
    if (dists.size() == 1) return 1.0;
    for (const auto& d : dists) {
        if (!d->continuous()) {
            throw InvalidParameter("prob_is_min: all members must be continuous");
        }
    }
    // The integrand vanishes below the candidate's support and beyond the
    // earliest truncation point of the family (some survival factor is ~0).
    double lo = dists[index]->support().lo;
    double hi = kInf;
    for (const auto& d : dists) hi = std::min(hi, d->truncation_point());
    if (!(hi > lo)) return 0.0;
    auto integrand = [&](double t) {
        double v = dists[index]->pdf(t);
        if (v == 0.0) return 0.0;
        for (std::size_t j = 0; j < dists.size(); ++j) {
            if (j != index) v *= 1.0 - dists[j]->cdf(t);
        }
        return v;
    };
    std::vector<double> breaks;
    for (const auto& d : dists) {
        Interval s = d->support();
        breaks.push_back(s.lo);
        if (s.hi != kInf) breaks.push_back(s.hi);
    }
    return integrate_with_breakpoints(integrand, lo, hi, breaks, abs_tol);
}

UniformityReport uniformity_deviation(const Distribution& dist, const Interval& window,
                                      int grid_points) {
    UniformityReport rep;
    if (grid_points < 3) grid_points = 3;
    double lo = window.lo, hi = window.hi;
    rep.max_pdf = -kInf;
    rep.min_pdf = kInf;
    for (int i = 0; i < grid_points; ++i) {
        double x = lo + (hi - lo) * i / (grid_points - 1);
        double f = dist.pdf(x);
        if (f > rep.max_pdf) {
            rep.max_pdf = f;
            rep.argmax = x;
        }
        if (f < rep.min_pdf) {
            rep.min_pdf = f;
            rep.argmin = x;
        }
    }
    rep.ratio = rep.min_pdf > 0.0 ? rep.max_pdf / rep.min_pdf : kInf;
    rep.pdf_at_lo = dist.pdf(lo);
    rep.pdf_at_mid = dist.pdf(0.5 * (lo + hi));
    rep.lo_mid_ratio = rep.pdf_at_mid > 0.0 ? rep.pdf_at_lo / rep.pdf_at_mid : kInf;
    return rep;
}

// ---------------------------------------------------------------------------
// DistSpec
// ---------------------------------------------------------------------------

DistPtr DistSpec::resolve(const std::vector<double>& valuation) const {
    switch (family) {
        case Family::uniform:
            return std::make_shared<UniformDist>(p0.eval(valuation), p1.eval(valuation));
        case Family::exponential:
            return std::make_shared<ExponentialDist>(p0.eval(valuation));
    }
    throw InvalidParameter("unknown distribution family");
}

}  // namespace shasim
